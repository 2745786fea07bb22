//! Arbitrary-precision integer helpers.
//!
//! Everything in this crate is exact. `Int` is an alias so the backing
//! big-integer implementation stays in one place.

use dashu_int::ops::{DivRemEuclid, Gcd};

pub type Int = dashu_int::IBig;

#[inline]
pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// Euclidean division: `a = q*b + r` with `0 <= r < |b|`.
pub fn div_rem_euclid(a: &Int, b: &Int) -> (Int, Int) {
    let (q, r) = a.div_rem_euclid(b);
    (q, Int::from(r))
}

/// Representative of `a` modulo `m` in `[0, |m|)`; `m == 0` leaves `a` unchanged.
pub fn reduce_mod(a: &Int, m: &Int) -> Int {
    if m.is_zero() {
        a.clone()
    } else {
        div_rem_euclid(a, m).1
    }
}

/// Nonnegative gcd; `gcd(0, 0) = 0`.
pub fn gcd(a: &Int, b: &Int) -> Int {
    if a.is_zero() {
        abs(b)
    } else if b.is_zero() {
        abs(a)
    } else {
        Int::from(a.gcd(b))
    }
}

/// `true` when `d` divides `a`. Zero divides only zero.
pub fn divides(d: &Int, a: &Int) -> bool {
    if d.is_zero() {
        a.is_zero()
    } else {
        div_rem_euclid(a, d).1.is_zero()
    }
}

pub fn abs(a: &Int) -> Int {
    if a.signum() < Int::ZERO {
        -a
    } else {
        a.clone()
    }
}

pub fn is_negative(a: &Int) -> bool {
    a.signum() < Int::ZERO
}

pub fn to_i64(a: &Int) -> Option<i64> {
    a.try_into().ok()
}

pub fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| int(x)).collect()
}

/// Serde adapter: integers that fit in an `i64` are written as JSON numbers,
/// larger ones as decimal strings.
pub mod serde_int {
    use super::Int;
    use serde::{de, Deserialize, Deserializer, Serializer};
    use std::str::FromStr;

    pub fn serialize<S: Serializer>(v: &Int, s: S) -> Result<S::Ok, S::Error> {
        match super::to_i64(v) {
            Some(x) => s.serialize_i64(x),
            None => s.serialize_str(&v.to_string()),
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(i64),
        Str(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Int, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(x) => Ok(Int::from(x)),
            Repr::Str(s) => Int::from_str(&s).map_err(de::Error::custom),
        }
    }

    pub mod vec {
        use super::Int;
        use serde::{Deserialize, Deserializer, Serialize, Serializer};

        #[derive(Serialize, Deserialize)]
        struct W(#[serde(with = "super")] Int);

        pub fn serialize<S: Serializer>(v: &[Int], s: S) -> Result<S::Ok, S::Error> {
            let w: Vec<W> = v.iter().cloned().map(W).collect();
            w.serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Int>, D::Error> {
            let w: Vec<W> = Vec::deserialize(d)?;
            Ok(w.into_iter().map(|W(x)| x).collect())
        }
    }

    pub mod vec2 {
        use super::Int;
        use serde::{Deserialize, Deserializer, Serialize, Serializer};

        #[derive(Serialize, Deserialize)]
        struct W(#[serde(with = "super::vec")] Vec<Int>);

        pub fn serialize<S: Serializer>(v: &[Vec<Int>], s: S) -> Result<S::Ok, S::Error> {
            let w: Vec<W> = v.iter().cloned().map(W).collect();
            w.serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Int>>, D::Error> {
            let w: Vec<W> = Vec::deserialize(d)?;
            Ok(w.into_iter().map(|W(x)| x).collect())
        }
    }
}
