//! Cup products of cochains and classes, and cup-length.

use std::collections::HashSet;
use std::sync::Arc;

use crate::category::{FinCat, MorId, Subcategory};
use crate::cochain::{ChainIndex, CochainComplex};
use crate::error::{Error, Result};
use crate::factorization::{NaturalSystem, Pairing};
use crate::int::Int;
use crate::secat::is_geometric_cover;

/// A cochain of a given degree in a given complex.
#[derive(Clone, Copy, Debug)]
pub struct Cochain<'a> {
    pub complex: &'a CochainComplex,
    pub degree: usize,
    pub values: &'a [Int],
}

impl<'a> Cochain<'a> {
    pub fn new(complex: &'a CochainComplex, degree: usize, values: &'a [Int]) -> Self {
        Cochain { complex, degree, values }
    }
}

fn same_system(a: &Arc<NaturalSystem>, b: &Arc<NaturalSystem>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// The `k`-chain starting after the first `start` arrows of `sigma`.
fn part(c: &FinCat, sigma: &ChainIndex, start: usize, k: usize) -> ChainIndex {
    let lam = sigma.morphisms();
    if k > 0 {
        ChainIndex::new(c, lam[start..start + k].to_vec())
    } else if start < lam.len() {
        ChainIndex::object(c, c.cod(lam[start]))
    } else {
        ChainIndex::object(c, sigma.source())
    }
}

/// `f₀ ⌣ f₁ ⌣ ⋯` (left to right) evaluated on the basis of `out`. With
/// two factors the pairing may be any pairing `(D; D') -> D''`; longer
/// products need an endopairing.
pub fn cup_product(p: &Pairing, factors: &[Cochain<'_>], out: &CochainComplex) -> Result<Vec<Int>> {
    if factors.is_empty() {
        return Err(Error::DimensionMismatch("empty cup product".into()));
    }
    let systems: Vec<&Arc<NaturalSystem>> = match factors.len() {
        1 => vec![p.out()],
        2 => vec![p.left(), p.right()],
        _ if p.is_endopairing() => vec![p.left(); factors.len()],
        _ => return Err(Error::MalformedPairing("iterated products need an endopairing".into())),
    };
    for (f, d) in factors.iter().zip(&systems) {
        if !same_system(f.complex.system(), d) {
            return Err(Error::MalformedPairing("cochain coefficients do not match the pairing".into()));
        }
        if f.values.len() != f.complex.group(f.degree)?.dim() {
            return Err(Error::DimensionMismatch(format!("cochain of degree {} has the wrong length", f.degree)));
        }
    }
    if !same_system(out.system(), p.out()) {
        return Err(Error::MalformedPairing("target complex does not carry the pairing's values".into()));
    }
    let total: usize = factors.iter().map(|f| f.degree).sum();
    if total > out.top() + 1 {
        return Err(Error::DegreeOverflow { degree: total, top: out.top() });
    }
    let c = out.base();
    let target = out.group(total)?;
    let mut result = Vec::with_capacity(target.dim());
    for sigma in target.basis() {
        let mut start = 0;
        let mut acc: Option<(MorId, Vec<Int>)> = None;
        let mut zero = false;
        for f in factors {
            let piece = part(c, sigma, start, f.degree);
            start += f.degree;
            let g = f.complex.group(f.degree)?;
            let Some(v) = g.value(f.values, &piece.key()) else {
                zero = true;
                break;
            };
            acc = Some(match acc {
                None => (piece.composite(), v.to_vec()),
                Some((lam, x)) => {
                    let prod = p.multiply(lam, piece.composite(), &x, v);
                    (c.comp(lam, piece.composite()), prod)
                }
            });
        }
        match acc {
            Some((_, v)) if !zero => result.extend(v),
            _ => result.extend(out.system().value(sigma.composite()).zero()),
        }
    }
    Ok(result)
}

/// `f ⌣ g`.
pub fn cup_cochain(p: &Pairing, f: Cochain<'_>, g: Cochain<'_>, out: &CochainComplex) -> Result<Vec<Int>> {
    cup_product(p, &[f, g], out)
}

/// A cohomology class: degree and normal-form coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Class {
    pub degree: usize,
    pub coords: Vec<Int>,
}

/// `ξ₁ ⌣ ⋯ ⌣ ξₙ` for classes of the complex of an endopairing.
pub fn cup_classes(p: &Pairing, cx: &CochainComplex, classes: &[Class]) -> Result<Class> {
    let reps: Vec<Vec<Int>> =
        classes.iter().map(|x| Ok(cx.cohomology(x.degree)?.representative(&x.coords))).collect::<Result<_>>()?;
    let factors: Vec<Cochain<'_>> = classes.iter().zip(&reps).map(|(x, r)| Cochain::new(cx, x.degree, r)).collect();
    let degree = classes.iter().map(|x| x.degree).sum();
    if degree > cx.top() {
        return Err(Error::DegreeOverflow { degree, top: cx.top() });
    }
    let z = cup_product(p, &factors, cx)?;
    Ok(Class { degree, coords: cx.cohomology(degree)?.class_of(&z)? })
}

/// Product of relative classes `ξᵢ ∈ H^{pᵢ}(C, Uᵢ; D)` landing in
/// `H^p(C, U₀ ∪ ⋯ ∪ Uₙ; D)`, represented by `out`. The pieces must form a
/// geometric cover of their union.
pub fn relative_cup(p: &Pairing, factors: &[(&CochainComplex, Class)], out: &CochainComplex) -> Result<Class> {
    let c = out.base().clone();
    let pieces: Vec<Subcategory> = factors
        .iter()
        .map(|(cx, _)| cx.relative_to().cloned().unwrap_or_else(|| Subcategory::empty(c.clone())))
        .collect();
    let mut union = Subcategory::empty(c.clone());
    for u in &pieces {
        union = union.union(u)?;
    }
    let out_rel = out.relative_to().cloned().unwrap_or_else(|| Subcategory::empty(c.clone()));
    if out_rel != union {
        return Err(Error::NotGeometricCover("target complex is not relative to the union of the pieces".into()));
    }
    if !is_geometric_cover(&pieces, &union)? {
        return Err(Error::NotGeometricCover("pieces do not cover their union".into()));
    }
    let reps: Vec<Vec<Int>> =
        factors.iter().map(|(cx, x)| Ok(cx.cohomology(x.degree)?.representative(&x.coords))).collect::<Result<_>>()?;
    let cochains: Vec<Cochain<'_>> =
        factors.iter().zip(&reps).map(|((cx, x), r)| Cochain::new(cx, x.degree, r)).collect();
    let degree = factors.iter().map(|(_, x)| x.degree).sum();
    if degree > out.top() {
        return Err(Error::DegreeOverflow { degree, top: out.top() });
    }
    let z = cup_product(p, &cochains, out)?;
    Ok(Class { degree, coords: out.cohomology(degree)?.class_of(&z)? })
}

/// Outcome of a cup-length search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CupLength {
    pub value: usize,
    /// set when classes above the computed range could lengthen a product
    pub lower_bound_only: bool,
    /// `(degree, generator index)` of a longest nonzero product
    pub witness: Vec<(usize, usize)>,
}

/// Longest nonzero product of positive-degree classes from the subgroups
/// generated by `restrict_to[k]` (cocycles of degree `k`), or from all of
/// `Hᵏ` when `restrict_to` is `None`.
///
/// Only generator tuples are tried: the iterated product is multilinear, so
/// it vanishes on a tuple of subgroups iff it vanishes on all generator
/// tuples. Prefixes are merged by class.
pub fn cup_length(p: &Pairing, cx: &CochainComplex, restrict_to: Option<&[Vec<Vec<Int>>]>) -> Result<CupLength> {
    if !p.is_endopairing() || !same_system(cx.system(), p.left()) {
        return Err(Error::MalformedPairing("cup-length needs an endopairing on the complex's system".into()));
    }
    let top = cx.top();
    let mut gens: Vec<Vec<Vec<Int>>> = vec![Vec::new(); top + 1];
    for (k, slot) in gens.iter_mut().enumerate().skip(1) {
        let h = cx.cohomology(k)?;
        let raw = match restrict_to {
            Some(r) => r.get(k).cloned().unwrap_or_default(),
            None => h.generators(),
        };
        for g in raw {
            if !h.is_cocycle(&g) {
                return Err(Error::NotInNumerator);
            }
            slot.push(g);
        }
    }
    struct Prefix {
        degree: usize,
        cocycle: Vec<Int>,
        witness: Vec<(usize, usize)>,
    }
    let mut level: Vec<Prefix> = Vec::new();
    let mut seen: HashSet<(usize, Vec<Int>)> = HashSet::new();
    for (k, gs) in gens.iter().enumerate() {
        for (i, g) in gs.iter().enumerate() {
            let class = cx.cohomology(k)?.class_of(g)?;
            if class.iter().any(|x| !x.is_zero()) && seen.insert((k, class)) {
                level.push(Prefix { degree: k, cocycle: g.clone(), witness: vec![(k, i)] });
            }
        }
    }
    let mut best = CupLength { value: 0, lower_bound_only: cx.is_truncated(), witness: Vec::new() };
    while let Some(first) = level.first() {
        best.value += 1;
        best.witness = first.witness.clone();
        let mut next = Vec::new();
        let mut seen: HashSet<(usize, Vec<Int>)> = HashSet::new();
        for x in &level {
            for (k, gs) in gens.iter().enumerate().skip(1) {
                let degree = x.degree + k;
                if degree > top {
                    break;
                }
                for (i, g) in gs.iter().enumerate() {
                    let z = cup_product(p, &[Cochain::new(cx, x.degree, &x.cocycle), Cochain::new(cx, k, g)], cx)?;
                    let class = cx.cohomology(degree)?.class_of(&z)?;
                    if class.iter().any(|v| !v.is_zero()) && seen.insert((degree, class)) {
                        let mut witness = x.witness.clone();
                        witness.push((k, i));
                        next.push(Prefix { degree, cocycle: z, witness });
                    }
                }
            }
        }
        level = next;
    }
    Ok(best)
}

#[cfg(test)]
mod tests;
