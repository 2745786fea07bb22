use std::collections::BTreeMap;
use std::sync::Arc;

use super::system::{constant_system, pullback_system, NaturalSystem};
use crate::abelian::AbGroup;
use crate::category::{same_category, FinCat, FunctorMap, MorId};
use crate::error::{Error, Result};
use crate::int::{int, Int};

/// A pairing `(D; D') -> D''`: for every 2-chain `(λ₁, λ₂)` a bilinear map
/// `D_{λ₁} × D'_{λ₂} -> D''_{λ₁∘λ₂}`, stored by its values on generator pairs.
#[derive(Clone, Debug)]
pub struct Pairing {
    left: Arc<NaturalSystem>,
    right: Arc<NaturalSystem>,
    out: Arc<NaturalSystem>,
    /// `tensors[(λ₁, λ₂)][i][j]` is `e_i · e_j`
    tensors: BTreeMap<(MorId, MorId), Vec<Vec<Vec<Int>>>>,
}

impl Pairing {
    /// Builds a pairing from its generator values and validates it.
    pub fn from_fn(
        left: Arc<NaturalSystem>,
        right: Arc<NaturalSystem>,
        out: Arc<NaturalSystem>,
        value: impl Fn(MorId, MorId, usize, usize) -> Vec<Int>,
    ) -> Result<Self> {
        let p = Self::assemble(left, right, out, value)?;
        validate_pairing(&p)?;
        Ok(p)
    }

    fn assemble(
        left: Arc<NaturalSystem>,
        right: Arc<NaturalSystem>,
        out: Arc<NaturalSystem>,
        value: impl Fn(MorId, MorId, usize, usize) -> Vec<Int>,
    ) -> Result<Self> {
        let c = left.base().clone();
        if !same_category(&c, right.base()) || !same_category(&c, out.base()) {
            return Err(Error::MalformedPairing("systems live on different categories".into()));
        }
        let mut tensors = BTreeMap::new();
        for l2 in c.morphisms() {
            for l1 in c.out_of(c.cod(l2)) {
                let (a, b) = (left.value(l1), right.value(l2));
                let target = out.value(c.comp(l1, l2));
                let mut t = Vec::with_capacity(a.dim());
                for i in 0..a.dim() {
                    let mut row = Vec::with_capacity(b.dim());
                    for j in 0..b.dim() {
                        let v = value(l1, l2, i, j);
                        if v.len() != target.dim() {
                            return Err(Error::MalformedPairing(format!(
                                "value on ({}, {}) has {} coordinates, expected {}",
                                c.mor_name(l1),
                                c.mor_name(l2),
                                v.len(),
                                target.dim()
                            )));
                        }
                        for m in [&a.moduli()[i], &b.moduli()[j]] {
                            let scaled: Vec<Int> = v.iter().map(|x| x * m).collect();
                            if !m.is_zero() && !target.is_zero(&scaled) {
                                return Err(Error::MalformedPairing(format!(
                                    "value on ({}, {}) is not bilinear",
                                    c.mor_name(l1),
                                    c.mor_name(l2)
                                )));
                            }
                        }
                        row.push(target.reduce(&v));
                    }
                    t.push(row);
                }
                tensors.insert((l1, l2), t);
            }
        }
        Ok(Pairing { left, right, out, tensors })
    }

    pub fn base(&self) -> &Arc<FinCat> {
        self.left.base()
    }

    pub fn left(&self) -> &Arc<NaturalSystem> {
        &self.left
    }

    pub fn right(&self) -> &Arc<NaturalSystem> {
        &self.right
    }

    pub fn out(&self) -> &Arc<NaturalSystem> {
        &self.out
    }

    /// `x · y` for `x ∈ D_{λ₁}`, `y ∈ D'_{λ₂}`.
    pub fn multiply(&self, l1: MorId, l2: MorId, x: &[Int], y: &[Int]) -> Vec<Int> {
        let c = self.base();
        let target = self.out.value(c.comp(l1, l2));
        let t = &self.tensors[&(l1, l2)];
        let mut acc = target.zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let k = xi * yj;
                for (a, v) in acc.iter_mut().zip(&t[i][j]) {
                    *a += &k * v;
                }
            }
        }
        target.reduce(&acc)
    }

    pub fn is_endopairing(&self) -> bool {
        Arc::ptr_eq(&self.left, &self.right) && Arc::ptr_eq(&self.left, &self.out)
    }

    /// `F*μ` on `(F*D, F*D') -> F*D''`.
    pub fn pullback(&self, f: &FunctorMap) -> Result<Pairing> {
        let left = Arc::new(pullback_system(f, &self.left)?);
        let (right, out) = if self.is_endopairing() {
            (left.clone(), left.clone())
        } else {
            (Arc::new(pullback_system(f, &self.right)?), Arc::new(pullback_system(f, &self.out)?))
        };
        let src = f.source();
        let mut tensors = BTreeMap::new();
        for l2 in src.morphisms() {
            for l1 in src.out_of(src.cod(l2)) {
                tensors.insert((l1, l2), self.tensors[&(f.mor(l1), f.mor(l2))].clone());
            }
        }
        Ok(Pairing { left, right, out, tensors })
    }
}

/// Ring multiplication on the constant system `Z` (`m = 0`) or `Z/m`.
pub fn ring_pairing(c: Arc<FinCat>, m: u64) -> Pairing {
    let g = if m == 0 { AbGroup::free(1) } else { AbGroup::cyclic(m) };
    let d = Arc::new(constant_system(c, &g));
    let value = if g.is_trivial() { vec![] } else { vec![int(1)] };
    Pairing::assemble(d.clone(), d.clone(), d, |_, _, _, _| value.clone()).expect("ring multiplication")
}

/// The zero endopairing on `d`.
pub fn zero_pairing(d: Arc<NaturalSystem>) -> Pairing {
    let c = d.base().clone();
    let dd = d.clone();
    Pairing::assemble(d.clone(), d.clone(), d, move |l1, l2, _, _| dd.value(c.comp(l1, l2)).zero())
        .expect("zero pairing")
}

/// Checks the three naturality identities on every generator pair:
/// 1. `(g^* x)·y = x·(g_* y)`
/// 2. `f_*(x·y) = (f_* x)·y`
/// 3. `h^*(x·y) = x·(h^* y)`
pub fn validate_pairing(p: &Pairing) -> Result<()> {
    let c = p.base();
    let name = |m: MorId| c.mor_name(m).to_string();
    let basis = |dim: usize, i: usize| {
        let mut e = vec![Int::ZERO; dim];
        e[i] = int(1);
        e
    };
    let (d, d1, d2) = (&p.left, &p.right, &p.out);
    for l2 in c.morphisms() {
        for l1 in c.out_of(c.cod(l2)) {
            let (nx, ny) = (d.value(l1).dim(), d1.value(l2).dim());
            let l12 = c.comp(l1, l2);
            for i in 0..nx {
                let x = basis(nx, i);
                for j in 0..ny {
                    let y = basis(ny, j);
                    let xy = p.multiply(l1, l2, &x, &y);
                    for f in c.out_of(c.cod(l1)) {
                        let lhs = d2.push(f, l12).apply(&xy);
                        let rhs = p.multiply(c.comp(f, l1), l2, &d.push(f, l1).apply(&x), &y);
                        if lhs != rhs {
                            return Err(Error::PairingNotNatural {
                                identity: 2,
                                witness: format!("f = {} on ({}, {})", name(f), name(l1), name(l2)),
                            });
                        }
                    }
                    for h in c.into_obj(c.dom(l2)) {
                        let lhs = d2.pull(h, l12).apply(&xy);
                        let rhs = p.multiply(l1, c.comp(l2, h), &x, &d1.pull(h, l2).apply(&y));
                        if lhs != rhs {
                            return Err(Error::PairingNotNatural {
                                identity: 3,
                                witness: format!("h = {} on ({}, {})", name(h), name(l1), name(l2)),
                            });
                        }
                    }
                }
            }
        }
    }
    // identity 1 runs over 3-chains (λ₁, g, λ₂)
    for l2 in c.morphisms() {
        for g in c.out_of(c.cod(l2)) {
            for l1 in c.out_of(c.cod(g)) {
                let (nx, ny) = (d.value(l1).dim(), d1.value(l2).dim());
                for i in 0..nx {
                    let x = basis(nx, i);
                    for j in 0..ny {
                        let y = basis(ny, j);
                        let lhs = p.multiply(c.comp(l1, g), l2, &d.pull(g, l1).apply(&x), &y);
                        let rhs = p.multiply(l1, c.comp(g, l2), &x, &d1.push(g, l2).apply(&y));
                        if lhs != rhs {
                            return Err(Error::PairingNotNatural {
                                identity: 1,
                                witness: format!("g = {} between {} and {}", name(g), name(l1), name(l2)),
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(())
}
