//! Cartesian arrows, (op-)fibrations, coverings, fibers and pullbacks.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::category::{FinCat, FunctorMap, MorId, ObjId, Subcategory, Table};
use crate::error::Result;

/// Why an arrow fails to be (op-)Cartesian: the test arrow `beta` and the
/// base arrow `alpha_bar`, with the number of fillers found (0 or ≥ 2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftFailure {
    pub beta: MorId,
    pub alpha_bar: MorId,
    pub fillers: usize,
}

/// `None` when `φ` is Cartesian for `p`.
pub fn cartesian_failure(p: &FunctorMap, phi: MorId) -> Option<LiftFailure> {
    let (e, b) = (p.source(), p.target());
    let (e1, e2) = (e.dom(phi), e.cod(phi));
    let p_phi = p.mor(phi);
    for x in e.objects() {
        for &beta in e.hom(x, e2) {
            for &ab in b.hom(p.obj(x), p.obj(e1)) {
                if b.comp(p_phi, ab) != p.mor(beta) {
                    continue;
                }
                let fillers = e.hom(x, e1).iter().filter(|&&a| e.comp(phi, a) == beta && p.mor(a) == ab).count();
                if fillers != 1 {
                    return Some(LiftFailure { beta, alpha_bar: ab, fillers });
                }
            }
        }
    }
    None
}

/// `None` when `φ` is op-Cartesian for `p`.
pub fn opcartesian_failure(p: &FunctorMap, phi: MorId) -> Option<LiftFailure> {
    let (e, b) = (p.source(), p.target());
    let (e1, e2) = (e.dom(phi), e.cod(phi));
    let p_phi = p.mor(phi);
    for x in e.objects() {
        for &beta in e.hom(e1, x) {
            for &ab in b.hom(p.obj(e2), p.obj(x)) {
                if b.comp(ab, p_phi) != p.mor(beta) {
                    continue;
                }
                let fillers = e.hom(e2, x).iter().filter(|&&a| e.comp(a, phi) == beta && p.mor(a) == ab).count();
                if fillers != 1 {
                    return Some(LiftFailure { beta, alpha_bar: ab, fillers });
                }
            }
        }
    }
    None
}

pub fn is_cartesian(p: &FunctorMap, phi: MorId) -> bool {
    cartesian_failure(p, phi).is_none()
}

pub fn is_opcartesian(p: &FunctorMap, phi: MorId) -> bool {
    opcartesian_failure(p, phi).is_none()
}

/// All Cartesian lifts of `φ̄` ending at `e2`, in increasing id order.
pub fn cartesian_lifts(p: &FunctorMap, phi_bar: MorId, e2: ObjId) -> Vec<MorId> {
    p.source().into_obj(e2).filter(|&m| p.mor(m) == phi_bar && is_cartesian(p, m)).collect()
}

/// All op-Cartesian lifts of `φ̄` starting at `e1`, in increasing id order.
pub fn opcartesian_lifts(p: &FunctorMap, phi_bar: MorId, e1: ObjId) -> Vec<MorId> {
    p.source().out_of(e1).filter(|&m| p.mor(m) == phi_bar && is_opcartesian(p, m)).collect()
}

/// A base arrow and an object over one of its ends, by name.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LiftProblem {
    pub arrow: String,
    pub object: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibrationReport {
    pub is_fibration: bool,
    pub is_opfibration: bool,
    pub is_covering: bool,
    /// problems with no Cartesian lift
    pub fibration_witnesses: Vec<LiftProblem>,
    /// problems with no op-Cartesian lift
    pub opfibration_witnesses: Vec<LiftProblem>,
    /// why the functor is not a covering, if it is not
    pub covering_witness: Option<String>,
    /// `Cart(φ̄, e₂)`: least Cartesian lift of `φ̄` ending at `e₂`
    pub cartesian_lifts: BTreeMap<String, BTreeMap<String, String>>,
    /// `opCart(φ̄, e₁)`: least op-Cartesian lift of `φ̄` starting at `e₁`
    pub opcartesian_lifts: BTreeMap<String, BTreeMap<String, String>>,
}

impl FibrationReport {
    pub fn is_bifibration(&self) -> bool {
        self.is_fibration && self.is_opfibration
    }
}

/// `None` when `p` is a covering.
pub fn covering_failure(p: &FunctorMap) -> Option<String> {
    let (e, b) = (p.source(), p.target());
    let hit: BTreeSet<ObjId> = e.objects().map(|x| p.obj(x)).collect();
    if let Some(miss) = b.objects().find(|y| !hit.contains(y)) {
        return Some(format!("no object over `{}`", b.obj_name(miss)));
    }
    for x in e.objects() {
        let px = p.obj(x);
        let sides: [(&str, Vec<MorId>, Vec<MorId>); 2] = [
            ("into", e.into_obj(x).collect(), b.into_obj(px).collect()),
            ("out of", e.out_of(x).collect(), b.out_of(px).collect()),
        ];
        for (side, up, down) in sides {
            let image: BTreeSet<MorId> = up.iter().map(|&m| p.mor(m)).collect();
            if up.len() != down.len() || image.len() != down.len() {
                return Some(format!("arrows {side} `{}` do not correspond bijectively", e.obj_name(x)));
            }
        }
    }
    None
}

pub fn is_covering(p: &FunctorMap) -> bool {
    covering_failure(p).is_none()
}

/// Exhaustive classification of `p`.
pub fn classify(p: &FunctorMap) -> FibrationReport {
    let (e, b) = (p.source(), p.target());
    let mut fib_w = Vec::new();
    let mut opfib_w = Vec::new();
    let mut cart = BTreeMap::new();
    let mut opcart = BTreeMap::new();
    let cart_flags: Vec<bool> = e.morphisms().map(|m| is_cartesian(p, m)).collect();
    let opcart_flags: Vec<bool> = e.morphisms().map(|m| is_opcartesian(p, m)).collect();
    for phi_bar in b.morphisms() {
        let (b1, b2) = (b.dom(phi_bar), b.cod(phi_bar));
        for x in e.objects() {
            if p.obj(x) == b2 {
                let lift = e.into_obj(x).filter(|&m| p.mor(m) == phi_bar && cart_flags[m]).min();
                let problem = LiftProblem { arrow: b.mor_name(phi_bar).into(), object: e.obj_name(x).into() };
                match lift {
                    Some(m) => {
                        cart.entry(problem.arrow)
                            .or_insert_with(BTreeMap::new)
                            .insert(problem.object, e.mor_name(m).into());
                    }
                    None => fib_w.push(problem),
                }
            }
            if p.obj(x) == b1 {
                let lift = e.out_of(x).filter(|&m| p.mor(m) == phi_bar && opcart_flags[m]).min();
                let problem = LiftProblem { arrow: b.mor_name(phi_bar).into(), object: e.obj_name(x).into() };
                match lift {
                    Some(m) => {
                        opcart
                            .entry(problem.arrow)
                            .or_insert_with(BTreeMap::new)
                            .insert(problem.object, e.mor_name(m).into());
                    }
                    None => opfib_w.push(problem),
                }
            }
        }
    }
    let covering_witness = covering_failure(p);
    let report = FibrationReport {
        is_fibration: fib_w.is_empty(),
        is_opfibration: opfib_w.is_empty(),
        is_covering: covering_witness.is_none(),
        fibration_witnesses: fib_w,
        opfibration_witnesses: opfib_w,
        covering_witness,
        cartesian_lifts: cart,
        opcartesian_lifts: opcart,
    };
    assert!(!report.is_covering || report.is_bifibration(), "a covering must be a bifibration");
    report
}

/// Objects over `b` with the vertical arrows between them.
pub fn fiber(p: &FunctorMap, b: ObjId) -> Subcategory {
    let e = p.source();
    let id_b = p.target().identity(b);
    let objects: BTreeSet<ObjId> = e.objects().filter(|&x| p.obj(x) == b).collect();
    let morphisms: BTreeSet<MorId> =
        e.morphisms().filter(|&m| p.mor(m) == id_b && objects.contains(&e.dom(m))).collect();
    Subcategory::new(e.clone(), objects, morphisms).expect("fibers are subcategories")
}

/// The pullback square of `p: E -> B` along `f: B' -> B`: returns
/// `E' = {(c, d) : f c = p d}` with `p': E' -> B'` and `f': E' -> E`.
pub fn pullback(p: &FunctorMap, f: &FunctorMap) -> Result<(Arc<FinCat>, FunctorMap, FunctorMap)> {
    if !crate::category::same_category(p.target(), f.target()) {
        return Err(crate::Error::MismatchedFunctors("functors have different targets".into()));
    }
    let (bp, e) = (f.source(), p.source());
    let mut objs: Vec<(ObjId, ObjId)> = Vec::new();
    for c in bp.objects() {
        for d in e.objects() {
            if f.obj(c) == p.obj(d) {
                objs.push((c, d));
            }
        }
    }
    let obj_index: BTreeMap<(ObjId, ObjId), usize> = objs.iter().enumerate().map(|(i, &o)| (o, i)).collect();
    let mut mors: Vec<(MorId, MorId)> = Vec::new();
    for u in bp.morphisms() {
        for v in e.morphisms() {
            if f.mor(u) == p.mor(v)
                && obj_index.contains_key(&(bp.dom(u), e.dom(v)))
                && obj_index.contains_key(&(bp.cod(u), e.cod(v)))
            {
                mors.push((u, v));
            }
        }
    }
    let mor_index: BTreeMap<(MorId, MorId), usize> = mors.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let n = mors.len();
    let mut compose = vec![None; n * n];
    for (i, &(u1, v1)) in mors.iter().enumerate() {
        for (j, &(u2, v2)) in mors.iter().enumerate() {
            if let (Some(u), Some(v)) = (bp.compose(u2, u1), e.compose(v2, v1)) {
                compose[j * n + i] = Some(mor_index[&(u, v)]);
            }
        }
    }
    let table = Table {
        obj_names: objs.iter().map(|&(c, d)| format!("({},{})", bp.obj_name(c), e.obj_name(d))).collect(),
        mor_names: mors.iter().map(|&(u, v)| format!("({},{})", bp.mor_name(u), e.mor_name(v))).collect(),
        dom: mors.iter().map(|&(u, v)| obj_index[&(bp.dom(u), e.dom(v))]).collect(),
        cod: mors.iter().map(|&(u, v)| obj_index[&(bp.cod(u), e.cod(v))]).collect(),
        identity: objs.iter().map(|&(c, d)| mor_index[&(bp.identity(c), e.identity(d))]).collect(),
        compose,
    };
    let ep = Arc::new(FinCat::from_table(table)?);
    let p_prime = FunctorMap::new(
        ep.clone(),
        bp.clone(),
        objs.iter().map(|o| o.0).collect(),
        mors.iter().map(|m| m.0).collect(),
    )?;
    let f_prime =
        FunctorMap::new(ep.clone(), e.clone(), objs.iter().map(|o| o.1).collect(), mors.iter().map(|m| m.1).collect())?;
    Ok((ep, p_prime, f_prime))
}
