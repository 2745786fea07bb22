use std::collections::HashMap;
use std::sync::Arc;

use crate::category::{FinCat, FunctorMap, MorId, Table};

/// The factorization category of `base`: objects are the morphisms `λ`, a
/// morphism `λ -> α∘λ∘β` is a pair `(α, β)`.
#[derive(Clone, Debug)]
pub struct FactCat {
    base: Arc<FinCat>,
    cat: Arc<FinCat>,
    /// `(λ, α, β)` for every morphism of `cat`
    pairs: Vec<(MorId, MorId, MorId)>,
    index: HashMap<(MorId, MorId, MorId), MorId>,
}

impl FactCat {
    pub fn new(base: Arc<FinCat>) -> Self {
        let mut pairs = Vec::new();
        for l in base.morphisms() {
            for a in base.out_of(base.cod(l)) {
                for b in base.into_obj(base.dom(l)) {
                    pairs.push((l, a, b));
                }
            }
        }
        let index: HashMap<_, _> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let target = |&(l, a, b): &(MorId, MorId, MorId)| base.comp(a, base.comp(l, b));
        let n = pairs.len();
        let mut compose = vec![None; n * n];
        for (f, pf) in pairs.iter().enumerate() {
            let mu = target(pf);
            let (_, a, b) = *pf;
            for a2 in base.out_of(base.cod(mu)) {
                for b2 in base.into_obj(base.dom(mu)) {
                    let g = index[&(mu, a2, b2)];
                    let h = index[&(pf.0, base.comp(a2, a), base.comp(b, b2))];
                    compose[g * n + f] = Some(h);
                }
            }
        }
        let name = |&(l, a, b): &(MorId, MorId, MorId)| {
            format!("({},{})@{}", base.mor_name(a), base.mor_name(b), base.mor_name(l))
        };
        let table = Table {
            obj_names: base.mor_names().to_vec(),
            mor_names: pairs.iter().map(name).collect(),
            dom: pairs.iter().map(|p| p.0).collect(),
            cod: pairs.iter().map(target).collect(),
            identity: base
                .morphisms()
                .map(|l| index[&(l, base.identity(base.cod(l)), base.identity(base.dom(l)))])
                .collect(),
            compose,
        };
        let cat = Arc::new(FinCat::from_table(table).expect("factorization category is a category"));
        FactCat { base, cat, pairs, index }
    }

    pub fn base(&self) -> &Arc<FinCat> {
        &self.base
    }

    pub fn category(&self) -> &Arc<FinCat> {
        &self.cat
    }

    /// `(λ, α, β)` of a morphism of the factorization category.
    pub fn pair(&self, m: MorId) -> (MorId, MorId, MorId) {
        self.pairs[m]
    }

    pub fn morphism(&self, lambda: MorId, alpha: MorId, beta: MorId) -> Option<MorId> {
        self.index.get(&(lambda, alpha, beta)).copied()
    }
}

/// `F^`: `(α, β)@λ |-> (Fα, Fβ)@Fλ`.
pub fn induced_hat(f: &FunctorMap, src: &FactCat, dst: &FactCat) -> FunctorMap {
    assert!(Arc::ptr_eq(src.base(), f.source()) || **src.base() == **f.source());
    assert!(Arc::ptr_eq(dst.base(), f.target()) || **dst.base() == **f.target());
    let obj: Vec<MorId> = src.base.morphisms().map(|l| f.mor(l)).collect();
    let mor: Vec<MorId> = src
        .pairs
        .iter()
        .map(|&(l, a, b)| dst.morphism(f.mor(l), f.mor(a), f.mor(b)).expect("image pair exists"))
        .collect();
    FunctorMap::new(src.cat.clone(), dst.cat.clone(), obj, mor).expect("induced functor on factorizations")
}
