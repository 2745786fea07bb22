use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use crate::category::{FinCat, MorId, ObjId, Subcategory};
use crate::error::{Error, Result};

/// Default bound on visited `(object, arrow set)` states.
pub const DEFAULT_STATE_LIMIT: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn with(&self, i: usize) -> Self {
        let mut b = self.clone();
        b.0[i / 64] |= 1 << (i % 64);
        b
    }

    fn is_subset(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn members(&self) -> BTreeSet<MorId> {
        let mut out = BTreeSet::new();
        for (w, &word) in self.0.iter().enumerate() {
            for i in 0..64 {
                if word >> i & 1 == 1 {
                    out.insert(w * 64 + i);
                }
            }
        }
        out
    }
}

/// Arrow sets of composable chains (identities included), closed to the
/// subcategories they generate and reduced to the maximal ones. A chain lies
/// in a subcategory iff its arrow set does, iff the generated subcategory
/// does, so covering every chain means covering each of these sets.
#[derive(Clone, Debug)]
pub struct RealizableSetFamily {
    pub base: Arc<FinCat>,
    pub maximal_sets: Vec<BTreeSet<MorId>>,
}

pub fn realizable_sets(c: &Arc<FinCat>) -> Result<RealizableSetFamily> {
    realizable_sets_within(&Subcategory::whole(c.clone()), DEFAULT_STATE_LIMIT)
}

/// Maximal realizable sets of chains using only arrows of `scope`.
pub fn realizable_sets_within(scope: &Subcategory, limit: usize) -> Result<RealizableSetFamily> {
    let c = scope.parent();
    let n = c.n_morphisms();
    let mut seen: HashSet<(ObjId, Bits)> = HashSet::new();
    let mut sets: HashSet<Bits> = HashSet::new();
    let mut stack: Vec<(ObjId, Bits)> = Vec::new();
    let empty = Bits::new(n);
    for &m in scope.morphisms() {
        let s = (c.dom(m), empty.with(m));
        if seen.insert(s.clone()) {
            stack.push(s);
        }
    }
    // chains grow at their source end
    while let Some((a, bits)) = stack.pop() {
        sets.insert(bits.clone());
        for m in c.into_obj(a) {
            if !scope.contains_morphism(m) {
                continue;
            }
            let s = (c.dom(m), bits.with(m));
            if !seen.contains(&s) {
                if seen.len() >= limit {
                    return Err(Error::SetExplosion { limit });
                }
                seen.insert(s.clone());
                stack.push(s);
            }
        }
    }
    let mut all: Vec<Bits> = sets.into_iter().collect();
    all.sort_by_key(|b| std::cmp::Reverse(b.members().len()));
    let mut maximal: Vec<Bits> = Vec::new();
    for b in all {
        if !maximal.iter().any(|m| b.is_subset(m)) {
            maximal.push(b);
        }
    }
    // a subcategory holds a set iff it holds the subcategory it generates
    let mut closed: Vec<BTreeSet<MorId>> =
        maximal.iter().map(|b| Subcategory::generated_by(c.clone(), [], b.members()).morphisms().clone()).collect();
    closed.sort_by_key(|s| std::cmp::Reverse(s.len()));
    let mut maximal_sets: Vec<BTreeSet<MorId>> = Vec::new();
    for s in closed {
        if !maximal_sets.iter().any(|m| s.is_subset(m)) {
            maximal_sets.push(s);
        }
    }
    maximal_sets.sort();
    Ok(RealizableSetFamily { base: c.clone(), maximal_sets })
}

/// Some maximal realizable set of `scope` contained in no piece.
pub fn uncovered_chain_set(pieces: &[Subcategory], scope: &Subcategory) -> Result<Option<BTreeSet<MorId>>> {
    for u in pieces {
        if !u.is_subset_of(scope) {
            return Err(Error::InvalidSubcategory(format!("piece {} is not inside the scope", u.describe())));
        }
    }
    let fam = realizable_sets_within(scope, DEFAULT_STATE_LIMIT)?;
    Ok(fam.maximal_sets.into_iter().find(|s| !pieces.iter().any(|u| s.is_subset(u.morphisms()))))
}

/// Every chain of `scope` lies in some piece.
pub fn is_geometric_cover(pieces: &[Subcategory], scope: &Subcategory) -> Result<bool> {
    Ok(uncovered_chain_set(pieces, scope)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{interval_category, CategoryBuilder};

    fn parallel() -> Arc<FinCat> {
        let mut b = CategoryBuilder::new();
        b.objects(&["C", "D"]).morphism("alpha", "C", "D").morphism("beta", "C", "D");
        Arc::new(b.build().unwrap())
    }

    #[test]
    fn parallel_arrows_have_two_maximal_sets() {
        let s = parallel();
        let fam = realizable_sets(&s).unwrap();
        assert_eq!(fam.maximal_sets, vec![BTreeSet::from([0, 1, 2]), BTreeSet::from([0, 1, 3])]);
    }

    #[test]
    fn point() {
        let p = Arc::new(interval_category(0));
        assert_eq!(realizable_sets(&p).unwrap().maximal_sets, vec![BTreeSet::from([0])]);
    }

    #[test]
    fn covers_of_parallel_arrows() {
        let s = parallel();
        let a = Subcategory::by_names(s.clone(), &[], &["alpha"]).unwrap();
        let b = Subcategory::by_names(s.clone(), &[], &["beta"]).unwrap();
        let all = Subcategory::whole(s.clone());
        assert!(is_geometric_cover(&[a.clone(), b], &all).unwrap());
        assert_eq!(uncovered_chain_set(&[a], &all).unwrap(), Some(BTreeSet::from([0, 1, 3])));
        assert!(is_geometric_cover(std::slice::from_ref(&all), &all).unwrap());
    }

    #[test]
    fn loops_terminate() {
        let mut b = CategoryBuilder::new();
        b.object("*").morphism("h", "*", "*").compose("h", "h", "id_*");
        let z2 = Arc::new(b.build().unwrap());
        assert_eq!(realizable_sets(&z2).unwrap().maximal_sets, vec![BTreeSet::from([0, 1])]);
    }

    #[test]
    fn explosion_is_reported() {
        let s = parallel();
        let r = realizable_sets_within(&Subcategory::whole(s), 2);
        assert!(matches!(r, Err(Error::SetExplosion { limit: 2 })));
    }
}
