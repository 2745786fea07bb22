use crate::category::{FinCat, MorId, ObjId, Subcategory};

/// A composable string `(λ₁, …, λₙ)` with `dom λᵢ = cod λᵢ₊₁`; in degree 0
/// an object.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChainIndex {
    mors: Vec<MorId>,
    /// `cod λ₁` (the object itself in degree 0)
    target: ObjId,
    /// `dom λₙ`
    source: ObjId,
    composite: MorId,
    degenerate: bool,
}

impl ChainIndex {
    pub fn object(c: &FinCat, a: ObjId) -> Self {
        ChainIndex { mors: Vec::new(), target: a, source: a, composite: c.identity(a), degenerate: false }
    }

    /// Panics if the morphisms are not composable.
    pub fn new(c: &FinCat, mors: Vec<MorId>) -> Self {
        assert!(!mors.is_empty(), "use ChainIndex::object in degree 0");
        let composite = c.comp_all(&mors);
        let degenerate = mors.iter().any(|&m| c.is_identity(m));
        ChainIndex { target: c.cod(mors[0]), source: c.dom(*mors.last().unwrap()), mors, composite, degenerate }
    }

    pub fn degree(&self) -> usize {
        self.mors.len()
    }

    pub fn morphisms(&self) -> &[MorId] {
        &self.mors
    }

    pub fn composite(&self) -> MorId {
        self.composite
    }

    pub fn target(&self) -> ObjId {
        self.target
    }

    pub fn source(&self) -> ObjId {
        self.source
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    /// Lookup key: the morphism list, or `[id_A]` in degree 0.
    pub fn key(&self) -> Vec<MorId> {
        if self.mors.is_empty() {
            vec![self.composite]
        } else {
            self.mors.clone()
        }
    }

    /// `(λ₁, …, λ_k)`; the object `cod λ₁` when `k = 0`.
    pub fn front(&self, c: &FinCat, k: usize) -> ChainIndex {
        if k == 0 {
            ChainIndex::object(c, self.target)
        } else {
            ChainIndex::new(c, self.mors[..k].to_vec())
        }
    }

    /// The last `k` morphisms; the object `dom λₙ` when `k = 0`.
    pub fn back(&self, c: &FinCat, k: usize) -> ChainIndex {
        let n = self.mors.len();
        if k == 0 {
            ChainIndex::object(c, self.source)
        } else {
            ChainIndex::new(c, self.mors[n - k..].to_vec())
        }
    }

    pub fn lies_in(&self, u: &Subcategory) -> bool {
        if self.mors.is_empty() {
            u.contains_object(self.target)
        } else {
            self.mors.iter().all(|&m| u.contains_morphism(m))
        }
    }

    pub fn describe(&self, c: &FinCat) -> String {
        if self.mors.is_empty() {
            c.obj_name(self.target).to_string()
        } else {
            let names: Vec<&str> = self.mors.iter().map(|&m| c.mor_name(m)).collect();
            format!("({})", names.join(","))
        }
    }
}

/// All `n`-chains in lexicographic order of morphism ids; with `reduced`
/// only the non-degenerate ones. Degree 0 gives the objects.
pub fn enumerate_chains(c: &FinCat, n: usize, reduced: bool) -> Vec<ChainIndex> {
    if n == 0 {
        return c.objects().map(|a| ChainIndex::object(c, a)).collect();
    }
    let mut out = Vec::new();
    let mut stack = Vec::with_capacity(n);
    let usable = |m: MorId| !(reduced && c.is_identity(m));
    fn extend(c: &FinCat, n: usize, usable: &dyn Fn(MorId) -> bool, stack: &mut Vec<MorId>, out: &mut Vec<ChainIndex>) {
        if stack.len() == n {
            out.push(ChainIndex::new(c, stack.clone()));
            return;
        }
        let mut next: Vec<MorId> = match stack.last() {
            None => c.morphisms().collect(),
            Some(&m) => c.into_obj(c.dom(m)).collect(),
        };
        next.sort_unstable();
        for m in next {
            if usable(m) {
                stack.push(m);
                extend(c, n, usable, stack, out);
                stack.pop();
            }
        }
    }
    extend(c, n, &usable, &mut stack, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{terminal_category, CategoryBuilder};

    #[test]
    fn parallel_arrows() {
        let mut b = CategoryBuilder::new();
        b.objects(&["C", "D"]).morphism("alpha", "C", "D").morphism("beta", "C", "D");
        let s = b.build().unwrap();
        let one: Vec<String> = enumerate_chains(&s, 1, true).iter().map(|x| x.describe(&s)).collect();
        assert_eq!(one, ["(alpha)", "(beta)"]);
        assert!(enumerate_chains(&s, 2, true).is_empty());
        assert_eq!(enumerate_chains(&s, 0, true).len(), 2);
        // full 2-chains: (id_C,id_C), (id_D,-) three ways, (alpha,id_C), (beta,id_C)
        assert_eq!(enumerate_chains(&s, 1, false).len(), 4);
        assert_eq!(enumerate_chains(&s, 2, false).len(), 6);
    }

    #[test]
    fn halves() {
        let mut b = CategoryBuilder::new();
        b.objects(&["0", "1", "2"])
            .morphism("f", "0", "1")
            .morphism("g", "1", "2")
            .morphism("gf", "0", "2")
            .compose("g", "f", "gf");
        let c = b.build().unwrap();
        let x = ChainIndex::new(&c, vec![c.mor("g").unwrap(), c.mor("f").unwrap()]);
        assert_eq!(x.composite(), c.mor("gf").unwrap());
        assert_eq!(x.front(&c, 0).describe(&c), "2");
        assert_eq!(x.back(&c, 0).describe(&c), "0");
        assert_eq!(x.front(&c, 1).describe(&c), "(g)");
        assert_eq!(x.back(&c, 1).describe(&c), "(f)");
    }

    #[test]
    fn terminal_has_only_degenerate_chains() {
        let t = terminal_category();
        assert_eq!(enumerate_chains(&t, 3, false).len(), 1);
        assert!(enumerate_chains(&t, 1, true).is_empty());
    }
}
