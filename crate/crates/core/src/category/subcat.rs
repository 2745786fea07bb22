use std::collections::BTreeSet;
use std::sync::Arc;

use super::fincat::{FinCat, MorId, ObjId, Table};
use super::functor::{same_category, FunctorMap};
use crate::error::{Error, Result};

/// A subcategory; always contains the identities of its objects.
#[derive(Clone, Debug)]
pub struct Subcategory {
    parent: Arc<FinCat>,
    objects: BTreeSet<ObjId>,
    morphisms: BTreeSet<MorId>,
}

impl PartialEq for Subcategory {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects && self.morphisms == other.morphisms && same_category(&self.parent, &other.parent)
    }
}

impl Eq for Subcategory {}

impl Subcategory {
    pub fn new(parent: Arc<FinCat>, objects: BTreeSet<ObjId>, morphisms: BTreeSet<MorId>) -> Result<Self> {
        for &m in &morphisms {
            if m >= parent.n_morphisms() {
                return Err(Error::InvalidSubcategory(format!("morphism index {m} out of range")));
            }
            for end in [parent.dom(m), parent.cod(m)] {
                if !objects.contains(&end) {
                    return Err(Error::InvalidSubcategory(format!(
                        "`{}` is included but its end `{}` is not",
                        parent.mor_name(m),
                        parent.obj_name(end)
                    )));
                }
            }
        }
        for &a in &objects {
            if a >= parent.n_objects() {
                return Err(Error::InvalidSubcategory(format!("object index {a} out of range")));
            }
            if !morphisms.contains(&parent.identity(a)) {
                return Err(Error::InvalidSubcategory(format!("identity of `{}` is missing", parent.obj_name(a))));
            }
        }
        for &f in &morphisms {
            for &g in &morphisms {
                if let Some(h) = parent.compose(g, f) {
                    if !morphisms.contains(&h) {
                        return Err(Error::InvalidSubcategory(format!(
                            "not closed: `{} ∘ {}` is missing",
                            parent.mor_name(g),
                            parent.mor_name(f)
                        )));
                    }
                }
            }
        }
        Ok(Subcategory { parent, objects, morphisms })
    }

    /// Smallest subcategory containing the given objects and morphisms.
    pub fn generated_by(
        parent: Arc<FinCat>,
        objects: impl IntoIterator<Item = ObjId>,
        morphisms: impl IntoIterator<Item = MorId>,
    ) -> Self {
        let mut objs: BTreeSet<ObjId> = objects.into_iter().collect();
        let gens: Vec<MorId> = morphisms.into_iter().collect();
        for &m in &gens {
            objs.insert(parent.dom(m));
            objs.insert(parent.cod(m));
        }
        let mut mors: BTreeSet<MorId> = objs.iter().map(|&a| parent.identity(a)).collect();
        mors.extend(gens.iter().copied());
        let mut frontier: Vec<MorId> = mors.iter().copied().collect();
        while let Some(x) = frontier.pop() {
            let current: Vec<MorId> = mors.iter().copied().collect();
            for y in current {
                for h in [parent.compose(x, y), parent.compose(y, x)].into_iter().flatten() {
                    if mors.insert(h) {
                        frontier.push(h);
                    }
                }
            }
        }
        Subcategory { parent, objects: objs, morphisms: mors }
    }

    pub fn by_names(parent: Arc<FinCat>, objects: &[&str], morphisms: &[&str]) -> Result<Self> {
        let o = objects.iter().map(|s| parent.obj(s)).collect::<Result<Vec<_>>>()?;
        let m = morphisms.iter().map(|s| parent.mor(s)).collect::<Result<Vec<_>>>()?;
        Ok(Subcategory::generated_by(parent, o, m))
    }

    pub fn whole(parent: Arc<FinCat>) -> Self {
        Subcategory { objects: parent.objects().collect(), morphisms: parent.morphisms().collect(), parent }
    }

    pub fn empty(parent: Arc<FinCat>) -> Self {
        Subcategory { parent, objects: BTreeSet::new(), morphisms: BTreeSet::new() }
    }

    pub fn union(&self, other: &Subcategory) -> Result<Subcategory> {
        if !same_category(&self.parent, &other.parent) {
            return Err(Error::InvalidSubcategory("union of subcategories of different categories".into()));
        }
        Ok(Subcategory::generated_by(
            self.parent.clone(),
            self.objects.union(&other.objects).copied(),
            self.morphisms.union(&other.morphisms).copied(),
        ))
    }

    pub fn parent(&self) -> &Arc<FinCat> {
        &self.parent
    }

    pub fn objects(&self) -> &BTreeSet<ObjId> {
        &self.objects
    }

    pub fn morphisms(&self) -> &BTreeSet<MorId> {
        &self.morphisms
    }

    pub fn contains_object(&self, a: ObjId) -> bool {
        self.objects.contains(&a)
    }

    pub fn contains_morphism(&self, m: MorId) -> bool {
        self.morphisms.contains(&m)
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn is_whole(&self) -> bool {
        self.morphisms.len() == self.parent.n_morphisms() && self.objects.len() == self.parent.n_objects()
    }

    pub fn is_subset_of(&self, other: &Subcategory) -> bool {
        self.objects.is_subset(&other.objects) && self.morphisms.is_subset(&other.morphisms)
    }

    /// Non-identity morphism names, for display.
    pub fn describe(&self) -> String {
        let objs: Vec<&str> = self.objects.iter().map(|&a| self.parent.obj_name(a)).collect();
        let mors: Vec<&str> =
            self.morphisms.iter().filter(|&&m| !self.parent.is_identity(m)).map(|&m| self.parent.mor_name(m)).collect();
        format!("objects {{{}}}, arrows {{{}}}", objs.join(", "), mors.join(", "))
    }

    /// The subcategory as a category of its own, with its inclusion functor.
    /// Ids are inherited from the parent.
    pub fn to_category(&self) -> (Arc<FinCat>, FunctorMap) {
        let objs: Vec<ObjId> = self.objects.iter().copied().collect();
        let mors: Vec<MorId> = self.morphisms.iter().copied().collect();
        let mut obj_pos = vec![usize::MAX; self.parent.n_objects()];
        for (i, &a) in objs.iter().enumerate() {
            obj_pos[a] = i;
        }
        let mut mor_pos = vec![usize::MAX; self.parent.n_morphisms()];
        for (i, &m) in mors.iter().enumerate() {
            mor_pos[m] = i;
        }
        let n = mors.len();
        let mut compose = vec![None; n * n];
        for (gi, &g) in mors.iter().enumerate() {
            for (fi, &f) in mors.iter().enumerate() {
                if let Some(h) = self.parent.compose(g, f) {
                    compose[gi * n + fi] = Some(mor_pos[h]);
                }
            }
        }
        let table = Table {
            obj_names: objs.iter().map(|&a| self.parent.obj_name(a).to_string()).collect(),
            mor_names: mors.iter().map(|&m| self.parent.mor_name(m).to_string()).collect(),
            dom: mors.iter().map(|&m| obj_pos[self.parent.dom(m)]).collect(),
            cod: mors.iter().map(|&m| obj_pos[self.parent.cod(m)]).collect(),
            identity: objs.iter().map(|&a| mor_pos[self.parent.identity(a)]).collect(),
            compose,
        };
        let cat = Arc::new(FinCat::from_table(table).expect("a subcategory is a category"));
        let incl = FunctorMap::new_unchecked(cat.clone(), self.parent.clone(), objs, mors);
        (cat, incl)
    }
}
