use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type ObjId = usize;
pub type MorId = usize;

/// A finite category with a total composition table.
///
/// Objects and morphisms are dense indices in declaration order; the
/// user-facing string ids are kept for reporting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCat {
    obj_names: Vec<String>,
    mor_names: Vec<String>,
    dom: Vec<ObjId>,
    cod: Vec<ObjId>,
    identity: Vec<MorId>,
    identity_of: Vec<Option<ObjId>>,
    /// `compose[g * n + f] = g ∘ f` when `dom g == cod f`
    compose: Vec<Option<MorId>>,
    /// `hom[a * n_obj + b]` lists the morphisms `a -> b` in index order
    hom: Vec<Vec<MorId>>,
    obj_index: HashMap<String, ObjId>,
    mor_index: HashMap<String, MorId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawMorphism {
    pub id: String,
    pub dom: String,
    pub cod: String,
}

/// Serialized form of a category.
///
/// Identity morphisms may be omitted from `morphisms`; composites with an
/// identity factor may be omitted from `compose`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawCategory {
    pub objects: Vec<String>,
    #[serde(default)]
    pub morphisms: Vec<RawMorphism>,
    #[serde(default)]
    pub identities: BTreeMap<String, String>,
    /// Triples `[g, f, g∘f]`.
    #[serde(default)]
    pub compose: Vec<[String; 3]>,
}

/// Index-level description used by internal constructions.
pub(crate) struct Table {
    pub obj_names: Vec<String>,
    pub mor_names: Vec<String>,
    pub dom: Vec<ObjId>,
    pub cod: Vec<ObjId>,
    pub identity: Vec<MorId>,
    pub compose: Vec<Option<MorId>>,
}

impl FinCat {
    /// Checks the category axioms on an index-level table.
    pub(crate) fn from_table(t: Table) -> Result<FinCat> {
        let n = t.mor_names.len();
        let no = t.obj_names.len();
        let mut identity_of = vec![None; n];
        for (a, &i) in t.identity.iter().enumerate() {
            if t.dom[i] != a || t.cod[i] != a {
                return Err(Error::BadIdentity(format!(
                    "`{}` is declared the identity of `{}` but is not an endomorphism of it",
                    t.mor_names[i], t.obj_names[a]
                )));
            }
            if identity_of[i].is_some() {
                return Err(Error::BadIdentity(format!("`{}` is the identity of two objects", t.mor_names[i])));
            }
            identity_of[i] = Some(a);
        }
        let mut hom = vec![Vec::new(); no * no];
        for m in 0..n {
            hom[t.dom[m] * no + t.cod[m]].push(m);
        }
        let mut obj_index = HashMap::new();
        for (i, s) in t.obj_names.iter().enumerate() {
            if obj_index.insert(s.clone(), i).is_some() {
                return Err(Error::DuplicateId(s.clone()));
            }
        }
        let mut mor_index = HashMap::new();
        for (i, s) in t.mor_names.iter().enumerate() {
            if mor_index.insert(s.clone(), i).is_some() {
                return Err(Error::DuplicateId(s.clone()));
            }
        }
        let c = FinCat {
            obj_names: t.obj_names,
            mor_names: t.mor_names,
            dom: t.dom,
            cod: t.cod,
            identity: t.identity,
            identity_of,
            compose: t.compose,
            hom,
            obj_index,
            mor_index,
        };
        c.check_laws()?;
        Ok(c)
    }

    fn check_laws(&self) -> Result<()> {
        let n = self.n_morphisms();
        for g in 0..n {
            for f in 0..n {
                let composable = self.dom[g] == self.cod[f];
                match (composable, self.compose[g * n + f]) {
                    (true, None) => {
                        return Err(Error::MissingComposite {
                            g: self.mor_names[g].clone(),
                            f: self.mor_names[f].clone(),
                        })
                    }
                    (false, Some(_)) => {
                        return Err(Error::BadCompositionDomain {
                            g: self.mor_names[g].clone(),
                            f: self.mor_names[f].clone(),
                        })
                    }
                    (true, Some(h)) if self.dom[h] != self.dom[f] || self.cod[h] != self.cod[g] => {
                        return Err(Error::BadCompositionDomain {
                            g: self.mor_names[g].clone(),
                            f: self.mor_names[f].clone(),
                        })
                    }
                    _ => {}
                }
            }
        }
        for f in 0..n {
            let (a, b) = (self.dom[f], self.cod[f]);
            if self.comp(self.identity[b], f) != f || self.comp(f, self.identity[a]) != f {
                return Err(Error::IdentityLaw(format!("identity law fails on `{}`", self.mor_names[f])));
            }
        }
        for f in 0..n {
            for g in self.out_of(self.cod[f]) {
                let gf = self.comp(g, f);
                for h in self.out_of(self.cod[g]) {
                    if self.comp(self.comp(h, g), f) != self.comp(h, gf) {
                        return Err(Error::NonAssociative {
                            h: self.mor_names[h].clone(),
                            g: self.mor_names[g].clone(),
                            f: self.mor_names[f].clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn n_objects(&self) -> usize {
        self.obj_names.len()
    }

    pub fn n_morphisms(&self) -> usize {
        self.mor_names.len()
    }

    pub fn objects(&self) -> std::ops::Range<ObjId> {
        0..self.n_objects()
    }

    pub fn morphisms(&self) -> std::ops::Range<MorId> {
        0..self.n_morphisms()
    }

    pub fn obj_name(&self, a: ObjId) -> &str {
        &self.obj_names[a]
    }

    pub fn mor_name(&self, m: MorId) -> &str {
        &self.mor_names[m]
    }

    pub fn obj_names(&self) -> &[String] {
        &self.obj_names
    }

    pub fn mor_names(&self) -> &[String] {
        &self.mor_names
    }

    pub fn obj(&self, name: &str) -> Result<ObjId> {
        self.obj_index.get(name).copied().ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    pub fn mor(&self, name: &str) -> Result<MorId> {
        self.mor_index.get(name).copied().ok_or_else(|| Error::UnknownMorphism(name.to_string()))
    }

    pub fn dom(&self, m: MorId) -> ObjId {
        self.dom[m]
    }

    pub fn cod(&self, m: MorId) -> ObjId {
        self.cod[m]
    }

    pub fn identity(&self, a: ObjId) -> MorId {
        self.identity[a]
    }

    pub fn identity_of(&self, m: MorId) -> Option<ObjId> {
        self.identity_of[m]
    }

    pub fn is_identity(&self, m: MorId) -> bool {
        self.identity_of[m].is_some()
    }

    /// `g ∘ f` if composable.
    pub fn compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        self.compose[g * self.n_morphisms() + f]
    }

    /// `g ∘ f`; panics when not composable.
    pub fn comp(&self, g: MorId, f: MorId) -> MorId {
        self.compose(g, f)
            .unwrap_or_else(|| panic!("`{}` and `{}` are not composable", self.mor_names[g], self.mor_names[f]))
    }

    /// `λ_1 ∘ ... ∘ λ_k` for a nonempty composable list.
    pub fn comp_all(&self, ms: &[MorId]) -> MorId {
        let (&last, rest) = ms.split_last().expect("nonempty chain");
        rest.iter().rev().fold(last, |acc, &g| self.comp(g, acc))
    }

    pub fn hom(&self, a: ObjId, b: ObjId) -> &[MorId] {
        &self.hom[a * self.n_objects() + b]
    }

    /// Morphisms with domain `a`.
    pub fn out_of(&self, a: ObjId) -> impl Iterator<Item = MorId> + '_ {
        self.objects().flat_map(move |b| self.hom(a, b).iter().copied())
    }

    /// Morphisms with codomain `b`.
    pub fn into_obj(&self, b: ObjId) -> impl Iterator<Item = MorId> + '_ {
        self.objects().flat_map(move |a| self.hom(a, b).iter().copied())
    }

    pub fn non_identities(&self) -> impl Iterator<Item = MorId> + '_ {
        self.morphisms().filter(|&m| !self.is_identity(m))
    }

    /// `true` when the graph of non-identity arrows has no directed cycle
    /// (including loops). Exactly then non-degenerate chains have bounded length,
    /// at most `n_objects - 1`.
    pub fn has_bounded_nerve(&self) -> bool {
        let no = self.n_objects();
        let mut indeg = vec![0usize; no];
        for m in self.non_identities() {
            indeg[self.cod[m]] += 1;
        }
        let mut stack: Vec<ObjId> = (0..no).filter(|&a| indeg[a] == 0).collect();
        let mut seen = 0;
        while let Some(a) = stack.pop() {
            seen += 1;
            for m in self.out_of(a) {
                if self.is_identity(m) {
                    continue;
                }
                indeg[self.cod[m]] -= 1;
                if indeg[self.cod[m]] == 0 {
                    stack.push(self.cod[m]);
                }
            }
        }
        seen == no
    }

    /// Length of the longest non-degenerate chain, `None` when unbounded.
    pub fn nerve_dimension(&self) -> Option<usize> {
        if !self.has_bounded_nerve() {
            return None;
        }
        // longest path in the DAG of non-identity arrows
        let order = self.topological_order();
        let mut len = vec![0usize; self.n_objects()];
        for &a in order.iter() {
            for m in self.out_of(a) {
                if !self.is_identity(m) {
                    let b = self.cod[m];
                    len[b] = len[b].max(len[a] + 1);
                }
            }
        }
        Some(len.into_iter().max().unwrap_or(0))
    }

    fn topological_order(&self) -> Vec<ObjId> {
        let no = self.n_objects();
        let mut indeg = vec![0usize; no];
        for m in self.non_identities() {
            indeg[self.cod[m]] += 1;
        }
        let mut queue: std::collections::VecDeque<ObjId> = (0..no).filter(|&a| indeg[a] == 0).collect();
        let mut out = Vec::with_capacity(no);
        while let Some(a) = queue.pop_front() {
            out.push(a);
            for m in self.out_of(a) {
                if self.is_identity(m) {
                    continue;
                }
                indeg[self.cod[m]] -= 1;
                if indeg[self.cod[m]] == 0 {
                    queue.push_back(self.cod[m]);
                }
            }
        }
        out
    }

    pub fn to_raw(&self) -> RawCategory {
        let n = self.n_morphisms();
        let mut compose = Vec::new();
        for g in 0..n {
            for f in 0..n {
                if self.is_identity(g) || self.is_identity(f) {
                    continue;
                }
                if let Some(h) = self.compose(g, f) {
                    compose.push([self.mor_names[g].clone(), self.mor_names[f].clone(), self.mor_names[h].clone()]);
                }
            }
        }
        RawCategory {
            objects: self.obj_names.clone(),
            morphisms: self
                .morphisms()
                .map(|m| RawMorphism {
                    id: self.mor_names[m].clone(),
                    dom: self.obj_names[self.dom[m]].clone(),
                    cod: self.obj_names[self.cod[m]].clone(),
                })
                .collect(),
            identities: self
                .objects()
                .map(|a| (self.obj_names[a].clone(), self.mor_names[self.identity[a]].clone()))
                .collect(),
            compose,
        }
    }
}

/// Validates raw category data, reporting the first violated axiom.
pub fn validate_category(raw: &RawCategory) -> Result<FinCat> {
    let mut obj_index = HashMap::new();
    for (i, o) in raw.objects.iter().enumerate() {
        if obj_index.insert(o.as_str(), i).is_some() {
            return Err(Error::DuplicateId(o.clone()));
        }
    }
    let obj = |s: &str| obj_index.get(s).copied().ok_or_else(|| Error::UnknownObject(s.to_string()));

    let mut mor_names = Vec::new();
    let mut dom = Vec::new();
    let mut cod = Vec::new();
    let mut mor_index: HashMap<String, MorId> = HashMap::new();
    for m in &raw.morphisms {
        if mor_index.insert(m.id.clone(), mor_names.len()).is_some() {
            return Err(Error::DuplicateId(m.id.clone()));
        }
        mor_names.push(m.id.clone());
        dom.push(obj(&m.dom)?);
        cod.push(obj(&m.cod)?);
    }
    for k in raw.identities.keys() {
        obj(k)?;
    }
    let mut identity = Vec::with_capacity(raw.objects.len());
    for (a, o) in raw.objects.iter().enumerate() {
        let name = raw.identities.get(o).ok_or_else(|| Error::MissingIdentity(o.clone()))?;
        let i = match mor_index.get(name) {
            Some(&i) => i,
            None => {
                mor_index.insert(name.clone(), mor_names.len());
                mor_names.push(name.clone());
                dom.push(a);
                cod.push(a);
                mor_names.len() - 1
            }
        };
        identity.push(i);
    }
    let n = mor_names.len();
    let mut compose: Vec<Option<MorId>> = vec![None; n * n];
    let mor = |s: &str| mor_index.get(s).copied().ok_or_else(|| Error::UnknownMorphism(s.to_string()));
    for [g, f, h] in &raw.compose {
        let (gi, fi, hi) = (mor(g)?, mor(f)?, mor(h)?);
        if dom[gi] != cod[fi] || dom[hi] != dom[fi] || cod[hi] != cod[gi] {
            return Err(Error::BadCompositionDomain { g: g.clone(), f: f.clone() });
        }
        let slot = &mut compose[gi * n + fi];
        if slot.is_some_and(|x| x != hi) {
            return Err(Error::ConflictingComposite { g: g.clone(), f: f.clone() });
        }
        *slot = Some(hi);
    }
    // identity composites are implied; a contradicting entry is an identity-law failure
    for (a, &i) in identity.iter().enumerate() {
        if dom[i] != a || cod[i] != a {
            return Err(Error::BadIdentity(format!(
                "`{}` is declared the identity of `{}` but is not an endomorphism of it",
                mor_names[i], raw.objects[a]
            )));
        }
        for m in 0..n {
            if cod[m] == a {
                match compose[i * n + m] {
                    Some(x) if x != m => {
                        return Err(Error::IdentityLaw(format!(
                            "`{} ∘ {}` is not `{}`",
                            mor_names[i], mor_names[m], mor_names[m]
                        )))
                    }
                    _ => compose[i * n + m] = Some(m),
                }
            }
            if dom[m] == a {
                match compose[m * n + i] {
                    Some(x) if x != m => {
                        return Err(Error::IdentityLaw(format!(
                            "`{} ∘ {}` is not `{}`",
                            mor_names[m], mor_names[i], mor_names[m]
                        )))
                    }
                    _ => compose[m * n + i] = Some(m),
                }
            }
        }
    }
    FinCat::from_table(Table { obj_names: raw.objects.clone(), mor_names, dom, cod, identity, compose })
}

/// Incremental construction of small categories in code.
///
/// Identities are named `id_<object>` and need not be declared.
#[derive(Clone, Debug, Default)]
pub struct CategoryBuilder {
    raw: RawCategory,
}

impl CategoryBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(&mut self, name: &str) -> &mut Self {
        self.raw.objects.push(name.to_string());
        self.raw.identities.insert(name.to_string(), format!("id_{name}"));
        self
    }

    pub fn objects(&mut self, names: &[&str]) -> &mut Self {
        for n in names {
            self.object(n);
        }
        self
    }

    pub fn morphism(&mut self, name: &str, dom: &str, cod: &str) -> &mut Self {
        self.raw.morphisms.push(RawMorphism { id: name.into(), dom: dom.into(), cod: cod.into() });
        self
    }

    /// Declares `g ∘ f = h`.
    pub fn compose(&mut self, g: &str, f: &str, h: &str) -> &mut Self {
        self.raw.compose.push([g.into(), f.into(), h.into()]);
        self
    }

    /// Places identities first, in object order, then the declared morphisms.
    pub fn raw(&self) -> RawCategory {
        let mut raw = self.raw.clone();
        let ids: Vec<RawMorphism> = raw
            .objects
            .iter()
            .map(|o| RawMorphism { id: raw.identities[o].clone(), dom: o.clone(), cod: o.clone() })
            .collect();
        raw.morphisms = ids.into_iter().chain(raw.morphisms).collect();
        raw
    }

    pub fn build(&self) -> Result<FinCat> {
        validate_category(&self.raw())
    }
}
