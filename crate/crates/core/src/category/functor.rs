use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::fincat::{FinCat, MorId, ObjId};
use crate::error::{Error, Result};

/// A functor between finite categories, stored as index maps.
#[derive(Clone, Debug)]
pub struct FunctorMap {
    source: Arc<FinCat>,
    target: Arc<FinCat>,
    obj: Vec<ObjId>,
    mor: Vec<MorId>,
}

impl PartialEq for FunctorMap {
    fn eq(&self, other: &Self) -> bool {
        self.obj == other.obj
            && self.mor == other.mor
            && (Arc::ptr_eq(&self.source, &other.source) || self.source == other.source)
            && (Arc::ptr_eq(&self.target, &other.target) || self.target == other.target)
    }
}

impl Eq for FunctorMap {}

/// Serialized object and morphism assignments. Identity morphisms may be
/// left out of `mor_map`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawFunctor {
    pub obj_map: BTreeMap<String, String>,
    #[serde(default)]
    pub mor_map: BTreeMap<String, String>,
}

pub(crate) fn same_category(a: &Arc<FinCat>, b: &Arc<FinCat>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl FunctorMap {
    /// Checks that the maps preserve domains, codomains, identities and composition.
    pub fn new(source: Arc<FinCat>, target: Arc<FinCat>, obj: Vec<ObjId>, mor: Vec<MorId>) -> Result<Self> {
        if obj.len() != source.n_objects() || mor.len() != source.n_morphisms() {
            return Err(Error::NotAFunctor("object or morphism map is incomplete".into()));
        }
        if let Some(&b) = obj.iter().find(|&&b| b >= target.n_objects()) {
            return Err(Error::NotAFunctor(format!("object index {b} out of range")));
        }
        if let Some(&m) = mor.iter().find(|&&m| m >= target.n_morphisms()) {
            return Err(Error::NotAFunctor(format!("morphism index {m} out of range")));
        }
        for m in source.morphisms() {
            let fm = mor[m];
            if target.dom(fm) != obj[source.dom(m)] || target.cod(fm) != obj[source.cod(m)] {
                return Err(Error::NotAFunctor(format!(
                    "`{}` is sent to `{}` whose ends do not match",
                    source.mor_name(m),
                    target.mor_name(fm)
                )));
            }
        }
        for a in source.objects() {
            if mor[source.identity(a)] != target.identity(obj[a]) {
                return Err(Error::NotAFunctor(format!("identity of `{}` is not preserved", source.obj_name(a))));
            }
        }
        for f in source.morphisms() {
            for g in source.out_of(source.cod(f)) {
                if mor[source.comp(g, f)] != target.comp(mor[g], mor[f]) {
                    return Err(Error::NotAFunctor(format!(
                        "composite `{} ∘ {}` is not preserved",
                        source.mor_name(g),
                        source.mor_name(f)
                    )));
                }
            }
        }
        Ok(FunctorMap { source, target, obj, mor })
    }

    pub(crate) fn new_unchecked(source: Arc<FinCat>, target: Arc<FinCat>, obj: Vec<ObjId>, mor: Vec<MorId>) -> Self {
        debug_assert!(FunctorMap::new(source.clone(), target.clone(), obj.clone(), mor.clone()).is_ok());
        FunctorMap { source, target, obj, mor }
    }

    pub fn from_raw(source: Arc<FinCat>, target: Arc<FinCat>, raw: &RawFunctor) -> Result<Self> {
        for k in raw.obj_map.keys() {
            source.obj(k)?;
        }
        for k in raw.mor_map.keys() {
            source.mor(k)?;
        }
        let mut obj = Vec::with_capacity(source.n_objects());
        for a in source.objects() {
            let name = source.obj_name(a);
            let img =
                raw.obj_map.get(name).ok_or_else(|| Error::NotAFunctor(format!("object `{name}` has no image")))?;
            obj.push(target.obj(img)?);
        }
        let mut mor = Vec::with_capacity(source.n_morphisms());
        for m in source.morphisms() {
            let name = source.mor_name(m);
            let img = match (raw.mor_map.get(name), source.identity_of(m)) {
                (Some(img), _) => target.mor(img)?,
                (None, Some(a)) => target.identity(obj[a]),
                (None, None) => return Err(Error::NotAFunctor(format!("morphism `{name}` has no image"))),
            };
            mor.push(img);
        }
        FunctorMap::new(source, target, obj, mor)
    }

    pub fn to_raw(&self) -> RawFunctor {
        RawFunctor {
            obj_map: self
                .source
                .objects()
                .map(|a| (self.source.obj_name(a).to_string(), self.target.obj_name(self.obj[a]).to_string()))
                .collect(),
            mor_map: self
                .source
                .morphisms()
                .filter(|&m| !self.source.is_identity(m))
                .map(|m| (self.source.mor_name(m).to_string(), self.target.mor_name(self.mor[m]).to_string()))
                .collect(),
        }
    }

    pub fn identity(c: Arc<FinCat>) -> Self {
        let obj = c.objects().collect();
        let mor = c.morphisms().collect();
        FunctorMap { source: c.clone(), target: c, obj, mor }
    }

    /// The functor with every object sent to `b` and every morphism to `id_b`.
    pub fn constant(source: Arc<FinCat>, target: Arc<FinCat>, b: ObjId) -> Self {
        let obj = vec![b; source.n_objects()];
        let mor = vec![target.identity(b); source.n_morphisms()];
        FunctorMap { source, target, obj, mor }
    }

    pub fn source(&self) -> &Arc<FinCat> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCat> {
        &self.target
    }

    pub fn obj(&self, a: ObjId) -> ObjId {
        self.obj[a]
    }

    pub fn mor(&self, m: MorId) -> MorId {
        self.mor[m]
    }

    pub fn obj_map(&self) -> &[ObjId] {
        &self.obj
    }

    pub fn mor_map(&self) -> &[MorId] {
        &self.mor
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &FunctorMap) -> Result<FunctorMap> {
        if !same_category(&first.target, &self.source) {
            return Err(Error::MismatchedFunctors("inner target differs from outer source".into()));
        }
        Ok(FunctorMap {
            source: first.source.clone(),
            target: self.target.clone(),
            obj: first.obj.iter().map(|&a| self.obj[a]).collect(),
            mor: first.mor.iter().map(|&m| self.mor[m]).collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        same_category(&self.source, &self.target)
            && self.obj.iter().enumerate().all(|(i, &a)| i == a)
            && self.mor.iter().enumerate().all(|(i, &m)| i == m)
    }
}
