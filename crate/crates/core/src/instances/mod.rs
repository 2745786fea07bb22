//! Bundled example instances and a random instance generator.

mod bundled;
mod random;

use std::sync::Arc;

pub use bundled::{load_bundled, projective_plane_category, sign_system, BUNDLED};
pub use random::{
    category_of_elements, character_system, characters, cyclic_group, generate_random, random_functor, RandomParams,
};

use crate::category::{same_category, FinCat, FunctorMap};
use crate::error::{Error, Result};
use crate::factorization::{validate_pairing, NaturalSystem, Pairing};

/// A category with optional coefficients, pairing and a functor into it.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    /// the base: coefficients live here and `functor` lands here
    pub category: Arc<FinCat>,
    pub system: Option<Arc<NaturalSystem>>,
    pub pairing: Option<Pairing>,
    pub functor: Option<FunctorMap>,
    /// degree cap used when the nerve is unbounded
    pub degree_cap: Option<usize>,
}

impl Instance {
    /// Re-runs every validator on the parts present.
    pub fn validate(&self) -> Result<()> {
        let c = &self.category;
        crate::category::validate_category(&c.to_raw())?;
        if let Some(d) = &self.system {
            if !same_category(d.base(), c) {
                return Err(Error::MismatchedFunctors("system lives on another category".into()));
            }
            d.check_functorial()?;
        }
        if let Some(p) = &self.pairing {
            match &self.system {
                Some(d) if Arc::ptr_eq(p.left(), d) && p.is_endopairing() => {}
                _ => return Err(Error::MalformedPairing("pairing is not an endopairing on the system".into())),
            }
            validate_pairing(p)?;
        }
        if let Some(f) = &self.functor {
            if !same_category(f.target(), c) {
                return Err(Error::MismatchedFunctors("functor does not land in the base".into()));
            }
            crate::category::validate_category(&f.source().to_raw())?;
            FunctorMap::new(f.source().clone(), f.target().clone(), f.obj_map().to_vec(), f.mor_map().to_vec())?;
        }
        if self.degree_cap.is_none() && !c.has_bounded_nerve() {
            return Err(Error::DegreeCapRequired);
        }
        Ok(())
    }

    pub fn system(&self) -> Option<&Arc<NaturalSystem>> {
        self.system.as_ref()
    }

    pub fn total(&self) -> Option<&Arc<FinCat>> {
        self.functor.as_ref().map(FunctorMap::source)
    }
}
