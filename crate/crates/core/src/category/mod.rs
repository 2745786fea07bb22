//! Finite categories, functors, subcategories and functor homotopy.

mod constructions;
mod fincat;
mod functor;
mod search;
mod subcat;

pub use constructions::{interval_category, product, product_with_interval, projections, terminal_category};
pub(crate) use fincat::Table;
pub use fincat::{validate_category, CategoryBuilder, FinCat, MorId, ObjId, RawCategory, RawMorphism};
pub(crate) use functor::same_category;
pub use functor::{FunctorMap, RawFunctor};
pub use search::{
    adjacent_functors, all_functors, enumerate_functors, first_functor, generating_morphisms, homotopic,
    natural_transformations, walk_homotopy_class, Constraints, FunctorSpace, NatTrans, Zigzag,
};
pub use subcat::Subcategory;
