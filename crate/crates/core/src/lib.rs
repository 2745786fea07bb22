//! Cohomology of finite small categories with natural-system coefficients,
//! cup products and cup-length, (bi)fibrations and coverings, and exact
//! sectional category / Švarc genus.

pub mod abelian;
pub mod category;
pub mod cochain;
pub mod cup;
pub mod error;
pub mod factorization;
pub mod fibration;
pub mod instances;
pub mod int;
pub mod secat;

pub use error::{Error, Result};
