//! Exact linear algebra over finitely generated abelian groups.

mod group;
mod matrix;
mod smith;
mod subquotient;

pub use group::{hom_kernel, solve, AbGroup, AbHom, CyclicSum};
pub use matrix::IntMatrix;
pub use smith::{smith_normal_form, Smith};
pub use subquotient::{induced_subquotient_map, kernel_of_subquotient_map, Subquotient};
