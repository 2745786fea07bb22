mod fact;
mod pairing;
mod system;

pub use fact::{induced_hat, FactCat};
pub use pairing::{ring_pairing, validate_pairing, zero_pairing, Pairing};
pub use system::{constant_system, pullback_system, NaturalSystem, RawNaturalSystem, RawStructureMap};
