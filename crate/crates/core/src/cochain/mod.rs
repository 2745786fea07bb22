mod chains;
mod complex;
mod maps;

pub use chains::{enumerate_chains, ChainIndex};
pub use complex::{
    cohomology, full_complex_cohomology, relative_cohomology, relative_complex, CochainComplex, CochainGroup,
    CohomologyGroup, Variant,
};
pub use maps::{
    cochain_map, gamma_map, induced_cochain_map, induced_cohomology_map, ker_generators, pullback_complexes,
    restriction_map,
};
