mod common;

use common::*;
use proptest::prelude::*;

/// Randomized cases per property.
const CASES: u32 = 200;

fn run(check: fn(u64) -> Check, seed: u64) -> Result<(), TestCaseError> {
    check(seed).map_err(|e| TestCaseError::fail(format!("seed {seed}: {e}")))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: CASES, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn coboundary_squares_to_zero(seed in any::<u64>()) { run(delta_squared, seed)?; }

    #[test]
    fn reduced_and_full_cohomology_agree(seed in any::<u64>()) { run(reduced_matches_full, seed)?; }

    #[test]
    fn cup_product_satisfies_leibniz(seed in any::<u64>()) { run(leibniz, seed)?; }

    #[test]
    fn iterated_leibniz_and_associativity(seed in any::<u64>()) { run(iterated_leibniz, seed)?; }

    #[test]
    fn pullback_is_contravariant(seed in any::<u64>()) { run(functoriality, seed)?; }

    #[test]
    fn pairings_are_natural(seed in any::<u64>()) { run(pairing_identities, seed)?; }

    #[test]
    fn relative_sequence_is_exact_in_the_middle(seed in any::<u64>()) { run(exactness, seed)?; }

    #[test]
    fn relative_cup_commutes_with_gamma(seed in any::<u64>()) { run(relative_naturality, seed)?; }

    #[test]
    fn cup_of_classes_ignores_representatives(seed in any::<u64>()) { run(representative_independence, seed)?; }

    #[test]
    fn coverings_are_bifibrations(seed in any::<u64>()) { run(covering_is_bifibration, seed)?; }

    #[test]
    fn bifibrations_pull_back(seed in any::<u64>()) { run(pullback_of_bifibration, seed)?; }

    #[test]
    fn cartesian_lifts_unique_up_to_vertical_iso(seed in any::<u64>()) { run(lift_uniqueness, seed)?; }

    #[test]
    fn homotopic_genus_equals_sectional_category(seed in any::<u64>()) { run(genus_equals_secat, seed)?; }

    #[test]
    fn kernel_cup_length_bounds_genus(seed in any::<u64>()) { run(svarc_inequality, seed)?; }
}
