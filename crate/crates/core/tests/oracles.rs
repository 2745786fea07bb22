mod common;

use common::*;
use proptest::prelude::*;

const CASES: u32 = 200;

proptest! {
    #![proptest_config(ProptestConfig { cases: CASES, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn subquotient_matches_enumeration(seed in any::<u64>()) {
        subquotient_oracle(seed).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn geometric_cover_matches_chain_enumeration(seed in any::<u64>()) {
        geometric_cover_oracle(seed).map_err(TestCaseError::fail)?;
    }
}

#[test]
fn cup_length_matches_all_class_search() {
    let mut compared = 0;
    for seed in 0..CASES as u64 {
        if cup_length_oracle(seed).unwrap_or_else(|e| panic!("seed {seed}: {e}")) {
            compared += 1;
        }
    }
    // most random instances have small cohomology
    assert!(compared >= CASES as usize / 2, "only {compared} instances were small enough");
}

#[test]
fn kernel_cup_length_matches_all_class_search() {
    let mut compared = 0;
    for seed in 0..CASES as u64 {
        if kernel_cup_length_oracle(seed).unwrap_or_else(|e| panic!("seed {seed}: {e}")) {
            compared += 1;
        }
    }
    assert!(compared >= CASES as usize / 2, "only {compared} instances were small enough");
}
