//! Differential checks against brute-force oracles on small random nets.
//! The acceptance run repeats them at full size.

use ptpn_testkit::criteria::{pre_equivalence, solver_properties, threshold_equivalence, zero_cost_reduction};

fn expect_ok(r: Result<String, String>) {
    match r {
        Ok(summary) => eprintln!("{summary}"),
        Err(e) => panic!("{e}"),
    }
}

#[test]
fn pre_operators_match_brute_force() {
    expect_ok(pre_equivalence(8, 5, 101));
}

#[test]
fn threshold_matches_forward_oracle() {
    expect_ok(threshold_equivalence(20, 102));
}

#[test]
fn coverability_matches_zero_threshold() {
    expect_ok(zero_cost_reduction(20, 103));
}

#[test]
fn verdicts_are_monotone_and_fixpoints_order_independent() {
    expect_ok(solver_properties(10, 104));
}
