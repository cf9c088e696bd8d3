//! Acceptance gate: one test per criterion, each printing its PASS/FAIL line
//! (visible under `--nocapture`; the CLI `selftest` prints the same lines).

use povmkit::acceptance::{self, CriterionResult, DEFAULT_SEED};

fn assert_criterion(result: CriterionResult) {
    println!(
        "{} criterion {:>4}: {} — {}",
        if result.passed { "PASS" } else { "FAIL" },
        result.id,
        result.name,
        result.detail
    );
    assert!(
        result.passed,
        "criterion {} ({}) failed: {}",
        result.id, result.name, result.detail
    );
}

#[test]
fn criterion_01_resolution_of_identity() {
    assert_criterion(acceptance::criterion_1_resolution_of_identity(DEFAULT_SEED));
}

#[test]
fn criterion_02_basis_quantization() {
    assert_criterion(acceptance::criterion_2_basis_quantization(DEFAULT_SEED));
}

#[test]
fn criterion_03_symbol_round_trips() {
    assert_criterion(acceptance::criterion_3_symbol_round_trips(DEFAULT_SEED));
}

#[test]
fn criterion_04_mixed_superposition() {
    assert_criterion(acceptance::criterion_4_mixed_superposition());
}

#[test]
fn criterion_05_toeplitz_naimark() {
    assert_criterion(acceptance::criterion_5_toeplitz_naimark(DEFAULT_SEED));
}

#[test]
fn criterion_06_malus() {
    assert_criterion(acceptance::criterion_6_malus(DEFAULT_SEED));
}

#[test]
fn criterion_07_sequential() {
    assert_criterion(acceptance::criterion_7_sequential());
}

// The pinned expectation (verdict Incompatible) is unattainable: the pair
// satisfies A1 + A2 ≤ 1, so the boundary joint observable with G11 = 0
// exists and the tolerance-honest verdict at the boundary is Undetermined.
// The check stays as pinned and fails; see `povm_compat`'s
// `sequential_pair_sits_exactly_on_the_boundary` for the constructive
// demonstration.
#[test]
fn criterion_08i_counterexample_pair() {
    assert_criterion(acceptance::criterion_8i_counterexample_pair());
}

#[test]
fn criterion_08ii_unbiased_iff() {
    assert_criterion(acceptance::criterion_8ii_unbiased_iff(DEFAULT_SEED));
}

#[test]
fn criterion_08iii_biased_soundness() {
    assert_criterion(acceptance::criterion_8iii_biased_soundness(DEFAULT_SEED));
}

#[test]
fn criterion_09a_son_n2() {
    assert_criterion(acceptance::criterion_9a_son_n2());
}

#[test]
fn criterion_09b_son_n3() {
    assert_criterion(acceptance::criterion_9b_son_n3());
}

#[test]
fn criterion_09c_son_n4() {
    assert_criterion(acceptance::criterion_9c_son_n4());
}

#[test]
fn criterion_09d_son_quantization() {
    assert_criterion(acceptance::criterion_9d_son_quantization(DEFAULT_SEED));
}

#[test]
fn criterion_10_entropy_curve() {
    assert_criterion(acceptance::criterion_10_entropy_curve());
}
