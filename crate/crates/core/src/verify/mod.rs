//! Numerical verification of the Haar-coefficient characterizations.
//!
//! Two-sided equivalences are checked as ratio boundedness and stability
//! under grid refinement. The two endpoint inequalities, with their
//! explicit constants `2^{1/p1 + 1/p2}` and `4`, hold exactly on the grid
//! and are checked with an absolute slack of [`ENDPOINT_SLACK`].

mod checks;
mod record;
mod sweep;

pub use checks::{
    check_counterexample_nonmonotone, check_endpoint_coeff_bound, check_endpoint_partial_sum_bound,
    check_lemma1, check_monotone_1d, check_theorem1, check_theorem2, check_ulyanov_1d,
    CoefficientSequence, Counterexample, EndpointCheck,
};
pub use record::{Check, Outcome, Ratio, RatioRecord, RecordExponents, VerificationReport};
pub use sweep::{random_spectrum, run_sweep, verify_function, SweepConfig, DEFAULT_CONFIG};

pub const ENDPOINT_SLACK: f64 = 1e-10;

/// max/min of the finite, positive ratios; `None` when there are none.
pub fn ratio_spread<'a>(records: impl IntoIterator<Item = &'a RatioRecord>) -> Option<f64> {
    let (lo, hi) = records
        .into_iter()
        .filter_map(|r| r.ratio.finite())
        .filter(|&x| x > 0.0)
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), x| {
            (lo.min(x), hi.max(x))
        });
    (hi > 0.0).then(|| hi / lo)
}
