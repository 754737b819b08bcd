//! Independent ground truth: exhaustive enumeration for small `n` and a seeded
//! Monte Carlo estimator whose result does not depend on the thread count.

mod enumerate;
mod monte_carlo;

pub use enumerate::{
    brute_force_pmf, brute_force_pmf_with_cap, brute_force_y, brute_force_y_f64,
    brute_force_y_with_cap, enumerate_run_counts, longest_run_in_mask, longest_run_of, RunCounts,
    DEFAULT_BRUTE_FORCE_CAP, MAX_BRUTE_FORCE_CAP,
};
pub use monte_carlo::{monte_carlo_y, monte_carlo_y_with_workers, McConfig, McEstimate};
