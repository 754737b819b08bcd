//! Probability that `n` independent Bernoulli(p) trials contain a run of at least `r`
//! consecutive successes, computed exactly over big rationals or in `f64`, together
//! with the full distribution of the longest run and brute-force / Monte Carlo oracles.
//!
//! ```
//! use runprob::{y_auto, ExactSpec, Method, RunQuery};
//!
//! let spec = ExactSpec::new(10, "1/2".parse().unwrap()).unwrap();
//! let query = RunQuery::new(spec, 3, Method::Auto).unwrap();
//! assert_eq!(y_auto(&query).to_string(), "65/128");
//! ```

pub mod arith;
pub mod distribution;
mod error;
pub mod model;
pub mod oracle;
pub mod runprob;

pub use arith::{binomial, ParseRationalError, Rational};
pub use distribution::{pmf_of_longest_run, RunDistribution};
pub use error::{Result, RunError};
pub use model::{ExactSpec, FloatSpec, Method, Probability, RunQuery, TrialSpec};
pub use runprob::{
    crosscheck, crosscheck_float, evaluate, uspensky_beta, y_auto, y_corollary, y_recurrence,
    y_uspensky, CrosscheckOptions, MethodReport,
};
