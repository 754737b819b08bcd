//! Exact arithmetic substrate: normalized big rationals and binomial coefficients.

mod binomial;
mod rational;
mod scaled;

pub use binomial::binomial;
pub use rational::{ParseRationalError, Rational};
pub(crate) use scaled::reduce_over_power;
