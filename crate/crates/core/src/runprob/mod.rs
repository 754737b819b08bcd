//! Exact and floating-point evaluation of `y(n, r) = P(L_n >= r)`, the probability
//! that `n` Bernoulli(p) trials contain at least `r` consecutive successes.
//!
//! Three independent routes are provided: the order-`r + 1` difference equation,
//! the alternating binomial sum, and the closed form valid for `n/2 <= r <= n`.

mod corollary;
mod crosscheck;
pub mod float;
mod recurrence;
mod uspensky;

use num_bigint::BigInt;

use crate::arith::Rational;

pub use corollary::y_corollary;
pub use crosscheck::{crosscheck, crosscheck_float, CrosscheckOptions, MethodReport};
pub use recurrence::y_recurrence;
pub use uspensky::{uspensky_beta, y_uspensky};

use crate::error::Result;
use crate::model::{corollary_in_domain, ExactSpec, Method, RunQuery};
use crate::oracle;

/// Split `p = a / b` into its numerator and (positive) denominator.
fn fraction_parts(p: &Rational) -> (BigInt, BigInt) {
    (p.numer().clone(), p.denom().clone())
}

/// Cheapest exact route: 0 if `r > n`, the closed form when `2r >= n`, the recurrence otherwise.
///
/// # Panics
/// If `query.r == 0`.
pub fn y_auto(query: &RunQuery<Rational>) -> Rational {
    let (n, r) = (query.spec.n(), query.r);
    assert!(r >= 1, "run length must be at least 1");
    if r > n {
        Rational::zero()
    } else if corollary_in_domain(n, r) {
        y_corollary(&query.spec, r).expect("in corollary domain")
    } else {
        y_recurrence(&query.spec, r)
    }
}

/// Evaluate `query` with the method it names.
pub fn evaluate(query: &RunQuery<Rational>) -> Result<Rational> {
    evaluate_with(&query.spec, query.r, query.method)
}

pub(crate) fn evaluate_with(spec: &ExactSpec, r: u64, method: Method) -> Result<Rational> {
    Ok(match method {
        Method::Recurrence => y_recurrence(spec, r),
        Method::Uspensky => y_uspensky(spec, r),
        Method::Corollary => y_corollary(spec, r)?,
        Method::BruteForce => oracle::brute_force_y(spec, r)?,
        Method::Auto => {
            if r > spec.n() {
                Rational::zero()
            } else if corollary_in_domain(spec.n(), r) {
                y_corollary(spec, r)?
            } else {
                y_recurrence(spec, r)
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: u64, r: u64, p: &str) -> RunQuery<Rational> {
        RunQuery::new(ExactSpec::new(n, p.parse().unwrap()).unwrap(), r, Method::Auto).unwrap()
    }

    #[test]
    fn auto_dispatch() {
        assert_eq!(y_auto(&q(5, 6, "1/2")), Rational::zero());
        assert_eq!(y_auto(&q(10, 3, "1/2")).to_string(), "65/128");
        assert_eq!(y_auto(&q(10, 5, "1/2")).to_string(), "7/64");
        assert_eq!(y_auto(&q(0, 1, "1/3")), Rational::zero());
    }

    #[test]
    fn evaluate_honours_method() {
        let mut query = q(10, 3, "1/2");
        for m in [Method::Recurrence, Method::Uspensky, Method::BruteForce, Method::Auto] {
            query.method = m;
            assert_eq!(evaluate(&query).unwrap().to_string(), "65/128", "{m}");
        }
        query.method = Method::Corollary;
        assert!(evaluate(&query).is_err());
    }
}
