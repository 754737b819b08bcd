use num_traits::Pow;

use super::fraction_parts;
use crate::arith::{reduce_over_power, Rational};
use crate::error::{Result, RunError};
use crate::model::{corollary_in_domain, ExactSpec};

/// Closed form `y(n, r) = p^r + (n - r) p^r q`, valid only for `n/2 <= r <= n`
/// (at most one run of size `r` fits in `n` trials).
pub fn y_corollary(spec: &ExactSpec, r: u64) -> Result<Rational> {
    let n = spec.n();
    if r == 0 {
        return Err(RunError::ZeroRunLength);
    }
    if !corollary_in_domain(n, r) {
        return Err(RunError::CorollaryDomain { n, r, min_r: n.div_ceil(2) });
    }
    let (a, b) = fraction_parts(spec.p());
    // a^r (b + (n-r)(b-a)) / b^(r+1)
    let numer = Pow::pow(&a, r) * (&b + (&b - &a) * (n - r));
    Ok(reduce_over_power(numer, &b, r + 1))
}
