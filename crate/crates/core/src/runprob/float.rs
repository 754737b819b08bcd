//! `f64` evaluation of the same three routes.
//!
//! The recurrence only adds non-negative increments and is the reference path here.
//! The alternating binomial sum can cancel badly once `n / (r + 1)` grows, so it
//! carries a running error estimate and defers to the recurrence when that estimate
//! exceeds [`FALLBACK_TOLERANCE`] relative to the result.

use statrs::function::factorial::ln_binomial;

use crate::error::{Result, RunError};
use crate::model::{corollary_in_domain, FloatSpec};

/// Relative error estimate above which the binomial-sum route falls back to the recurrence.
pub const FALLBACK_TOLERANCE: f64 = 1e-12;

/// Neumaier's variant of Kahan summation.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// # Panics
/// If `r == 0`.
pub fn y_recurrence(spec: &FloatSpec, r: u64) -> f64 {
    assert!(r >= 1, "run length must be at least 1");
    let n = spec.n();
    if r > n {
        return 0.0;
    }
    let p_pow_r = spec.p().powf(r as f64);
    let step = spec.q() * p_pow_r;
    let width = r as usize + 1;
    // slot m % (r+1) holds y(m) until it is overwritten by y(m + r + 1)
    let mut ring = vec![0.0f64; width];
    ring[r as usize] = p_pow_r;
    let mut current = p_pow_r;
    for m in r + 1..=n {
        let slot = (m % (r + 1)) as usize;
        current += (1.0 - ring[slot]) * step;
        ring[slot] = current;
    }
    current
}

/// A compensated sum together with an a-priori bound on its absolute error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BetaEstimate {
    pub value: f64,
    pub error_bound: f64,
}

/// `beta(n_eff, r)` summed in increasing `l` in log space with compensated summation.
///
/// # Panics
/// If `r == 0`.
pub fn uspensky_beta(spec: &FloatSpec, n_eff: i64, r: u64) -> BetaEstimate {
    assert!(r >= 1, "run length must be at least 1");
    let (p, q) = (*spec.p(), *spec.q());
    if n_eff < 0 || p == 0.0 || q == 0.0 {
        return BetaEstimate { value: 1.0, error_bound: 0.0 };
    }
    let m = n_eff as u64;
    let ln_c = q.ln() + r as f64 * p.ln();
    let mut sum = CompensatedSum::default();
    let mut abs_sum = 0.0;
    let mut term_error = 0.0;
    for l in 0..=m / (r + 1) {
        let log_mag = ln_binomial(m - l * r, l) + l as f64 * ln_c;
        let mag = log_mag.exp();
        // exp(x) inherits the absolute error of x as relative error
        term_error += mag * 64.0 * f64::EPSILON * (1.0 + log_mag.abs() + l as f64 * ln_c.abs());
        abs_sum += mag;
        sum.add(if l % 2 == 0 { mag } else { -mag });
    }
    BetaEstimate { value: sum.value(), error_bound: term_error + 4.0 * f64::EPSILON * abs_sum }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UspenskyEstimate {
    pub value: f64,
    /// Estimated absolute error of the binomial-sum evaluation.
    pub error_estimate: f64,
    /// True when the estimate was too loose and the recurrence value was returned instead.
    pub fell_back: bool,
}

/// # Panics
/// If `r == 0`.
pub fn y_uspensky_detailed(spec: &FloatSpec, r: u64) -> UspenskyEstimate {
    assert!(r >= 1, "run length must be at least 1");
    let n = spec.n();
    if r > n {
        return UspenskyEstimate { value: 0.0, error_estimate: 0.0, fell_back: false };
    }
    let p_pow_r = spec.p().powf(r as f64);
    let head = uspensky_beta(spec, n as i64, r);
    let tail = uspensky_beta(spec, (n - r) as i64, r);
    let value = 1.0 - head.value + p_pow_r * tail.value;
    let error_estimate =
        head.error_bound + p_pow_r * tail.error_bound + 4.0 * f64::EPSILON * (1.0 + head.value.abs());
    if value > 0.0 && error_estimate <= FALLBACK_TOLERANCE * value {
        UspenskyEstimate { value: value.min(1.0), error_estimate, fell_back: false }
    } else if *spec.p() == 0.0 {
        UspenskyEstimate { value: 0.0, error_estimate: 0.0, fell_back: false }
    } else {
        UspenskyEstimate { value: y_recurrence(spec, r), error_estimate, fell_back: true }
    }
}

pub fn y_uspensky(spec: &FloatSpec, r: u64) -> f64 {
    y_uspensky_detailed(spec, r).value
}

pub fn y_corollary(spec: &FloatSpec, r: u64) -> Result<f64> {
    let n = spec.n();
    if r == 0 {
        return Err(RunError::ZeroRunLength);
    }
    if !corollary_in_domain(n, r) {
        return Err(RunError::CorollaryDomain { n, r, min_r: n.div_ceil(2) });
    }
    let p_pow_r = spec.p().powf(r as f64);
    Ok(p_pow_r + (n - r) as f64 * p_pow_r * spec.q())
}

/// # Panics
/// If `r == 0`.
pub fn y_auto(spec: &FloatSpec, r: u64) -> f64 {
    assert!(r >= 1, "run length must be at least 1");
    if r > spec.n() {
        0.0
    } else if corollary_in_domain(spec.n(), r) {
        y_corollary(spec, r).expect("in corollary domain")
    } else {
        y_recurrence(spec, r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: u64, p: f64) -> FloatSpec {
        FloatSpec::new(n, p).unwrap()
    }

    #[test]
    fn de_moivre_example() {
        let s = spec(10, 0.5);
        assert_eq!(y_recurrence(&s, 3), 0.5078125);
        assert!((y_uspensky(&s, 3) - 0.5078125).abs() < 1e-15);
        assert!(!y_uspensky_detailed(&s, 3).fell_back);
    }

    #[test]
    fn compensated_sum_recovers_cancellation() {
        let mut s = CompensatedSum::default();
        for x in [1.0, 1e100, 1.0, -1e100] {
            s.add(x);
        }
        assert_eq!(s.value(), 2.0);
    }

    #[test]
    fn corollary_and_boundaries() {
        assert_eq!(y_corollary(&spec(10, 0.5), 5).unwrap(), 7.0 / 64.0);
        assert!(y_corollary(&spec(10, 0.5), 4).is_err());
        assert_eq!(y_auto(&spec(5, 0.5), 6), 0.0);
        assert_eq!(y_recurrence(&spec(0, 0.5), 1), 0.0);
        assert_eq!(y_uspensky(&spec(0, 0.5), 1), 0.0);
    }

    #[test]
    fn degenerate_probabilities() {
        for n in 1..=20 {
            for r in 1..=n {
                for f in [y_recurrence, y_uspensky, y_auto] {
                    assert_eq!(f(&spec(n, 0.0), r), 0.0);
                    assert_eq!(f(&spec(n, 1.0), r), 1.0);
                }
            }
        }
    }

    #[test]
    fn heavy_cancellation_falls_back() {
        // many alternating terms of growing size
        let s = spec(400, 0.5);
        let est = y_uspensky_detailed(&s, 1);
        assert!(est.fell_back);
        assert_eq!(est.value, y_recurrence(&s, 1));
    }
}
