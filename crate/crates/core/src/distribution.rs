//! Exact distribution of the longest success run `L_n`.
//!
//! `P(L_n = k) = y(n, k) - y(n, k + 1)`, with `y(n, 0) = 1` (some run of length at least
//! zero always exists) and `y(n, r) = 0` for `r > n`.

use rayon::prelude::*;

use crate::arith::Rational;
use crate::model::{ExactSpec, FloatSpec};
use crate::runprob::{float, y_recurrence};

/// Probability mass function of `L_n` over `0..=n`.
#[derive(Clone, Debug, PartialEq)]
pub struct RunDistribution {
    spec: ExactSpec,
    pmf: Vec<Rational>,
}

/// Computes `P(L_n = k)` for every `k` from one recurrence sweep per run length.
pub fn pmf_of_longest_run(spec: &ExactSpec) -> RunDistribution {
    let n = spec.n();
    let mut tails: Vec<Rational> = Vec::with_capacity(n as usize + 2);
    tails.push(Rational::one());
    tails.par_extend((1..=n).into_par_iter().map(|r| y_recurrence(spec, r)));
    tails.push(Rational::zero());
    let pmf = tails.windows(2).map(|w| &w[0] - &w[1]).collect();
    RunDistribution { spec: spec.clone(), pmf }
}

/// Float counterpart of [`pmf_of_longest_run`].
pub fn pmf_of_longest_run_f64(spec: &FloatSpec) -> Vec<f64> {
    let n = spec.n();
    let mut tails = vec![1.0];
    tails.par_extend((1..=n).into_par_iter().map(|r| float::y_recurrence(spec, r)));
    tails.push(0.0);
    tails.windows(2).map(|w| (w[0] - w[1]).max(0.0)).collect()
}

impl RunDistribution {
    pub(crate) fn from_pmf(spec: ExactSpec, pmf: Vec<Rational>) -> Self {
        debug_assert_eq!(pmf.len() as u64, spec.n() + 1);
        Self { spec, pmf }
    }

    pub fn spec(&self) -> &ExactSpec {
        &self.spec
    }

    /// `pmf()[k] = P(L_n = k)`.
    pub fn pmf(&self) -> &[Rational] {
        &self.pmf
    }

    pub fn total_mass(&self) -> Rational {
        self.pmf.iter().sum()
    }

    /// `P(L_n <= k)`.
    pub fn cdf(&self, k: u64) -> Rational {
        self.pmf.iter().take(k as usize + 1).sum()
    }

    /// `P(L_n >= r)`; 1 for `r = 0` and 0 beyond `n`.
    pub fn tail(&self, r: u64) -> Rational {
        self.pmf.iter().skip(r as usize).sum()
    }

    /// `E[L_n] = sum_k k P(L_n = k)`, which also equals `sum_{r >= 1} P(L_n >= r)`.
    pub fn expectation(&self) -> Rational {
        let mean: Rational = self
            .pmf
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, m)| Rational::from(k as u64) * m)
            .sum();
        debug_assert_eq!(mean, (1..=self.spec.n()).map(|r| self.tail(r)).sum::<Rational>());
        mean
    }

    /// Smallest `k` with `P(L_n <= k) >= alpha`.
    ///
    /// # Panics
    /// If `alpha` is outside `[0, 1]`.
    pub fn quantile(&self, alpha: &Rational) -> u64 {
        assert!(!alpha.is_negative() && *alpha <= 1, "quantile level must lie in [0, 1]");
        let mut cdf = Rational::zero();
        for (k, mass) in self.pmf.iter().enumerate() {
            cdf = cdf + mass;
            if cdf >= *alpha {
                return k as u64;
            }
        }
        self.spec.n()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dist(n: u64, p: &str) -> RunDistribution {
        pmf_of_longest_run(&ExactSpec::new(n, p.parse().unwrap()).unwrap())
    }

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn text(d: &RunDistribution) -> Vec<String> {
        d.pmf().iter().map(ToString::to_string).collect()
    }

    #[test]
    fn two_fair_trials() {
        let d = dist(2, "1/2");
        assert_eq!(text(&d), ["1/4", "1/2", "1/4"]);
        assert_eq!(d.expectation(), Rational::one());
        assert_eq!(d.cdf(0), r("1/4"));
        assert_eq!(d.cdf(1), r("3/4"));
        assert_eq!(d.quantile(&r("1/2")), 1);
        assert_eq!(d.quantile(&Rational::zero()), 0);
        assert_eq!(d.quantile(&Rational::one()), 2);
    }

    #[test]
    fn empty_sequence() {
        let d = dist(0, "1/2");
        assert_eq!(d.pmf(), [Rational::one()]);
        assert_eq!(d.expectation(), Rational::zero());
        assert_eq!(d.quantile(&Rational::one()), 0);
    }

    #[test]
    fn single_trial_expectation_is_p() {
        for p in ["1/3", "3/10", "0", "1"] {
            assert_eq!(dist(1, p).expectation(), r(p));
        }
    }

    #[test]
    fn ten_fair_trials() {
        let d = dist(10, "1/2");
        assert_eq!(d.tail(3), r("65/128"));
        assert_eq!(d.expectation(), r("1433/512"));
        assert_eq!(d.pmf()[1], r("143/1024"));
        assert_eq!(d.total_mass(), Rational::one());
        assert_eq!(d.tail(0), Rational::one());
        assert_eq!(d.tail(11), Rational::zero());
    }

    #[test]
    fn degenerate_quantile_with_certain_success() {
        let d = dist(5, "1");
        assert_eq!(d.quantile(&r("1/100")), 5);
    }

    #[test]
    fn float_pmf_tracks_exact() {
        let exact = dist(30, "3/10");
        let approx = pmf_of_longest_run_f64(&FloatSpec::new(30, 0.3).unwrap());
        for (e, a) in exact.pmf().iter().zip(&approx) {
            assert!((e.to_f64() - a).abs() < 1e-14);
        }
    }
}
