use std::fmt;
use std::str::FromStr;

use crate::arith::Rational;
use crate::error::{Result, RunError};

/// A success probability: exact rational or `f64`.
pub trait Probability: Clone + fmt::Debug + fmt::Display + Send + Sync {
    fn complement(&self) -> Self;
    fn is_valid(&self) -> bool;
}

impl Probability for Rational {
    fn complement(&self) -> Self {
        Rational::one() - self
    }

    fn is_valid(&self) -> bool {
        !self.is_negative() && *self <= 1
    }
}

impl Probability for f64 {
    fn complement(&self) -> Self {
        1.0 - self
    }

    fn is_valid(&self) -> bool {
        (0.0..=1.0).contains(self)
    }
}

/// `n` independent Bernoulli trials with success probability `p` and failure probability `q = 1 - p`.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialSpec<P> {
    n: u64,
    p: P,
    q: P,
}

pub type ExactSpec = TrialSpec<Rational>;
pub type FloatSpec = TrialSpec<f64>;

impl<P: Probability> TrialSpec<P> {
    pub fn new(n: u64, p: P) -> Result<Self> {
        if !p.is_valid() {
            return Err(RunError::ProbabilityOutOfRange(p.to_string()));
        }
        let q = p.complement();
        Ok(Self { n, p, q })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn p(&self) -> &P {
        &self.p
    }

    pub fn q(&self) -> &P {
        &self.q
    }

    /// Same success probability, different number of trials.
    pub fn with_trials(&self, n: u64) -> Self {
        Self { n, ..self.clone() }
    }
}

impl ExactSpec {
    pub fn to_float(&self) -> FloatSpec {
        TrialSpec { n: self.n, p: self.p.to_f64(), q: self.q.to_f64() }
    }
}

/// Which evaluation route to use for `P(L_n >= r)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    Recurrence,
    Uspensky,
    Corollary,
    BruteForce,
    Auto,
}

impl Method {
    pub const ALL: [Method; 5] =
        [Method::Recurrence, Method::Uspensky, Method::Corollary, Method::BruteForce, Method::Auto];

    pub fn name(self) -> &'static str {
        match self {
            Method::Recurrence => "recurrence",
            Method::Uspensky => "uspensky",
            Method::Corollary => "corollary",
            Method::BruteForce => "brute",
            Method::Auto => "auto",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown method {s:?} (expected recurrence, uspensky, corollary, brute, auto)"))
    }
}

/// A request for `y(n, r) = P(L_n >= r)` by a given method.
#[derive(Clone, Debug, PartialEq)]
pub struct RunQuery<P> {
    pub spec: TrialSpec<P>,
    pub r: u64,
    pub method: Method,
}

impl<P: Probability> RunQuery<P> {
    pub fn new(spec: TrialSpec<P>, r: u64, method: Method) -> Result<Self> {
        if r == 0 {
            return Err(RunError::ZeroRunLength);
        }
        Ok(Self { spec, r, method })
    }
}

/// True when the corollary closed form applies: `n/2 <= r <= n`.
pub fn corollary_in_domain(n: u64, r: u64) -> bool {
    r <= n && 2 * r >= n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_is_exact_complement() {
        let spec = ExactSpec::new(10, "3/10".parse().unwrap()).unwrap();
        assert_eq!(spec.q(), &"7/10".parse::<Rational>().unwrap());
        assert_eq!(spec.n(), 10);
    }

    #[test]
    fn rejects_out_of_range_probabilities() {
        assert!(ExactSpec::new(3, "3/2".parse().unwrap()).is_err());
        assert!(ExactSpec::new(3, "-1/2".parse().unwrap()).is_err());
        assert!(FloatSpec::new(3, 1.5).is_err());
        assert!(FloatSpec::new(3, f64::NAN).is_err());
        assert!(ExactSpec::new(3, Rational::zero()).is_ok());
        assert!(FloatSpec::new(3, 1.0).is_ok());
    }

    #[test]
    fn query_requires_positive_run_length() {
        let spec = FloatSpec::new(3, 0.5).unwrap();
        assert_eq!(RunQuery::new(spec.clone(), 0, Method::Auto), Err(RunError::ZeroRunLength));
        assert!(RunQuery::new(spec, 1, Method::Auto).is_ok());
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>(), Ok(m));
        }
        assert!("bogus".parse::<Method>().is_err());
    }

    #[test]
    fn corollary_domain() {
        assert!(corollary_in_domain(10, 5));
        assert!(!corollary_in_domain(10, 4));
        assert!(corollary_in_domain(11, 6));
        assert!(!corollary_in_domain(11, 5));
        assert!(!corollary_in_domain(3, 4));
        assert!(corollary_in_domain(0, 0));
    }
}
