use std::collections::BTreeMap;
use std::time::Instant;

use super::{float, y_corollary, y_recurrence, y_uspensky};
use crate::arith::Rational;
use crate::model::{corollary_in_domain, Method, RunQuery};
use crate::oracle::{self, DEFAULT_BRUTE_FORCE_CAP};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CrosscheckOptions {
    /// Largest `n` for which the exhaustive enumeration is included.
    pub brute_force_cap: u64,
    /// Largest pairwise relative difference accepted in float mode.
    pub float_tolerance: f64,
}

impl Default for CrosscheckOptions {
    fn default() -> Self {
        Self { brute_force_cap: DEFAULT_BRUTE_FORCE_CAP, float_tolerance: 1e-9 }
    }
}

/// Values of every in-domain method for one query, with the agreement verdict.
#[derive(Clone, Debug, PartialEq)]
pub struct MethodReport<V> {
    pub query: RunQuery<V>,
    pub values: BTreeMap<Method, V>,
    pub agree: bool,
    /// Largest pairwise relative difference; always 0 in exact mode.
    pub max_discrepancy: f64,
    /// Wall time per method in nanoseconds.
    pub timings: BTreeMap<Method, u64>,
}

fn in_domain(n: u64, r: u64, cap: u64) -> Vec<Method> {
    let mut methods = vec![Method::Recurrence, Method::Uspensky];
    if corollary_in_domain(n, r) {
        methods.push(Method::Corollary);
    }
    if n <= cap {
        methods.push(Method::BruteForce);
    }
    methods
}

fn timed<V>(f: impl FnOnce() -> V) -> (V, u64) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed().as_nanos() as u64)
}

/// Evaluates every method whose domain contains the query and demands identical values.
/// Disagreement is reported, never raised.
pub fn crosscheck(query: &RunQuery<Rational>, opts: &CrosscheckOptions) -> MethodReport<Rational> {
    let (spec, r) = (&query.spec, query.r);
    let mut values = BTreeMap::new();
    let mut timings = BTreeMap::new();
    for method in in_domain(spec.n(), r, opts.brute_force_cap) {
        let (value, ns) = timed(|| match method {
            Method::Recurrence => y_recurrence(spec, r),
            Method::Uspensky => y_uspensky(spec, r),
            Method::Corollary => y_corollary(spec, r).expect("in corollary domain"),
            Method::BruteForce => oracle::brute_force_y_with_cap(spec, r, opts.brute_force_cap)
                .expect("under brute-force cap"),
            Method::Auto => unreachable!(),
        });
        values.insert(method, value);
        timings.insert(method, ns);
    }
    let mut iter = values.values();
    let first = iter.next();
    let agree = iter.all(|v| Some(v) == first);
    MethodReport { query: query.clone(), values, agree, max_discrepancy: 0.0, timings }
}

fn relative_difference(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// Float-mode counterpart of [`crosscheck`]; agreement means every pairwise relative
/// difference is within `opts.float_tolerance`.
pub fn crosscheck_float(query: &RunQuery<f64>, opts: &CrosscheckOptions) -> MethodReport<f64> {
    let (spec, r) = (&query.spec, query.r);
    let mut values = BTreeMap::new();
    let mut timings = BTreeMap::new();
    for method in in_domain(spec.n(), r, opts.brute_force_cap) {
        let (value, ns) = timed(|| match method {
            Method::Recurrence => float::y_recurrence(spec, r),
            Method::Uspensky => float::y_uspensky(spec, r),
            Method::Corollary => float::y_corollary(spec, r).expect("in corollary domain"),
            Method::BruteForce => oracle::brute_force_y_f64(spec, r, opts.brute_force_cap)
                .expect("under brute-force cap"),
            Method::Auto => unreachable!(),
        });
        values.insert(method, value);
        timings.insert(method, ns);
    }
    let vs: Vec<f64> = values.values().copied().collect();
    let mut max_discrepancy = 0.0f64;
    for (i, a) in vs.iter().enumerate() {
        for b in &vs[i + 1..] {
            max_discrepancy = max_discrepancy.max(relative_difference(*a, *b));
        }
    }
    let agree = vs.iter().all(|v| v.is_finite()) && max_discrepancy <= opts.float_tolerance;
    MethodReport { query: query.clone(), values, agree, max_discrepancy, timings }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ExactSpec, FloatSpec};

    fn exact(n: u64, r: u64, p: &str) -> MethodReport<Rational> {
        let spec = ExactSpec::new(n, p.parse().unwrap()).unwrap();
        crosscheck(&RunQuery::new(spec, r, Method::Auto).unwrap(), &CrosscheckOptions::default())
    }

    #[test]
    fn de_moivre_example() {
        let report = exact(10, 3, "1/2");
        assert!(report.agree);
        let names: Vec<_> = report.values.keys().copied().collect();
        assert_eq!(names, [Method::Recurrence, Method::Uspensky, Method::BruteForce]);
        assert!(report.values.values().all(|v| v.to_string() == "65/128"));
        assert_eq!(report.timings.len(), 3);
    }

    #[test]
    fn four_methods_in_domain() {
        let report = exact(4, 2, "1/2");
        assert!(report.agree);
        assert_eq!(report.values.len(), 4);
        assert!(report.values.values().all(|v| v.to_string() == "1/2"));
    }

    #[test]
    fn no_trials() {
        let report = exact(0, 1, "2/7");
        assert!(report.agree);
        assert!(report.values.values().all(Rational::is_zero));
        assert!(!report.values.contains_key(&Method::Corollary));
    }

    #[test]
    fn brute_force_dropped_above_cap() {
        let report = exact(25, 4, "1/2");
        assert!(report.agree);
        assert!(!report.values.contains_key(&Method::BruteForce));
    }

    #[test]
    fn float_mode_agrees() {
        let spec = FloatSpec::new(12, 0.3).unwrap();
        let report = crosscheck_float(&RunQuery::new(spec, 6, Method::Auto).unwrap(), &CrosscheckOptions::default());
        assert!(report.agree, "{report:?}");
        assert_eq!(report.values.len(), 4);
        assert!(report.max_discrepancy <= 1e-12);
    }

    #[test]
    fn float_disagreement_is_reported() {
        let spec = FloatSpec::new(12, 0.3).unwrap();
        let opts = CrosscheckOptions { float_tolerance: -1.0, ..Default::default() };
        let report = crosscheck_float(&RunQuery::new(spec, 3, Method::Auto).unwrap(), &opts);
        assert!(!report.agree);
    }
}
