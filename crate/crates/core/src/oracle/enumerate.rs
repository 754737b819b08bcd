use rayon::prelude::*;

use crate::arith::Rational;
use crate::distribution::RunDistribution;
use crate::error::{Result, RunError};
use crate::model::{ExactSpec, FloatSpec};

pub const DEFAULT_BRUTE_FORCE_CAP: u64 = 20;
/// Hard ceiling on a configured cap; outcomes are enumerated as `u64` bit masks.
pub const MAX_BRUTE_FORCE_CAP: u64 = 40;

const CHUNK_BITS: u64 = 12;

/// Length of the longest block of consecutive `true`s; 0 for an empty slice.
pub fn longest_run_of(bits: &[bool]) -> usize {
    bits.split(|b| !b).map(<[bool]>::len).max().unwrap_or(0)
}

/// Longest block of consecutive set bits in `mask`.
pub fn longest_run_in_mask(mut mask: u64) -> u32 {
    let mut len = 0;
    // each step shortens every block of ones by one
    while mask != 0 {
        mask &= mask << 1;
        len += 1;
    }
    len
}

/// Number of length-`n` outcome sequences by longest run and by number of successes:
/// `count(longest, ones)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunCounts {
    n: u64,
    counts: Vec<Vec<u64>>,
}

impl RunCounts {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn count(&self, longest: u64, ones: u64) -> u64 {
        self.counts[longest as usize][ones as usize]
    }

    /// Sequences with longest run at least `r`, grouped by number of successes.
    fn at_least(&self, r: u64) -> Vec<u64> {
        let mut by_ones = vec![0u64; self.n as usize + 1];
        for row in self.counts.iter().skip(r as usize) {
            for (acc, c) in by_ones.iter_mut().zip(row) {
                *acc += c;
            }
        }
        by_ones
    }
}

fn check_cap(n: u64, cap: u64) -> Result<()> {
    if cap > MAX_BRUTE_FORCE_CAP {
        return Err(RunError::InvalidConfig("brute-force cap above 40"));
    }
    if n > cap {
        return Err(RunError::BruteForceCap { n, cap });
    }
    Ok(())
}

/// Walks all `2^n` outcomes (in parallel over disjoint ranges) and tallies them.
pub fn enumerate_run_counts(n: u64, cap: u64) -> Result<RunCounts> {
    check_cap(n, cap)?;
    let width = n as usize + 1;
    let total = 1u64 << n;
    let chunk = 1u64 << CHUNK_BITS.min(n);
    let tally = |lo: u64| {
        let mut local = vec![vec![0u64; width]; width];
        for mask in lo..lo + chunk {
            local[longest_run_in_mask(mask) as usize][mask.count_ones() as usize] += 1;
        }
        local
    };
    let merge = |mut a: Vec<Vec<u64>>, b: Vec<Vec<u64>>| {
        for (ra, rb) in a.iter_mut().zip(b) {
            for (x, y) in ra.iter_mut().zip(rb) {
                *x += y;
            }
        }
        a
    };
    let counts = (0..total / chunk)
        .into_par_iter()
        .map(|i| tally(i * chunk))
        .reduce(|| vec![vec![0u64; width]; width], merge);
    Ok(RunCounts { n, counts })
}

fn exact_weights(spec: &ExactSpec) -> Vec<Rational> {
    let n = spec.n();
    (0..=n).map(|k| spec.p().pow(k) * spec.q().pow(n - k)).collect()
}

/// Exact `P(L_n >= r)` by weighted enumeration of every outcome, with the default cap.
///
/// # Panics
/// If `r == 0`.
pub fn brute_force_y(spec: &ExactSpec, r: u64) -> Result<Rational> {
    brute_force_y_with_cap(spec, r, DEFAULT_BRUTE_FORCE_CAP)
}

pub fn brute_force_y_with_cap(spec: &ExactSpec, r: u64, cap: u64) -> Result<Rational> {
    assert!(r >= 1, "run length must be at least 1");
    let counts = enumerate_run_counts(spec.n(), cap)?;
    let weights = exact_weights(spec);
    Ok(counts
        .at_least(r)
        .iter()
        .zip(&weights)
        .filter(|(c, _)| **c > 0)
        .map(|(c, w)| Rational::from(*c) * w)
        .sum())
}

pub fn brute_force_y_f64(spec: &FloatSpec, r: u64, cap: u64) -> Result<f64> {
    assert!(r >= 1, "run length must be at least 1");
    let counts = enumerate_run_counts(spec.n(), cap)?;
    let n = spec.n();
    Ok(counts
        .at_least(r)
        .iter()
        .enumerate()
        .map(|(k, c)| *c as f64 * spec.p().powi(k as i32) * spec.q().powi((n - k as u64) as i32))
        .sum())
}

/// Exact distribution of the longest run by enumeration, with the default cap.
pub fn brute_force_pmf(spec: &ExactSpec) -> Result<RunDistribution> {
    brute_force_pmf_with_cap(spec, DEFAULT_BRUTE_FORCE_CAP)
}

pub fn brute_force_pmf_with_cap(spec: &ExactSpec, cap: u64) -> Result<RunDistribution> {
    let counts = enumerate_run_counts(spec.n(), cap)?;
    let weights = exact_weights(spec);
    let pmf = counts
        .counts
        .iter()
        .map(|row| {
            row.iter()
                .zip(&weights)
                .filter(|(c, _)| **c > 0)
                .map(|(c, w)| Rational::from(*c) * w)
                .sum()
        })
        .collect();
    Ok(RunDistribution::from_pmf(spec.clone(), pmf))
}
