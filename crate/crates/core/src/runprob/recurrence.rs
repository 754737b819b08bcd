use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use super::fraction_parts;
use crate::arith::{reduce_over_power, Rational};
use crate::model::ExactSpec;

/// `y(n, r)` by forward iteration of
/// `y(m, r) = y(m-1, r) + (1 - y(m-1-r, r)) q p^r`
/// from `y(0..r-1, r) = 0`, `y(r, r) = p^r`.
///
/// With `p = a/b` the iteration runs on integers `Z(m) = b^m (1 - y(m, r))`, which obey
/// `Z(m) = b Z(m-1) - (b-a) a^r Z(m-1-r)`. Only values still to be read are kept, so
/// the queue never holds more than `r + 1` of them.
///
/// # Panics
/// If `r == 0`.
pub fn y_recurrence(spec: &ExactSpec, r: u64) -> Rational {
    assert!(r >= 1, "run length must be at least 1");
    let n = spec.n();
    if r > n {
        return Rational::zero();
    }
    let (a, b) = fraction_parts(spec.p());
    let a_pow_r = Pow::pow(&a, r);
    let coeff = (&b - &a) * &a_pow_r;

    // Z(m) for m < r is b^m; those entries are generated on the fly from `initial`.
    let mut initial = BigInt::from(1u32);
    let mut current = Pow::pow(&b, r) - &a_pow_r;
    let last_needed = n.saturating_sub(r + 1);
    let mut pending: VecDeque<BigInt> = VecDeque::new();
    if r <= last_needed {
        pending.push_back(current.clone());
    }

    // multiplying by b is a shift when b is a power of two
    let shift = (b.magnitude().count_ones() == 1).then(|| b.trailing_zeros().unwrap_or(0));
    for m in r + 1..=n {
        let lag = m - 1 - r;
        let mut next = std::mem::take(&mut current);
        match shift {
            Some(s) => next <<= s,
            None => next *= &b,
        }
        if lag < r {
            next -= &initial * &coeff;
            initial *= &b;
        } else {
            let older = pending.pop_front().expect("lagged value retained");
            if coeff.is_one() {
                next -= older;
            } else if !coeff.is_zero() {
                next -= older * &coeff;
            }
        }
        if m <= last_needed {
            pending.push_back(next.clone());
        }
        debug_assert!(pending.len() as u64 <= r + 1);
        current = next;
    }

    let scale = Pow::pow(&b, n);
    reduce_over_power(scale - current, &b, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y(n: u64, r: u64, p: &str) -> Rational {
        y_recurrence(&ExactSpec::new(n, p.parse().unwrap()).unwrap(), r)
    }

    /// Direct rational iteration over a full table.
    fn table(n: u64, r: u64, p: &str) -> Rational {
        let p: Rational = p.parse().unwrap();
        let q = Rational::one() - &p;
        let step = &q * p.pow(r);
        let mut ys = vec![Rational::zero(); n.max(r) as usize + 1];
        ys[r as usize] = p.pow(r);
        for m in r as usize + 1..=n as usize {
            ys[m] = &ys[m - 1] + (Rational::one() - &ys[m - 1 - r as usize]) * &step;
        }
        ys[n as usize].clone()
    }

    #[test]
    fn de_moivre_example() {
        assert_eq!(y(10, 3, "1/2").to_string(), "65/128");
    }

    #[test]
    fn initial_conditions() {
        assert_eq!(y(3, 3, "1/2").to_string(), "1/8");
        assert_eq!(y(2, 3, "1/2"), Rational::zero());
        assert_eq!(y(0, 1, "1/2"), Rational::zero());
        assert_eq!(y(5, 5, "3/10"), "3/10".parse::<Rational>().unwrap().pow(5));
    }

    #[test]
    fn hand_trace() {
        // y2 = 1/4, y3 = 3/8, y4 = 1/2
        assert_eq!(y(2, 2, "1/2").to_string(), "1/4");
        assert_eq!(y(3, 2, "1/2").to_string(), "3/8");
        assert_eq!(y(4, 2, "1/2").to_string(), "1/2");
    }

    #[test]
    fn brute_force_value() {
        assert_eq!(y(6, 2, "1/3").to_string(), "281/729");
    }

    #[test]
    fn matches_table_iteration() {
        for p in ["1/2", "1/3", "3/10", "9/10", "0", "1"] {
            for n in 0..=30 {
                for r in 1..=n + 1 {
                    assert_eq!(y(n, r, p), table(n, r, p), "n={n} r={r} p={p}");
                }
            }
        }
    }

    #[test]
    fn degenerate_probabilities() {
        for n in 1..=12 {
            for r in 1..=n {
                assert_eq!(y(n, r, "0"), Rational::zero());
                assert_eq!(y(n, r, "1"), Rational::one());
            }
        }
    }
}
