use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use super::fraction_parts;
use crate::arith::{binomial, reduce_over_power, Rational};
use crate::model::ExactSpec;

/// `sum_{l=0}^{floor(m/(r+1))} (-1)^l C(m - l r, l) (q p^r)^l` as an integer over `b^exp`,
/// where `p = a/b`. Returns `(numerator, exp)`.
fn beta_scaled(a: &BigInt, b: &BigInt, m: i64, r: u64) -> (BigInt, u64) {
    if m < 0 {
        return (BigInt::one(), 0);
    }
    let m = m as u64;
    let top = m / (r + 1);
    // term l = (-1)^l C_l c^l / D^l with c = (b-a) a^r, D = b^(r+1); Horner from the top
    // gives sum_l (-1)^l C_l c^l D^(top-l) over D^top.
    let c = (b - a) * Pow::pow(a, r);
    let d = Pow::pow(b, r + 1);
    let signed_binomial = |l: u64| -> BigInt {
        let coeff = BigInt::from(binomial(m - l * r, l as i64));
        if l % 2 == 1 {
            -coeff
        } else {
            coeff
        }
    };
    let mut acc = signed_binomial(top);
    let mut d_pow = BigInt::one();
    for l in (0..top).rev() {
        d_pow *= &d;
        acc *= &c;
        acc += signed_binomial(l) * &d_pow;
    }
    (acc, (r + 1) * top)
}

/// Uspensky's auxiliary sum `beta(n_eff, r)`; negative `n_eff` gives 1.
///
/// # Panics
/// If `r == 0`.
pub fn uspensky_beta(spec: &ExactSpec, n_eff: i64, r: u64) -> Rational {
    assert!(r >= 1, "run length must be at least 1");
    let (a, b) = fraction_parts(spec.p());
    let (numer, exp) = beta_scaled(&a, &b, n_eff, r);
    reduce_over_power(numer, &b, exp)
}

/// `y(n, r) = 1 - beta(n, r) + p^r beta(n - r, r)`; 0 when `r > n`.
///
/// # Panics
/// If `r == 0`.
pub fn y_uspensky(spec: &ExactSpec, r: u64) -> Rational {
    assert!(r >= 1, "run length must be at least 1");
    let n = spec.n();
    if r > n {
        return Rational::zero();
    }
    let (a, b) = fraction_parts(spec.p());
    let (beta_n, exp_n) = beta_scaled(&a, &b, n as i64, r);
    let (beta_tail, exp_tail) = beta_scaled(&a, &b, (n - r) as i64, r);
    // Everything over b^exp.
    let exp_tail = exp_tail + r;
    let exp = exp_n.max(exp_tail);
    let scale = |k: u64| Pow::pow(&b, k);
    let mut numer = scale(exp);
    numer -= beta_n * scale(exp - exp_n);
    let tail = beta_tail * Pow::pow(&a, r);
    if !tail.is_zero() {
        numer += tail * scale(exp - exp_tail);
    }
    reduce_over_power(numer, &b, exp)
}
