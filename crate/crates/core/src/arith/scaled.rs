use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};

use super::Rational;

/// Reduces `numer / base^exp` to lowest terms without a full big-integer gcd.
///
/// Every prime in the denominator divides `base`, so common factors are found by
/// repeatedly taking `gcd(numer mod base, base)`. Powers of two reduce in one step.
pub(crate) fn reduce_over_power(numer: BigInt, base: &BigInt, exp: u64) -> Rational {
    debug_assert!(base.is_positive());
    if numer.is_zero() {
        return Rational::zero();
    }
    if exp == 0 || base.is_one() {
        return Rational::from_integer(numer);
    }

    if base.magnitude().count_ones() == 1 {
        let per = base.trailing_zeros().unwrap_or(0);
        let total = per * exp;
        let common = numer.trailing_zeros().unwrap_or(0).min(total);
        let denom = BigInt::one() << (total - common);
        return Rational::from_reduced(numer >> common, denom);
    }

    let mut numer = numer;
    let mut denom = Pow::pow(base, exp);
    for _ in 0..64 {
        let h = numer.mod_floor(base).gcd(base);
        let h = denom.mod_floor(&h).gcd(&h);
        if h.is_one() {
            return Rational::from_reduced(numer, denom);
        }
        numer /= &h;
        denom /= &h;
    }
    Rational::new(numer, denom).expect("positive denominator")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(numer: i64, base: i64, exp: u64) {
        let got = reduce_over_power(BigInt::from(numer), &BigInt::from(base), exp);
        let want = Rational::new(numer, Pow::pow(BigInt::from(base), exp)).unwrap();
        assert_eq!(got, want, "{numer} / {base}^{exp}");
    }

    #[test]
    fn matches_plain_normalization() {
        check(520, 2, 10);
        check(0, 3, 5);
        check(-12, 2, 2);
        check(1024, 2, 10);
        check(2048, 2, 10);
        check(81, 3, 3);
        check(30, 10, 2);
        check(1000, 10, 2);
        check(7, 10, 0);
        check(5, 1, 9);
        check(48, 12, 3);
        check(1 << 40, 6, 30);
        check(3i64.pow(30), 6, 40);
        check(97, 35, 4);
    }

    #[test]
    fn large_common_powers() {
        let base = BigInt::from(3);
        let numer = Pow::pow(&base, 500u64) * 2;
        let r = reduce_over_power(numer, &base, 700);
        assert_eq!(r, Rational::new(2, Pow::pow(&base, 200u64)).unwrap());
    }
}
