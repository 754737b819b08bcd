use num_bigint::BigUint;
use num_traits::One;

/// Exact binomial coefficient `C(n, k)`; zero when `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > n {
        return BigUint::ZERO;
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigUint::one();
    // acc = C(n - k + i, i) after step i, so the division is exact.
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Pascal's triangle, built by additions only.
    fn pascal_row(n: usize) -> Vec<BigUint> {
        let mut row = vec![BigUint::one()];
        for _ in 0..n {
            let mut next = Vec::with_capacity(row.len() + 1);
            next.push(BigUint::one());
            for w in row.windows(2) {
                next.push(&w[0] + &w[1]);
            }
            next.push(BigUint::one());
            row = next;
        }
        row
    }

    #[test]
    fn small_values() {
        assert_eq!(binomial(7, 1), BigUint::from(7u32));
        assert_eq!(binomial(4, 2), BigUint::from(6u32));
        assert_eq!(binomial(0, 0), BigUint::one());
    }

    #[test]
    fn out_of_range_is_zero() {
        assert_eq!(binomial(5, -1), BigUint::ZERO);
        assert_eq!(binomial(5, 6), BigUint::ZERO);
        assert_eq!(binomial(0, 1), BigUint::ZERO);
    }

    #[test]
    fn fifty_choose_twenty_five_matches_pascal() {
        let row = pascal_row(50);
        let expected: BigUint = "126410606437752".parse().unwrap();
        assert_eq!(row[25], expected);
        assert_eq!(binomial(50, 25), expected);
    }

    #[test]
    fn whole_rows_match_pascal() {
        for n in 0..=80usize {
            let row = pascal_row(n);
            for (k, c) in row.iter().enumerate() {
                assert_eq!(&binomial(n as u64, k as i64), c, "C({n}, {k})");
            }
        }
    }

    #[test]
    fn does_not_overflow() {
        let c = binomial(1000, 500);
        assert_eq!(c.bits(), 995);
    }

    proptest! {
        #[test]
        fn symmetry_and_pascal(n in 1u64..300, k in 0i64..300) {
            prop_assume!(k as u64 <= n);
            prop_assert_eq!(binomial(n, k), binomial(n, n as i64 - k));
            prop_assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
            prop_assert_eq!(binomial(n, 0), BigUint::one());
        }
    }
}
