use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// An exact fraction, always held in lowest terms with a positive denominator.
///
/// Renders as `"a/b"` (`"1/1"` for one, `"-3/4"` for negatives) and as `"0"` for zero.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty input")]
    Empty,
    #[error("malformed number {0:?}")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

impl Rational {
    /// Builds `numer / denom` in lowest terms. Returns `None` for a zero denominator.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Option<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return None;
        }
        Some(Self(BigRational::new(numer.into(), denom)))
    }

    /// Caller guarantees `denom > 0` and `gcd(|numer|, denom) = 1`.
    pub(crate) fn from_reduced(numer: BigInt, denom: BigInt) -> Self {
        debug_assert!(denom.is_positive());
        debug_assert!(numer.gcd(&denom).is_one());
        Self(BigRational::new_raw(numer, denom))
    }

    pub fn from_integer(value: impl Into<BigInt>) -> Self {
        Self(BigRational::from_integer(value.into()))
    }

    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// `self^k`, with `0^0 = 1`.
    pub fn pow(&self, k: u64) -> Self {
        if k == 0 {
            return Self::one();
        }
        // Powers of coprime integers stay coprime.
        let numer = Pow::pow(self.numer(), k);
        let denom = Pow::pow(self.denom(), k);
        Self::from_reduced(numer, denom)
    }

    pub fn abs(&self) -> Self {
        Self(self.0.abs())
    }

    /// The exact value of a finite `f64`.
    pub fn from_f64(v: f64) -> Option<Self> {
        BigRational::from_float(v).map(Self)
    }

    /// Nearest `f64` (saturating to infinity for huge magnitudes).
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Decimal rendering rounded (half away from zero) to `digits` significant digits,
    /// trailing zeros removed. Values below 1e-6 or above 1e21 use `d.ddde±N` notation.
    pub fn to_decimal(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if self.is_zero() {
            return "0".to_string();
        }
        let negative = self.is_negative();
        let numer = self.numer().abs();
        let denom = self.denom().clone();

        let mut exp = decimal_exponent(&numer, &denom);
        // scaled = round(|x| * 10^(digits - 1 - exp))
        let shift = digits as i64 - 1 - exp;
        let (mut top, mut bottom) = (numer, denom);
        if shift >= 0 {
            top *= pow10(shift as u64);
        } else {
            bottom *= pow10((-shift) as u64);
        }
        let mut scaled = (top * 2u32 + &bottom) / (bottom * 2u32);
        if scaled == pow10(digits as u64) {
            scaled /= 10u32;
            exp += 1;
        }

        let mantissa = scaled.to_string();
        debug_assert_eq!(mantissa.len(), digits);
        let body = if (-7..21).contains(&exp) {
            positional(&mantissa, exp)
        } else {
            let (lead, rest) = mantissa.split_at(1);
            let rest = rest.trim_end_matches('0');
            if rest.is_empty() {
                format!("{lead}e{exp}")
            } else {
                format!("{lead}.{rest}e{exp}")
            }
        };
        if negative {
            format!("-{body}")
        } else {
            body
        }
    }
}

/// `floor(log10(numer / denom))` for positive operands.
fn decimal_exponent(numer: &BigInt, denom: &BigInt) -> i64 {
    let bits = numer.bits() as i64 - denom.bits() as i64;
    let mut exp = (bits as f64 * std::f64::consts::LOG10_2).floor() as i64;
    // 10^e <= numer/denom
    let at_most = |e: i64| -> bool {
        if e >= 0 {
            denom * pow10(e as u64) <= *numer
        } else {
            *denom <= numer * pow10((-e) as u64)
        }
    };
    while !at_most(exp) {
        exp -= 1;
    }
    while at_most(exp + 1) {
        exp += 1;
    }
    exp
}

fn pow10(k: u64) -> BigInt {
    Pow::pow(BigInt::from(10u32), k)
}

fn positional(mantissa: &str, exp: i64) -> String {
    let out = if exp < 0 {
        format!("0.{}{}", "0".repeat((-exp - 1) as usize), mantissa)
    } else {
        let int_len = exp as usize + 1;
        if int_len >= mantissa.len() {
            return format!("{mantissa}{}", "0".repeat(int_len - mantissa.len()));
        }
        format!("{}.{}", &mantissa[..int_len], &mantissa[int_len..])
    };
    out.trim_end_matches('0').trim_end_matches('.').to_string()
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            f.write_str("0")
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    /// Accepts `a/b`, integers, and decimals (`0.3`, `.5`, `2.5e-3`), all converted exactly.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseRationalError::Empty);
        }
        let malformed = || ParseRationalError::Malformed(s.to_string());
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = parse_int(n.trim()).ok_or_else(malformed)?;
            let d: BigInt = parse_int(d.trim()).ok_or_else(malformed)?;
            return Rational::new(n, d).ok_or_else(|| ParseRationalError::ZeroDenominator(s.into()));
        }
        parse_decimal(s).ok_or_else(malformed)
    }
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (sign, rest) = match s.as_bytes()[0] {
        b'-' => (Sign::Minus, &s[1..]),
        b'+' => (Sign::Plus, &s[1..]),
        _ => (Sign::Plus, s),
    };
    let (mantissa, exp) = match rest.find(['e', 'E']) {
        Some(i) => (&rest[..i], rest[i + 1..].parse::<i64>().ok()?),
        None => (rest, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let all_digits = |p: &str| p.bytes().all(|b| b.is_ascii_digit());
    if !all_digits(int_part) || !all_digits(frac_part) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let magnitude: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
    let scale = exp.checked_sub(frac_part.len() as i64)?;
    let numer = BigInt::from_biguint(sign, magnitude.magnitude().clone());
    let value = if scale >= 0 {
        Rational::from_integer(numer * pow10(scale as u64))
    } else {
        Rational::new(numer, pow10(scale.unsigned_abs()))?
    };
    Some(value)
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Self::from_integer(v)
    }
}

impl From<u64> for Rational {
    fn from(v: u64) -> Self {
        Self::from_integer(v)
    }
}

impl From<BigInt> for Rational {
    fn from(v: BigInt) -> Self {
        Self::from_integer(v)
    }
}

impl PartialEq<i64> for Rational {
    fn eq(&self, other: &i64) -> bool {
        self.0.is_integer() && *self.numer() == BigInt::from(*other)
    }
}

impl PartialOrd<i64> for Rational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.0.cmp(&BigRational::from_integer((*other).into())))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(&self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Panics on division by zero, like the integer types.
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}
