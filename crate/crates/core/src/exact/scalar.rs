use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScalarError {
    #[error("malformed scalar literal {0:?}")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot represent non-finite float {0} exactly")]
    NonFinite(f64),
}

/// An exact rational number, always held in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactScalar(BigRational);

impl ExactScalar {
    pub fn new(numerator: impl Into<BigInt>, denominator: impl Into<BigInt>) -> Result<Self, ScalarError> {
        let den = denominator.into();
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self(BigRational::new(numerator.into(), den)))
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

    /// The exact binary value of a finite float.
    pub fn from_f64(value: f64) -> Result<Self, ScalarError> {
        BigRational::from_float(value)
            .map(Self)
            .ok_or(ScalarError::NonFinite(value))
    }

    /// Parses `INT`, `INT.DIGITS` or `INT/DIGITS`.
    pub fn parse(text: &str) -> Result<Self, ScalarError> {
        let malformed = || ScalarError::Malformed(text.to_string());
        let (negative, body) = match text.as_bytes().first() {
            Some(b'+') => (false, &text[1..]),
            Some(b'-') => (true, &text[1..]),
            _ => (false, text),
        };
        let all_digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());

        let value = if let Some((int, den)) = body.split_once('/') {
            if !all_digits(int) || !all_digits(den) {
                return Err(malformed());
            }
            let den: BigInt = den.parse().map_err(|_| malformed())?;
            if den.is_zero() {
                return Err(ScalarError::ZeroDenominator(text.to_string()));
            }
            BigRational::new(int.parse().map_err(|_| malformed())?, den)
        } else if let Some((int, frac)) = body.split_once('.') {
            if !all_digits(int) || !all_digits(frac) {
                return Err(malformed());
            }
            let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| malformed())?;
            let scale = BigInt::from(10u8).pow(frac.len());
            BigRational::new(digits, scale)
        } else {
            if !all_digits(body) {
                return Err(malformed());
            }
            BigRational::from_integer(body.parse().map_err(|_| malformed())?)
        };
        Ok(Self(if negative { -value } else { value }))
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn recip(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        if rhs.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self(&self.0 / &rhs.0))
    }

    pub fn powi(&self, exp: i32) -> Self {
        Self(Pow::pow(&self.0, exp))
    }

    pub fn abs(&self) -> Self {
        Self(self.0.abs())
    }

    /// Nearest float; lossy, for display and the float search only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    /// Sums many terms by combining them pairwise without intermediate
    /// reduction, then reduces once. Much faster than a left fold when the
    /// terms have unrelated denominators.
    pub fn sum_balanced<I: IntoIterator<Item = ExactScalar>>(terms: I) -> ExactScalar {
        let mut level: Vec<(BigInt, BigInt)> = terms.into_iter().map(|t| t.0.into_raw()).collect();
        if level.is_empty() {
            return Self::zero();
        }
        while level.len() > 1 {
            let mut next = Vec::with_capacity(level.len().div_ceil(2));
            let mut pairs = level.into_iter();
            while let Some((n1, d1)) = pairs.next() {
                next.push(match pairs.next() {
                    Some((n2, d2)) if d1 == d2 => (n1 + n2, d1),
                    Some((n2, d2)) => (n1 * &d2 + n2 * &d1, d1 * d2),
                    None => (n1, d1),
                });
            }
            level = next;
        }
        let (numer, denom) = level.pop().expect("nonempty");
        Self(BigRational::new(numer, denom))
    }
}

impl From<BigRational> for ExactScalar {
    fn from(value: BigRational) -> Self {
        Self(value)
    }
}

macro_rules! from_int {
    ($($t:ty),*) => {$(
        impl From<$t> for ExactScalar {
            fn from(value: $t) -> Self {
                Self::from_integer(value)
            }
        }
    )*};
}
from_int!(i32, i64, u32, u64, usize);

impl FromStr for ExactScalar {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

/// Canonical `p/q`, or `p` when the denominator is one.
impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for ExactScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        Self::parse(&text).map_err(serde::de::Error::custom)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr<&ExactScalar> for &ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                ExactScalar(&self.0 $op &rhs.0)
            }
        }
        impl $tr<ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                ExactScalar(self.0 $op rhs.0)
            }
        }
        impl $tr<&ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                ExactScalar(self.0 $op &rhs.0)
            }
        }
        impl $tr<ExactScalar> for &ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                ExactScalar(&self.0 $op rhs.0)
            }
        }
    };
}
binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);
// Panics on a zero divisor, like the integer types; use `checked_div` when
// the divisor is not known to be nonzero.
binop!(Div, div, /);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar(-self.0)
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar(-&self.0)
    }
}

impl Sum for ExactScalar {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a ExactScalar> for ExactScalar {
    fn sum<I: Iterator<Item = &'a Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| acc + x)
    }
}

impl Product for ExactScalar {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |acc, x| acc * x)
    }
}

impl<'a> Product<&'a ExactScalar> for ExactScalar {
    fn product<I: Iterator<Item = &'a Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |acc, x| acc * x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> ExactScalar {
        ExactScalar::new(n, d).unwrap()
    }

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(ExactScalar::parse("1.5").unwrap(), q(3, 2));
        assert_eq!(ExactScalar::parse("0.1").unwrap(), q(1, 10));
        assert_eq!(ExactScalar::parse("-0.25").unwrap(), q(-1, 4));
        assert_eq!(ExactScalar::parse("+007").unwrap(), q(7, 1));
    }

    #[test]
    fn parses_fractions_in_lowest_terms() {
        let x = ExactScalar::parse("2/6").unwrap();
        assert_eq!(x, q(1, 3));
        assert_eq!(x.to_string(), "1/3");
        assert_eq!(ExactScalar::parse("-4/2").unwrap().to_string(), "-2");
    }

    #[test]
    fn rejects_zero_denominator() {
        assert_eq!(
            ExactScalar::parse("1/0"),
            Err(ScalarError::ZeroDenominator("1/0".into()))
        );
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            "", "+", "1.", ".5", "1/", "/2", "1/-2", "1e3", "1.5/2", " 1", "0x10", "1/2/3", "--1",
        ] {
            assert!(
                matches!(ExactScalar::parse(bad), Err(ScalarError::Malformed(_))),
                "{bad:?} should be malformed"
            );
        }
    }

    #[test]
    fn renders_integers_without_denominator() {
        assert_eq!(q(6, 3).to_string(), "2");
        assert_eq!(q(0, 5).to_string(), "0");
        assert_eq!(q(3, -4).to_string(), "-3/4");
    }

    #[test]
    fn floats_convert_exactly() {
        assert_eq!(ExactScalar::from_f64(0.5).unwrap(), q(1, 2));
        // 0.1 is not dyadic, so the binary value differs from 1/10
        assert_ne!(ExactScalar::from_f64(0.1).unwrap(), q(1, 10));
        assert!(ExactScalar::from_f64(f64::NAN).is_err());
    }

    fn rational() -> impl Strategy<Value = ExactScalar> {
        (-10_000i64..10_000, 1i64..10_000).prop_map(|(n, d)| q(n, d))
    }

    fn assert_canonical(x: &ExactScalar) {
        assert!(x.denominator() > &BigInt::zero());
        assert!(x.numerator().gcd(x.denominator()).is_one());
    }

    proptest! {
        #[test]
        fn field_axioms_hold_exactly(x in rational(), y in rational()) {
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            if !y.is_zero() {
                prop_assert_eq!(&(&x * &y) / &y, x.clone());
            }
        }

        #[test]
        fn canonical_after_every_op(x in rational(), y in rational()) {
            assert_canonical(&(&x + &y));
            assert_canonical(&(&x - &y));
            assert_canonical(&(&x * &y));
            if !y.is_zero() {
                assert_canonical(&(&x / &y));
            }
        }

        #[test]
        fn balanced_sum_matches_fold(terms in prop::collection::vec(rational(), 0..40)) {
            let folded: ExactScalar = terms.iter().sum();
            let balanced = ExactScalar::sum_balanced(terms);
            assert_canonical(&balanced);
            prop_assert_eq!(balanced, folded);
        }

        #[test]
        fn render_then_parse_is_identity(x in rational()) {
            prop_assert_eq!(ExactScalar::parse(&x.to_string()).unwrap(), x);
        }
    }
}
