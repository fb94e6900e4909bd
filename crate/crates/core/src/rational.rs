//! Exact rational scalars.
//!
//! [`Rational`] wraps an arbitrary-precision rational number kept in lowest
//! terms with a positive denominator. The string form is `p/q`, or just `p`
//! when the denominator is 1; parsing accepts both. All arithmetic is exact.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

/// An exact rational number in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Build `n/d`. Panics if `d == 0`.
    pub fn new(n: i64, d: i64) -> Self {
        Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_big(n: BigInt, d: BigInt) -> Self {
        Rational(BigRational::new(n, d))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
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

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rational(self.0.recip())
    }

    /// Integer power (negative exponents invert; zero base requires k >= 0).
    pub fn pow(&self, k: i32) -> Self {
        use num_traits::Pow;
        Rational(Pow::pow(&self.0, k))
    }

    /// Nearest `f64` approximation (diagnostic paths only).
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// If the value is an integer that fits in `u32`, return it.
    pub fn to_u32(&self) -> Option<u32> {
        if self.is_integer() {
            self.numer().to_u32()
        } else {
            None
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Error parsing a rational from its `p/q` string form.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational `{input}`: {reason}")]
pub struct ParseRationalError {
    pub input: String,
    pub reason: String,
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| ParseRationalError {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let t = s.trim();
        if t.is_empty() {
            return Err(err("empty string"));
        }
        let (num_str, den_str) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let n = BigInt::from_str(num_str).map_err(|_| err("numerator is not an integer"))?;
        let d = BigInt::from_str(den_str).map_err(|_| err("denominator is not an integer"))?;
        if d.is_zero() {
            return Err(err("zero denominator"));
        }
        Ok(Rational(BigRational::new(n, d)))
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }
}

impl From<u32> for Rational {
    fn from(n: u32) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }
}

impl From<usize> for Rational {
    fn from(n: usize) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

// ---- arithmetic ----

macro_rules! impl_binop {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(std::ops::$trait::$method(&self.0, &rhs.0))
            }
        }
        impl std::ops::$trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
        impl std::ops::$trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                std::ops::$trait::$method(&self, rhs)
            }
        }
        impl std::ops::$trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                std::ops::$trait::$method(self, &rhs)
            }
        }
    };
}

impl_binop!(Add, add);
impl_binop!(Sub, sub);
impl_binop!(Mul, mul);

impl std::ops::Div<&Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero rational");
        Rational(&self.0 / &rhs.0)
    }
}
impl std::ops::Div<Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        &self / &rhs
    }
}
impl std::ops::Div<&Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        &self / rhs
    }
}
impl std::ops::Div<Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        self / &rhs
    }
}

impl std::ops::Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}
impl std::ops::Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

// ---- factorials and Pochhammer symbols ----

/// `k!` as a rational.
pub fn factorial(k: usize) -> Rational {
    let mut acc = BigInt::one();
    for t in 2..=k {
        acc *= BigInt::from(t);
    }
    Rational::from(acc)
}

/// Rising factorial `(b)_k = b (b+1) ... (b+k-1)`, with `(b)_0 = 1`.
pub fn pochhammer(b: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    for t in 0..k {
        acc = acc * (b + &Rational::from(t));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn lowest_terms_and_sign() {
        let r = Rational::new(2, -4);
        assert_eq!(r.to_string(), "-1/2");
        assert!(r.denom().is_positive());
        assert_eq!(Rational::new(-6, -3).to_string(), "2");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "7", "-7", "1/2", "-22/7", "355/113"] {
            assert_eq!(q(s).to_string(), s);
        }
        assert_eq!(q("4/6").to_string(), "2/3");
        assert_eq!(q(" 3 / 9 ").to_string(), "1/3");
    }

    #[test]
    fn parse_rejects_garbage() {
        for s in ["", "1/0", "a", "1/2/3", "1.5"] {
            assert!(s.parse::<Rational>().is_err(), "accepted {s:?}");
        }
    }

    #[test]
    fn field_ops() {
        let a = q("1/2");
        let b = q("1/3");
        assert_eq!(&a + &b, q("5/6"));
        assert_eq!(&a - &b, q("1/6"));
        assert_eq!(&a * &b, q("1/6"));
        assert_eq!(&a / &b, q("3/2"));
        assert_eq!(-&a, q("-1/2"));
        assert_eq!(a.recip(), q("2"));
        assert_eq!(q("-2/3").pow(-2), q("9/4"));
    }

    #[test]
    fn pochhammer_half_squared() {
        // (1/2)_2 = (1/2)(3/2) = 3/4
        assert_eq!(pochhammer(&q("1/2"), 2), q("3/4"));
        assert_eq!(pochhammer(&q("5"), 0), q("1"));
        assert_eq!(pochhammer(&q("1"), 5), factorial(5));
    }

    #[test]
    fn serde_as_string() {
        let r = q("-22/7");
        assert_eq!(serde_json::to_string(&r).unwrap(), "\"-22/7\"");
        let back: Rational = serde_json::from_str("\"-22/7\"").unwrap();
        assert_eq!(back, r);
    }
}
