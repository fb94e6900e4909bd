//! Dense univariate polynomials over [`Rational`].
//!
//! [`PolyX`] stores coefficients in ascending powers with no trailing zeros,
//! so the zero polynomial has an empty coefficient vector. The variable is
//! called `x` throughout; the same type doubles as the numerator/denominator
//! carrier of rational functions in the auxiliary variable `c`.

use std::fmt;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::rational::{factorial, Rational};

/// Dense polynomial with exact rational coefficients, lowest power first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyX {
    coeffs: Vec<Rational>,
}

impl PolyX {
    /// Build from ascending-power coefficients; trailing zeros are trimmed.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        PolyX { coeffs }
    }

    pub fn zero() -> Self {
        PolyX { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        PolyX::constant(Rational::one())
    }

    pub fn constant(r: Rational) -> Self {
        PolyX::from_coeffs(vec![r])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        PolyX::monomial(1, Rational::one())
    }

    /// `coeff * x^k`.
    pub fn monomial(k: usize, coeff: Rational) -> Self {
        if coeff.is_zero() {
            return PolyX::zero();
        }
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = coeff;
        PolyX { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(Rational::is_one)
    }

    /// Coefficient of `x^k` (zero beyond the stored length).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Horner evaluation at a rational point.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// `p(x + s)` by a Horner-style synthetic shift.
    pub fn shift(&self, s: &Rational) -> PolyX {
        let mut acc = PolyX::zero();
        let xs = PolyX::from_coeffs(vec![s.clone(), Rational::one()]);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &xs) + &PolyX::constant(c.clone());
        }
        acc
    }

    pub fn scale(&self, r: &Rational) -> PolyX {
        if r.is_zero() {
            return PolyX::zero();
        }
        PolyX {
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn derivative(&self) -> PolyX {
        if self.coeffs.len() <= 1 {
            return PolyX::zero();
        }
        PolyX::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &Rational::from(k))
                .collect(),
        )
    }

    pub fn pow(&self, k: usize) -> PolyX {
        let mut acc = PolyX::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division: returns `(quotient, remainder)`. Panics if `d` is zero.
    pub fn div_rem(&self, d: &PolyX) -> (PolyX, PolyX) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.degree().unwrap();
        let lead = d.leading_coeff().unwrap().clone();
        let mut rem = self.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let f = rem.leading_coeff().unwrap() / &lead;
            quot[rd - dd] = f.clone();
            rem = &rem - &d.scale(&f).mul_xk(rd - dd);
        }
        (PolyX::from_coeffs(quot), rem)
    }

    /// Multiply by `x^k`.
    pub fn mul_xk(&self, k: usize) -> PolyX {
        if self.is_zero() {
            return PolyX::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        PolyX { coeffs }
    }

    /// Monic greatest common divisor (Euclidean algorithm).
    pub fn gcd(&self, other: &PolyX) -> PolyX {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        match a.leading_coeff() {
            Some(lc) if !lc.is_one() => {
                let inv = lc.recip();
                a.scale(&inv)
            }
            _ => a,
        }
    }

    /// Coefficient strings, lowest power first (the serialized form).
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    pub fn from_coeff_strings(strs: &[String]) -> Result<PolyX, crate::rational::ParseRationalError> {
        let coeffs = strs
            .iter()
            .map(|s| s.parse::<Rational>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PolyX::from_coeffs(coeffs))
    }
}

/// `binom(e, m)` as a polynomial: `e (e-1) ... (e-m+1) / m!` for a polynomial
/// argument `e`; the degree-`m` building block of binomial series expansions.
pub fn binom_poly(e: &PolyX, m: usize) -> PolyX {
    let mut acc = PolyX::one();
    for t in 0..m {
        acc = &acc * &(e - &PolyX::constant(Rational::from(t)));
    }
    acc.scale(&factorial(m).recip())
}

impl fmt::Display for PolyX {
    /// Conventional human form, highest power first, e.g. `x^2 - 5x + 2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for PolyX {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.coeff_strings().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PolyX {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let strs = Vec::<String>::deserialize(deserializer)?;
        PolyX::from_coeff_strings(&strs).map_err(de::Error::custom)
    }
}

// ---- Add ----

impl std::ops::Add<&PolyX> for &PolyX {
    type Output = PolyX;
    fn add(self, rhs: &PolyX) -> PolyX {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        PolyX::from_coeffs(coeffs)
    }
}

// ---- Sub ----

impl std::ops::Sub<&PolyX> for &PolyX {
    type Output = PolyX;
    fn sub(self, rhs: &PolyX) -> PolyX {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        PolyX::from_coeffs(coeffs)
    }
}

// ---- Mul ----

impl std::ops::Mul<&PolyX> for &PolyX {
    type Output = PolyX;
    fn mul(self, rhs: &PolyX) -> PolyX {
        if self.is_zero() || rhs.is_zero() {
            return PolyX::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        PolyX::from_coeffs(coeffs)
    }
}

// ---- Neg ----

impl std::ops::Neg for &PolyX {
    type Output = PolyX;
    fn neg(self) -> PolyX {
        PolyX {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_value_binops {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait<PolyX> for PolyX {
            type Output = PolyX;
            fn $method(self, rhs: PolyX) -> PolyX {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
        impl std::ops::$trait<&PolyX> for PolyX {
            type Output = PolyX;
            fn $method(self, rhs: &PolyX) -> PolyX {
                std::ops::$trait::$method(&self, rhs)
            }
        }
        impl std::ops::$trait<PolyX> for &PolyX {
            type Output = PolyX;
            fn $method(self, rhs: PolyX) -> PolyX {
                std::ops::$trait::$method(self, &rhs)
            }
        }
    };
}

forward_value_binops!(Add, add);
forward_value_binops!(Sub, sub);
forward_value_binops!(Mul, mul);

impl std::ops::Neg for PolyX {
    type Output = PolyX;
    fn neg(self) -> PolyX {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn p(coeffs: &[&str]) -> PolyX {
        PolyX::from_coeffs(coeffs.iter().map(|s| q(s)).collect())
    }

    #[test]
    fn zero_has_empty_coeffs() {
        assert!(PolyX::from_coeffs(vec![q("0"), q("0")]).is_zero());
        assert_eq!(PolyX::zero().degree(), None);
        assert_eq!((&p(&["1", "2"]) - &p(&["1", "2"])).coeffs().len(), 0);
    }

    #[test]
    fn arithmetic_and_eval() {
        let a = p(&["2", "-5", "1"]); // x^2 - 5x + 2
        let b = p(&["-1", "1"]); // x - 1
        assert_eq!(&a + &b, p(&["1", "-4", "1"]));
        assert_eq!(&a * &b, p(&["-2", "7", "-6", "1"]));
        assert_eq!(a.eval(&q("3")), q("-4"));
        assert_eq!(a.eval(&q("1/2")), q("-1/4"));
    }

    #[test]
    fn eval_of_product_is_product_of_evals() {
        let a = p(&["1/3", "0", "2"]);
        let b = p(&["-2", "1", "0", "5"]);
        let x = q("-7/3");
        assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
    }

    #[test]
    fn shift_matches_worked_example() {
        // (x^2 - 5x + 2) at x-1: x^2 - 7x + 8
        let a = p(&["2", "-5", "1"]);
        assert_eq!(a.shift(&q("-1")), p(&["8", "-7", "1"]));
    }

    #[test]
    fn shift_round_trip() {
        let a = p(&["1/2", "-3", "0", "7/5", "1"]);
        let s = q("22/7");
        assert_eq!(a.shift(&s).shift(&(-&s)), a);
    }

    #[test]
    fn binom_poly_matches_integer_binomials() {
        // binom(x, 2) = x(x-1)/2
        let b2 = binom_poly(&PolyX::x(), 2);
        assert_eq!(b2, p(&["0", "-1/2", "1/2"]));
        // At integer points it agrees with choose(n, m).
        let b3 = binom_poly(&PolyX::x(), 3);
        let choose = |n: i64, m: i64| -> i64 {
            if n < m {
                0
            } else {
                (0..m).fold(1, |acc, t| acc * (n - t)) / (1..=m).product::<i64>()
            }
        };
        for n in 0..8i64 {
            assert_eq!(b3.eval(&Rational::from(n)), Rational::from(choose(n, 3)));
        }
        assert_eq!(binom_poly(&PolyX::x(), 0), PolyX::one());
    }

    #[test]
    fn division_and_gcd() {
        let a = p(&["-2", "7", "-6", "1"]); // (x-1)(x^2-5x+2)... actually (x-1)(x^2-... ) from above
        let b = p(&["-1", "1"]);
        let (quo, rem) = a.div_rem(&b);
        assert!(rem.is_zero());
        assert_eq!(quo, p(&["2", "-5", "1"]));
        let g = a.gcd(&b.scale(&q("6")));
        assert_eq!(g, p(&["-1", "1"]));
    }

    #[test]
    fn display_form() {
        assert_eq!(p(&["2", "-5", "1"]).to_string(), "x^2 - 5*x + 2");
        assert_eq!(p(&["0"]).to_string(), "0");
        assert_eq!(p(&["-1/2", "0", "3/4"]).to_string(), "3/4*x^2 - 1/2");
    }

    #[test]
    fn serde_round_trip() {
        let a = p(&["2", "-5", "1"]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, "[\"2\",\"-5\",\"1\"]");
        let back: PolyX = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
    }
}
