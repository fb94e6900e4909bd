//! Rational functions in the auxiliary variable `c`.
//!
//! [`RatFuncC`] is a quotient of two dense polynomials (carried by [`PolyX`],
//! read in the variable `c`). The representation is kept reduced: common
//! factors are cancelled by a monic gcd and the denominator is normalized to
//! be monic, so the zero test is simply a zero numerator. The moment
//! recursion of the negative-binomial-type weights lives entirely here.

use std::fmt;

use crate::poly::PolyX;
use crate::rational::Rational;

/// Reduced quotient `num / den` with `den` monic and nonzero.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFuncC {
    num: PolyX,
    den: PolyX,
}

impl RatFuncC {
    fn reduced(num: PolyX, den: PolyX) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFuncC {
                num: PolyX::zero(),
                den: PolyX::one(),
            };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lc = den.leading_coeff().expect("nonzero denominator").clone();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFuncC { num, den }
    }

    pub fn new(num: PolyX, den: PolyX) -> Self {
        RatFuncC::reduced(num, den)
    }

    pub fn from_poly(p: PolyX) -> Self {
        RatFuncC {
            num: p,
            den: PolyX::one(),
        }
    }

    pub fn zero() -> Self {
        RatFuncC::from_poly(PolyX::zero())
    }

    pub fn one() -> Self {
        RatFuncC::from_poly(PolyX::one())
    }

    pub fn constant(r: Rational) -> Self {
        RatFuncC::from_poly(PolyX::constant(r))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn num(&self) -> &PolyX {
        &self.num
    }

    pub fn den(&self) -> &PolyX {
        &self.den
    }

    /// Derivative by the quotient rule.
    pub fn derivative(&self) -> RatFuncC {
        let n = &self.num.derivative() * &self.den - &self.num * &self.den.derivative();
        let d = &self.den * &self.den;
        RatFuncC::reduced(n, d)
    }

    /// Evaluate at `c`; `None` if `c` is a pole.
    pub fn eval(&self, c: &Rational) -> Option<Rational> {
        let d = self.den.eval(c);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(c) / d)
    }
}

impl fmt::Display for RatFuncC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) && self.den.is_monic() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFuncC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl std::ops::Add<&RatFuncC> for &RatFuncC {
    type Output = RatFuncC;
    fn add(self, rhs: &RatFuncC) -> RatFuncC {
        RatFuncC::reduced(
            &self.num * &rhs.den + &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }
}

impl std::ops::Sub<&RatFuncC> for &RatFuncC {
    type Output = RatFuncC;
    fn sub(self, rhs: &RatFuncC) -> RatFuncC {
        RatFuncC::reduced(
            &self.num * &rhs.den - &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }
}

impl std::ops::Mul<&RatFuncC> for &RatFuncC {
    type Output = RatFuncC;
    fn mul(self, rhs: &RatFuncC) -> RatFuncC {
        RatFuncC::reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl std::ops::Div<&RatFuncC> for &RatFuncC {
    type Output = RatFuncC;
    fn div(self, rhs: &RatFuncC) -> RatFuncC {
        assert!(!rhs.is_zero(), "division by zero rational function");
        RatFuncC::reduced(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl std::ops::Neg for &RatFuncC {
    type Output = RatFuncC;
    fn neg(self) -> RatFuncC {
        RatFuncC {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}
