//! Rational functions: reduced quotients of polynomials with monic denominator.
//!
//! These carry the factor coefficients of difference operators, so exact
//! equality has to be decidable: every value is kept in the canonical form
//! `num/den` with `gcd(num, den) = 1` and `den` monic.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::poly::Poly;
use super::rational::Rational;

/// A reduced rational function `num / den` with monic denominator.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RationalFunction {
                num: Poly::zero(),
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den).expect("gcd of nonzero inputs");
        let num = num.exact_div(&g).expect("gcd divides");
        let den = den.exact_div(&g).expect("gcd divides");
        let lead = den.leading();
        RationalFunction {
            num: num.scale(&lead.recip()),
            den: den.monic(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        RationalFunction::from_poly(Poly::constant(c))
    }

    pub fn zero() -> Self {
        RationalFunction::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        RationalFunction::from_poly(Poly::one())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == Poly::one() && self.den == Poly::one()
    }

    /// True iff the denominator is 1.
    pub fn as_poly(&self) -> Option<&Poly> {
        (self.den == Poly::one()).then_some(&self.num)
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero rational function");
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    /// `f(x + a)`.
    pub fn shift(&self, a: &Rational) -> Self {
        RationalFunction::new(self.num.shift(a), self.den.shift(a))
    }
}

impl Add<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Mul<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        assert!(!rhs.is_zero(), "division by zero rational function");
        RationalFunction::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

macro_rules! forward_rf_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: &RationalFunction) -> RationalFunction {
                (&self).$method(rhs)
            }
        }
        impl $trait<RationalFunction> for &RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                self.$method(&rhs)
            }
        }
    };
}

forward_rf_binop!(Add, add);
forward_rf_binop!(Sub, sub);
forward_rf_binop!(Mul, mul);
forward_rf_binop!(Div, div);

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Poly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn normalizes_to_reduced_monic_form() {
        // (2x^2 - 2) / (4x - 4) = (x + 1) / 2
        let num = Poly::from_coeffs(vec![q(-2, 1), q(0, 1), q(2, 1)]);
        let den = Poly::from_coeffs(vec![q(-4, 1), q(4, 1)]);
        let f = RationalFunction::new(num, den);
        assert_eq!(f.num(), &Poly::from_coeffs(vec![q(1, 2), q(1, 2)]));
        assert_eq!(f.den(), &Poly::one());
    }

    #[test]
    fn field_arithmetic_is_exact() {
        let x = RationalFunction::from_poly(Poly::x());
        let one = RationalFunction::one();
        // 1/x + 1/(x+1) = (2x+1)/(x(x+1))
        let a = &one / &x;
        let b = &one / &(&x + &one);
        let sum = &a + &b;
        let expected = RationalFunction::new(
            Poly::from_coeffs(vec![q(1, 1), q(2, 1)]),
            Poly::from_coeffs(vec![q(0, 1), q(1, 1), q(1, 1)]),
        );
        assert_eq!(sum, expected);
        assert_eq!(&sum - &a, b);
        assert!((&a - &a).is_zero());
        assert!((&a / &a).is_one());
    }

    #[test]
    fn shift_matches_polynomial_shift() {
        let f = RationalFunction::new(
            Poly::from_coeffs(vec![q(1, 1), q(1, 1)]),
            Poly::from_coeffs(vec![q(0, 1), q(1, 1)]),
        );
        let g = f.shift(&q(1, 1));
        // (x+2)/(x+1)
        assert_eq!(g.num(), &Poly::from_coeffs(vec![q(2, 1), q(1, 1)]));
        assert_eq!(g.den(), &Poly::from_coeffs(vec![q(1, 1), q(1, 1)]));
    }
}
