//! Dense univariate polynomials over exact rationals.
//!
//! Coefficients are stored in ascending degree with no trailing zeros; the
//! zero polynomial is the empty vector, so `degree()` is `None` for it.
//! Everything here is exact: shifts expand binomially, division checks its
//! remainder, and gcds are normalized monic.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use super::rational::Rational;
use crate::error::Error;

/// A univariate polynomial with `Rational` coefficients, ascending degree.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map_or(false, Rational::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Poly::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    /// `c * x^deg`.
    pub fn monomial(deg: usize, c: Rational) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); deg + 1];
        coeffs[deg] = c;
        Poly { coeffs }
    }

    /// The monic polynomial with the given roots.
    pub fn from_roots(roots: &[Rational]) -> Self {
        let mut p = Poly::one();
        for r in roots {
            p = &p * &Poly::from_coeffs(vec![-r, Rational::one()]);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the stored length).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Monic normalization; the zero polynomial stays zero.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.leading().recip())
    }

    /// `p(x + a)`, expanded exactly (Horner on the factor `x + a`).
    pub fn shift(&self, a: &Rational) -> Poly {
        if a.is_zero() || self.is_constant() {
            return self.clone();
        }
        let x_plus_a = Poly::from_coeffs(vec![a.clone(), Rational::one()]);
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * &x_plus_a + &Poly::constant(c.clone());
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Poly {
        let d: Vec<Rational> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &Rational::from(i as i64))
            .collect();
        Poly::from_coeffs(d)
    }

    pub fn pow(&self, exp: usize) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division: `self = q * div + r` with `deg r < deg div`.
    pub fn div_rem(&self, div: &Poly) -> (Poly, Poly) {
        assert!(!div.is_zero(), "polynomial division by zero");
        if self.degree() < div.degree() {
            return (Poly::zero(), self.clone());
        }
        let dlead = div.leading();
        let ddeg = div.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len() - ddeg];
        for i in (ddeg..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] / &dlead;
            for (j, dc) in div.coeffs.iter().enumerate() {
                let t = dc * &q;
                rem[i - ddeg + j] -= &t;
            }
            quot[i - ddeg] = q;
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Exact quotient, or `None` if the division leaves a remainder.
    pub fn exact_div(&self, div: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(div);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor. Errors when both inputs are zero.
    pub fn gcd(&self, other: &Poly) -> Result<Poly, Error> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::UndefinedGcd);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        Ok(a.monic())
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        Poly::from_coeffs(coeffs)
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        Poly::from_coeffs(coeffs)
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let t = a * b;
                coeffs[i + j] += &t;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_poly_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $trait<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

forward_poly_binop!(Add, add);
forward_poly_binop!(Sub, sub);
forward_poly_binop!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() {
                ("-", c.abs())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        if mag.is_integer() {
                            write!(f, "{mag}")?;
                        } else {
                            write!(f, "({mag})")?;
                        }
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(deserializer)?;
        let mut coeffs = Vec::with_capacity(strings.len());
        for s in strings {
            coeffs.push(s.parse::<Rational>().map_err(de::Error::custom)?);
        }
        Ok(Poly::from_coeffs(coeffs))
    }
}

/// The polynomial `c` with `c(x + h) - c(x) = f(x)` and zero constant term.
///
/// Solved degree by degree from the top: the difference map lowers degree by
/// exactly one when `h` is non-zero, so each leading term of the residual
/// determines one coefficient of `c`.
pub fn discrete_antiderivative(f: &Poly, h: &Rational) -> Result<Poly, Error> {
    if h.is_zero() {
        return Err(Error::ZeroStep);
    }
    let mut residual = f.clone();
    let mut result = Poly::zero();
    while !residual.is_zero() {
        let d = residual.degree().expect("nonzero");
        let lead = residual.leading();
        // Δ(a x^{d+1}) has leading coefficient a • (d+1) • h at degree d.
        let a = &lead / &(Rational::from((d + 1) as i64) * h);
        let term = Poly::monomial(d + 1, a);
        result = &result + &term;
        let delta = &term.shift(h) - &term;
        residual = &residual - &delta;
    }
    Ok(result)
}

/// All rational roots of `p` with multiplicities, found by candidate
/// enumeration over divisors of the extreme integer coefficients.
pub fn rational_roots(p: &Poly) -> Vec<(Rational, usize)> {
    assert!(!p.is_zero(), "roots of the zero polynomial");
    let mut out: Vec<(Rational, usize)> = Vec::new();
    let mut work = p.clone();

    // Factor out x^k first.
    let mut zero_mult = 0usize;
    while !work.is_zero() && work.coeff(0).is_zero() {
        work = work.exact_div(&Poly::x()).expect("x divides");
        zero_mult += 1;
    }
    if zero_mult > 0 {
        out.push((Rational::zero(), zero_mult));
    }
    if work.is_constant() {
        return out;
    }

    // Clear denominators to apply the rational root theorem.
    let mut lcm = num_bigint::BigInt::from(1);
    for c in work.coeffs() {
        lcm = num_integer::lcm(lcm, c.denom().clone());
    }
    let int_poly = work.scale(&Rational::from(lcm));
    let a0 = int_poly.coeff(0).numer().clone();
    let ad = int_poly.leading().numer().clone();

    let mut candidates: Vec<Rational> = Vec::new();
    for p_div in super::rational::positive_divisors(&a0) {
        for q_div in super::rational::positive_divisors(&ad) {
            let r = Rational::from_big(p_div.clone(), q_div.clone());
            candidates.push(r.clone());
            candidates.push(-r);
        }
    }
    candidates.sort();
    candidates.dedup();

    for cand in candidates {
        let factor = Poly::from_coeffs(vec![-&cand, Rational::one()]);
        let mut mult = 0usize;
        while !work.is_constant() && work.eval(&cand).is_zero() {
            work = work.exact_div(&factor).expect("root divides");
            mult += 1;
        }
        if mult > 0 {
            out.push((cand, mult));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// The full multiset of roots when `p` splits over the rationals, else `None`.
pub fn all_rational_roots(p: &Poly) -> Option<Vec<Rational>> {
    let deg = p.degree()?;
    let roots = rational_roots(p);
    let total: usize = roots.iter().map(|(_, m)| m).sum();
    if total != deg {
        return None;
    }
    let mut flat = Vec::with_capacity(total);
    for (r, m) in roots {
        for _ in 0..m {
            flat.push(r.clone());
        }
    }
    Some(flat)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn poly(coeffs: &[(i64, i64)]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&(n, d)| q(n, d)).collect())
    }

    #[test]
    fn shift_examples() {
        // (x^2, 1) -> x^2 + 2x + 1
        let p = Poly::monomial(2, Rational::one());
        assert_eq!(p.shift(&q(1, 1)), poly(&[(1, 1), (2, 1), (1, 1)]));
        // identity shift
        let p = poly(&[(3, 2), (0, 1), (5, 1)]);
        assert_eq!(p.shift(&Rational::zero()), p);
        // (2x - 1, 1/2) -> 2x
        let p = poly(&[(-1, 1), (2, 1)]);
        assert_eq!(p.shift(&q(1, 2)), poly(&[(0, 1), (2, 1)]));
    }

    #[test]
    fn shift_composes_additively() {
        let p = poly(&[(1, 3), (-2, 1), (0, 1), (7, 5)]);
        let a = q(2, 3);
        let b = q(-5, 4);
        assert_eq!(p.shift(&a).shift(&b), p.shift(&(a + b)));
    }

    #[test]
    fn gcd_examples() {
        // (x^2 - 1, x - 1) -> x - 1
        let a = poly(&[(-1, 1), (0, 1), (1, 1)]);
        let b = poly(&[(-1, 1), (1, 1)]);
        assert_eq!(a.gcd(&b).unwrap(), b);
        // coprime
        assert_eq!(Poly::x().gcd(&poly(&[(1, 1), (1, 1)])).unwrap(), Poly::one());
        // monic normalization: (2x + 2, 4x + 4) -> x + 1
        let a = poly(&[(2, 1), (2, 1)]);
        let b = poly(&[(4, 1), (4, 1)]);
        assert_eq!(a.gcd(&b).unwrap(), poly(&[(1, 1), (1, 1)]));
        assert!(Poly::zero().gcd(&Poly::zero()).is_err());
    }

    #[test]
    fn gcd_divides_both_inputs() {
        let a = poly(&[(1, 1), (2, 1), (1, 1)]); // (x+1)^2
        let b = poly(&[(2, 1), (6, 1), (4, 1)]); // 2(x+1)(x+2)
        let g = a.gcd(&b).unwrap();
        assert!(g.is_monic());
        assert!(a.exact_div(&g).is_some());
        assert!(b.exact_div(&g).is_some());
    }

    #[test]
    fn antiderivative_examples() {
        let h = Rational::one();
        assert_eq!(discrete_antiderivative(&Poly::zero(), &h).unwrap(), Poly::zero());
        assert_eq!(discrete_antiderivative(&Poly::one(), &h).unwrap(), Poly::x());
        // f = x + a with a = 5/3: c = x^2/2 + (2a-1)x/2
        let a = q(5, 3);
        let f = &Poly::x() + &Poly::constant(a.clone());
        let c = discrete_antiderivative(&f, &h).unwrap();
        let expected = Poly::from_coeffs(vec![
            Rational::zero(),
            (q(2, 1) * &a - Rational::one()) / q(2, 1),
            q(1, 2),
        ]);
        assert_eq!(c, expected);
        assert!(discrete_antiderivative(&f, &Rational::zero()).is_err());
    }

    #[test]
    fn antiderivative_round_trip_random() {
        // Deterministic pseudo-random battery: shift(c,h) - c = f exactly.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let steps = [q(1, 1), q(1, 2), q(-2, 3)];
        for trial in 0..100 {
            let deg = (next() % 7) as usize;
            let coeffs: Vec<Rational> = (0..=deg)
                .map(|_| {
                    let n = (next() % 19) as i64 - 9;
                    let d = (next() % 9) as i64 + 1;
                    q(n, d)
                })
                .collect();
            let f = Poly::from_coeffs(coeffs);
            let h = &steps[trial % steps.len()];
            let c = discrete_antiderivative(&f, h).unwrap();
            assert_eq!(&c.shift(h) - &c, f);
            assert!(c.coeff(0).is_zero());
        }
    }

    #[test]
    fn division_and_display() {
        let a = poly(&[(-2, 1), (1, 1), (1, 1)]); // (x+2)(x-1)
        let b = poly(&[(2, 1), (1, 1)]);
        let (quot, rem) = a.div_rem(&b);
        assert_eq!(quot, poly(&[(-1, 1), (1, 1)]));
        assert!(rem.is_zero());
        assert_eq!(a.to_string(), "x^2 + x - 2");
        assert_eq!(poly(&[(0, 1), (-1, 2)]).to_string(), "-(1/2)x");
    }

    #[test]
    fn rational_root_enumeration() {
        // 6x^3 - 5x^2 - 2x + 1 = (x-1)(2x+1)(3x-1)
        let p = poly(&[(1, 1), (-2, 1), (-5, 1), (6, 1)]);
        let roots = rational_roots(&p);
        assert_eq!(
            roots,
            vec![(q(-1, 2), 1), (q(1, 3), 1), (q(1, 1), 1)]
        );
        assert_eq!(all_rational_roots(&p).unwrap().len(), 3);
        // x^2 - 2 has no rational roots
        let p = poly(&[(-2, 1), (0, 1), (1, 1)]);
        assert!(rational_roots(&p).is_empty());
        assert!(all_rational_roots(&p).is_none());
        // x^2(x - 3)^2 keeps multiplicities
        let p = Poly::from_roots(&[q(0, 1), q(0, 1), q(3, 1), q(3, 1)]);
        assert_eq!(rational_roots(&p), vec![(q(0, 1), 2), (q(3, 1), 2)]);
    }

    #[test]
    fn from_roots_and_eval() {
        let p = Poly::from_roots(&[q(1, 1), q(-2, 1)]);
        assert_eq!(p, poly(&[(-2, 1), (1, 1), (1, 1)]));
        assert!(p.eval(&q(1, 1)).is_zero());
        assert_eq!(p.eval(&q(0, 1)), q(-2, 1));
    }
}
