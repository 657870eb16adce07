//! Dense univariate polynomials with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::exact::{fmt_rational, pow, to_f64, Rational};

/// Which variable a polynomial is written in. q-Meixner objects live in
/// `x = q^{-z}`; everything else is a polynomial in `z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Z,
    X,
}

impl Var {
    pub fn symbol(self) -> &'static str {
        match self {
            Var::Z => "z",
            Var::X => "x",
        }
    }
}

/// Coefficients are stored by ascending power with no trailing zeros, so the
/// zero polynomial has an empty coefficient list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPoly {
    coeffs: Vec<Rational>,
    var: Var,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rational>, var: Var) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs, var }
    }

    pub fn zero(var: Var) -> Self {
        Self::new(Vec::new(), var)
    }

    pub fn one(var: Var) -> Self {
        Self::constant(Rational::one(), var)
    }

    pub fn constant(c: Rational, var: Var) -> Self {
        Self::new(vec![c], var)
    }

    /// `c0 + c1·v`.
    pub fn linear(c0: Rational, c1: Rational, var: Var) -> Self {
        Self::new(vec![c0, c1], var)
    }

    pub fn monomial(c: Rational, power: usize, var: Var) -> Self {
        let mut coeffs = vec![Rational::zero(); power + 1];
        coeffs[power] = c;
        Self::new(coeffs, var)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` stands for the degree −∞ of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(to_f64).collect()
    }

    /// `p(s·v)`: coefficient `i` is multiplied by `s^i`.
    pub fn dilate(&self, s: &Rational) -> QPoly {
        let mut si = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &si);
            si *= s;
        }
        QPoly::new(out, self.var)
    }

    pub fn scale(&self, c: &Rational) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|a| a * c).collect(), self.var)
    }

    pub fn derivative(&self) -> QPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rational::from_integer((i as i64).into()))
            .collect();
        QPoly::new(coeffs, self.var)
    }

    /// Returns `(leading coefficient, self / leading)`. The zero polynomial
    /// comes back unchanged with leading factor zero.
    pub fn monic(&self) -> (Rational, QPoly) {
        match self.leading() {
            None => (Rational::zero(), self.clone()),
            Some(lc) => {
                let lc = lc.clone();
                (lc.clone(), self.scale(&lc.recip()))
            }
        }
    }

    /// Euclidean division. Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &QPoly) -> (QPoly, QPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let nq = rem.len().saturating_sub(dd);
        let mut quot = vec![Rational::zero(); nq];
        for i in (0..nq).rev() {
            let c = &rem[i + dd] / &lc;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * d;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (QPoly::new(quot, self.var), QPoly::new(rem, self.var))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            // keep the remainder chain small
            a = b;
            b = r.monic().1;
        }
        a.monic().1
    }

    /// `self / gcd(self, self')`.
    pub fn squarefree_part(&self) -> QPoly {
        if self.is_constant() {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0
    }

    /// True when the polynomial has no repeated roots over ℂ.
    pub fn is_squarefree(&self) -> bool {
        self.is_constant() || self.gcd(&self.derivative()).is_constant()
    }

    pub fn with_var(mut self, var: Var) -> QPoly {
        self.var = var;
        self
    }

    fn check_var(&self, other: &QPoly) {
        assert_eq!(
            self.var, other.var,
            "polynomials in different variables cannot be combined"
        );
    }
}

/// `∏_{i<k} (1 − scale·q^i·v)`; with `scale = −1` this is `(−z;q)_k`.
pub fn qpoch_poly(q: &Rational, k: usize, scale: &Rational, var: Var) -> QPoly {
    let mut acc = QPoly::one(var);
    for i in 0..k {
        let c = -(scale * pow(q, i as i64));
        acc = &acc * &QPoly::linear(Rational::one(), c, var);
    }
    acc
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        self.check_var(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        QPoly::new(coeffs, self.var)
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        self.check_var(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        QPoly::new(coeffs, self.var)
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        self.check_var(rhs);
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero(self.var);
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out, self.var)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| -c).collect(), self.var)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QPoly {
            type Output = QPoly;
            fn $m(self, rhs: QPoly) -> QPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let v = self.var.symbol();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let body = if a.is_integer() {
                a.numer().to_string()
            } else {
                fmt_rational(&a)
            };
            match i {
                0 => write!(f, "{body}")?,
                1 => write!(f, "{body}{v}")?,
                _ => write!(f, "{body}{v}^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn zp(c: &[Rational]) -> QPoly {
        QPoly::new(c.to_vec(), Var::Z)
    }

    #[test]
    fn normalization_and_degree() {
        let p = zp(&[int(1), int(0), int(0)]);
        assert_eq!(p.degree(), Some(0));
        assert_eq!(QPoly::zero(Var::Z).degree(), None);
        assert!(zp(&[int(0)]).is_zero());
    }

    #[test]
    fn qpoch_poly_examples() {
        let q = rat(1, 2);
        assert_eq!(qpoch_poly(&q, 0, &int(-1), Var::Z), QPoly::one(Var::Z));
        assert_eq!(
            qpoch_poly(&q, 2, &int(-1), Var::Z),
            zp(&[int(1), rat(3, 2), rat(1, 2)])
        );
    }

    #[test]
    fn qpoch_poly_splits() {
        let q = rat(2, 3);
        let s = int(-1);
        for k in 0..7 {
            let full = qpoch_poly(&q, k, &s, Var::Z);
            for j in 0..=k {
                let head = qpoch_poly(&q, j, &s, Var::Z);
                let tail = qpoch_poly(&q, k - j, &s, Var::Z).dilate(&pow(&q, j as i64));
                assert_eq!(full, &head * &tail, "k={k} j={j}");
            }
        }
    }

    #[test]
    fn qpoch_poly_matches_direct_product() {
        let q = rat(1, 3);
        let s = rat(5, 7);
        let p = qpoch_poly(&q, 5, &s, Var::Z);
        for z0 in [rat(-3, 2), rat(0, 1), rat(7, 5), rat(11, 13), int(4)] {
            let direct = (0..5)
                .map(|i| Rational::one() - &s * pow(&q, i) * &z0)
                .fold(Rational::one(), |a, b| a * b);
            assert_eq!(p.eval(&z0), direct);
        }
    }

    #[test]
    fn dilate_examples() {
        let p = zp(&[rat(3, 2), rat(-1, 2)]);
        assert_eq!(p.dilate(&rat(1, 2)), zp(&[rat(3, 2), rat(-1, 4)]));
        assert_eq!(zp(&[int(1), int(1)]).dilate(&int(1)), zp(&[int(1), int(1)]));
        let r = zp(&[int(7), int(3), int(-2)]);
        assert_eq!(r.dilate(&int(0)), QPoly::constant(int(7), Var::Z));
    }

    #[test]
    fn arithmetic_against_termwise_oracle() {
        let a = zp(&[int(1), rat(-2, 3), int(5)]);
        let b = zp(&[rat(1, 4), int(3)]);
        let sum = &a + &b;
        let prod = &a * &b;
        for x in [int(-2), rat(1, 3), int(7)] {
            assert_eq!(sum.eval(&x), a.eval(&x) + b.eval(&x));
            assert_eq!(prod.eval(&x), a.eval(&x) * b.eval(&x));
            assert_eq!((&a - &b).eval(&x), a.eval(&x) - b.eval(&x));
        }
        assert_eq!(prod.degree(), Some(3));
        // direct Horner-free evaluation
        let x = rat(3, 5);
        let direct = int(1) + rat(-2, 3) * &x + int(5) * &x * &x;
        assert_eq!(a.eval(&x), direct);
    }

    #[test]
    fn division_and_gcd() {
        // (z-1)^2 (z+2)
        let p = &(&zp(&[int(-1), int(1)]) * &zp(&[int(-1), int(1)])) * &zp(&[int(2), int(1)]);
        let (qt, r) = p.div_rem(&zp(&[int(2), int(1)]));
        assert!(r.is_zero());
        assert_eq!(qt, zp(&[int(1), int(-2), int(1)]));
        assert!(!p.is_squarefree());
        assert_eq!(p.squarefree_part().monic().1, zp(&[int(-2), int(1), int(1)]));
        assert_eq!(p.gcd(&p.derivative()), zp(&[int(-1), int(1)]));
    }

    #[test]
    fn display() {
        let p = zp(&[rat(3, 2), rat(-1, 2)]);
        assert_eq!(p.to_string(), "3/2 - 1/2z");
        assert_eq!(QPoly::zero(Var::X).to_string(), "0");
    }
}
