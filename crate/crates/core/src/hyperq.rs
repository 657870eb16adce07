//! Terminating basic hypergeometric series as exact polynomials.
//!
//! The series
//!
//! ```text
//! rφs(q^{-n}, α…; β…; q, w) = Σ_k (q^{-n};q)_k ∏(α;q)_k / ((q;q)_k ∏(β;q)_k)
//!                             · ((−1)^k q^{C(k,2)})^{1+s−r} · w^k
//! ```
//!
//! is built in one of three shapes, depending on where the polynomial
//! variable enters: linearly through the argument, as a numerator parameter
//! `x` (the polynomial is then in `x`), or as the numerator parameter `z^{-1}`
//! paired with an argument proportional to `z`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{fmt_rational, pow, qpoch, to_f64, Rational};
use crate::poly::{QPoly, Var};

/// Largest degree accepted by the public builders.
pub const MAX_DEGREE: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VariableMode {
    /// Argument is `c·z`.
    ArgLinear(Rational),
    /// One numerator parameter is the variable `x`; the argument is constant.
    ParamSlot(Rational),
    /// One numerator parameter is `z^{-1}` and the argument is `c·z`.
    InverseSlot(Rational),
}

impl VariableMode {
    fn extra_numerators(&self) -> usize {
        match self {
            VariableMode::ArgLinear(_) => 0,
            VariableMode::ParamSlot(_) | VariableMode::InverseSlot(_) => 1,
        }
    }

    pub fn var(&self) -> Var {
        match self {
            VariableMode::ParamSlot(_) => Var::X,
            _ => Var::Z,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesSpec {
    pub n: usize,
    /// Numerator parameters other than `q^{-n}` and the variable slot.
    pub numerators: Vec<Rational>,
    /// Denominator parameters; zero is allowed.
    pub denominators: Vec<Rational>,
    pub r: usize,
    pub s: usize,
    pub mode: VariableMode,
    pub q: Rational,
}

impl SeriesSpec {
    /// Builds a spec with the shape `(r, s)` inferred from the parameters.
    pub fn new(
        n: usize,
        numerators: Vec<Rational>,
        denominators: Vec<Rational>,
        mode: VariableMode,
        q: Rational,
    ) -> Self {
        let r = 1 + numerators.len() + mode.extra_numerators();
        let s = denominators.len();
        Self {
            n,
            numerators,
            denominators,
            r,
            s,
            mode,
            q,
        }
    }

    fn check(&self) -> Result<()> {
        if self.n > MAX_DEGREE {
            return Err(Error::Degree(format!(
                "degree {} exceeds the supported maximum {MAX_DEGREE}",
                self.n
            )));
        }
        let expected_r = 1 + self.numerators.len() + self.mode.extra_numerators();
        if self.r != expected_r || self.s != self.denominators.len() {
            return Err(Error::Mode(format!(
                "shape {}φ{} does not match {} numerator and {} denominator parameters in mode {:?}",
                self.r,
                self.s,
                self.numerators.len(),
                self.denominators.len(),
                self.mode
            )));
        }
        if self.q.is_zero() {
            return Err(Error::Mode("base q must be nonzero".into()));
        }
        for b in &self.denominators {
            if let Some(k) = (1..=self.n).find(|&k| qpoch(b, &self.q, k).is_zero()) {
                return Err(Error::Termination {
                    param: fmt_rational(b),
                    term: k,
                });
            }
        }
        Ok(())
    }

    /// Coefficient of term `k` without the variable-dependent factor, for
    /// `k = 0..=n`.
    fn term_coefficients(&self) -> Vec<Rational> {
        let q = &self.q;
        let corr = 1 + self.s as i64 - self.r as i64;
        let qn = pow(q, -(self.n as i64));
        let mut out = Vec::with_capacity(self.n + 1);
        let mut c = Rational::one();
        out.push(c.clone());
        for k in 1..=self.n {
            let qk1 = pow(q, k as i64 - 1);
            let mut num = Rational::one() - &qn * &qk1;
            for a in &self.numerators {
                num *= Rational::one() - a * &qk1;
            }
            let mut den = Rational::one() - &qk1 * q;
            for b in &self.denominators {
                den *= Rational::one() - b * &qk1;
            }
            // ratio of consecutive ((−1)^k q^{C(k,2)})^{corr}
            let sign_step = pow(&(-qk1), corr);
            c = c * num / den * sign_step;
            out.push(c.clone());
        }
        out
    }
}

/// Builds the exact polynomial of a terminating series.
pub fn build_series(spec: &SeriesSpec) -> Result<QPoly> {
    spec.check()?;
    let coeffs = spec.term_coefficients();
    let var = spec.mode.var();
    let q = &spec.q;
    let out = match &spec.mode {
        VariableMode::ArgLinear(c) => {
            let mut ck = Rational::one();
            let mut v = Vec::with_capacity(coeffs.len());
            for t in coeffs {
                v.push(t * &ck);
                ck *= c;
            }
            QPoly::new(v, var)
        }
        VariableMode::ParamSlot(arg) => {
            let mut acc = QPoly::zero(var);
            let mut xk = QPoly::one(var);
            let mut argk = Rational::one();
            for (k, t) in coeffs.iter().enumerate() {
                if k > 0 {
                    // (x;q)_k = (x;q)_{k-1} (1 − x q^{k−1})
                    let f = QPoly::linear(Rational::one(), -pow(q, k as i64 - 1), var);
                    xk = &xk * &f;
                    argk *= arg;
                }
                acc = &acc + &xk.scale(&(t * &argk));
            }
            acc
        }
        VariableMode::InverseSlot(c) => {
            // (z^{-1};q)_k (cz)^k = c^k ∏_{i<k} (z − q^i)
            let mut acc = QPoly::zero(var);
            let mut prod = QPoly::one(var);
            let mut ck = Rational::one();
            for (k, t) in coeffs.iter().enumerate() {
                if k > 0 {
                    let f = QPoly::linear(-pow(q, k as i64 - 1), Rational::one(), var);
                    prod = &prod * &f;
                    ck *= c;
                }
                acc = &acc + &prod.scale(&(t * &ck));
            }
            acc
        }
    };
    Ok(out)
}

/// Sums the series directly in floating point. For [`VariableMode::ParamSlot`]
/// `v` is the value of the parameter variable `x`; otherwise it is `z`.
pub fn series_value_float(spec: &SeriesSpec, v: f64) -> Result<f64> {
    spec.check()?;
    let q = to_f64(&spec.q);
    let corr = 1 + spec.s as i32 - spec.r as i32;
    let qn = q.powi(-(spec.n as i32));
    let nums: Vec<f64> = spec.numerators.iter().map(to_f64).collect();
    let dens: Vec<f64> = spec.denominators.iter().map(to_f64).collect();

    let (slot, arg) = match &spec.mode {
        VariableMode::ArgLinear(c) => (None, to_f64(c) * v),
        VariableMode::ParamSlot(a) => (Some(v), to_f64(a)),
        VariableMode::InverseSlot(c) => (None, to_f64(c)),
    };
    let inverse = matches!(spec.mode, VariableMode::InverseSlot(_));

    let mut sum = 1.0;
    let mut term = 1.0;
    for k in 1..=spec.n {
        let qk1 = q.powi(k as i32 - 1);
        let mut num = 1.0 - qn * qk1;
        for a in &nums {
            num *= 1.0 - a * qk1;
        }
        if let Some(x) = slot {
            num *= 1.0 - x * qk1;
        }
        let mut den = 1.0 - qk1 * q;
        for b in &dens {
            den *= 1.0 - b * qk1;
        }
        let step = (-qk1).powi(corr);
        if inverse {
            // (1/z;q)_k (cz)^k, taken literally away from z = 0
            let f = if v != 0.0 { (1.0 - qk1 / v) * v } else { -qk1 };
            term = term * num / den * step * f * arg;
        } else {
            term = term * num / den * step * arg;
        }
        sum += term;
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    /// L_1 with q = 1/2, t = 1/2 from the 1φ1 spec.
    fn laguerre_one() -> (SeriesSpec, Rational) {
        let q = rat(1, 2);
        let t = rat(1, 2);
        let spec = SeriesSpec::new(
            1,
            vec![],
            vec![&t * &q],
            VariableMode::ArgLinear(-(pow(&q, 2) * &t)),
            q.clone(),
        );
        let norm = qpoch(&(&t * &q), &q, 1) / qpoch(&q, &q, 1);
        (spec, norm)
    }

    #[test]
    fn degree_zero_is_one() {
        for mode in [
            VariableMode::ArgLinear(int(3)),
            VariableMode::ParamSlot(int(3)),
            VariableMode::InverseSlot(int(3)),
        ] {
            let var = mode.var();
            let spec = SeriesSpec::new(0, vec![rat(1, 3)], vec![rat(1, 5)], mode, rat(1, 2));
            assert_eq!(build_series(&spec).unwrap(), QPoly::one(var));
        }
    }

    #[test]
    fn laguerre_degree_one() {
        let (spec, norm) = laguerre_one();
        assert_eq!(norm, rat(3, 2));
        let p = build_series(&spec).unwrap().scale(&norm);
        assert_eq!(p, QPoly::new(vec![rat(3, 2), rat(-1, 2)], Var::Z));
        assert_eq!(p.eval(&int(0)), rat(3, 2));
        let v = series_value_float(&spec, 3.0).unwrap() * 1.5;
        assert!(v.abs() < 1e-15);
        assert_eq!(series_value_float(&spec, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn inverse_slot_identity_small_k() {
        // (z^{-1};q)_k (cz)^k = c^k ∏ (z − q^i), brute force at sample points
        let q = rat(2, 3);
        let c = rat(-5, 4);
        for k in 0..6usize {
            let mut prod = QPoly::one(Var::Z);
            for i in 0..k {
                prod = &prod * &QPoly::linear(-pow(&q, i as i64), int(1), Var::Z);
            }
            let lhs_poly = prod.scale(&pow(&c, k as i64));
            for z0 in [rat(1, 7), int(-3), rat(9, 4)] {
                let zi = z0.recip();
                let direct = qpoch(&zi, &q, k) * pow(&(&c * &z0), k as i64);
                assert_eq!(lhs_poly.eval(&z0), direct);
            }
        }
    }

    #[test]
    fn param_slot_normalization() {
        let spec = SeriesSpec::new(
            5,
            vec![rat(1, 3)],
            vec![rat(1, 4), rat(3, 2)],
            VariableMode::ParamSlot(rat(-7, 2)),
            rat(1, 2),
        );
        let p = build_series(&spec).unwrap();
        assert_eq!(p.var(), Var::X);
        assert_eq!(p.eval(&int(1)), int(1));
        assert_eq!(p.degree(), Some(5));
    }

    #[test]
    fn termination_and_mode_errors() {
        let q = rat(1, 2);
        let spec = SeriesSpec::new(3, vec![], vec![int(4)], VariableMode::ArgLinear(int(1)), q.clone());
        assert!(matches!(build_series(&spec), Err(Error::Termination { .. })));
        let mut bad = SeriesSpec::new(2, vec![], vec![rat(1, 3)], VariableMode::ArgLinear(int(1)), q.clone());
        bad.r = 3;
        assert!(matches!(build_series(&bad), Err(Error::Mode(_))));
        let big = SeriesSpec::new(33, vec![], vec![], VariableMode::ArgLinear(int(1)), q);
        assert!(matches!(build_series(&big), Err(Error::Degree(_))));
    }

    #[test]
    fn zero_denominator_allowed() {
        let spec = SeriesSpec::new(
            3,
            vec![],
            vec![int(0)],
            VariableMode::InverseSlot(int(-1)),
            rat(1, 2),
        );
        let p = build_series(&spec).unwrap();
        assert_eq!(p.degree(), Some(3));
    }
}
