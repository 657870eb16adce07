//! Exact scalars: arbitrary-precision rationals, q-shifted factorials and
//! parameter points.
//!
//! Every parameter of a family is carried as an exact q-power (`t = q^δ`,
//! `u = q^γ`) so that all contiguous identities become identities between
//! rational polynomials. Real-exponent range conditions translate into
//! exact comparisons of q-powers; since `0 < q < 1`, `γ > m` is `u < q^m`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar, always reduced with a positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `x^e` for any integer exponent. Panics on `0^e` with `e < 0`.
pub fn pow(x: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        assert!(!x.is_zero(), "zero raised to a negative power");
        num_traits::pow(x.recip(), e.unsigned_abs() as usize)
    }
}

/// The q-shifted factorial `(a;q)_k = ∏_{i<k} (1 − a q^i)`.
pub fn qpoch(a: &Rational, q: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    let mut aqi = a.clone();
    for _ in 0..k {
        acc *= Rational::one() - &aqi;
        aqi *= q;
    }
    acc
}

/// `C(k, 2) = k(k−1)/2`.
pub fn binom2(k: usize) -> i64 {
    (k as i64) * (k as i64 - 1) / 2
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        if x.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Formats as `numerator/denominator`, including `/1` for integers.
pub fn fmt_rational(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `p/q` or a bare integer. Decimal notation is rejected since it
/// would silently round.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Config(format!("malformed rational {s:?}; expected p/q"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Config(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Checks `0 < q < 1`.
pub fn check_base(q: &Rational) -> Result<()> {
    if q.is_positive() && q < &Rational::one() {
        Ok(())
    } else {
        Err(Error::Admissibility(format!(
            "base q = {} must lie in (0, 1)",
            fmt_rational(q)
        )))
    }
}

/// True when `u ∈ {1, q^{-1}, …, q^{-n}}`, i.e. the exponent of `u` lies in
/// `{0, −1, …, −n}`.
pub fn in_negative_lattice(u: &Rational, q: &Rational, n: usize) -> bool {
    let qinv = q.recip();
    let mut p = Rational::one();
    for _ in 0..=n {
        if &p == u {
            return true;
        }
        p *= &qinv;
    }
    false
}

/// A base `q` together with named exact parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamPoint {
    q: Rational,
    params: BTreeMap<String, Rational>,
}

impl ParamPoint {
    pub fn new(q: Rational) -> Result<Self> {
        check_base(&q)?;
        Ok(Self {
            q,
            params: BTreeMap::new(),
        })
    }

    pub fn with(mut self, name: &str, value: Rational) -> Self {
        self.params.insert(name.to_string(), value);
        self
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn get(&self, name: &str) -> Result<&Rational> {
        self.params
            .get(name)
            .ok_or_else(|| Error::Config(format!("missing parameter {name:?}")))
    }

    pub fn params(&self) -> &BTreeMap<String, Rational> {
        &self.params
    }

    /// `q^m` for any integer `m`.
    pub fn q_power(&self, m: i64) -> Rational {
        pow(&self.q, m)
    }

    /// Recovers the real exponent `log x / log q`. This is the only place an
    /// exact parameter is turned into a float exponent.
    pub fn exponent_of(&self, name: &str) -> Result<f64> {
        let x = self.get(name)?;
        Ok(exponent_of(x, &self.q))
    }
}

pub fn exponent_of(x: &Rational, q: &Rational) -> f64 {
    to_f64(x).ln() / to_f64(q).ln()
}

impl fmt::Display for ParamPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q={}", fmt_rational(&self.q))?;
        for (k, v) in &self.params {
            write!(f, " {k}={}", fmt_rational(v))?;
        }
        Ok(())
    }
}
