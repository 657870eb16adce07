//! Contiguous relations and the k-fold expansion of a target series in
//! classical series of consecutive degrees.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{fmt_rational, pow, ParamPoint, Rational};
use crate::families::{classical_poly, quasi_poly, FamilyId, QuasiTargetId};
use crate::hyperq::{build_series, SeriesSpec, VariableMode};
use crate::poly::{QPoly, Var};

/// Coefficients of `φ(q^{-m}, αq; α) = b·φ(q^{-m}) + a·φ(q^{-m+1})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitCoeffs {
    pub a: Rational,
    pub b: Rational,
}

/// `a = q^m α (1 − q^{-m}) / (1 − α)`, `b = q^m (q^{-m} − α) / (1 − α)`.
pub fn contiguous_split(m: usize, alpha: &Rational, q: &Rational) -> Result<SplitCoeffs> {
    let one = Rational::one();
    if *alpha == one {
        return Err(Error::ExcludedParameter("split parameter α = 1".into()));
    }
    let qm = pow(q, m as i64);
    let qmi = pow(q, -(m as i64));
    let den = &one - alpha;
    Ok(SplitCoeffs {
        a: &qm * alpha * (&one - &qmi) / &den,
        b: &qm * (&qmi - alpha) / &den,
    })
}

/// `P = Σ_j coeffs[j] · B_j` with `B_j` of degree `n − j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LadderExpansion {
    pub n: usize,
    pub coeffs: Vec<Rational>,
}

impl LadderExpansion {
    pub fn k(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `Σ_j coeffs[j] · basis(j)`.
    pub fn combine<F>(&self, mut basis: F) -> Result<QPoly>
    where
        F: FnMut(usize) -> Result<QPoly>,
    {
        let mut acc: Option<QPoly> = None;
        for (j, c) in self.coeffs.iter().enumerate() {
            let term = basis(j)?.scale(c);
            acc = Some(match acc {
                Some(a) => &a + &term,
                None => term,
            });
        }
        Ok(acc.expect("expansion has at least one term"))
    }
}

/// Expands the ratio `(u q^k; q)_m / (u; q)_m` of a degree-`n` series by
/// splitting off `α = u q^{k-1}, …, u` in turn. Requires
/// `u q^{k-1} ∉ {1, q, …, q^{k-1}}` and `k ≤ n`.
pub fn k_fold_expansion(n: usize, k: usize, u: &Rational, q: &Rational) -> Result<LadderExpansion> {
    if k > n {
        return Err(Error::Degree(format!("expansion order {k} exceeds degree {n}")));
    }
    let mut coeffs = vec![Rational::one()];
    for i in (0..k).rev() {
        let alpha = u * pow(q, i as i64);
        if alpha == Rational::one() {
            return Err(Error::ExcludedParameter(format!(
                "u = {} makes u q^{i} = 1",
                fmt_rational(u)
            )));
        }
        let mut next = vec![Rational::zero(); coeffs.len() + 1];
        for (j, c) in coeffs.iter().enumerate() {
            let s = contiguous_split(n - j, &alpha, q)?;
            next[j] += c * &s.b;
            next[j + 1] += c * &s.a;
        }
        coeffs = next;
    }
    Ok(LadderExpansion { n, coeffs })
}

/// Expansion of a quasi target in its basis series.
pub fn target_expansion(target: &QuasiTargetId, n: usize, q: &Rational) -> Result<LadderExpansion> {
    target.check(n, q)?;
    k_fold_expansion(n, target.k(), target.u(), q)
}

/// `L_n^{(δ)} = Σ_i c_i L_{n-i}^{(δ+steps)}`, from
/// `L_m^{(δ)} = q^{-m} (L_m^{(δ+1)} − L_{m-1}^{(δ+1)})`.
pub fn laguerre_ladder(n: usize, steps: usize, q: &Rational) -> LadderExpansion {
    let mut coeffs = vec![Rational::one()];
    for _ in 0..steps {
        let mut next = vec![Rational::zero(); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            if n < i {
                continue;
            }
            let w = c * pow(q, -((n - i) as i64));
            next[i] += &w;
            if n > i {
                next[i + 1] -= &w;
            }
        }
        coeffs = next;
    }
    while coeffs.len() > n + 1 {
        coeffs.pop();
    }
    LadderExpansion { n, coeffs }
}

/// Both sides of an identity and their difference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residual {
    pub lhs: QPoly,
    pub rhs: QPoly,
}

impl Residual {
    pub fn difference(&self) -> QPoly {
        &self.lhs - &self.rhs
    }

    pub fn is_zero(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Checks the k-fold expansion identity for a target: the target series
/// against `Σ A_j B_j`.
pub fn verify_identity(target: &QuasiTargetId, n: usize, q: &Rational) -> Result<Residual> {
    let lhs = quasi_poly(target, n, q)?;
    let exp = target_expansion(target, n, q)?;
    let rhs = exp.combine(|j| build_series(&target.basis_series_spec(n, j, q)))?;
    Ok(Residual { lhs, rhs })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationId {
    /// `(1+z) L_n(zq)` in `L_{n+1}(z)` and `L_n(z)`.
    LaguerreRaise,
    /// `L_n(z)` in `L_n(zq)` and `L_{n-1}(zq)`.
    LaguerreLower,
    /// `(1 − zqb) p_n(z; a, bq)` in `p_{n+1}(z; a, b)` and `p_n(z; a, b)`.
    JacobiRaise,
    /// `p_n(z; a, b)` in `p_n(z; a, bq)` and `p_{n-1}(z; a, bq)`.
    JacobiLower,
    /// `(bc + x) M_n(x; b, c/q)` in `M_{n+1}(x; b, c)` and `M_n(x; b, c)`.
    MeixnerRaise,
    /// `L_n^{(δ-1)}` in `L_n^{(δ)}` and `L_{n-1}^{(δ)}`.
    LaguerreParameter,
    /// `φ(q^{-n}, αq²)` in `φ(q^{-n+j}, α)`, `j = 0, 1, 2`, for the 2φ2 with
    /// denominators `(u, tq)`.
    DoubleSplit,
}

impl RelationId {
    pub const ALL: [RelationId; 7] = [
        RelationId::LaguerreRaise,
        RelationId::LaguerreLower,
        RelationId::JacobiRaise,
        RelationId::JacobiLower,
        RelationId::MeixnerRaise,
        RelationId::LaguerreParameter,
        RelationId::DoubleSplit,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RelationId::LaguerreRaise => "laguerre-raise",
            RelationId::LaguerreLower => "laguerre-lower",
            RelationId::JacobiRaise => "jacobi-raise",
            RelationId::JacobiLower => "jacobi-lower",
            RelationId::MeixnerRaise => "meixner-raise",
            RelationId::LaguerreParameter => "laguerre-parameter",
            RelationId::DoubleSplit => "double-split",
        }
    }

    /// Parameter names read from the point.
    pub fn params(self) -> &'static [&'static str] {
        match self {
            RelationId::LaguerreRaise | RelationId::LaguerreLower | RelationId::LaguerreParameter => &["t"],
            RelationId::JacobiRaise | RelationId::JacobiLower => &["a", "b"],
            RelationId::MeixnerRaise => &["b", "c"],
            RelationId::DoubleSplit => &["alpha", "t", "u"],
        }
    }

    /// Smallest degree for which the relation is stated.
    pub fn min_degree(self) -> usize {
        match self {
            RelationId::LaguerreLower | RelationId::JacobiLower | RelationId::DoubleSplit => 1,
            _ => 0,
        }
    }
}

fn lin(c0: Rational, c1: Rational, var: Var) -> QPoly {
    QPoly::linear(c0, c1, var)
}

/// Evaluates both sides of a relation at degree `n`.
pub fn relation_residual(id: RelationId, n: usize, point: &ParamPoint) -> Result<Residual> {
    if n < id.min_degree() {
        return Err(Error::Degree(format!("{} needs n ≥ {}", id.name(), id.min_degree())));
    }
    let q = point.q();
    let one = Rational::one();
    let qn = pow(q, n as i64);
    let qn1 = &qn * q;
    match id {
        RelationId::LaguerreRaise => {
            let t = point.get("t")?;
            let fam = FamilyId::QLaguerre { t: t.clone() };
            let lhs = &lin(one.clone(), one.clone(), Var::Z) * &classical_poly(&fam, n, q)?.dilate(q);
            let d = t * &qn1;
            let rhs = &classical_poly(&fam, n + 1, q)?.scale(&((&qn1 - &one) / &d))
                + &classical_poly(&fam, n, q)?.scale(&(&one / &d));
            Ok(Residual { lhs, rhs })
        }
        RelationId::LaguerreLower => {
            let t = point.get("t")?;
            let fam = FamilyId::QLaguerre { t: t.clone() };
            let lhs = classical_poly(&fam, n, q)?;
            let rhs = &classical_poly(&fam, n, q)?.dilate(q).scale(&(&one / &qn))
                - &classical_poly(&fam, n - 1, q)?.dilate(q).scale(&((&one - t * &qn) / &qn));
            Ok(Residual { lhs, rhs })
        }
        RelationId::JacobiRaise => {
            let (a, b) = (point.get("a")?, point.get("b")?);
            let shifted = FamilyId::LittleQJacobi { a: a.clone(), b: b * q };
            let base = FamilyId::LittleQJacobi { a: a.clone(), b: b.clone() };
            let lhs = &lin(one.clone(), -(q * b), Var::Z) * &classical_poly(&shifted, n, q)?;
            let den = a * b * &qn1 * &qn1 - &one;
            let rhs = &classical_poly(&base, n + 1, q)?.scale(&(b * &qn1 * (a * &qn1 - &one) / &den))
                + &classical_poly(&base, n, q)?.scale(&((b * &qn1 - &one) / &den));
            Ok(Residual { lhs, rhs })
        }
        RelationId::JacobiLower => {
            let (a, b) = (point.get("a")?, point.get("b")?);
            let shifted = FamilyId::LittleQJacobi { a: a.clone(), b: b * q };
            let base = FamilyId::LittleQJacobi { a: a.clone(), b: b.clone() };
            let lhs = classical_poly(&base, n, q)?;
            let den = &one - a * b * &qn * &qn1;
            let rhs = &classical_poly(&shifted, n, q)?.scale(&((&one - a * b * &qn1) / &den))
                + &classical_poly(&shifted, n - 1, q)?.scale(&(a * b * &qn1 * (&one - &qn) / &den));
            Ok(Residual { lhs, rhs })
        }
        RelationId::MeixnerRaise => {
            let (b, c) = (point.get("b")?, point.get("c")?);
            let shifted = FamilyId::QMeixner { b: b.clone(), c: c / q };
            let base = FamilyId::QMeixner { b: b.clone(), c: c.clone() };
            let lhs = &lin(b * c, one.clone(), Var::X) * &classical_poly(&shifted, n, q)?;
            let rhs = &classical_poly(&base, n + 1, q)?.scale(&(c * (b * &qn1 - &one) / &qn1))
                + &classical_poly(&base, n, q)?.scale(&((&qn1 + c) / &qn1));
            Ok(Residual { lhs, rhs })
        }
        RelationId::LaguerreParameter => {
            let t = point.get("t")?;
            let lowered = FamilyId::QLaguerre { t: t / q };
            let fam = FamilyId::QLaguerre { t: t.clone() };
            let lhs = classical_poly(&lowered, n, q)?;
            let inv = &one / &qn;
            let mut rhs = classical_poly(&fam, n, q)?.scale(&inv);
            if n > 0 {
                rhs = &rhs - &classical_poly(&fam, n - 1, q)?.scale(&inv);
            }
            Ok(Residual { lhs, rhs })
        }
        RelationId::DoubleSplit => double_split(n, point),
    }
}

/// The 2φ2 `φ(q^{-m}, β; u, tq; q, −q^{n+1} t z)`, argument tied to `n`.
fn small_series(m: usize, n: usize, beta: &Rational, t: &Rational, u: &Rational, q: &Rational) -> Result<QPoly> {
    let arg = -(pow(q, n as i64 + 1) * t);
    build_series(&SeriesSpec::new(
        m,
        vec![beta.clone()],
        vec![u.clone(), t * q],
        VariableMode::ArgLinear(arg),
        q.clone(),
    ))
}

fn double_split(n: usize, point: &ParamPoint) -> Result<Residual> {
    let q = point.q();
    let (alpha, t, u) = (point.get("alpha")?, point.get("t")?, point.get("u")?);
    let one = Rational::one();
    let qmn = pow(q, -(n as i64));
    let d0 = &qmn - alpha;
    let d1 = &qmn - alpha * q;
    if d0.is_zero() || d1.is_zero() || *alpha == one || alpha * q == one {
        return Err(Error::ExcludedParameter(format!(
            "α = {} is excluded at n = {n}",
            fmt_rational(alpha)
        )));
    }
    let lead = pow(q, -2 * n as i64) * (&one - alpha) * (&one - alpha * q) / (&d0 * &d1);
    let lhs = small_series(n, n, &(alpha * q * q), t, u, q)?.scale(&lead);
    let c1 = alpha * (&one + q) * (&one - &qmn) / &d1;
    let c2 = alpha * alpha * (&one - &qmn) * (&one - &qmn * q) / (&d0 * &d1);
    let mut rhs = &small_series(n, n, alpha, t, u, q)? + &small_series(n - 1, n, alpha, t, u, q)?.scale(&c1);
    if !c2.is_zero() {
        rhs = &rhs + &small_series(n - 2, n, alpha, t, u, q)?.scale(&c2);
    }
    Ok(Residual { lhs, rhs })
}
