//! Order of quasi-orthogonality: exact basis certificates and numeric
//! moment scans.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::contiguous::{laguerre_ladder, target_expansion, LadderExpansion};
use crate::error::{Error, Result};
use crate::exact::{fmt_rational, pow, Rational};
use crate::families::{
    classical_poly, moment, quasi_poly, FamilyId, QuasiTargetId, WeightSpec,
};
use crate::hyperq::build_series;
use crate::poly::QPoly;

/// Coefficients of a polynomial in a graded basis (`basis[i]` of degree `i`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisExpansion {
    pub coeffs: Vec<Rational>,
}

impl BasisExpansion {
    /// Index of the first nonzero coefficient.
    pub fn lowest(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// True when every coefficient outside `lo..=hi` vanishes.
    pub fn supported_in(&self, lo: usize, hi: usize) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| (lo..=hi).contains(&i) || c.is_zero())
    }
}

/// Triangular solve of `p = Σ c_i basis[i]`.
pub fn expand_in_basis(p: &QPoly, basis: &[QPoly]) -> Result<BasisExpansion> {
    let Some(deg) = p.degree() else {
        return Ok(BasisExpansion { coeffs: vec![] });
    };
    if deg >= basis.len() {
        return Err(Error::Degree(format!(
            "degree {deg} exceeds the basis of size {}",
            basis.len()
        )));
    }
    let mut rest = p.clone();
    let mut coeffs = vec![Rational::zero(); deg + 1];
    for i in (0..=deg).rev() {
        if basis[i].degree() != Some(i) {
            return Err(Error::Degree(format!("basis element {i} has the wrong degree")));
        }
        let c = rest.coeff(i) / basis[i].leading().expect("nonzero basis element");
        if !c.is_zero() {
            rest = &rest - &basis[i].scale(&c);
            coeffs[i] = c;
        }
    }
    debug_assert!(rest.is_zero());
    Ok(BasisExpansion { coeffs })
}

/// Classical polynomials of degrees `0..=max_degree`.
pub fn classical_basis(fam: &FamilyId, max_degree: usize, q: &Rational) -> Result<Vec<QPoly>> {
    (0..=max_degree).map(|m| classical_poly(fam, m, q)).collect()
}

/// Exact certificate that `prefactor · P_target` lies in the classical span
/// of degrees `n−k..=n+k`, with the graded polynomial coefficients obtained
/// from the k-fold expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefactoredCertificate {
    pub n: usize,
    pub k: usize,
    pub expansion: LadderExpansion,
    /// `graded[i]` multiplies the classical polynomial of degree `n − i`.
    pub graded: Vec<QPoly>,
    /// `prefactor · P_target` in the classical basis of degrees `0..=n+k`.
    pub shohat: BasisExpansion,
    /// Problems found; empty when every check holds.
    pub failures: Vec<String>,
}

impl PrefactoredCertificate {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }

    /// `n` minus the lowest degree present in the expansion.
    pub fn order(&self) -> Option<usize> {
        self.shohat.lowest().map(|i| self.n.saturating_sub(i))
    }
}

/// Builds and checks the certificate for a target at degree `n`.
pub fn prefactored_expand(target: &QuasiTargetId, n: usize, q: &Rational) -> Result<PrefactoredCertificate> {
    let p = quasi_poly(target, n, q)?;
    let k = target.k();
    let expansion = target_expansion(target, n, q)?;
    let fam = target.base_family();
    let prefactor = target.prefactor(q);
    let basis = classical_basis(&fam, n + k, q)?;
    let var = target.var();
    let mut failures = Vec::new();

    // lifted basis series Π_j B_j in the classical basis, degrees n−j..=n
    let mut lifted = Vec::with_capacity(k + 1);
    for j in 0..=k {
        let b = build_series(&target.basis_series_spec(n, j, q))?;
        let e = expand_in_basis(&(&target.lifting_factor(j, q) * &b), &basis)?;
        if !e.supported_in(n - j, n) {
            failures.push(format!("lifted series {j} leaves degrees {}..={n}", n - j));
        }
        lifted.push(e);
    }

    let mut graded = Vec::with_capacity(k + 1);
    for i in 0..=k {
        let mut g = QPoly::zero(var);
        for (j, lj) in lifted.iter().enumerate().skip(i) {
            let c = lj.coeffs.get(n - i).cloned().unwrap_or_else(Rational::zero);
            if c.is_zero() {
                continue;
            }
            let r = target.factor_range(j, k, q);
            g = &g + &r.scale(&(&expansion.coeffs[j] * c));
        }
        graded.push(g);
    }

    // the graded form must reproduce prefactor · P exactly
    let lhs = &prefactor * &p;
    let mut rhs = QPoly::zero(var);
    for (i, g) in graded.iter().enumerate() {
        rhs = &rhs + &(g * &basis[n - i]);
    }
    if lhs != rhs {
        failures.push("graded expansion does not reproduce prefactor · P".into());
    }
    let flat_prefactor = prefactor.is_constant();
    for (i, g) in graded.iter().enumerate() {
        let want = if flat_prefactor { 0 } else { k - i };
        if g.degree() != Some(want) {
            failures.push(format!(
                "graded coefficient for degree {} has degree {:?}, expected {want}",
                n - i,
                g.degree()
            ));
        }
    }

    let shohat = expand_in_basis(&lhs, &basis)?;
    match shohat.lowest() {
        Some(lo) if lo == n - k => {}
        other => failures.push(format!(
            "lowest classical degree in prefactor · P is {other:?}, expected {}",
            n - k
        )),
    }

    Ok(PrefactoredCertificate {
        n,
        k,
        expansion,
        graded,
        shohat,
        failures,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Normalized moments below this are zero.
    pub zero: f64,
    /// Normalized moments above this are nonzero.
    pub nonzero: f64,
    /// Truncation and quadrature tolerance relative to the absolute mass.
    pub quadrature: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            zero: 1e-12,
            nonzero: 1e-8,
            quadrature: 1e-15,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Zero,
    Nonzero,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentRow {
    pub t: usize,
    pub value: f64,
    pub mass: f64,
    pub normalized: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentReport {
    pub n: usize,
    pub rows: Vec<MomentRow>,
    /// Order read off the first nonzero moment.
    pub order: usize,
    /// Order predicted by the exact expansion.
    pub structural_order: usize,
}

impl MomentReport {
    pub fn consistent(&self) -> bool {
        self.order == self.structural_order
    }
}

/// What to scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderTarget {
    /// A classical polynomial against its own weight (order 0).
    Classical(FamilyId),
    /// A quasi target against its classical weight times the prefactor.
    Quasi(QuasiTargetId),
    /// `L_n^{(δ)}` with `δ < −1`, against the weight of `δ + j` where
    /// `q^{-j} < t < q^{-j-1}`.
    ShiftedLaguerre { t: Rational },
}

/// `j` with `q^{-j} < t < q^{-j-1}`, or 0 when `t < q^{-1}`.
pub fn laguerre_shift(t: &Rational, q: &Rational) -> Result<usize> {
    if !t.is_positive() {
        return Err(Error::Admissibility(format!("t = {} must be positive", fmt_rational(t))));
    }
    let qinv = q.recip();
    let mut edge = qinv.clone();
    for j in 0..64 {
        if t < &edge {
            return Ok(j);
        }
        if t == &edge {
            return Err(Error::Boundary(format!(
                "t = {} gives δ = −{}",
                fmt_rational(t),
                j + 1
            )));
        }
        edge *= &qinv;
    }
    Err(Error::Admissibility(format!("t = {} is too large", fmt_rational(t))))
}

fn classify(m: &crate::families::Moment, t: usize, tol: &Tolerances) -> Result<MomentRow> {
    let normalized = m.normalized();
    let verdict = if normalized < tol.zero {
        Verdict::Zero
    } else if normalized > tol.nonzero {
        Verdict::Nonzero
    } else {
        return Err(Error::Indeterminate {
            t_power: t,
            normalized,
        });
    };
    Ok(MomentRow {
        t,
        value: m.value,
        mass: m.mass,
        normalized,
        verdict,
    })
}

/// Scans the moments `t = 0..n` and reports the order of quasi-orthogonality
/// next to the order predicted by the exact structure.
pub fn detect_order(target: &OrderTarget, n: usize, q: &Rational, tol: &Tolerances) -> Result<MomentReport> {
    let (weight, p, structural_order) = match target {
        OrderTarget::Classical(fam) => {
            let p = classical_poly(fam, n, q)?;
            (WeightSpec::natural(fam.clone(), q.clone()), p, 0)
        }
        OrderTarget::Quasi(t) => {
            let cert = prefactored_expand(t, n, q)?;
            let order = cert.order().unwrap_or(0);
            let p = quasi_poly(t, n, q)?;
            let w = WeightSpec::natural(t.base_family(), q.clone()).with_prefactor(t.prefactor(q));
            (w, p, order)
        }
        OrderTarget::ShiftedLaguerre { t } => {
            let j = laguerre_shift(t, q)?;
            let fam = FamilyId::QLaguerre { t: t.clone() };
            let p = classical_poly(&fam, n, q)?;
            let ladder = laguerre_ladder(n, j, q);
            let order = ladder.coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
            let shifted = FamilyId::QLaguerre { t: t * pow(q, j as i64) };
            (WeightSpec::natural(shifted, q.clone()), p, order)
        }
    };
    let mut rows = Vec::with_capacity(n);
    for t in 0..n {
        let m = moment(&weight, &p, t, tol.quadrature)?;
        rows.push(classify(&m, t, tol)?);
    }
    let order = rows
        .iter()
        .find(|r| r.verdict == Verdict::Nonzero)
        .map_or(0, |r| n - r.t);
    Ok(MomentReport {
        n,
        rows,
        order,
        structural_order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn q() -> Rational {
        rat(1, 2)
    }

    #[test]
    fn basis_expansion_roundtrip() {
        let fam = FamilyId::LittleQJacobi { a: rat(1, 2), b: rat(1, 3) };
        let basis = classical_basis(&fam, 5, &q()).unwrap();
        let p = &basis[4].scale(&rat(2, 7)) + &basis[1].scale(&int(-3));
        let e = expand_in_basis(&p, &basis).unwrap();
        assert_eq!(e.coeffs, vec![int(0), int(-3), int(0), int(0), rat(2, 7)]);
        assert_eq!(e.lowest(), Some(1));
        assert!(e.supported_in(1, 4));
        assert!(!e.supported_in(2, 4));
        assert!(expand_in_basis(&basis[5], &basis[..5]).is_err());
    }

    #[test]
    fn certificates_hold_for_each_target() {
        let targets = [
            QuasiTargetId::PhiSmall { k: 2, t: rat(1, 2), u: rat(1, 3) },
            QuasiTargetId::PhiBig { k: 1, a: rat(1, 2), b: rat(-1, 3), u: int(5) },
            QuasiTargetId::VarphiMeixner { k: 2, b: rat(1, 3), c: int(2), u: rat(3, 2) },
            QuasiTargetId::VarPhiAsc { k: 1, a: int(-1), u: rat(1, 5) },
        ];
        for t in &targets {
            for n in t.k() + 1..=5 {
                let c = prefactored_expand(t, n, &q()).unwrap();
                assert!(c.holds(), "{t:?} n={n}: {:?}", c.failures);
                assert_eq!(c.order(), Some(t.k()));
                assert!(c.graded[t.k()].is_constant());
            }
        }
    }

    #[test]
    fn shift_regions() {
        let q = q();
        assert_eq!(laguerre_shift(&rat(1, 2), &q).unwrap(), 0);
        assert_eq!(laguerre_shift(&rat(3, 2), &q).unwrap(), 0);
        assert_eq!(laguerre_shift(&int(3), &q).unwrap(), 1);
        assert_eq!(laguerre_shift(&int(5), &q).unwrap(), 2);
        assert!(matches!(laguerre_shift(&int(2), &q), Err(Error::Boundary(_))));
        assert!(matches!(laguerre_shift(&int(4), &q), Err(Error::Boundary(_))));
    }

    #[test]
    fn detect_order_matches_structure() {
        let tol = Tolerances::default();
        let q = q();
        let cases = [
            OrderTarget::Classical(FamilyId::QMeixner { b: rat(1, 3), c: int(2) }),
            OrderTarget::Quasi(QuasiTargetId::PhiBig { k: 2, a: rat(1, 2), b: rat(1, 2), u: rat(1, 3) }),
            OrderTarget::Quasi(QuasiTargetId::PhiSmall { k: 1, t: rat(1, 2), u: rat(1, 3) }),
            OrderTarget::ShiftedLaguerre { t: int(3) },
        ];
        for c in &cases {
            let r = detect_order(c, 4, &q, &tol).unwrap();
            assert!(r.consistent(), "{c:?}: {r:?}");
        }
        let r = detect_order(&cases[1], 4, &q, &tol).unwrap();
        assert_eq!(r.order, 2);
        assert_eq!(r.rows.iter().filter(|r| r.verdict == Verdict::Zero).count(), 2);
    }
}
