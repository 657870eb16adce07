//! The four classical q-orthogonal families and the quasi-orthogonal
//! targets built on top of them.

mod moment;
pub mod quadrature;

pub use moment::{laguerre_moment_ratio, moment, Moment, WeightKind, WeightSpec};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{binom2, check_base, fmt_rational, in_negative_lattice, pow, qpoch, Rational};
use crate::hyperq::{build_series, SeriesSpec, VariableMode};
use crate::poly::{qpoch_poly, QPoly, Var};

/// A classical family with its parameters stored as exact q-powers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyId {
    /// q-Laguerre with `t = q^δ`.
    QLaguerre { t: Rational },
    LittleQJacobi { a: Rational, b: Rational },
    /// q-Meixner, a polynomial in `x = q^{-z}`.
    QMeixner { b: Rational, c: Rational },
    AlSalamCarlitzI { a: Rational },
}

impl FamilyId {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyId::QLaguerre { .. } => "q-laguerre",
            FamilyId::LittleQJacobi { .. } => "little-q-jacobi",
            FamilyId::QMeixner { .. } => "q-meixner",
            FamilyId::AlSalamCarlitzI { .. } => "al-salam-carlitz-1",
        }
    }

    pub fn var(&self) -> Var {
        match self {
            FamilyId::QMeixner { .. } => Var::X,
            _ => Var::Z,
        }
    }

    /// Checks the parameter constraints under which the family is orthogonal
    /// with respect to a positive weight. q-Laguerre only needs `t > 0` here;
    /// the range of `δ` is a per-theorem hypothesis.
    pub fn check_admissible(&self, q: &Rational) -> Result<()> {
        check_base(q)?;
        let one = Rational::one();
        let fail = |msg: String| Err(Error::Admissibility(msg));
        match self {
            FamilyId::QLaguerre { t } if !t.is_positive() => {
                fail(format!("q-Laguerre needs t = q^δ > 0, got {}", fmt_rational(t)))
            }
            FamilyId::LittleQJacobi { a, b } => {
                let aq = a * q;
                if !(aq.is_positive() && aq < one) {
                    fail(format!("little q-Jacobi needs 0 < aq < 1, got aq = {}", fmt_rational(&aq)))
                } else if b * q >= one {
                    fail(format!("little q-Jacobi needs bq < 1, got b = {}", fmt_rational(b)))
                } else {
                    Ok(())
                }
            }
            FamilyId::QMeixner { b, c } => {
                let bq = b * q;
                if !(bq.is_positive() && bq < one) {
                    fail(format!("q-Meixner needs 0 < bq < 1, got bq = {}", fmt_rational(&bq)))
                } else if !c.is_positive() {
                    fail(format!("q-Meixner needs c > 0, got c = {}", fmt_rational(c)))
                } else {
                    Ok(())
                }
            }
            FamilyId::AlSalamCarlitzI { a } if !a.is_negative() => {
                fail(format!("Al-Salam-Carlitz I needs a < 0, got a = {}", fmt_rational(a)))
            }
            _ => Ok(()),
        }
    }

    /// Series defining the degree-`n` member, before the normalization factor.
    pub fn series_spec(&self, n: usize, q: &Rational) -> SeriesSpec {
        let qn1 = pow(q, n as i64 + 1);
        match self {
            FamilyId::QLaguerre { t } => SeriesSpec::new(
                n,
                vec![],
                vec![t * q],
                VariableMode::ArgLinear(-(&qn1 * t)),
                q.clone(),
            ),
            FamilyId::LittleQJacobi { a, b } => SeriesSpec::new(
                n,
                vec![a * b * &qn1],
                vec![a * q],
                VariableMode::ArgLinear(q.clone()),
                q.clone(),
            ),
            FamilyId::QMeixner { b, c } => SeriesSpec::new(
                n,
                vec![],
                vec![b * q],
                VariableMode::ParamSlot(-(&qn1 / c)),
                q.clone(),
            ),
            FamilyId::AlSalamCarlitzI { a } => SeriesSpec::new(
                n,
                vec![],
                vec![Rational::zero()],
                VariableMode::InverseSlot(q / a),
                q.clone(),
            ),
        }
    }

    /// The constant multiplying the series in the family's standard
    /// normalization.
    pub fn normalization(&self, n: usize, q: &Rational) -> Rational {
        match self {
            FamilyId::QLaguerre { t } => qpoch(&(t * q), q, n) / qpoch(q, q, n),
            FamilyId::AlSalamCarlitzI { a } => pow(&-a, n as i64) * pow(q, binom2(n)),
            _ => Rational::one(),
        }
    }

    /// Same family with parameters replaced, used for parameter-shifted
    /// bases (`δ+1`, `bq`, …).
    pub fn with_t(&self, t: Rational) -> FamilyId {
        match self {
            FamilyId::QLaguerre { .. } => FamilyId::QLaguerre { t },
            other => other.clone(),
        }
    }
}

/// Exact polynomial of the degree-`n` member of a classical family.
pub fn classical_poly(fam: &FamilyId, n: usize, q: &Rational) -> Result<QPoly> {
    fam.check_admissible(q)?;
    let p = build_series(&fam.series_spec(n, q))?;
    Ok(p.scale(&fam.normalization(n, q)))
}

/// Leading coefficient and monic version of `P_n(dilation · v)`.
pub fn monic(fam: &FamilyId, n: usize, q: &Rational, dilation: &Rational) -> Result<(Rational, QPoly)> {
    let p = classical_poly(fam, n, q)?.dilate(dilation);
    Ok(p.monic())
}

/// The four quasi-orthogonal targets. `u = q^γ`; the pair
/// `(u q^k ; u)` enters as one extra numerator and one extra denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuasiTargetId {
    /// 2φ2 built on q-Laguerre.
    PhiSmall { k: usize, t: Rational, u: Rational },
    /// 3φ2 built on little q-Jacobi.
    PhiBig { k: usize, a: Rational, b: Rational, u: Rational },
    /// 3φ2 built on q-Meixner, a polynomial in `x = q^{-z}`.
    VarphiMeixner { k: usize, b: Rational, c: Rational, u: Rational },
    /// 3φ2 built on Al-Salam–Carlitz I.
    VarPhiAsc { k: usize, a: Rational, u: Rational },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TargetKind {
    PhiSmall,
    PhiBig,
    VarphiMeixner,
    VarPhiAsc,
}

impl TargetKind {
    pub const ALL: [TargetKind; 4] = [
        TargetKind::PhiSmall,
        TargetKind::PhiBig,
        TargetKind::VarphiMeixner,
        TargetKind::VarPhiAsc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TargetKind::PhiSmall => "phi-small",
            TargetKind::PhiBig => "phi-big",
            TargetKind::VarphiMeixner => "varphi-meixner",
            TargetKind::VarPhiAsc => "varphi-asc",
        }
    }
}

impl QuasiTargetId {
    pub fn kind(&self) -> TargetKind {
        match self {
            QuasiTargetId::PhiSmall { .. } => TargetKind::PhiSmall,
            QuasiTargetId::PhiBig { .. } => TargetKind::PhiBig,
            QuasiTargetId::VarphiMeixner { .. } => TargetKind::VarphiMeixner,
            QuasiTargetId::VarPhiAsc { .. } => TargetKind::VarPhiAsc,
        }
    }

    pub fn k(&self) -> usize {
        match self {
            QuasiTargetId::PhiSmall { k, .. }
            | QuasiTargetId::PhiBig { k, .. }
            | QuasiTargetId::VarphiMeixner { k, .. }
            | QuasiTargetId::VarPhiAsc { k, .. } => *k,
        }
    }

    pub fn u(&self) -> &Rational {
        match self {
            QuasiTargetId::PhiSmall { u, .. }
            | QuasiTargetId::PhiBig { u, .. }
            | QuasiTargetId::VarphiMeixner { u, .. }
            | QuasiTargetId::VarPhiAsc { u, .. } => u,
        }
    }

    /// Classical family whose weight certifies quasi-orthogonality.
    pub fn base_family(&self) -> FamilyId {
        match self {
            QuasiTargetId::PhiSmall { t, .. } => FamilyId::QLaguerre { t: t.clone() },
            QuasiTargetId::PhiBig { a, b, .. } => FamilyId::LittleQJacobi { a: a.clone(), b: b.clone() },
            QuasiTargetId::VarphiMeixner { b, c, .. } => FamilyId::QMeixner { b: b.clone(), c: c.clone() },
            QuasiTargetId::VarPhiAsc { a, .. } => FamilyId::AlSalamCarlitzI { a: a.clone() },
        }
    }

    pub fn var(&self) -> Var {
        self.base_family().var()
    }

    /// Checks the family constraints and that neither `u` nor `u q^k` has its
    /// exponent in `{0, −1, …, −n}`.
    pub fn check(&self, n: usize, q: &Rational) -> Result<()> {
        self.base_family().check_admissible(q)?;
        let k = self.k();
        if k >= n && k != 0 {
            return Err(Error::Degree(format!("order k = {k} must be below the degree n = {n}")));
        }
        let u = self.u();
        if !u.is_positive() {
            return Err(Error::Admissibility(format!("u = q^γ must be positive, got {}", fmt_rational(u))));
        }
        let uk = u * pow(q, k as i64);
        if in_negative_lattice(u, q, n) || in_negative_lattice(&uk, q, n) {
            return Err(Error::ExcludedParameter(format!(
                "u = {} puts γ or γ+{k} in {{0, -1, ..., -{n}}}",
                fmt_rational(u)
            )));
        }
        Ok(())
    }

    /// Series for the degree-`n` target.
    pub fn series_spec(&self, n: usize, q: &Rational) -> SeriesSpec {
        let mut spec = self.basis_series_spec(n, 0, q);
        let u = self.u().clone();
        spec.numerators.insert(0, &u * pow(q, self.k() as i64));
        spec.denominators.push(u);
        spec.r += 1;
        spec.s += 1;
        spec
    }

    /// The `j`-th series of the k-fold contiguous expansion: degree `n − j`,
    /// the `(q^{γ}; q^{γ})` pair cancelled, every other parameter (including
    /// the argument) still tied to `n`.
    pub fn basis_series_spec(&self, n: usize, j: usize, q: &Rational) -> SeriesSpec {
        let mut spec = self.base_family().series_spec(n, q);
        spec.n = n - j;
        spec
    }

    /// Polynomial `Π` with `Π·B_j` in the span of the classical basis of
    /// degrees `n−j..=n`, where `B_j` is the `j`-th expansion series.
    pub fn lifting_factor(&self, j: usize, q: &Rational) -> QPoly {
        self.factor_range(0, j, q)
    }

    /// Product of the per-step factors with indices `from..to`. The full
    /// prefactor is `factor_range(0, k)`.
    pub fn factor_range(&self, from: usize, to: usize, q: &Rational) -> QPoly {
        let var = self.var();
        let mut acc = QPoly::one(var);
        for i in from..to {
            let f = match self {
                // (1 + z q^i)
                QuasiTargetId::PhiSmall { .. } => QPoly::linear(Rational::one(), pow(q, i as i64), var),
                // (1 − z b q^{i+1})
                QuasiTargetId::PhiBig { b, .. } => {
                    QPoly::linear(Rational::one(), -(b * pow(q, i as i64 + 1)), var)
                }
                // (x + b c q^{-i})
                QuasiTargetId::VarphiMeixner { b, c, .. } => {
                    QPoly::linear(b * c * pow(q, -(i as i64)), Rational::one(), var)
                }
                QuasiTargetId::VarPhiAsc { .. } => QPoly::one(var),
            };
            acc = &acc * &f;
        }
        acc
    }

    /// Weight prefactor turning the target's weight into the classical one:
    /// `(−z;q)_k`, `(zbq;q)_k`, `∏(x + bc q^{1−k+i})`, or `1`.
    pub fn prefactor(&self, q: &Rational) -> QPoly {
        let k = self.k();
        match self {
            QuasiTargetId::PhiSmall { .. } => qpoch_poly(q, k, &-Rational::one(), Var::Z),
            QuasiTargetId::PhiBig { b, .. } => qpoch_poly(q, k, &(b * q), Var::Z),
            _ => self.factor_range(0, k, q),
        }
    }
}

/// Exact polynomial of a quasi-orthogonal target.
pub fn quasi_poly(target: &QuasiTargetId, n: usize, q: &Rational) -> Result<QPoly> {
    target.check(n, q)?;
    build_series(&target.series_spec(n, q))
}

/// Value at which every target and every series without a prefactor equals
/// one: `z = 0`, or `x = 1` for q-Meixner. Al-Salam–Carlitz I series have no
/// such point and return `None`.
pub fn normalization_point(target: &QuasiTargetId) -> Option<Rational> {
    match target {
        QuasiTargetId::VarphiMeixner { .. } => Some(Rational::one()),
        QuasiTargetId::VarPhiAsc { .. } => None,
        _ => Some(Rational::zero()),
    }
}
