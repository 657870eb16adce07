//! Zero location and interlacing claims, each tied to an exact parameter
//! region expressed through q-powers (`u = q^γ`, `t = q^δ`).

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{interlace, isolate_roots, Pattern, RootSet};
use crate::error::{Error, Result};
use crate::exact::{fmt_rational, pow, ParamPoint, Rational};
use crate::families::{classical_poly, monic, quasi_poly, FamilyId, QuasiTargetId};

/// The five zero theorems, addressed on the command line by their short ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ZeroTheorem {
    /// 2φ2 of order 1: sign pattern in `u`, shifted interlacing with
    /// `L_n(zq)`, `L_{n-1}(zq)`.
    #[serde(rename = "T2_3")]
    LaguerreOrderOne,
    /// 2φ2 of order 2 with `q^{-n} < u < q^{-n-1}`.
    #[serde(rename = "T2_4")]
    LaguerreOrderTwo,
    /// 3φ2 of order 1 against `p(z; a, bq)`.
    #[serde(rename = "T3_2")]
    JacobiOrderOne,
    /// 3φ2 of order 2 with `q^{-n} < u < q^{-n-1}`.
    #[serde(rename = "T3_3")]
    JacobiOrderTwo,
    /// `L_n^{(δ)}` with `−2 < δ < −1` against the `δ + 1` family.
    #[serde(rename = "T4_2")]
    LaguerreBelowMinusOne,
}

impl ZeroTheorem {
    pub const ALL: [ZeroTheorem; 5] = [
        ZeroTheorem::LaguerreOrderOne,
        ZeroTheorem::LaguerreOrderTwo,
        ZeroTheorem::JacobiOrderOne,
        ZeroTheorem::JacobiOrderTwo,
        ZeroTheorem::LaguerreBelowMinusOne,
    ];

    pub fn id(self) -> &'static str {
        match self {
            ZeroTheorem::LaguerreOrderOne => "T2_3",
            ZeroTheorem::LaguerreOrderTwo => "T2_4",
            ZeroTheorem::JacobiOrderOne => "T3_2",
            ZeroTheorem::JacobiOrderTwo => "T3_3",
            ZeroTheorem::LaguerreBelowMinusOne => "T4_2",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|t| t.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Config(format!("unknown theorem id {s:?}")))
    }

    /// Parameters read from the point besides `q`.
    pub fn params(self) -> &'static [&'static str] {
        match self {
            ZeroTheorem::LaguerreOrderOne | ZeroTheorem::LaguerreOrderTwo => &["t", "u"],
            ZeroTheorem::JacobiOrderOne | ZeroTheorem::JacobiOrderTwo => &["a", "b", "u"],
            ZeroTheorem::LaguerreBelowMinusOne => &["t"],
        }
    }

    /// Smallest degree the statement covers.
    pub fn min_degree(self) -> usize {
        match self {
            ZeroTheorem::LaguerreOrderTwo | ZeroTheorem::JacobiOrderTwo => 3,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, pass: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroClassification {
    pub theorem: ZeroTheorem,
    pub n: usize,
    /// Case the parameter region predicts, or `"no-claim"`.
    pub predicted: String,
    /// Case read off the isolated zeros.
    pub observed: String,
    pub checks: Vec<Check>,
    /// Zeros of the polynomial under test.
    pub roots: RootSet,
}

impl ZeroClassification {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Position of `x` relative to `edge`; equality is a boundary error.
fn side(x: &Rational, edge: &Rational, what: &str) -> Result<Ordering> {
    match x.cmp(edge) {
        Ordering::Equal => Err(Error::Boundary(format!("{what} = {}", fmt_rational(edge)))),
        o => Ok(o),
    }
}

fn strictly_between(x: &Rational, lo: &Rational, hi: &Rational, what: &str) -> Result<bool> {
    Ok(side(x, lo, what)? == Ordering::Greater && side(x, hi, what)? == Ordering::Less)
}

fn roots_of(fam: &FamilyId, n: usize, q: &Rational, dilation: &Rational) -> Result<RootSet> {
    let (_, p) = monic(fam, n, q, dilation)?;
    isolate_roots(&p)
}

fn in_unit(roots: &RootSet) -> usize {
    roots.count_between(Some(&Rational::zero()), Some(&Rational::one()))
}

fn positives(roots: &RootSet) -> usize {
    roots.count_between(Some(&Rational::zero()), None)
}

fn simple_check(roots: &RootSet, n: usize) -> Check {
    Check::new(
        "real-simple",
        roots.all_real_simple(),
        format!("{} distinct real zeros of {n}, square-free: {}", roots.len(), roots.poly().is_squarefree()),
    )
}

fn count_check(name: &str, got: usize, need: usize) -> Check {
    Check::new(name, got >= need, format!("{got} zeros, at least {need} required"))
}

fn interlace_check(pattern: Pattern, z: &RootSet, x: &RootSet, y: Option<&RootSet>) -> Result<Check> {
    let v = interlace(pattern, z, x, y)?;
    Ok(Check::new(pattern.name(), v.holds, v.witness.join(", ")))
}

/// Checks the theorem's claims at one parameter point.
pub fn classify_zeros(theorem: ZeroTheorem, n: usize, point: &ParamPoint) -> Result<ZeroClassification> {
    if n < theorem.min_degree() {
        return Err(Error::Degree(format!("{} needs n ≥ {}", theorem.id(), theorem.min_degree())));
    }
    let q = point.q();
    let one = Rational::one();
    let qinv = q.recip();
    let qmn = pow(q, -(n as i64));
    let qmn1 = &qmn * &qinv;
    let no_claim = |roots: RootSet| ZeroClassification {
        theorem,
        n,
        predicted: "no-claim".into(),
        observed: "no-claim".into(),
        checks: vec![],
        roots,
    };

    match theorem {
        ZeroTheorem::LaguerreOrderOne | ZeroTheorem::LaguerreOrderTwo => {
            let (t, u) = (point.get("t")?.clone(), point.get("u")?.clone());
            let k = if theorem == ZeroTheorem::LaguerreOrderOne { 1 } else { 2 };
            let window = k == 2 && strictly_between(&u, &qmn, &qmn1, "u")?;
            let target = QuasiTargetId::PhiSmall { k, t: t.clone(), u: u.clone() };
            let roots = isolate_roots(&quasi_poly(&target, n, q)?)?;
            // δ > −1
            if side(&t, &qinv, "t")? == Ordering::Greater {
                return Ok(no_claim(roots));
            }
            let fam = FamilyId::QLaguerre { t };
            let mut checks = vec![simple_check(&roots, n), count_check("positive-zeros", positives(&roots), n - k)];
            if k == 1 {
                let above = side(&u, &qmn, "u")? == Ordering::Greater;
                let predicted = if side(&u, &one, "u")? == Ordering::Less || above { "a" } else { "b" };
                let observed = match (roots.all_real_simple(), roots.negatives()) {
                    (true, 0) => "a",
                    (true, 1) => "b",
                    _ => "other",
                };
                checks.push(Check::new(
                    "location",
                    predicted == observed,
                    format!("predicted case {predicted}, observed {observed}"),
                ));
                let x = roots_of(&fam, n, q, q)?;
                let y = roots_of(&fam, n - 1, q, q)?;
                let pattern = if above { Pattern::RightShift } else { Pattern::LeftShift };
                checks.push(interlace_check(pattern, &roots, &x, Some(&y))?);
                Ok(ZeroClassification {
                    theorem,
                    n,
                    predicted: predicted.into(),
                    observed: observed.into(),
                    checks,
                    roots,
                })
            } else {
                if !window {
                    return Ok(no_claim(roots));
                }
                let neg = roots.negatives();
                checks.push(Check::new("at-most-two-negative", neg <= 2, format!("{neg} negative zeros")));
                let x = roots_of(&fam, n - 1, q, &(q * q))?;
                checks.push(interlace_check(Pattern::AlternateDrop, &roots, &x, None)?);
                let observed = if roots.all_real_simple() && neg <= 2 { "real-simple" } else { "other" };
                Ok(ZeroClassification {
                    theorem,
                    n,
                    predicted: "real-simple".into(),
                    observed: observed.into(),
                    checks,
                    roots,
                })
            }
        }
        ZeroTheorem::JacobiOrderOne | ZeroTheorem::JacobiOrderTwo => {
            let (a, b, u) = (point.get("a")?.clone(), point.get("b")?.clone(), point.get("u")?.clone());
            let k = if theorem == ZeroTheorem::JacobiOrderOne { 1 } else { 2 };
            let window = k == 2 && strictly_between(&u, &qmn, &qmn1, "u")?;
            let target = QuasiTargetId::PhiBig { k, a: a.clone(), b: b.clone(), u: u.clone() };
            let roots = isolate_roots(&quasi_poly(&target, n, q)?)?;
            let mut checks = vec![simple_check(&roots, n), count_check("zeros-in-unit-interval", in_unit(&roots), n - k)];
            if k == 1 {
                let fam = FamilyId::LittleQJacobi { a: a.clone(), b: &b * q };
                let below_one = side(&u, &one, "u")? == Ordering::Less;
                let above_top = side(&u, &qmn, "u")? == Ordering::Greater;
                let qn1 = pow(q, n as i64 - 1);
                let above_low = side(&u, &qn1, "u")? == Ordering::Greater;
                let b_neg = b.is_negative();
                let b_pos = b.is_positive();
                let low_edge = &a * &b * pow(q, n as i64 + 1);
                let below_ab = b_pos && side(&u, &low_edge, "u")? == Ordering::Less;

                let case_a = !below_one && !above_top;
                let case_b = (above_low && below_one) || (!above_low && b_neg);
                let predicted = if case_a {
                    "a"
                } else if case_b {
                    "b"
                } else {
                    "not-a"
                };
                let unit = in_unit(&roots);
                let observed = match (roots.all_real_simple(), roots.negatives(), unit) {
                    (true, 1, m) if m == n - 1 => "a",
                    (true, 0, m) if m == n => "b",
                    _ => "other",
                };
                let agree = match predicted {
                    "not-a" => observed != "a",
                    p => p == observed,
                };
                checks.push(Check::new(
                    "location",
                    agree,
                    format!("predicted case {predicted}, observed {observed}"),
                ));
                let left = (above_low && !above_top) || (!above_low && b_neg);
                let right = above_top || below_ab;
                if left || right {
                    let x = roots_of(&fam, n, q, &one)?;
                    let y = roots_of(&fam, n - 1, q, &one)?;
                    let pattern = if right { Pattern::RightShift } else { Pattern::LeftShift };
                    checks.push(interlace_check(pattern, &roots, &x, Some(&y))?);
                }
                Ok(ZeroClassification {
                    theorem,
                    n,
                    predicted: predicted.into(),
                    observed: observed.into(),
                    checks,
                    roots,
                })
            } else {
                if !window {
                    return Ok(no_claim(roots));
                }
                let fam = FamilyId::LittleQJacobi { a, b: &b * q * q };
                let x = roots_of(&fam, n - 1, q, &one)?;
                checks.push(interlace_check(Pattern::AlternateDrop, &roots, &x, None)?);
                let observed = if roots.all_real_simple() { "real-simple" } else { "other" };
                Ok(ZeroClassification {
                    theorem,
                    n,
                    predicted: "real-simple".into(),
                    observed: observed.into(),
                    checks,
                    roots,
                })
            }
        }
        ZeroTheorem::LaguerreBelowMinusOne => {
            let t = point.get("t")?.clone();
            let fam = FamilyId::QLaguerre { t: t.clone() };
            let roots = isolate_roots(&classical_poly(&fam, n, q)?)?;
            if !strictly_between(&t, &qinv, &(&qinv * &qinv), "t")? {
                return Ok(no_claim(roots));
            }
            let raised = FamilyId::QLaguerre { t: &t * q };
            let same = roots_of(&raised, n, q, &one)?;
            let drop = roots_of(&raised, n - 1, q, &one)?;
            let checks = vec![
                simple_check(&roots, n),
                count_check("positive-zeros", positives(&roots), n - 1),
                interlace_check(Pattern::AlternateSame, &roots, &same, None)?,
                interlace_check(Pattern::AlternateDrop, &roots, &drop, None)?,
            ];
            let observed = if roots.all_real_simple() { "real-simple" } else { "other" };
            Ok(ZeroClassification {
                theorem,
                n,
                predicted: "real-simple".into(),
                observed: observed.into(),
                checks,
                roots,
            })
        }
    }
}

/// Zeros of a quasi target strictly inside its support interval: `(0, ∞)`,
/// `(0, 1)`, `(1, ∞)` in `x`, or `(a, 1)`. Returns the count and the lower
/// bound `n − k`.
pub fn support_zero_count(target: &QuasiTargetId, n: usize, q: &Rational) -> Result<(usize, usize)> {
    let roots = isolate_roots(&quasi_poly(target, n, q)?)?;
    let zero = Rational::zero();
    let one = Rational::one();
    let count = match target {
        QuasiTargetId::PhiSmall { .. } => roots.count_between(Some(&zero), None),
        QuasiTargetId::PhiBig { .. } => roots.count_between(Some(&zero), Some(&one)),
        QuasiTargetId::VarphiMeixner { .. } => roots.count_between(Some(&one), None),
        QuasiTargetId::VarPhiAsc { a, .. } => roots.count_between(Some(a), Some(&one)),
    };
    Ok((count, n - target.k()))
}
