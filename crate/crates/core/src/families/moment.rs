//! Numeric moment functionals `Σ` or `∫ v^t · prefactor(v) · p(v) · w(v)`.
//!
//! Discrete measures sum over the support: little q-Jacobi at `z = q^s`,
//! q-Meixner at `x = q^{-s}`, and Al-Salam–Carlitz I through the Jackson
//! q-integral on `(a, 1)`, i.e. nodes `q^s` and `a q^s`. q-Laguerre uses the
//! continuous weight `z^δ / (−z;q)_∞` on `(0, ∞)`.
//!
//! Every result carries the absolute mass (the same sum or integral of the
//! absolute integrand), which is the scale cancellation is measured against.

use num_traits::One;

use super::quadrature::adaptive;
use super::FamilyId;
use crate::error::{Error, Result};
use crate::exact::{exponent_of, pow, to_f64, Rational};
use crate::poly::QPoly;

/// Consecutive negligible terms required before a discrete sum stops.
const QUIET_TERMS: usize = 30;
const MAX_TERMS: usize = 20_000;
const MAX_PANELS: usize = 4_000;
/// Round-off level below which panel halving cannot make progress.
const PANEL_TOL_FLOOR: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightKind {
    /// Lebesgue integral over `[lower, upper]` (`upper` may be infinite).
    ContinuousIntegral { lower: f64, upper: f64 },
    /// Sum over the discrete support of the family's orthogonality measure.
    DiscreteSum,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightSpec {
    pub family: FamilyId,
    pub q: Rational,
    pub kind: WeightKind,
    /// Extra polynomial factor multiplied into the weight.
    pub prefactor: Option<QPoly>,
}

impl WeightSpec {
    /// The measure under which the family is orthogonal.
    pub fn natural(family: FamilyId, q: Rational) -> Self {
        let kind = match family {
            FamilyId::QLaguerre { .. } => WeightKind::ContinuousIntegral {
                lower: 0.0,
                upper: f64::INFINITY,
            },
            _ => WeightKind::DiscreteSum,
        };
        Self {
            family,
            q,
            kind,
            prefactor: None,
        }
    }

    pub fn with_prefactor(mut self, prefactor: QPoly) -> Self {
        self.prefactor = Some(prefactor);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moment {
    pub value: f64,
    /// Sum or integral of the absolute integrand.
    pub mass: f64,
}

impl Moment {
    /// `|value| / mass`, or 0 when the integrand vanishes identically.
    pub fn normalized(&self) -> f64 {
        if self.mass == 0.0 {
            0.0
        } else {
            self.value.abs() / self.mass
        }
    }
}

/// Computes the `t_power`-th moment of `p` against the weight, with the
/// truncation or quadrature error below `tol` relative to the absolute mass.
pub fn moment(weight: &WeightSpec, p: &QPoly, t_power: usize, tol: f64) -> Result<Moment> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Convergence(format!("tolerance must be positive, got {tol}")));
    }
    weight.family.check_admissible(&weight.q)?;
    let integrand = match &weight.prefactor {
        Some(f) => f * p,
        None => p.clone(),
    };
    match (weight.kind, &weight.family) {
        (WeightKind::DiscreteSum, FamilyId::QLaguerre { .. }) => Err(Error::Admissibility(
            "q-Laguerre moments use the continuous weight".into(),
        )),
        (WeightKind::DiscreteSum, fam) => discrete_sum(fam, &weight.q, &integrand, t_power, tol),
        (WeightKind::ContinuousIntegral { .. }, FamilyId::QLaguerre { t }) => {
            laguerre_integral(t, &weight.q, &integrand, t_power, tol)
        }
        (WeightKind::ContinuousIntegral { lower, upper }, FamilyId::AlSalamCarlitzI { a }) => {
            asc_lebesgue(a, &weight.q, &integrand, t_power, tol, lower, upper)
        }
        (WeightKind::ContinuousIntegral { .. }, fam) => Err(Error::Admissibility(format!(
            "{} is orthogonal with respect to a discrete measure",
            fam.name()
        ))),
    }
}

/// Neumaier-compensated running sum.
#[derive(Default)]
struct Accumulator {
    sum: f64,
    comp: f64,
    mass: f64,
}

impl Accumulator {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
        self.mass += v.abs();
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// `ln (x;q)_∞` for `x < 1`, truncated once the factors are within 1e−17 of 1.
fn ln_qpoch_inf(x: f64, q: f64) -> f64 {
    let mut acc = 0.0;
    let mut xi = x;
    while xi.abs() > 1e-17 {
        acc += (-xi).ln_1p();
        xi *= q;
    }
    acc
}

fn asc_weight(x: f64, a: f64, q: f64) -> f64 {
    (ln_qpoch_inf(q * x, q) + ln_qpoch_inf(q * x / a, q)).exp()
}

fn discrete_sum(fam: &FamilyId, q: &Rational, f: &QPoly, t_power: usize, tol: f64) -> Result<Moment> {
    let degree = f.degree().unwrap_or(0) + t_power;
    let qf = to_f64(q);
    let mut min_terms = degree + 10;
    if let FamilyId::QMeixner { c, .. } = fam {
        let growth = to_f64(c).ln() / (1.0 / qf).ln();
        min_terms += growth.max(0.0).ceil() as usize;
    }

    let mut acc = Accumulator::default();
    let mut quiet = 0usize;
    let mut weight = Rational::one();
    let t_pow = |x: &Rational| pow(x, t_power as i64);

    for s in 0..MAX_TERMS {
        // largest single contribution at this step
        let largest = match fam {
            FamilyId::LittleQJacobi { a, b } => {
                if s > 0 {
                    // w_s = (bq;q)_s (aq)^s / (q;q)_s
                    let qs1 = pow(q, s as i64 - 1);
                    weight *= (Rational::one() - b * q * &qs1) * a * q / (Rational::one() - q * &qs1);
                }
                let x = pow(q, s as i64);
                let term = to_f64(&(&weight * t_pow(&x) * f.eval(&x)));
                acc.add(term);
                term.abs()
            }
            FamilyId::QMeixner { b, c } => {
                if s > 0 {
                    // w_s = (bq;q)_s c^s q^{C(s,2)} / ((−bcq;q)_s (q;q)_s)
                    let qs1 = pow(q, s as i64 - 1);
                    weight *= (Rational::one() - b * q * &qs1) * c * &qs1
                        / ((Rational::one() + b * c * q * &qs1) * (Rational::one() - q * &qs1));
                }
                let x = pow(q, -(s as i64));
                let term = to_f64(&(&weight * t_pow(&x) * f.eval(&x)));
                acc.add(term);
                term.abs()
            }
            FamilyId::AlSalamCarlitzI { a } => {
                // Jackson: (1−q) Σ q^s g(q^s) − (1−q) Σ a q^s g(a q^s)
                let af = to_f64(a);
                let xp = pow(q, s as i64);
                let xn = a * &xp;
                let gp = to_f64(&(t_pow(&xp) * f.eval(&xp))) * asc_weight(to_f64(&xp), af, qf);
                let gn = to_f64(&(t_pow(&xn) * f.eval(&xn))) * asc_weight(to_f64(&xn), af, qf);
                let scale = (1.0 - qf) * to_f64(&xp);
                let pos = scale * gp;
                let neg = -af * scale * gn;
                acc.add(pos);
                acc.add(neg);
                pos.abs().max(neg.abs())
            }
            FamilyId::QLaguerre { .. } => unreachable!(),
        };
        if largest <= tol * acc.mass || acc.mass == 0.0 {
            quiet += 1;
        } else {
            quiet = 0;
        }
        if quiet >= QUIET_TERMS && s >= min_terms {
            return Ok(Moment {
                value: acc.value(),
                mass: acc.mass,
            });
        }
    }
    Err(Error::Convergence(format!(
        "{} sum not converged after {MAX_TERMS} terms",
        fam.name()
    )))
}

/// `∫_0^∞ z^{δ+t} f(z) / (−z;q)_∞ dz` over dyadic panels `[2^j, 2^{j+1}]`
/// in both directions, with a power-law tail estimate at the origin.
fn laguerre_integral(t: &Rational, q: &Rational, f: &QPoly, t_power: usize, tol: f64) -> Result<Moment> {
    let delta = exponent_of(t, q);
    let beta = delta + t_power as f64;
    if beta <= -1.0 {
        return Err(Error::Convergence(format!(
            "weight z^{beta} is not integrable at the origin"
        )));
    }
    let qf = to_f64(q);
    let coeffs = f.to_f64_coeffs();
    let deg = coeffs.len().saturating_sub(1);
    let integrand = |z: f64| -> f64 {
        if z <= 0.0 || coeffs.is_empty() {
            return 0.0;
        }
        let lnz = z.ln();
        let lnw = -ln_qpoch_inf(-z, qf);
        if z <= 1.0 {
            let p = coeffs.iter().rev().fold(0.0, |acc, c| acc * z + c);
            p * (beta * lnz + lnw).exp()
        } else {
            // Horner in 1/z, the z^deg factor folded into the exponent
            let iz = 1.0 / z;
            let p = coeffs.iter().fold(0.0, |acc, c| acc * iz + c);
            p * ((beta + deg as f64) * lnz + lnw).exp()
        }
    };

    let panel_tol = (tol * 1e-2).max(PANEL_TOL_FLOOR);
    let mut acc = Accumulator::default();
    // upward from 1
    let mut quiet = 0;
    let mut prev_mass = f64::INFINITY;
    let mut lo = 1.0f64;
    for _ in 0..MAX_PANELS {
        let hi = 2.0 * lo;
        let (v, m) = adaptive(&integrand, lo, hi, panel_tol);
        acc.add_panel(v, m);
        let decreasing = m <= prev_mass;
        prev_mass = m;
        quiet = if m <= panel_tol * acc.mass && decreasing { quiet + 1 } else { 0 };
        lo = hi;
        if quiet >= 4 || !lo.is_finite() {
            break;
        }
    }
    if quiet < 4 {
        return Err(Error::Convergence("q-Laguerre upper tail not resolved".into()));
    }
    // downward from 1 to ε, where z^β f(0) describes the integrand to O(ε)
    let eps = (tol * 1e-2).min(1e-12);
    let mut hi = 1.0f64;
    while hi > eps {
        let lo = 0.5 * hi;
        let (v, m) = adaptive(&integrand, lo, hi, panel_tol);
        acc.add_panel(v, m);
        hi = lo;
    }
    // ∫_0^ε z^β g ≈ ε·f(ε)/(β+1) for smooth g
    let tail = hi * integrand(hi) / (beta + 1.0);
    acc.add_panel(tail, tail.abs());
    Ok(Moment {
        value: acc.value(),
        mass: acc.mass,
    })
}

impl Accumulator {
    fn add_panel(&mut self, value: f64, mass: f64) {
        let m = self.mass;
        self.add(value);
        self.mass = m + mass;
    }
}

/// Lebesgue integral against `(qz, qz/a; q)_∞` on `[lower, upper]`.
fn asc_lebesgue(
    a: &Rational,
    q: &Rational,
    f: &QPoly,
    t_power: usize,
    tol: f64,
    lower: f64,
    upper: f64,
) -> Result<Moment> {
    let af = to_f64(a);
    let qf = to_f64(q);
    let coeffs = f.to_f64_coeffs();
    let integrand = |z: f64| {
        let p = coeffs.iter().rev().fold(0.0, |acc, c| acc * z + c);
        z.powi(t_power as i32) * p * asc_weight(z, af, qf)
    };
    let mut acc = Accumulator::default();
    let mut cuts = vec![lower];
    if lower < 0.0 && upper > 0.0 {
        cuts.push(0.0);
    }
    cuts.push(upper);
    for w in cuts.windows(2) {
        let (v, m) = adaptive(&integrand, w[0], w[1], (tol * 1e-2).max(PANEL_TOL_FLOOR));
        acc.add_panel(v, m);
    }
    Ok(Moment {
        value: acc.value(),
        mass: acc.mass,
    })
}

/// Closed-form moment ratios of the q-Laguerre weight,
/// `μ_{m+1} / μ_m = (1 − t q^{m+1}) / (t q^{m+1})`, giving `μ_m / μ_0` exactly.
pub fn laguerre_moment_ratio(t: &Rational, q: &Rational, m: usize) -> Rational {
    (1..=m).fold(Rational::one(), |acc, j| {
        let tq = t * pow(q, j as i64);
        acc * (Rational::one() - &tq) / tq
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::families::classical_poly;
    use crate::poly::{QPoly, Var};

    fn orth_check(fam: FamilyId, q: Rational, n_max: usize) {
        for n in 1..=n_max {
            let pn = classical_poly(&fam, n, &q).unwrap();
            for m in 0..n {
                let pm = classical_poly(&fam, m, &q).unwrap();
                let w = WeightSpec::natural(fam.clone(), q.clone()).with_prefactor(pm);
                let mo = moment(&w, &pn, 0, 1e-15).unwrap();
                assert!(mo.normalized() < 1e-12, "{} m={m} n={n}: {mo:?}", fam.name());
            }
            let w = WeightSpec::natural(fam.clone(), q.clone()).with_prefactor(pn.clone());
            let mo = moment(&w, &pn, 0, 1e-15).unwrap();
            assert!(mo.normalized() > 1e-8, "norm of degree {n} vanished");
        }
    }

    #[test]
    fn little_q_jacobi_orthogonality() {
        orth_check(FamilyId::LittleQJacobi { a: rat(1, 2), b: rat(1, 2) }, rat(1, 2), 6);
    }

    #[test]
    fn q_meixner_orthogonality() {
        orth_check(FamilyId::QMeixner { b: rat(1, 3), c: int(2) }, rat(1, 2), 6);
    }

    #[test]
    fn al_salam_carlitz_orthogonality_jackson() {
        orth_check(FamilyId::AlSalamCarlitzI { a: int(-1) }, rat(1, 2), 6);
        orth_check(FamilyId::AlSalamCarlitzI { a: rat(-3, 2) }, rat(2, 3), 5);
    }

    #[test]
    fn q_laguerre_orthogonality() {
        orth_check(FamilyId::QLaguerre { t: rat(1, 2) }, rat(1, 2), 5);
        orth_check(FamilyId::QLaguerre { t: rat(3, 2) }, rat(1, 2), 4);
    }

    #[test]
    fn al_salam_carlitz_lebesgue_is_not_orthogonal() {
        let q = rat(1, 2);
        let fam = FamilyId::AlSalamCarlitzI { a: int(-1) };
        let u2 = classical_poly(&fam, 2, &q).unwrap();
        let w = WeightSpec {
            family: fam,
            q,
            kind: WeightKind::ContinuousIntegral { lower: -1.0, upper: 1.0 },
            prefactor: None,
        };
        let mo = moment(&w, &u2, 0, 1e-14).unwrap();
        assert!(mo.normalized() > 1e-2, "{mo:?}");
    }

    #[test]
    fn laguerre_moment_ratios_match_closed_form() {
        let q = rat(1, 2);
        for t in [rat(1, 2), rat(3, 2), rat(1, 5)] {
            let fam = FamilyId::QLaguerre { t: t.clone() };
            let w = WeightSpec::natural(fam, q.clone());
            let one = QPoly::one(Var::Z);
            let mu0 = moment(&w, &one, 0, 1e-15).unwrap().value;
            for m in 1..=5 {
                let mu = moment(&w, &one, m, 1e-15).unwrap().value;
                let exact = to_f64(&laguerre_moment_ratio(&t, &q, m));
                assert!((mu / mu0 - exact).abs() <= 1e-10 * exact.abs(), "t={t} m={m}");
            }
        }
    }

    #[test]
    fn prefactor_matches_product_integrand() {
        let q = rat(1, 2);
        let fam = FamilyId::LittleQJacobi { a: rat(1, 3), b: rat(-1, 2) };
        let f = QPoly::linear(int(1), rat(-3, 2), Var::Z);
        let p = classical_poly(&fam, 3, &q).unwrap();
        let with = moment(&WeightSpec::natural(fam.clone(), q.clone()).with_prefactor(f.clone()), &p, 1, 1e-15)
            .unwrap();
        let direct = moment(&WeightSpec::natural(fam, q), &(&f * &p), 1, 1e-15).unwrap();
        assert!((with.value - direct.value).abs() <= 1e-14 * direct.mass);
    }

    #[test]
    fn rejects_mismatched_measures() {
        let q = rat(1, 2);
        let one = QPoly::one(Var::Z);
        let w = WeightSpec {
            family: FamilyId::QLaguerre { t: rat(1, 2) },
            q: q.clone(),
            kind: WeightKind::DiscreteSum,
            prefactor: None,
        };
        assert!(matches!(moment(&w, &one, 0, 1e-12), Err(Error::Admissibility(_))));
        let w = WeightSpec::natural(FamilyId::QLaguerre { t: int(4) }, q);
        assert!(matches!(moment(&w, &one, 0, 1e-12), Err(Error::Convergence(_))));
    }
}
