//! Grid runner behind the command line: expands a [`SuiteConfig`] into
//! independent rows, evaluates them in parallel and assembles a sorted
//! [`Report`].

pub mod config;
pub mod report;

use std::collections::BTreeMap;
use std::time::{SystemTime, UNIX_EPOCH};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::contiguous::{relation_residual, target_expansion, verify_identity, RelationId};
use crate::error::{Error, Result};
use crate::exact::{fmt_rational, ParamPoint, Rational};
use crate::families::TargetKind;
use crate::poly::QPoly;
use crate::quasi::{detect_order, prefactored_expand, Tolerances};
use crate::rootlab::companion::companion_roots;
use crate::rootlab::{classify_zeros, Pattern, ZeroTheorem};

pub use config::{ExpansionCheck, OrderKind, SuiteConfig};
pub use report::{fmt_float, Record, Report, RootRow, Summary};

use config::{build_order_target, build_target, parse_point, parse_qs, Point};

/// Relative agreement required between exact and companion roots.
pub const COMPANION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubSuite {
    Relations,
    Expansions,
    Quasi,
    Zeros,
    Interlace,
}

impl SubSuite {
    /// What `suite` runs; interlacing is part of every zero record.
    pub const FULL: [SubSuite; 4] = [SubSuite::Relations, SubSuite::Expansions, SubSuite::Quasi, SubSuite::Zeros];
}

#[derive(Debug, Clone)]
enum Job {
    Relation {
        id: RelationId,
        q: Rational,
        n: usize,
        point: Point,
    },
    Expansion {
        check: ExpansionCheck,
        kind: TargetKind,
        q: Rational,
        n: usize,
        k: usize,
        point: Point,
    },
    Order {
        kind: OrderKind,
        q: Rational,
        n: usize,
        k: usize,
        point: Point,
    },
    Zero {
        theorem: ZeroTheorem,
        q: Rational,
        n: usize,
        point: Point,
        interlace_only: bool,
    },
}

fn target_params(kind: TargetKind) -> &'static [&'static str] {
    match kind {
        TargetKind::PhiSmall => &["t", "u"],
        TargetKind::PhiBig => &["a", "b", "u"],
        TargetKind::VarphiMeixner => &["b", "c", "u"],
        TargetKind::VarPhiAsc => &["a", "u"],
    }
}

fn order_params(kind: OrderKind) -> &'static [&'static str] {
    match kind {
        OrderKind::PhiSmall => target_params(TargetKind::PhiSmall),
        OrderKind::PhiBig => target_params(TargetKind::PhiBig),
        OrderKind::VarphiMeixner => target_params(TargetKind::VarphiMeixner),
        OrderKind::VarPhiAsc => target_params(TargetKind::VarPhiAsc),
        OrderKind::ShiftedLaguerre => &["t"],
    }
}

fn order_name(kind: OrderKind) -> &'static str {
    match kind {
        OrderKind::PhiSmall => "phi-small",
        OrderKind::PhiBig => "phi-big",
        OrderKind::VarphiMeixner => "varphi-meixner",
        OrderKind::VarPhiAsc => "varphi-asc",
        OrderKind::ShiftedLaguerre => "shifted-laguerre",
    }
}

/// Restricts a point to `names`; every name must be present.
fn select(point: &Point, names: &[&str]) -> Result<Point> {
    names
        .iter()
        .map(|&k| {
            point
                .get(k)
                .map(|v| (k.to_string(), v.clone()))
                .ok_or_else(|| Error::Config(format!("parameter point is missing {k:?}")))
        })
        .collect()
}

fn param_point(q: &Rational, point: &Point) -> Result<ParamPoint> {
    let mut p = ParamPoint::new(q.clone())?;
    for (k, v) in point {
        p = p.with(k, v.clone());
    }
    Ok(p)
}

fn strings(point: &Point) -> BTreeMap<String, String> {
    point.iter().map(|(k, v)| (k.clone(), fmt_rational(v))).collect()
}

fn coeff_strings(p: &QPoly) -> Vec<String> {
    p.coeffs().iter().map(fmt_rational).collect()
}

/// Expands the selected sub-suites into rows, parsing every rational first.
fn plan(config: &SuiteConfig, suites: &[SubSuite]) -> Result<Vec<Job>> {
    let mut jobs = Vec::new();
    let wants = |s: SubSuite| suites.contains(&s);
    if wants(SubSuite::Relations) {
        for g in &config.relations {
            let ids: Vec<RelationId> = if g.ids.is_empty() { RelationId::ALL.to_vec() } else { g.ids.clone() };
            let qs = parse_qs(&g.q)?;
            let points = g.points.iter().map(parse_point).collect::<Result<Vec<_>>>()?;
            for &id in &ids {
                for q in &qs {
                    for &n in g.n.iter().filter(|&&n| n >= id.min_degree()) {
                        for p in &points {
                            jobs.push(Job::Relation {
                                id,
                                q: q.clone(),
                                n,
                                point: select(p, id.params())?,
                            });
                        }
                    }
                }
            }
        }
    }
    if wants(SubSuite::Expansions) {
        for g in &config.expansions {
            let qs = parse_qs(&g.q)?;
            let points = g.points.iter().map(parse_point).collect::<Result<Vec<_>>>()?;
            for q in &qs {
                for &n in &g.n {
                    // the expansion is stated for k ≤ n − 1
                    for &k in g.k.iter().filter(|&&k| k < n) {
                        for p in &points {
                            jobs.push(Job::Expansion {
                                check: g.check,
                                kind: g.target,
                                q: q.clone(),
                                n,
                                k,
                                point: select(p, target_params(g.target))?,
                            });
                        }
                    }
                }
            }
        }
    }
    if wants(SubSuite::Quasi) {
        for g in &config.quasi {
            let qs = parse_qs(&g.q)?;
            let points = g.points.iter().map(parse_point).collect::<Result<Vec<_>>>()?;
            for q in &qs {
                for &n in &g.n {
                    for &k in &g.k {
                        for p in &points {
                            jobs.push(Job::Order {
                                kind: g.target,
                                q: q.clone(),
                                n,
                                k,
                                point: select(p, order_params(g.target))?,
                            });
                        }
                    }
                }
            }
        }
    }
    for (suite, interlace_only) in [(SubSuite::Zeros, false), (SubSuite::Interlace, true)] {
        if !wants(suite) {
            continue;
        }
        for g in &config.zeros {
            let qs = parse_qs(&g.q)?;
            let points = g.points.iter().map(parse_point).collect::<Result<Vec<_>>>()?;
            for q in &qs {
                for &n in g.n.iter().filter(|&&n| n >= g.theorem.min_degree()) {
                    for p in &points {
                        jobs.push(Job::Zero {
                            theorem: g.theorem,
                            q: q.clone(),
                            n,
                            point: select(p, g.theorem.params())?,
                            interlace_only,
                        });
                    }
                }
            }
        }
    }
    Ok(jobs)
}

/// Runs the selected sub-suites on a pool of `jobs` threads.
pub fn run(config: &SuiteConfig, suites: &[SubSuite], tol: &Tolerances, jobs: usize) -> Result<Report> {
    let rows = plan(config, suites)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    let records: Vec<Record> = pool.install(|| rows.par_iter().map(|j| execute(j, tol)).collect());
    Ok(Report::new(timestamp(), records))
}

fn timestamp() -> String {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs().to_string())
        .unwrap_or_else(|_| "0".into())
}

fn execute(job: &Job, tol: &Tolerances) -> Record {
    let mut rec = match job {
        Job::Relation { id, q, n, point } => Record::new("relations", id.name(), *n, fmt_rational(q), strings(point)),
        Job::Expansion {
            check,
            kind,
            q,
            n,
            k,
            point,
        } => {
            let name = match check {
                ExpansionCheck::KFold => format!("k-fold/{}", kind.name()),
                ExpansionCheck::Structure => format!("structure/{}", kind.name()),
            };
            let mut params = strings(point);
            params.insert("k".into(), k.to_string());
            Record::new("expansions", &name, *n, fmt_rational(q), params)
        }
        Job::Order { kind, q, n, k, point } => {
            let mut params = strings(point);
            params.insert("k".into(), k.to_string());
            Record::new("quasi", order_name(*kind), *n, fmt_rational(q), params)
        }
        Job::Zero {
            theorem,
            q,
            n,
            point,
            interlace_only,
        } => {
            let suite = if *interlace_only { "interlace" } else { "zeros" };
            Record::new(suite, theorem.id(), *n, fmt_rational(q), strings(point))
        }
    };
    match evaluate(job, tol, &mut rec) {
        Ok((pass, details)) => {
            rec.pass = pass;
            rec.details = details;
        }
        Err(e) => {
            rec.pass = false;
            rec.error = Some(e.to_string());
        }
    }
    rec
}

fn evaluate(job: &Job, tol: &Tolerances, rec: &mut Record) -> Result<(bool, Value)> {
    match job {
        Job::Relation { id, q, n, point } => {
            let r = relation_residual(*id, *n, &param_point(q, point)?)?;
            let zero = r.is_zero();
            Ok((zero, json!({ "residual_zero": zero, "difference": coeff_strings(&r.difference()) })))
        }
        Job::Expansion {
            check: ExpansionCheck::KFold,
            kind,
            q,
            n,
            k,
            point,
        } => {
            let target = build_target(*kind, *k, point)?;
            let exp = target_expansion(&target, *n, q)?;
            let all_nonzero = exp.coeffs.iter().all(|c| !c.is_zero());
            let sum = exp.coeffs.iter().fold(Rational::zero(), |a, c| a + c);
            let residual_zero = verify_identity(&target, *n, q)?.is_zero();
            let pass = all_nonzero && sum.is_one() && residual_zero;
            Ok((
                pass,
                json!({
                    "coefficients": exp.coeffs.iter().map(fmt_rational).collect::<Vec<_>>(),
                    "all_nonzero": all_nonzero,
                    "sum": fmt_rational(&sum),
                    "residual_zero": residual_zero,
                }),
            ))
        }
        Job::Expansion {
            check: ExpansionCheck::Structure,
            kind,
            q,
            n,
            k,
            point,
        } => {
            let target = build_target(*kind, *k, point)?;
            let cert = prefactored_expand(&target, *n, q)?;
            let pass = cert.holds() && cert.order() == Some(*k);
            Ok((
                pass,
                json!({
                    "order": cert.order(),
                    "classical_coefficients": cert.shohat.coeffs.iter().map(fmt_rational).collect::<Vec<_>>(),
                    "graded": cert.graded.iter().map(coeff_strings).collect::<Vec<_>>(),
                    "failures": cert.failures,
                }),
            ))
        }
        Job::Order { kind, q, n, k, point } => {
            let target = build_order_target(*kind, *k, point)?;
            let rep = detect_order(&target, *n, q, tol)?;
            let pass = rep.consistent() && rep.order == *k;
            let rows: Vec<Value> = rep
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "t": r.t,
                        "value": fmt_float(r.value),
                        "mass": fmt_float(r.mass),
                        "normalized": fmt_float(r.normalized),
                        "verdict": r.verdict,
                    })
                })
                .collect();
            Ok((
                pass,
                json!({
                    "expected_order": k,
                    "order": rep.order,
                    "structural_order": rep.structural_order,
                    "moments": rows,
                }),
            ))
        }
        Job::Zero {
            theorem,
            q,
            n,
            point,
            interlace_only,
        } => {
            let c = classify_zeros(*theorem, *n, &param_point(q, point)?)?;
            let (cross_ok, max_rel) = companion_agreement(c.roots.poly(), &c.roots.float_values());
            rec.roots = c
                .roots
                .roots()
                .iter()
                .map(|r| RootRow {
                    lower: fmt_rational(&r.lo),
                    upper: fmt_rational(&r.hi),
                    value: r.value,
                })
                .collect();
            let pattern_names: Vec<&str> = [
                Pattern::AlternateSame,
                Pattern::AlternateDrop,
                Pattern::RightShift,
                Pattern::LeftShift,
            ]
            .iter()
            .map(|p| p.name())
            .chain(["real-simple"])
            .collect();
            let checks: Vec<_> = c
                .checks
                .iter()
                .filter(|ch| !interlace_only || pattern_names.contains(&ch.name.as_str()))
                .collect();
            let pass = checks.iter().all(|ch| ch.pass) && cross_ok;
            Ok((
                pass,
                json!({
                    "predicted": c.predicted,
                    "observed": c.observed,
                    "checks": checks,
                    "roots": rec.roots.iter().map(|r| json!({
                        "lower": r.lower,
                        "upper": r.upper,
                        "value": fmt_float(r.value),
                    })).collect::<Vec<_>>(),
                    "companion_max_relative_error": fmt_float(max_rel),
                }),
            ))
        }
    }
}

/// Every exact root must have a companion eigenvalue within
/// [`COMPANION_TOL`] relative distance. Returns the verdict and the largest
/// relative distance seen.
pub fn companion_agreement(p: &QPoly, exact: &[f64]) -> (bool, f64) {
    let eig = companion_roots(p);
    let mut worst = 0.0f64;
    for &r in exact {
        let scale = if r == 0.0 { 1.0 } else { r.abs() };
        let d = eig
            .iter()
            .map(|z| (z - nalgebra::Complex::new(r, 0.0)).norm() / scale)
            .fold(f64::INFINITY, f64::min);
        worst = worst.max(d);
    }
    (worst < COMPANION_TOL, worst)
}

/// Default point used to fill parameters not given on the command line.
pub fn default_point() -> BTreeMap<&'static str, Rational> {
    use crate::exact::{int, rat};
    [
        ("t", rat(1, 2)),
        ("a", rat(1, 2)),
        ("b", rat(1, 2)),
        ("c", int(2)),
        ("alpha", rat(1, 5)),
        ("u", int(3)),
    ]
    .into_iter()
    .collect()
}
