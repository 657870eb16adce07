//! Suite configuration: grids of exact parameter points per sub-suite.
//!
//! Every rational is a `"p/q"` string and is parsed before anything runs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::contiguous::RelationId;
use crate::error::{Error, Result};
use crate::exact::{parse_rational, pow, rat, Rational};
use crate::families::{QuasiTargetId, TargetKind};
use crate::quasi::{OrderTarget, Tolerances};
use crate::rootlab::ZeroTheorem;

pub type RawPoint = BTreeMap<String, String>;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    #[serde(default)]
    pub tolerances: Option<ToleranceConfig>,
    #[serde(default)]
    pub relations: Vec<RelationGrid>,
    #[serde(default)]
    pub expansions: Vec<ExpansionGrid>,
    #[serde(default)]
    pub quasi: Vec<QuasiGrid>,
    #[serde(default)]
    pub zeros: Vec<ZeroGrid>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceConfig {
    pub zero: Option<f64>,
    pub nonzero: Option<f64>,
    pub quadrature: Option<f64>,
}

/// Relation ids (all when empty) over `q × n × points`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationGrid {
    #[serde(default)]
    pub ids: Vec<RelationId>,
    pub q: Vec<String>,
    pub n: Vec<usize>,
    pub points: Vec<RawPoint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExpansionCheck {
    /// k-fold expansion: nonzero coefficients summing to one, exact
    /// reconstruction.
    KFold,
    /// Prefactored expansion in the classical basis.
    Structure,
}

/// A quasi target over `q × n × k × points`. Points carry the family
/// parameters and `u`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpansionGrid {
    pub check: ExpansionCheck,
    pub target: TargetKind,
    pub q: Vec<String>,
    pub n: Vec<usize>,
    pub k: Vec<usize>,
    pub points: Vec<RawPoint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderKind {
    PhiSmall,
    PhiBig,
    VarphiMeixner,
    VarPhiAsc,
    /// `L_n^{(δ)}` below `δ = −1`; `k` is the expected order.
    ShiftedLaguerre,
}

/// Moment scan: the detected order must equal `k` and the structure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuasiGrid {
    pub target: OrderKind,
    pub q: Vec<String>,
    pub n: Vec<usize>,
    pub k: Vec<usize>,
    pub points: Vec<RawPoint>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZeroGrid {
    pub theorem: ZeroTheorem,
    pub q: Vec<String>,
    pub n: Vec<usize>,
    pub points: Vec<RawPoint>,
}

/// A fully parsed parameter point.
pub type Point = BTreeMap<String, Rational>;

pub fn parse_point(raw: &RawPoint) -> Result<Point> {
    raw.iter()
        .map(|(k, v)| Ok((k.clone(), parse_rational(v)?)))
        .collect()
}

pub fn parse_qs(raw: &[String]) -> Result<Vec<Rational>> {
    raw.iter()
        .map(|s| {
            let q = parse_rational(s)?;
            crate::exact::check_base(&q).map_err(|e| Error::Config(e.to_string()))?;
            Ok(q)
        })
        .collect()
}

fn need<'a>(p: &'a Point, name: &str) -> Result<&'a Rational> {
    p.get(name)
        .ok_or_else(|| Error::Config(format!("parameter point is missing {name:?}")))
}

/// Builds a quasi target of the given kind from a point.
pub fn build_target(kind: TargetKind, k: usize, p: &Point) -> Result<QuasiTargetId> {
    let u = need(p, "u")?.clone();
    Ok(match kind {
        TargetKind::PhiSmall => QuasiTargetId::PhiSmall { k, t: need(p, "t")?.clone(), u },
        TargetKind::PhiBig => QuasiTargetId::PhiBig {
            k,
            a: need(p, "a")?.clone(),
            b: need(p, "b")?.clone(),
            u,
        },
        TargetKind::VarphiMeixner => QuasiTargetId::VarphiMeixner {
            k,
            b: need(p, "b")?.clone(),
            c: need(p, "c")?.clone(),
            u,
        },
        TargetKind::VarPhiAsc => QuasiTargetId::VarPhiAsc { k, a: need(p, "a")?.clone(), u },
    })
}

pub fn build_order_target(kind: OrderKind, k: usize, p: &Point) -> Result<OrderTarget> {
    let target_kind = match kind {
        OrderKind::ShiftedLaguerre => {
            return Ok(OrderTarget::ShiftedLaguerre { t: need(p, "t")?.clone() });
        }
        OrderKind::PhiSmall => TargetKind::PhiSmall,
        OrderKind::PhiBig => TargetKind::PhiBig,
        OrderKind::VarphiMeixner => TargetKind::VarphiMeixner,
        OrderKind::VarPhiAsc => TargetKind::VarPhiAsc,
    };
    Ok(OrderTarget::Quasi(build_target(target_kind, k, p)?))
}

impl SuiteConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn tolerances(&self) -> Tolerances {
        let mut t = Tolerances::default();
        if let Some(c) = &self.tolerances {
            t.zero = c.zero.unwrap_or(t.zero);
            t.nonzero = c.nonzero.unwrap_or(t.nonzero);
            t.quadrature = c.quadrature.unwrap_or(t.quadrature);
        }
        t
    }

    /// Replaces every q list.
    pub fn override_q(&mut self, qs: &[String]) {
        for g in &mut self.relations {
            g.q = qs.to_vec();
        }
        for g in &mut self.expansions {
            g.q = qs.to_vec();
        }
        for g in &mut self.quasi {
            g.q = qs.to_vec();
        }
        for g in &mut self.zeros {
            g.q = qs.to_vec();
        }
    }

    /// Drops degrees above `n_max`.
    pub fn cap_degree(&mut self, n_max: usize) {
        let cap = |v: &mut Vec<usize>| v.retain(|&n| n <= n_max);
        self.relations.iter_mut().for_each(|g| cap(&mut g.n));
        self.expansions.iter_mut().for_each(|g| cap(&mut g.n));
        self.quasi.iter_mut().for_each(|g| cap(&mut g.n));
        self.zeros.iter_mut().for_each(|g| cap(&mut g.n));
    }

    /// The grid exercised by `suite` with no configuration file.
    pub fn default_grid() -> Self {
        let s = |x: &str| x.to_string();
        let point = |pairs: &[(&str, &str)]| -> RawPoint {
            pairs.iter().map(|(k, v)| (s(k), s(v))).collect()
        };
        let both_q = vec![s("1/2"), s("2/3")];
        let half = vec![s("1/2")];

        let relations = vec![RelationGrid {
            ids: vec![],
            q: both_q.clone(),
            n: (1..=8).collect(),
            points: vec![
                point(&[("t", "1/2"), ("a", "1/2"), ("b", "1/2"), ("c", "2"), ("alpha", "1/5"), ("u", "2/3")]),
                point(&[("t", "5/4"), ("a", "1/3"), ("b", "1/3"), ("c", "1/3"), ("alpha", "-3"), ("u", "7")]),
                point(&[("t", "3"), ("a", "6/5"), ("b", "1/5"), ("c", "7"), ("alpha", "-3"), ("u", "9/2")]),
            ],
        }];

        let family_params = |kind: TargetKind| -> Vec<(&'static str, &'static str)> {
            match kind {
                TargetKind::PhiSmall => vec![("t", "1/2")],
                TargetKind::PhiBig => vec![("a", "1/2"), ("b", "1/2")],
                TargetKind::VarphiMeixner => vec![("b", "1/2"), ("c", "2")],
                TargetKind::VarPhiAsc => vec![("a", "-1")],
            }
        };
        let mut expansions = Vec::new();
        for kind in TargetKind::ALL {
            let points = ["1/3", "5/2", "7"]
                .iter()
                .map(|u| {
                    let mut p = family_params(kind);
                    p.push(("u", u));
                    point(&p)
                })
                .collect();
            expansions.push(ExpansionGrid {
                check: ExpansionCheck::KFold,
                target: kind,
                q: both_q.clone(),
                n: (3..=8).collect(),
                k: vec![1, 2, 3],
                points,
            });
            let mut p = family_params(kind);
            p.push(("u", "3"));
            expansions.push(ExpansionGrid {
                check: ExpansionCheck::Structure,
                target: kind,
                q: half.clone(),
                n: (4..=8).collect(),
                k: vec![1, 2, 3],
                points: vec![point(&p)],
            });
        }

        let quasi = vec![
            QuasiGrid {
                target: OrderKind::PhiBig,
                q: half.clone(),
                n: vec![6],
                k: vec![2],
                points: vec![point(&[("a", "1/2"), ("b", "1/2"), ("u", "3")])],
            },
            QuasiGrid {
                target: OrderKind::VarphiMeixner,
                q: half.clone(),
                n: vec![6],
                k: vec![2],
                points: vec![point(&[("b", "1/2"), ("c", "2"), ("u", "3")])],
            },
            QuasiGrid {
                target: OrderKind::ShiftedLaguerre,
                q: half.clone(),
                n: (3..=6).collect(),
                k: vec![1],
                points: vec![point(&[("t", "3")])],
            },
            QuasiGrid {
                target: OrderKind::VarPhiAsc,
                q: half.clone(),
                n: vec![5],
                k: vec![2],
                points: vec![point(&[("a", "-1"), ("u", "3")])],
            },
        ];

        let mut zeros = vec![ZeroGrid {
            theorem: ZeroTheorem::LaguerreOrderOne,
            q: half.clone(),
            n: (2..=6).collect(),
            points: ["1/3", "3/4", "3/2", "3", "5", "100", "1000"]
                .iter()
                .flat_map(|u| ["1/2", "3/2"].map(|t| point(&[("t", t), ("u", u)])))
                .collect(),
        }];
        zeros.push(ZeroGrid {
            theorem: ZeroTheorem::JacobiOrderOne,
            q: half.clone(),
            n: (3..=6).collect(),
            points: vec![
                point(&[("a", "1/2"), ("b", "1/2"), ("u", "3/4")]),
                point(&[("a", "1/2"), ("b", "1/2"), ("u", "3")]),
                point(&[("a", "1/2"), ("b", "1/2"), ("u", "100")]),
                point(&[("a", "1/2"), ("b", "1/2"), ("u", "1/1000")]),
                point(&[("a", "1/2"), ("b", "-1/2"), ("u", "1/1000")]),
                point(&[("a", "1/3"), ("b", "1/3"), ("u", "300")]),
                point(&[("a", "1/3"), ("b", "1/3"), ("u", "1/10000")]),
                point(&[("a", "1/3"), ("b", "-2"), ("u", "3/2")]),
            ],
        });
        // the order-two windows q^{-n} < u < q^{-n-1} move with n
        let q = rat(1, 2);
        for n in 3..=6usize {
            let edge = pow(&q, -(n as i64));
            let us: Vec<String> = [rat(5, 4), rat(3, 2), rat(7, 4), rat(11, 8)]
                .iter()
                .map(|f| crate::exact::fmt_rational(&(f * &edge)))
                .collect();
            zeros.push(ZeroGrid {
                theorem: ZeroTheorem::LaguerreOrderTwo,
                q: half.clone(),
                n: vec![n],
                points: us.iter().map(|u| point(&[("t", "1/2"), ("u", u)])).collect(),
            });
            zeros.push(ZeroGrid {
                theorem: ZeroTheorem::JacobiOrderTwo,
                q: half.clone(),
                n: vec![n],
                points: us
                    .iter()
                    .zip([("1/2", "1/2"), ("1/2", "-1/2"), ("1/3", "1/3"), ("3/2", "-2")])
                    .map(|(u, (a, b))| point(&[("a", a), ("b", b), ("u", u)]))
                    .collect(),
            });
        }
        zeros.push(ZeroGrid {
            theorem: ZeroTheorem::LaguerreBelowMinusOne,
            q: half,
            n: (3..=6).collect(),
            points: ["3", "5/2", "7/2", "21/8"].iter().map(|t| point(&[("t", t)])).collect(),
        });

        Self {
            tolerances: None,
            relations,
            expansions,
            quasi,
            zeros,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_toml_is_an_empty_grid() {
        let c = SuiteConfig::from_toml("").unwrap();
        assert!(c.relations.is_empty() && c.zeros.is_empty());
    }

    #[test]
    fn toml_roundtrip_of_default() {
        let c = SuiteConfig::default_grid();
        let text = toml::to_string(&c).unwrap();
        assert_eq!(SuiteConfig::from_toml(&text).unwrap(), c);
    }

    #[test]
    fn rejects_unknown_fields_and_bad_rationals() {
        assert!(SuiteConfig::from_toml("bogus = 1").is_err());
        let raw: RawPoint = [("u".to_string(), "0.5".to_string())].into();
        assert!(matches!(parse_point(&raw), Err(Error::Config(_))));
        assert!(parse_qs(&["3/2".to_string()]).is_err());
    }

    #[test]
    fn parses_zero_grid() {
        let c = SuiteConfig::from_toml(
            r#"
            [[zeros]]
            theorem = "T2_3"
            q = ["1/2"]
            n = [3]
            points = [{ t = "1/2", u = "1/3" }]
            "#,
        )
        .unwrap();
        assert_eq!(c.zeros[0].theorem, ZeroTheorem::LaguerreOrderOne);
    }
}
