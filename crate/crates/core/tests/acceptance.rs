//! Acceptance run: one PASS/FAIL line per criterion over the built-in grid.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use qortho::exact::{parse_rational, pow, rat, to_f64};
use qortho::families::{FamilyId, QuasiTargetId};
use qortho::hyperq::series_value_float;
use qortho::quasi::{detect_order, OrderTarget, Tolerances};
use qortho::suite::{run, Record, SubSuite, SuiteConfig};
use qortho::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

struct Outcome {
    pass: bool,
    detail: String,
}

type Criterion = fn(&[Record]) -> Outcome;

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn float(v: &Value) -> f64 {
    v.as_str().and_then(|s| s.parse().ok()).unwrap_or(f64::NAN)
}

fn param(r: &Record, name: &str) -> Rational {
    parse_rational(&r.params[name]).expect("report rationals parse")
}

fn select<'a>(records: &'a [Record], suite: &str, prefix: &str) -> Vec<&'a Record> {
    records
        .iter()
        .filter(|r| r.suite == suite && r.check.starts_with(prefix))
        .collect()
}

fn failures(rs: &[&Record]) -> Vec<String> {
    rs.iter().filter(|r| !r.pass).map(|r| r.key.clone()).collect()
}

fn relations(records: &[Record]) -> Outcome {
    let rs = select(records, "relations", "");
    let ids: BTreeSet<&str> = rs.iter().map(|r| r.check.as_str()).collect();
    let bad = failures(&rs);
    let exact = rs.iter().all(|r| r.details["residual_zero"] == Value::Bool(true));
    outcome(
        rs.len() == 7 * 2 * 8 * 3 && ids.len() == 7 && bad.is_empty() && exact,
        format!("{} residuals over {} relations, failing {:?}", rs.len(), ids.len(), bad),
    )
}

fn ladder(records: &[Record]) -> Outcome {
    let rs = select(records, "expansions", "k-fold/");
    let bad: Vec<String> = rs
        .iter()
        .filter(|r| {
            !(r.pass
                && r.details["all_nonzero"] == Value::Bool(true)
                && r.details["sum"] == "1/1"
                && r.details["residual_zero"] == Value::Bool(true))
        })
        .map(|r| r.key.clone())
        .collect();
    let ks: BTreeSet<&str> = rs.iter().map(|r| r.params["k"].as_str()).collect();
    outcome(
        rs.len() == 408 && ks.len() == 3 && bad.is_empty(),
        format!("{} expansions with k in {:?}, failing {:?}", rs.len(), ks, bad),
    )
}

fn structure(records: &[Record]) -> Outcome {
    let rs = select(records, "expansions", "structure/");
    let mut bad = failures(&rs);
    for r in &rs {
        let k: usize = r.params["k"].parse().unwrap();
        let coeffs: Vec<&str> = r.details["classical_coefficients"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_str().unwrap())
            .collect();
        let cut = r.n - k;
        let vanishes = coeffs[..cut].iter().all(|c| *c == "0/1");
        let graded = r.details["graded"].as_array().unwrap();
        // the lowest graded coefficient is a nonzero constant
        let lowest = graded[k].as_array().unwrap();
        let constant = lowest.len() == 1 && coeffs[cut] != "0/1";
        let law = !r.check.ends_with("phi-small")
            || graded
                .iter()
                .enumerate()
                .all(|(i, g)| g.as_array().unwrap().len() == k - i + 1);
        if !(vanishes && constant && law) {
            bad.push(r.key.clone());
        }
    }
    let targets: BTreeSet<&str> = rs.iter().map(|r| r.check.as_str()).collect();
    outcome(
        rs.len() == 60 && targets.len() == 4 && bad.is_empty(),
        format!("{} certificates over {} targets, failing {:?}", rs.len(), targets.len(), bad),
    )
}

fn discrete_moments(records: &[Record]) -> Outcome {
    let mut rs = select(records, "quasi", "phi-big");
    rs.extend(select(records, "quasi", "varphi-meixner"));
    let mut bad = failures(&rs);
    for r in &rs {
        let rows = r.details["moments"].as_array().unwrap();
        let ok = rows.len() == 6
            && rows[..4].iter().all(|m| float(&m["normalized"]) < 1e-12)
            && float(&rows[4]["normalized"]) > 1e-8
            && r.details["order"] == 2;
        if !ok {
            bad.push(r.key.clone());
        }
    }
    // each instance timed on its own
    let q = rat(1, 2);
    let tol = Tolerances::default();
    let targets = [
        QuasiTargetId::PhiBig { k: 2, a: rat(1, 2), b: rat(1, 2), u: rat(3, 1) },
        QuasiTargetId::VarphiMeixner { k: 2, b: rat(1, 2), c: rat(2, 1), u: rat(3, 1) },
    ];
    let mut slowest = Duration::ZERO;
    for t in targets {
        let start = Instant::now();
        let rep = detect_order(&OrderTarget::Quasi(t), 6, &q, &tol);
        slowest = slowest.max(start.elapsed());
        if !matches!(rep, Ok(ref r) if r.order == 2) {
            bad.push("direct detect_order".into());
        }
    }
    outcome(
        rs.len() == 2 && bad.is_empty() && slowest < Duration::from_secs(1),
        format!("{} scans, slowest {:?}, failing {:?}", rs.len(), slowest, bad),
    )
}

fn continuous_moments(records: &[Record]) -> Outcome {
    let lag = select(records, "quasi", "shifted-laguerre");
    let mut bad = failures(&lag);
    let degrees: BTreeSet<usize> = lag.iter().map(|r| r.n).collect();
    for r in &lag {
        if !(r.details["order"] == 1 && r.details["structural_order"] == 1) {
            bad.push(r.key.clone());
        }
    }
    let asc = select(records, "quasi", "varphi-asc");
    bad.extend(failures(&asc));
    for r in &asc {
        let k: usize = r.params["k"].parse().unwrap();
        let rows = r.details["moments"].as_array().unwrap();
        if !rows[..r.n - k].iter().all(|m| float(&m["normalized"]) < 1e-10) {
            bad.push(r.key.clone());
        }
    }
    outcome(
        degrees == (3..=6).collect() && asc.len() == 1 && bad.is_empty(),
        format!("q-Laguerre degrees {:?}, {} ASC scans, failing {:?}", degrees, asc.len(), bad),
    )
}

fn location(records: &[Record]) -> Outcome {
    let rs = select(records, "zeros", "T2_3");
    let mut bad = failures(&rs);
    // per degree: u below 1, between 1 and q^{-n}, above q^{-n}
    let mut sides: BTreeMap<usize, BTreeSet<u8>> = BTreeMap::new();
    for r in &rs {
        let located = r.details["checks"]
            .as_array()
            .unwrap()
            .iter()
            .any(|c| c["name"] == "location" && c["pass"] == true);
        if !located || r.details["predicted"] != r.details["observed"] {
            bad.push(r.key.clone());
        }
        let u = param(r, "u");
        let edge = pow(&parse_rational(&r.q).unwrap(), -(r.n as i64));
        let side = if u < rat(1, 1) { 0 } else if u < edge { 1 } else { 2 };
        sides.entry(r.n).or_default().insert(side);
    }
    let both_sides = (2..=6).all(|n| sides.get(&n).is_some_and(|s| s.len() == 3));
    outcome(
        both_sides && bad.is_empty(),
        format!("{} instances, all three u regions per degree: {both_sides}, failing {:?}", rs.len(), bad),
    )
}

fn interlacing(records: &[Record]) -> Outcome {
    let patterns = ["alternate-same", "alternate-drop", "right-shift", "left-shift"];
    let mut groups: BTreeMap<(String, String), BTreeSet<String>> = BTreeMap::new();
    let mut bad = Vec::new();
    for r in select(records, "zeros", "").into_iter().filter(|r| (3..=6).contains(&r.n)) {
        let checks = r.details["checks"].as_array().cloned().unwrap_or_default();
        for c in &checks {
            let name = c["name"].as_str().unwrap();
            if patterns.contains(&name) {
                groups
                    .entry((r.check.clone(), name.to_string()))
                    .or_default()
                    .insert(r.params_field());
                let simple = checks.iter().any(|s| s["name"] == "real-simple" && s["pass"] == true);
                if c["pass"] != true || !simple {
                    bad.push(r.key.clone());
                }
            }
        }
    }
    let want = [
        ("T2_3", "right-shift"),
        ("T2_3", "left-shift"),
        ("T2_4", "alternate-drop"),
        ("T3_2", "right-shift"),
        ("T3_2", "left-shift"),
        ("T3_3", "alternate-drop"),
        ("T4_2", "alternate-same"),
        ("T4_2", "alternate-drop"),
    ];
    let thin: Vec<String> = want
        .iter()
        .filter(|(t, p)| groups.get(&(t.to_string(), p.to_string())).map_or(0, |s| s.len()) < 4)
        .map(|(t, p)| format!("{t}/{p}"))
        .collect();
    let sizes: Vec<usize> = want
        .iter()
        .map(|(t, p)| groups.get(&(t.to_string(), p.to_string())).map_or(0, |s| s.len()))
        .collect();
    outcome(
        thin.is_empty() && bad.is_empty(),
        format!("points per claim {:?}, under four {:?}, failing {:?}", sizes, thin, bad),
    )
}

fn cross_oracle(records: &[Record]) -> Outcome {
    let zs = select(records, "zeros", "");
    let worst = zs
        .iter()
        .map(|r| float(&r.details["companion_max_relative_error"]))
        .fold(0.0f64, f64::max);
    let missing = zs.iter().filter(|r| r.error.is_some()).count();

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut series_worst = 0.0f64;
    for _ in 0..100 {
        let q = if rng.gen_bool(0.5) { rat(1, 2) } else { rat(2, 3) };
        let n = rng.gen_range(1..=8);
        let fam = match rng.gen_range(0..4) {
            0 => FamilyId::QLaguerre { t: rat(rng.gen_range(1..6), 4) },
            1 => FamilyId::LittleQJacobi { a: rat(1, 2), b: rat(rng.gen_range(-4..4), 5) },
            2 => FamilyId::QMeixner { b: rat(1, 2), c: rat(rng.gen_range(1..9), 2) },
            _ => FamilyId::AlSalamCarlitzI { a: rat(-rng.gen_range(1..4), 1) },
        };
        let spec = fam.series_spec(n, &q);
        let exact = qortho::hyperq::build_series(&spec).unwrap();
        let x = rat(rng.gen_range(-160..320), 64);
        let want = to_f64(&exact.eval(&x));
        let got = series_value_float(&spec, to_f64(&x)).unwrap();
        series_worst = series_worst.max((got - want).abs() / want.abs().max(f64::MIN_POSITIVE));
    }
    outcome(
        missing == 0 && worst < 1e-9 && series_worst < 1e-10,
        format!(
            "companion worst {worst:.3e} over {} root sets, series worst {series_worst:.3e} over 100 points",
            zs.len()
        ),
    )
}

fn main() -> ExitCode {
    let cfg = SuiteConfig::default_grid();
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    let report = run(&cfg, &SubSuite::FULL, &Tolerances::default(), threads).expect("default grid is valid");
    let records = &report.records;

    let criteria: [(&str, Criterion); 8] = [
        ("contiguous relation residuals are exactly zero", relations),
        ("k-fold expansion: nonzero coefficients, sum one, exact reconstruction", ladder),
        ("prefactored expansions: support, constant lowest coefficient, degree law", structure),
        ("discrete moments give order 2 for little q-Jacobi and q-Meixner", discrete_moments),
        ("continuous moments: shifted q-Laguerre order 1, Al-Salam-Carlitz vanishing", continuous_moments),
        ("q-Laguerre order-one zero location in both directions", location),
        ("interlacing chains certified by exact separation", interlacing),
        ("exact roots and series agree with float oracles", cross_oracle),
    ];
    let mut all = true;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f(records);
        all &= o.pass;
        println!("{} criterion {}: {name} ({})", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.detail);
    }
    println!(
        "suite: {} records, {} passed, {} failed",
        report.summary.total, report.summary.passed, report.summary.failed
    );
    if all && report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
