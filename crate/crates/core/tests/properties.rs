use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qortho::contiguous::k_fold_expansion;
use qortho::exact::{int, rat, to_f64};
use qortho::families::{FamilyId, QuasiTargetId};
use qortho::hyperq::{build_series, series_value_float};
use qortho::poly::{QPoly, Var};
use qortho::rootlab::companion::real_roots;
use qortho::rootlab::isolate_roots;
use qortho::Rational;

fn small_rat() -> impl Strategy<Value = Rational> {
    (-40i64..40, 1i64..12).prop_map(|(p, q)| rat(p, q))
}

fn base() -> impl Strategy<Value = Rational> {
    prop_oneof![Just(rat(1, 2)), Just(rat(2, 3)), Just(rat(1, 3)), Just(rat(3, 4))]
}

fn family() -> impl Strategy<Value = FamilyId> {
    prop_oneof![
        (1i64..5).prop_map(|t| FamilyId::QLaguerre { t: rat(t, 4) }),
        (1i64..4, -3i64..3).prop_map(|(a, b)| FamilyId::LittleQJacobi { a: rat(a, 5), b: rat(b, 5) }),
        (1i64..6).prop_map(|c| FamilyId::QMeixner { b: rat(1, 2), c: rat(c, 2) }),
        (1i64..4).prop_map(|a| FamilyId::AlSalamCarlitzI { a: int(-a) }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn dilation_round_trips(coeffs in prop::collection::vec(small_rat(), 1..8), s in small_rat()) {
        prop_assume!(s != int(0));
        let p = QPoly::new(coeffs, Var::Z);
        prop_assert_eq!(p.dilate(&s).dilate(&s.recip()), p);
    }

    #[test]
    fn exact_and_float_series_agree(fam in family(), q in base(), n in 1usize..9, x in -160i64..320) {
        let spec = fam.series_spec(n, &q);
        let exact = build_series(&spec).unwrap();
        let x = rat(x, 64);
        let want = to_f64(&exact.eval(&x));
        let got = series_value_float(&spec, to_f64(&x)).unwrap();
        // relative to the absolute term mass so that zeros of p do not blow up the ratio
        let mass: f64 = exact
            .to_f64_coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| (c * to_f64(&x).powi(i as i32)).abs())
            .sum();
        prop_assert!((got - want).abs() <= 1e-10 * mass.max(want.abs()), "{got} vs {want}");
    }

    #[test]
    fn expansion_coefficients_sum_to_one(n in 2usize..9, k in 1usize..4, q in base(), u in (1i64..60, 1i64..20)) {
        prop_assume!(k < n);
        let u = rat(u.0, u.1);
        if let Ok(e) = k_fold_expansion(n, k, &u, &q) {
            let sum = e.coeffs.iter().fold(int(0), |a, c| a + c);
            prop_assert_eq!(sum, int(1));
        }
    }
}

/// Real roots from Sturm isolation match the companion count on products of
/// distinct real linear factors, with an optional positive-definite quadratic.
#[test]
fn sturm_count_matches_companion() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let deg = rng.gen_range(1..=8);
        let mut roots: Vec<i64> = Vec::new();
        while roots.len() < deg {
            let r = rng.gen_range(-64..64);
            if !roots.contains(&r) {
                roots.push(r);
            }
        }
        let mut p = roots.iter().fold(QPoly::one(Var::Z), |acc, &r| {
            &acc * &QPoly::linear(rat(-r, 8), int(1), Var::Z)
        });
        if rng.gen_bool(0.5) {
            p = &p * &QPoly::new(vec![int(5), int(2), int(1)], Var::Z);
        }
        let exact = isolate_roots(&p).unwrap();
        let float = real_roots(&p, 1e-8);
        assert_eq!(exact.len(), deg);
        assert_eq!(float.len(), deg, "{p:?}");
        for (e, f) in exact.float_values().iter().zip(&float) {
            assert!((e - f).abs() <= 1e-9 * e.abs().max(1e-3), "{e} vs {f}");
        }
    }
}

fn neg_qpoch_inf(z: f64, q: f64) -> f64 {
    // (−z; q)_∞
    let mut acc = 1.0;
    let mut term = z;
    while term.abs() > 1e-18 {
        acc *= 1.0 + term;
        term *= q;
    }
    acc
}

/// `(−z;q)_k z^δ / (−z;q)_∞ = z^δ / (−zq^k;q)_∞`, with the left prefactor
/// taken from the target.
#[test]
fn weight_prefactor_identity() {
    let q = rat(1, 2);
    let qf = 0.5f64;
    let delta = 0.7f64;
    for k in 1..=3usize {
        let target = QuasiTargetId::PhiSmall { k, t: rat(1, 2), u: int(3) };
        let pre = target.prefactor(&q);
        for i in 0..10 {
            let z = 0.05 + 1.7 * i as f64;
            let lhs = pre.eval_f64(z) * z.powf(delta) / neg_qpoch_inf(z, qf);
            let rhs = z.powf(delta) / neg_qpoch_inf(z * qf.powi(k as i32), qf);
            assert!((lhs - rhs).abs() <= 1e-13 * rhs.abs(), "k={k} z={z}: {lhs} vs {rhs}");
        }
    }
}
