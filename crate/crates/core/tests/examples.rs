//! Worked examples checked end to end through the public API.

use qortho::contiguous::{contiguous_split, laguerre_ladder, relation_residual, RelationId};
use qortho::exact::{int, rat, ParamPoint};
use qortho::families::{classical_poly, FamilyId, QuasiTargetId};
use qortho::poly::{QPoly, Var};
use qortho::quasi::{classical_basis, expand_in_basis, prefactored_expand};
use qortho::rootlab::isolate_roots;

#[test]
fn split_at_degree_one() {
    let s = contiguous_split(1, &rat(1, 4), &rat(1, 2)).unwrap();
    assert_eq!((s.a, s.b), (rat(-1, 6), rat(7, 6)));
    let s = contiguous_split(0, &rat(1, 4), &rat(1, 2)).unwrap();
    assert_eq!((s.a, s.b), (int(0), int(1)));
}

#[test]
fn lower_laguerre_in_raised_basis() {
    let q = rat(1, 2);
    let l1 = classical_poly(&FamilyId::QLaguerre { t: rat(1, 2) }, 1, &q).unwrap();
    assert_eq!(l1, QPoly::linear(rat(3, 2), rat(-1, 2), Var::Z));
    let basis = classical_basis(&FamilyId::QLaguerre { t: rat(1, 4) }, 1, &q).unwrap();
    assert_eq!(basis[1], QPoly::linear(rat(7, 4), rat(-1, 4), Var::Z));
    // ascending: L_0 then L_1
    assert_eq!(expand_in_basis(&l1, &basis).unwrap().coeffs, vec![int(-2), int(2)]);
    assert_eq!(laguerre_ladder(1, 1, &q).coeffs, vec![int(2), int(-2)]);
}

#[test]
fn phi_small_degree_four_order_one() {
    let t = QuasiTargetId::PhiSmall { k: 1, t: rat(1, 2), u: int(3) };
    let c = prefactored_expand(&t, 4, &rat(1, 2)).unwrap();
    assert!(c.holds(), "{:?}", c.failures);
    assert!(c.shohat.coeffs[..3].iter().all(|x| *x == int(0)));
    assert!(c.graded[1].is_constant() && !c.graded[1].is_zero());
    assert_eq!(c.order(), Some(1));
}

#[test]
fn phi_big_degree_five_order_two() {
    let t = QuasiTargetId::PhiBig { k: 2, a: rat(1, 2), b: rat(1, 2), u: int(3) };
    let c = prefactored_expand(&t, 5, &rat(1, 2)).unwrap();
    assert!(c.holds(), "{:?}", c.failures);
    let degrees: Vec<Option<usize>> = c.graded.iter().map(|g| g.degree()).collect();
    assert_eq!(degrees, vec![Some(2), Some(1), Some(0)]);
    assert!(c.shohat.coeffs[..3].iter().all(|x| *x == int(0)));
}

#[test]
fn asc_coefficients_are_constants() {
    let t = QuasiTargetId::VarPhiAsc { k: 2, a: int(-1), u: int(3) };
    let c = prefactored_expand(&t, 4, &rat(1, 2)).unwrap();
    assert!(c.holds(), "{:?}", c.failures);
    assert!(c.graded.iter().all(|g| g.is_constant() && !g.is_zero()));
}

#[test]
fn named_relations_at_stated_points() {
    let q = rat(1, 2);
    let p = ParamPoint::new(q.clone()).unwrap().with("a", rat(1, 2)).with("b", rat(1, 2));
    assert!(relation_residual(RelationId::JacobiLower, 4, &p).unwrap().is_zero());
    let p = ParamPoint::new(q.clone()).unwrap().with("b", rat(1, 2)).with("c", int(2));
    assert!(relation_residual(RelationId::MeixnerRaise, 3, &p).unwrap().is_zero());
    let p = ParamPoint::new(q).unwrap().with("t", rat(1, 2));
    assert!(relation_residual(RelationId::LaguerreRaise, 3, &p).unwrap().is_zero());
}

#[test]
fn root_of_degree_one_laguerre() {
    let l1 = QPoly::linear(rat(3, 2), rat(-1, 2), Var::Z);
    let r = isolate_roots(&l1).unwrap();
    assert_eq!(r.len(), 1);
    assert_eq!(r.roots()[0].lo, int(3));
    assert!(r.roots()[0].is_exact());
}
