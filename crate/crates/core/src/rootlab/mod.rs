//! Real-root isolation by Sturm sequences over the rationals, exact
//! comparison of isolated roots, and the zero classifiers built on them.

mod classify;
pub mod companion;
mod interlace;

pub use classify::{classify_zeros, support_zero_count, Check, ZeroClassification, ZeroTheorem};
pub use interlace::{interlace, InterlaceVerdict, Pattern};

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{fmt_rational, int, to_f64, Rational};
use crate::poly::QPoly;

/// Bisections allowed per comparison.
pub const REFINEMENT_BUDGET: usize = 256;

/// A real root, either exact (`lo == hi`) or strictly inside `(lo, hi)` with
/// the square-free part nonzero at `hi`.
#[derive(Debug, Clone, PartialEq)]
pub struct IsolatedRoot {
    pub lo: Rational,
    pub hi: Rational,
    pub value: f64,
}

impl IsolatedRoot {
    fn exact(x: Rational) -> Self {
        let value = to_f64(&x);
        Self {
            lo: x.clone(),
            hi: x,
            value,
        }
    }

    fn open(lo: Rational, hi: Rational) -> Self {
        let value = to_f64(&((&lo + &hi) / int(2)));
        Self { lo, hi, value }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    /// True when the root is certainly below `x`.
    pub fn below(&self, x: &Rational) -> bool {
        if self.is_exact() {
            &self.hi < x
        } else {
            &self.hi <= x
        }
    }

    /// True when the root is certainly above `x`.
    pub fn above(&self, x: &Rational) -> bool {
        if self.is_exact() {
            &self.lo > x
        } else {
            &self.lo >= x
        }
    }
}

/// Sturm sequence of a square-free polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Sturm {
    seq: Vec<QPoly>,
}

impl Sturm {
    fn new(sq: &QPoly) -> Self {
        let mut seq = vec![sq.clone(), sq.derivative()];
        while !seq[seq.len() - 1].is_zero() {
            let n = seq.len();
            let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
            seq.push(-&r);
        }
        seq.pop();
        Self { seq }
    }

    /// Sign changes at `x`, with `None` meaning `−∞` (`low`) or `+∞`.
    fn changes(&self, x: Option<&Rational>, low: bool) -> usize {
        let signs = self.seq.iter().map(|p| match x {
            Some(x) => sign(&p.eval(x)),
            None => {
                let lc = sign(p.leading().expect("nonzero Sturm element"));
                let odd = p.degree().unwrap_or(0) % 2 == 1;
                if low && odd {
                    -lc
                } else {
                    lc
                }
            }
        });
        let mut last = 0;
        let mut count = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Distinct roots in `(lo, hi]`; `None` bounds are infinite.
    fn count(&self, lo: Option<&Rational>, hi: Option<&Rational>) -> usize {
        self.changes(lo, true).saturating_sub(self.changes(hi, false))
    }
}

fn sign(x: &Rational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// All real roots of a polynomial, ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    poly: QPoly,
    sqfree: QPoly,
    sturm: Sturm,
    roots: Vec<IsolatedRoot>,
}

impl RootSet {
    pub fn roots(&self) -> &[IsolatedRoot] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn poly(&self) -> &QPoly {
        &self.poly
    }

    pub fn squarefree(&self) -> &QPoly {
        &self.sqfree
    }

    /// Square-free with every root real.
    pub fn all_real_simple(&self) -> bool {
        self.poly.is_squarefree() && Some(self.roots.len()) == self.poly.degree()
    }

    /// Distinct roots strictly inside `(lo, hi)`; `None` bounds are infinite.
    pub fn count_between(&self, lo: Option<&Rational>, hi: Option<&Rational>) -> usize {
        let mut c = self.sturm.count(lo, hi);
        if let Some(h) = hi {
            if self.sqfree.eval(h).is_zero() {
                c -= 1;
            }
        }
        c
    }

    pub fn negatives(&self) -> usize {
        self.count_between(None, Some(&Rational::zero()))
    }

    pub fn float_values(&self) -> Vec<f64> {
        self.roots.iter().map(|r| r.value).collect()
    }
}

/// Isolates every real root and refines it to width below
/// `2^{-53} · max(1, |root|)`.
pub fn isolate_roots(p: &QPoly) -> Result<RootSet> {
    if p.is_zero() {
        return Err(Error::Degree("cannot isolate roots of the zero polynomial".into()));
    }
    let sqfree = p.squarefree_part();
    let sturm = Sturm::new(&sqfree);
    let mut roots = Vec::new();
    if sqfree.degree().unwrap_or(0) > 0 {
        let bound = cauchy_bound(&sqfree);
        let lo = -bound.clone();
        let total = sturm.count(Some(&lo), Some(&bound));
        split(&sqfree, &sturm, lo, bound, total, &mut roots);
    }
    for r in &mut roots {
        refine_to_precision(&sqfree, r);
    }
    Ok(RootSet {
        poly: p.clone(),
        sqfree,
        sturm,
        roots,
    })
}

/// `1 + max |c_i / c_n|`, strictly above every root modulus.
fn cauchy_bound(p: &QPoly) -> Rational {
    let lc = p.leading().expect("nonzero").abs();
    let c = p.coeffs();
    let m = c[..c.len() - 1]
        .iter()
        .map(|x| x.abs() / &lc)
        .fold(Rational::zero(), |a, b| if b > a { b } else { a });
    Rational::one() + m
}

/// Appends the roots in `(lo, hi]`, ascending.
fn split(sq: &QPoly, sturm: &Sturm, lo: Rational, hi: Rational, count: usize, out: &mut Vec<IsolatedRoot>) {
    match count {
        0 => {}
        1 if sq.eval(&hi).is_zero() => out.push(IsolatedRoot::exact(hi)),
        1 => out.push(IsolatedRoot::open(lo, hi)),
        _ => {
            let mid = (&lo + &hi) / int(2);
            let left = sturm.count(Some(&lo), Some(&mid));
            split(sq, sturm, lo, mid.clone(), left, out);
            split(sq, sturm, mid, hi, count - left, out);
        }
    }
}

/// One bisection of an open isolating interval.
fn bisect(sq: &QPoly, r: &mut IsolatedRoot) {
    if r.is_exact() {
        return;
    }
    let mid = (&r.lo + &r.hi) / int(2);
    let at_mid = sign(&sq.eval(&mid));
    if at_mid == 0 {
        *r = IsolatedRoot::exact(mid);
        return;
    }
    if at_mid == sign(&sq.eval(&r.hi)) {
        r.hi = mid;
    } else {
        r.lo = mid;
    }
    r.value = to_f64(&((&r.lo + &r.hi) / int(2)));
}

/// Splits an open interval at a point that is not a root.
fn split_at(sq: &QPoly, r: &mut IsolatedRoot, x: &Rational) {
    if sign(&sq.eval(x)) == sign(&sq.eval(&r.hi)) {
        r.hi = x.clone();
    } else {
        r.lo = x.clone();
    }
    r.value = to_f64(&((&r.lo + &r.hi) / int(2)));
}

fn refine_to_precision(sq: &QPoly, r: &mut IsolatedRoot) {
    let ulp = Rational::new(1.into(), num_bigint::BigInt::one() << 53);
    loop {
        if r.is_exact() {
            return;
        }
        let mag = r.lo.abs().min(r.hi.abs()).max(Rational::one());
        if r.width() < &ulp * mag {
            return;
        }
        bisect(sq, r);
    }
}

/// Orders root `i` of `a` against root `j` of `b`, refining local copies
/// until their intervals separate.
pub fn compare(a: &RootSet, i: usize, b: &RootSet, j: usize) -> Result<Ordering> {
    let mut x = a.roots[i].clone();
    let mut y = b.roots[j].clone();
    let mut common_checked = false;
    for _ in 0..REFINEMENT_BUDGET {
        if x.is_exact() && y.is_exact() {
            if x.lo == y.lo {
                return Err(Error::Degenerate(format!("shared root {}", fmt_rational(&x.lo))));
            }
            return Ok(x.lo.cmp(&y.lo));
        }
        if x.hi <= y.lo {
            return Ok(Ordering::Less);
        }
        if y.hi <= x.lo {
            return Ok(Ordering::Greater);
        }
        if x.is_exact() {
            if b.sqfree.eval(&x.lo).is_zero() {
                return Err(Error::Degenerate(format!("shared root {}", fmt_rational(&x.lo))));
            }
            split_at(&b.sqfree, &mut y, &x.lo);
            continue;
        }
        if y.is_exact() {
            if a.sqfree.eval(&y.lo).is_zero() {
                return Err(Error::Degenerate(format!("shared root {}", fmt_rational(&y.lo))));
            }
            split_at(&a.sqfree, &mut x, &y.lo);
            continue;
        }
        if !common_checked {
            common_checked = true;
            let g = a.sqfree.gcd(&b.sqfree);
            if g.degree().unwrap_or(0) > 0 {
                let lo = if x.lo > y.lo { &x.lo } else { &y.lo };
                let hi = if x.hi < y.hi { &x.hi } else { &y.hi };
                let gs = Sturm::new(&g);
                let mut inside = gs.count(Some(lo), Some(hi));
                if g.eval(hi).is_zero() {
                    inside -= 1;
                }
                if inside > 0 {
                    return Err(Error::Degenerate(format!(
                        "shared root near {:.17e}",
                        to_f64(&((lo + hi) / int(2)))
                    )));
                }
            }
        }
        if x.width() >= y.width() {
            bisect(&a.sqfree, &mut x);
        } else {
            bisect(&b.sqfree, &mut y);
        }
    }
    Err(Error::RefinementBudget(REFINEMENT_BUDGET))
}
