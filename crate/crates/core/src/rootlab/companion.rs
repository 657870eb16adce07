//! Floating-point roots from the balanced companion matrix, polished by
//! Newton's method. Used only as a cross-check on the exact isolation.

use nalgebra::{Complex, DMatrix};

use crate::poly::QPoly;

/// All complex roots of `p`, unordered.
pub fn companion_roots(p: &QPoly) -> Vec<Complex<f64>> {
    let c = p.to_f64_coeffs();
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return vec![];
    }
    let lc = c[n];
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -c[i] / lc;
    }
    balance(&mut m);
    m.complex_eigenvalues()
        .iter()
        .map(|&z| polish(&c, z))
        .collect()
}

/// Real roots (imaginary part below `imag_tol · max(1, |z|)`), ascending.
pub fn real_roots(p: &QPoly, imag_tol: f64) -> Vec<f64> {
    let mut out: Vec<f64> = companion_roots(p)
        .into_iter()
        .filter(|z| z.im.abs() <= imag_tol * z.norm().max(1.0))
        .map(|z| z.re)
        .collect();
    out.sort_by(f64::total_cmp);
    out
}

/// Parlett–Reinsch diagonal balancing with powers of two.
fn balance(m: &mut DMatrix<f64>) {
    let n = m.nrows();
    let radix = 2.0f64;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += m[(j, i)].abs();
                    r += m[(i, j)].abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut cc = c;
            while cc < r / radix {
                f *= radix;
                cc *= radix * radix;
            }
            while cc >= r * radix {
                f /= radix;
                cc /= radix * radix;
            }
            if c * f + r / f < 0.95 * s {
                done = false;
                for j in 0..n {
                    m[(i, j)] /= f;
                    m[(j, i)] *= f;
                }
            }
        }
    }
}

fn horner(c: &[f64], z: Complex<f64>) -> (Complex<f64>, Complex<f64>) {
    let mut p = Complex::new(0.0, 0.0);
    let mut dp = Complex::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

fn polish(c: &[f64], mut z: Complex<f64>) -> Complex<f64> {
    for _ in 0..8 {
        let (p, dp) = horner(c, z);
        if dp.norm() == 0.0 {
            break;
        }
        let step = p / dp;
        let next = z - step;
        if !next.re.is_finite() || !next.im.is_finite() {
            break;
        }
        // accept only steps that do not increase the residual
        if horner(c, next).0.norm() > p.norm() {
            break;
        }
        z = next;
        if step.norm() <= 1e-16 * z.norm() {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::poly::Var;

    #[test]
    fn recovers_spread_roots() {
        let rs = [rat(1, 64), rat(1, 2), int(3), int(40), int(-7)];
        let p = rs.iter().fold(QPoly::one(Var::Z), |acc, r| {
            &acc * &QPoly::linear(-r.clone(), int(1), Var::Z)
        });
        let got = real_roots(&p, 1e-8);
        let mut want: Vec<f64> = rs.iter().map(crate::exact::to_f64).collect();
        want.sort_by(f64::total_cmp);
        assert_eq!(got.len(), 5);
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).abs() <= 1e-12 * w.abs(), "{g} vs {w}");
        }
    }

    #[test]
    fn complex_pair_is_filtered() {
        let p = QPoly::new(vec![int(2), int(-2), int(1)], Var::Z);
        assert!(real_roots(&p, 1e-8).is_empty());
        assert_eq!(companion_roots(&p).len(), 2);
    }
}
