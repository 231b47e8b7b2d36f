//! Eigenvalues of dense Hermitian matrices.
//!
//! Householder reduction to a real symmetric tridiagonal matrix is done by
//! nalgebra; the tridiagonal eigenvalues come from an implicit QL iteration
//! with Wilkinson shifts and a hard iteration cap.

use nalgebra::{Complex, DMatrix, SymmetricTridiagonal};

/// QL sweeps allowed per eigenvalue before giving up.
const MAX_SWEEPS_PER_EIGENVALUE: usize = 60;

/// All eigenvalues of a Hermitian matrix in ascending order, or `None` if the
/// QL iteration fails to converge. Only the lower triangle is read.
pub fn hermitian_eigenvalues(m: &DMatrix<Complex<f64>>) -> Option<Vec<f64>> {
    assert!(m.is_square(), "eigenvalues of a non-square matrix");
    let n = m.nrows();
    match n {
        0 => return Some(Vec::new()),
        1 => return Some(vec![m[(0, 0)].re]),
        _ => {}
    }
    if m.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return None;
    }
    let scale = m.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Some(vec![0.0; n]);
    }
    let (diag, off) = SymmetricTridiagonal::new(m / Complex::from(scale)).unpack_tridiagonal();
    let mut d: Vec<f64> = diag.iter().copied().collect();
    let mut e: Vec<f64> = off.iter().copied().chain(std::iter::once(0.0)).collect();
    tridiagonal_ql(&mut d, &mut e)?;
    for v in d.iter_mut() {
        *v *= scale;
    }
    d.sort_by(f64::total_cmp);
    Some(d)
}

/// Implicit QL on the symmetric tridiagonal matrix with diagonal `d` and
/// sub-diagonal `e[..n-1]`. On success `d` holds the (unsorted) eigenvalues.
pub(crate) fn tridiagonal_ql(d: &mut [f64], e: &mut [f64]) -> Option<()> {
    let n = d.len();
    debug_assert_eq!(e.len(), n);
    // absolute floor, so clusters far below the norm still deflate
    let norm = (0..n)
        .map(|i| d[i].abs() + e[i].abs() + if i > 0 { e[i - 1].abs() } else { 0.0 })
        .fold(0.0, f64::max);
    let floor = f64::EPSILON * norm;
    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd || e[m].abs() <= floor {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_SWEEPS_PER_EIGENVALUE {
                return None;
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Some(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;

    fn c(re: f64) -> Complex<f64> {
        Complex::new(re, 0.0)
    }

    #[test]
    fn small_examples() {
        assert_eq!(hermitian_eigenvalues(&DMatrix::identity(2, 2)).unwrap(), vec![1.0, 1.0]);
        let m = DMatrix::from_row_slice(2, 2, &[c(2.0), c(1.0), c(1.0), c(2.0)]);
        let ev = hermitian_eigenvalues(&m).unwrap();
        assert!((ev[0] - 1.0).abs() < 1e-15 && (ev[1] - 3.0).abs() < 1e-15);
        assert!(hermitian_eigenvalues(&DMatrix::zeros(0, 0)).unwrap().is_empty());
        assert_eq!(hermitian_eigenvalues(&DMatrix::zeros(3, 3)).unwrap(), vec![0.0; 3]);
    }

    #[test]
    fn complex_two_by_two() {
        // [[1, i], [-i, 1]] has eigenvalues 0 and 2
        let m = DMatrix::from_row_slice(
            2,
            2,
            &[c(1.0), Complex::new(0.0, 1.0), Complex::new(0.0, -1.0), c(1.0)],
        );
        let ev = hermitian_eigenvalues(&m).unwrap();
        assert!(ev[0].abs() < 1e-15 && (ev[1] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn non_finite_input_is_rejected() {
        let mut m = DMatrix::<Complex<f64>>::identity(3, 3);
        m[(2, 1)] = c(f64::NAN);
        assert!(hermitian_eigenvalues(&m).is_none());
    }

    #[test]
    fn tridiagonal_with_known_spectrum() {
        // the second-difference matrix has eigenvalues 2 - 2 cos(k pi / (n+1))
        let n = 40;
        let mut d = vec![2.0; n];
        let mut e = vec![-1.0; n];
        e[n - 1] = 0.0;
        tridiagonal_ql(&mut d, &mut e).unwrap();
        d.sort_by(f64::total_cmp);
        for (k, v) in d.iter().enumerate() {
            let exact = 2.0 - 2.0 * ((k + 1) as f64 * std::f64::consts::PI / (n + 1) as f64).cos();
            assert!((v - exact).abs() < 1e-13);
        }
    }
}
