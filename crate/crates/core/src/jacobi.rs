//! Cyclic Jacobi eigenvalues for small dense symmetric matrices.

use crate::error::{Error, Result};
use crate::matrix::RationalMatrix;

/// Off-diagonal tolerance used by bulk enumeration.
pub const DEFAULT_TOL: f64 = 1e-12;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues sorted descending, plus the Frobenius norm of the
/// off-diagonal part left at exit. By Weyl's inequality every eigenvalue
/// of the input lies within `off_norm` (plus rounding) of the diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct Eigenvalues {
    pub values: Vec<f64>,
    pub off_norm: f64,
}

/// Eigenvalues of an exactly symmetric rational matrix, descending.
pub fn sym_eigenvalues(m: &RationalMatrix, tol: f64) -> Result<Vec<f64>> {
    if !m.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    if m.order() > 64 {
        return Err(Error::TooLarge(m.order()));
    }
    Ok(jacobi(m.to_f64(), m.order(), tol).values)
}

/// Runs cyclic Jacobi sweeps on a row-major symmetric matrix until every
/// off-diagonal magnitude is below `tol`.
pub fn jacobi(mut a: Vec<f64>, n: usize, tol: f64) -> Eigenvalues {
    assert_eq!(a.len(), n * n);
    for _ in 0..MAX_SWEEPS {
        let max_off = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .map(|(p, q)| a[p * n + q].abs())
            .fold(0.0, f64::max);
        if max_off < tol {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, n, p, q);
            }
        }
    }
    let off_norm = (0..n)
        .flat_map(|p| (0..n).filter(move |&q| q != p).map(move |q| (p, q)))
        .map(|(p, q)| a[p * n + q] * a[p * n + q])
        .sum::<f64>()
        .sqrt();
    let mut values: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    values.sort_by(|x, y| y.total_cmp(x));
    Eigenvalues { values, off_norm }
}

fn rotate(a: &mut [f64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    if apq == 0.0 {
        return;
    }
    let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    for k in 0..n {
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = c * akp - s * akq;
        a[k * n + q] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        a[p * n + k] = c * apk - s * aqk;
        a[q * n + k] = s * apk + c * aqk;
    }
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Graph, NamedGraph};
    use crate::matrix::signless_laplacian;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < tol)
    }

    #[test]
    fn complete_graph() {
        let q = signless_laplacian(&Graph::named(NamedGraph::Complete, 4).unwrap());
        let v = sym_eigenvalues(&q, DEFAULT_TOL).unwrap();
        assert!(close(&v, &[6.0, 2.0, 2.0, 2.0], 1e-9));
    }

    #[test]
    fn star() {
        let q = signless_laplacian(&Graph::named(NamedGraph::Star, 6).unwrap());
        let v = sym_eigenvalues(&q, DEFAULT_TOL).unwrap();
        assert!(close(&v, &[6.0, 1.0, 1.0, 1.0, 1.0, 0.0], 1e-9));
    }

    #[test]
    fn rejects_asymmetric() {
        let m = RationalMatrix::from_i64_rows(&[vec![0, 1], vec![0, 0]]).unwrap();
        assert_eq!(sym_eigenvalues(&m, DEFAULT_TOL), Err(Error::NotSymmetric));
    }

    #[test]
    fn two_by_two() {
        let r = jacobi(vec![2.0, 1.0, 1.0, 2.0], 2, 1e-14);
        assert!(close(&r.values, &[3.0, 1.0], 1e-12));
        assert!(r.off_norm < 1e-14);
    }
}
