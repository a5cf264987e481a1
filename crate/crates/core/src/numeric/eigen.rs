//! Cyclic Jacobi diagonalisation of small Hermitian matrices.

use num_complex::Complex64;

use super::{inf_norm, CMatrix};
use crate::error::{Error, Result};

pub const HERMITIAN_TOLERANCE: f64 = 1e-10;
pub const MAX_SWEEPS: usize = 100;
/// Eigenvalues closer than this are treated as one cluster.
pub const CLUSTER_GAP: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct Eigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// Unitary; column `j` belongs to `values[j]`.
    pub vectors: CMatrix,
}

/// Eigen-decomposition `H = U diag(λ) U†` by complex cyclic Jacobi.
///
/// Each `(p, q)` step first rotates the phase of column `q` to make the
/// off-diagonal entry real, then applies the real symmetric Jacobi
/// rotation. Eigenvectors of near-equal eigenvalues are re-orthonormalised
/// by modified Gram–Schmidt.
pub fn hermitian_eigen(h: &CMatrix) -> Result<Eigen> {
    let n = h.nrows();
    assert_eq!(n, h.ncols(), "square matrix expected");
    let defect = inf_norm(&(h - h.adjoint()));
    if !(defect < HERMITIAN_TOLERANCE) {
        return Err(Error::NotHermitian(defect));
    }
    let mut a = (h + h.adjoint()).scale(0.5);
    let mut u = CMatrix::identity(n, n);
    let scale = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);
    let off = |a: &CMatrix| {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    while off(&a) > f64::EPSILON * scale {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence(MAX_SWEEPS));
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut u, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = CMatrix::from_fn(n, n, |r, c| u[(r, order[c])]);
    orthonormalise_clusters(&values, &mut vectors);
    Ok(Eigen { values, vectors })
}

fn rotate(a: &mut CMatrix, u: &mut CMatrix, p: usize, q: usize) {
    let h = a[(p, q)];
    let mag = h.norm();
    if mag == 0.0 {
        return;
    }
    let (ap, aq) = (a[(p, p)].re, a[(q, q)].re);
    let tau = (aq - ap) / (2.0 * mag);
    let t = if tau >= 0.0 { 1.0 } else { -1.0 } / (tau.abs() + (1.0 + tau * tau).sqrt());
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let phase = (h / mag).conj();
    // 2×2 block of the unitary step: columns p, q
    let (upp, upq) = (Complex64::new(c, 0.0), Complex64::new(s, 0.0));
    let (uqp, uqq) = (phase * -s, phase * c);
    let n = a.nrows();
    for k in 0..n {
        let (x, y) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = x * upp + y * uqp;
        a[(k, q)] = x * upq + y * uqq;
    }
    for k in 0..n {
        let (x, y) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = upp.conj() * x + uqp.conj() * y;
        a[(q, k)] = upq.conj() * x + uqq.conj() * y;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
    for k in 0..n {
        let (x, y) = (u[(k, p)], u[(k, q)]);
        u[(k, p)] = x * upp + y * uqp;
        u[(k, q)] = x * upq + y * uqq;
    }
}

fn orthonormalise_clusters(values: &[f64], v: &mut CMatrix) {
    let n = values.len();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && values[end] - values[end - 1] < CLUSTER_GAP {
            end += 1;
        }
        for j in start..end {
            for i in start..j {
                let proj: Complex64 = (0..n).map(|r| v[(r, i)].conj() * v[(r, j)]).sum();
                for r in 0..n {
                    let vi = v[(r, i)];
                    v[(r, j)] -= proj * vi;
                }
            }
            let norm = (0..n).map(|r| v[(r, j)].norm_sqr()).sum::<f64>().sqrt();
            for r in 0..n {
                v[(r, j)] /= norm;
            }
        }
        start = end;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn check(h: &CMatrix, e: &Eigen) {
        let n = h.nrows();
        let d = CMatrix::from_fn(n, n, |i, j| if i == j { Complex64::new(e.values[i], 0.0) } else { Complex64::new(0.0, 0.0) });
        assert!(inf_norm(&(h * &e.vectors - &e.vectors * d)) < 1e-9);
        assert!(inf_norm(&(e.vectors.adjoint() * &e.vectors - CMatrix::identity(n, n))) < 1e-12);
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn diagonal_input() {
        let h = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            Complex64::new(3.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(2.0, 0.0),
        ]));
        let e = hermitian_eigen(&h).unwrap();
        assert_eq!(e.values, vec![1.0, 2.0, 3.0]);
        check(&h, &e);
    }

    #[test]
    fn random_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 2..7 {
            let m = CMatrix::from_fn(n, n, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            let h = &m + m.adjoint();
            check(&h, &hermitian_eigen(&h).unwrap());
        }
    }

    #[test]
    fn degenerate_cluster() {
        // rank-one projector in C^3: eigenvalues 0, 0, 1
        let v = nalgebra::DVector::from_vec(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0), Complex64::new(1.0, 1.0)]);
        let v = v.normalize();
        let h = &v * v.adjoint();
        let e = hermitian_eigen(&h).unwrap();
        assert!(e.values[0].abs() < 1e-14 && e.values[1].abs() < 1e-14);
        assert!((e.values[2] - 1.0).abs() < 1e-14);
        check(&h, &e);
    }

    #[test]
    fn rejects_non_hermitian() {
        let h = CMatrix::from_row_slice(2, 2, &[
            Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0),
        ]);
        assert!(matches!(hermitian_eigen(&h), Err(Error::NotHermitian(_))));
    }
}
