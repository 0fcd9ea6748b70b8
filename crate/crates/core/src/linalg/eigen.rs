//! Cyclic Jacobi eigensolver for small Hermitian matrices.

use num_complex::Complex64;

use super::matrix::{ComplexMatrix, Ket};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// Eigenvalues in descending order with matching orthonormal eigenvector columns.
#[derive(Clone, Debug)]
pub struct HermitianEigensystem {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEigensystem {
    pub fn eigenvector(&self, i: usize) -> Ket {
        self.eigenvectors.column(i)
    }

    /// V Λ V†
    pub fn reconstruct(&self) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let lambda = ComplexMatrix::diagonal(&self.eigenvalues);
        &(v * &lambda) * &v.adjoint()
    }
}

/// Diagonalizes a Hermitian matrix. The input is rejected when its Hermiticity
/// defect exceeds `tol`; within tolerance the Hermitian part is used.
pub fn eig_hermitian_with_tol(h: &ComplexMatrix, tol: f64) -> Result<HermitianEigensystem> {
    if !h.is_square() {
        return Err(Error::NotSquare { rows: h.rows(), cols: h.cols() });
    }
    let defect = h.hermiticity_defect();
    if defect > tol {
        return Err(Error::NotHermitian { defect });
    }
    Ok(jacobi(h.hermitian_part()))
}

pub fn eig_hermitian(h: &ComplexMatrix) -> Result<HermitianEigensystem> {
    eig_hermitian_with_tol(h, crate::DEFAULT_TOL)
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                s += a[(r, c)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn jacobi(mut a: ComplexMatrix) -> HermitianEigensystem {
    let n = a.rows();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r <= 1e-300 {
                    continue;
                }
                // W = diag(1, e^{-iφ}) · [[c, -s], [s, c]] zeroes the (p, q) entry of W† A W.
                let phase = apq / r;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = 0.5 * (2.0 * r).atan2(app - aqq);
                let (s, c) = theta.sin_cos();
                let w_pp = Complex64::new(c, 0.0);
                let w_pq = Complex64::new(-s, 0.0);
                let w_qp = phase.conj() * s;
                let w_qq = phase.conj() * c;

                // A ← A W (columns p, q)
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * w_pp + akq * w_qp;
                    a[(k, q)] = akp * w_pq + akq * w_qq;
                }
                // A ← W† A (rows p, q)
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = w_pp.conj() * apk + w_qp.conj() * aqk;
                    a[(q, k)] = w_pq.conj() * apk + w_qq.conj() * aqk;
                }
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
                // V ← V W
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * w_pp + vkq * w_qp;
                    v[(k, q)] = vkp * w_pq + vkq * w_qq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let columns: Vec<Ket> = order.iter().map(|&i| normalize_phase(v.column(i))).collect();
    HermitianEigensystem { eigenvalues, eigenvectors: ComplexMatrix::from_columns(&columns) }
}

/// Rotates the global phase so the first non-negligible component is real and positive.
fn normalize_phase(k: Ket) -> Ket {
    match k.0.iter().find(|z| z.norm() > 1e-12) {
        Some(&lead) => {
            let phase = lead.conj() / lead.norm();
            Ket(k.0.iter().map(|z| z * phase).collect())
        }
        None => k,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random::random_hermitian;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn maximally_mixed_qubit() {
        let e = eig_hermitian(&ComplexMatrix::identity(2).scale_real(0.5)).unwrap();
        assert_eq!(e.eigenvalues, vec![0.5, 0.5]);
        assert!(e.eigenvectors.unitarity_defect() < 1e-14);
    }

    #[test]
    fn eq1_diagonal_sorted_descending() {
        let h = ComplexMatrix::diagonal(&[1.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 3.0]);
        let e = eig_hermitian(&h).unwrap();
        let want = [1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0];
        for (got, want) in e.eigenvalues.iter().zip(want) {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn pauli_x_spectral_pair() {
        let x = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let e = eig_hermitian(&x).unwrap();
        assert!((e.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!((e.eigenvalues[1] + 1.0).abs() < 1e-14);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let plus = e.eigenvector(0);
        let minus = e.eigenvector(1);
        assert!((plus.0[0].re - s).abs() < 1e-14 && (plus.0[1].re - s).abs() < 1e-14);
        assert!((minus.0[0].re - s).abs() < 1e-14 && (minus.0[1].re + s).abs() < 1e-14);
    }

    #[test]
    fn complex_off_diagonal_pauli_y() {
        let y = ComplexMatrix::from_fn(2, 2, |r, c| match (r, c) {
            (0, 1) => Complex64::new(0.0, -1.0),
            (1, 0) => Complex64::new(0.0, 1.0),
            _ => Complex64::new(0.0, 0.0),
        });
        let e = eig_hermitian(&y).unwrap();
        assert!((&e.reconstruct() - &y).frobenius_norm() < 1e-14);
        assert_eq!(e.eigenvalues.len(), 2);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(eig_hermitian(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn random_reconstruction_up_to_dim_16() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for dim in 1..=16 {
            for _ in 0..5 {
                let h = random_hermitian(dim, &mut rng);
                let e = eig_hermitian(&h).unwrap();
                assert!((&e.reconstruct() - &h).frobenius_norm() <= 1e-9, "dim {dim}");
                assert!(e.eigenvectors.unitarity_defect() <= 1e-9);
                assert!(e.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
            }
        }
    }
}
