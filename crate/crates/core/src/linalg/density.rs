//! Density matrices over multipartite Hilbert spaces.
//!
//! Subsystems are ordered left to right with the leftmost factor (Alice's `A`)
//! carrying the most-significant index, so `|ab⟩` has flat index `a·d_B + b`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::eigen::{eig_hermitian_with_tol, HermitianEigensystem};
use super::matrix::{ComplexMatrix, Ket};
use crate::error::{Error, Result};

/// Largest total Hilbert dimension handled by this crate.
pub const MAX_DIM: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    dims: Vec<usize>,
    matrix: ComplexMatrix,
}

/// Validity report for a candidate density matrix.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityDiagnostics {
    pub hermiticity_defect: f64,
    pub trace_defect: f64,
    pub min_eigenvalue: f64,
}

impl DensityDiagnostics {
    pub fn is_valid(&self, tol: f64) -> bool {
        self.hermiticity_defect <= tol && self.trace_defect <= tol && self.min_eigenvalue >= -tol
    }
}

/// Reports Hermiticity defect, |tr − 1| and the smallest eigenvalue of the
/// Hermitian part. Never fails on a square input.
pub fn validate_density(m: &ComplexMatrix) -> Result<DensityDiagnostics> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let hermiticity_defect = m.hermiticity_defect();
    let tr = m.trace();
    let trace_defect = (tr - Complex64::new(1.0, 0.0)).norm();
    let eig = eig_hermitian_with_tol(&m.hermitian_part(), f64::INFINITY)?;
    let min_eigenvalue = eig.eigenvalues.last().copied().unwrap_or(0.0);
    Ok(DensityDiagnostics { hermiticity_defect, trace_defect, min_eigenvalue })
}

impl DensityMatrix {
    /// Validating constructor.
    pub fn new(matrix: ComplexMatrix, dims: Vec<usize>, tol: f64) -> Result<Self> {
        let rho = Self::new_unchecked(matrix, dims)?;
        let diag = validate_density(&rho.matrix)?;
        if !diag.is_valid(tol) {
            return Err(Error::InvalidDensity(format!(
                "hermiticity defect {:e}, trace defect {:e}, min eigenvalue {:e}",
                diag.hermiticity_defect, diag.trace_defect, diag.min_eigenvalue
            )));
        }
        Ok(rho)
    }

    /// Checks only shapes; used for parsing with validation disabled and for
    /// internal results that are valid by construction.
    pub fn new_unchecked(matrix: ComplexMatrix, dims: Vec<usize>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare { rows: matrix.rows(), cols: matrix.cols() });
        }
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::InvalidSelector(format!("bad subsystem dimensions {dims:?}")));
        }
        let total: usize = dims.iter().product();
        if total != matrix.rows() {
            return Err(Error::DimensionMismatch { expected: total, actual: matrix.rows() });
        }
        if total > MAX_DIM {
            return Err(Error::OutOfRange(format!("total dimension {total} exceeds {MAX_DIM}")));
        }
        Ok(Self { dims, matrix })
    }

    pub fn from_ket(psi: &Ket, dims: Vec<usize>) -> Result<Self> {
        let n = psi.norm();
        if (n - 1.0).abs() > 1e-9 {
            return Err(Error::OutOfRange(format!("state vector norm {n} is not 1")));
        }
        Self::new_unchecked(psi.projector(), dims)
    }

    /// I/d on the given subsystem dimensions.
    pub fn maximally_mixed(dims: Vec<usize>) -> Self {
        let d: usize = dims.iter().product();
        Self { matrix: ComplexMatrix::identity(d).scale_real(1.0 / d as f64), dims }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn num_subsystems(&self) -> usize {
        self.dims.len()
    }

    pub fn is_bipartite(&self) -> bool {
        self.dims.len() == 2
    }

    pub fn diagnostics(&self) -> DensityDiagnostics {
        validate_density(&self.matrix).expect("density matrices are square")
    }

    pub fn spectrum(&self) -> HermitianEigensystem {
        eig_hermitian_with_tol(&self.matrix, f64::INFINITY).expect("density matrices are square")
    }

    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }

    /// Same matrix with different subsystem bookkeeping (product must match).
    pub fn with_dims(&self, dims: Vec<usize>) -> Result<Self> {
        Self::new_unchecked(self.matrix.clone(), dims)
    }

    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        DensityMatrix { dims, matrix: self.matrix.kron(&other.matrix) }
    }

    /// Convex combination `w·self + (1 − w)·other`.
    pub fn mix(&self, other: &DensityMatrix, w: f64) -> Result<DensityMatrix> {
        if self.dims != other.dims {
            return Err(Error::DimensionMismatch { expected: self.dim(), actual: other.dim() });
        }
        let m = &self.matrix.scale_real(w) + &other.matrix.scale_real(1.0 - w);
        Ok(DensityMatrix { dims: self.dims.clone(), matrix: m })
    }

    /// Marginal on the subsystems listed in `keep` (strictly increasing indices).
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let n = self.dims.len();
        if keep.is_empty() {
            return Err(Error::InvalidSelector("nothing to keep".into()));
        }
        if keep.windows(2).any(|w| w[0] >= w[1]) || keep.iter().any(|&k| k >= n) {
            return Err(Error::InvalidSelector(format!("keep {keep:?} for {n} subsystems")));
        }
        let traced: Vec<usize> = (0..n).filter(|i| !keep.contains(i)).collect();
        let kept_dims: Vec<usize> = keep.iter().map(|&i| self.dims[i]).collect();
        let traced_dims: Vec<usize> = traced.iter().map(|&i| self.dims[i]).collect();
        let kd: usize = kept_dims.iter().product();
        let td: usize = traced_dims.iter().product();

        let mut out = ComplexMatrix::zeros(kd, kd);
        let mut digits = vec![0usize; n];
        for r in 0..kd {
            for c in 0..kd {
                let mut acc = Complex64::new(0.0, 0.0);
                for t in 0..td {
                    scatter(&mut digits, keep, &kept_dims, r, &traced, &traced_dims, t);
                    let row = flatten(&digits, &self.dims);
                    scatter(&mut digits, keep, &kept_dims, c, &traced, &traced_dims, t);
                    let col = flatten(&digits, &self.dims);
                    acc += self.matrix[(row, col)];
                }
                out[(r, c)] = acc;
            }
        }
        Ok(DensityMatrix { dims: kept_dims, matrix: out })
    }

    /// Marginal of a bipartite state on `A` (index 0).
    pub fn marginal_a(&self) -> Result<DensityMatrix> {
        self.require_bipartite()?;
        self.partial_trace(&[0])
    }

    /// Marginal of a bipartite state on `B` (index 1).
    pub fn marginal_b(&self) -> Result<DensityMatrix> {
        self.require_bipartite()?;
        self.partial_trace(&[1])
    }

    pub fn require_bipartite(&self) -> Result<()> {
        if self.is_bipartite() {
            Ok(())
        } else {
            Err(Error::InvalidSelector(format!("expected a bipartite state, got dims {:?}", self.dims)))
        }
    }

    /// Exchanges the two factors of a bipartite state.
    pub fn swap_parties(&self) -> Result<DensityMatrix> {
        self.require_bipartite()?;
        let (da, db) = (self.dims[0], self.dims[1]);
        let idx = |i: usize| (i % db) * da + i / db;
        let d = self.dim();
        let mut m = ComplexMatrix::zeros(d, d);
        for r in 0..d {
            for c in 0..d {
                m[(idx(r), idx(c))] = self.matrix[(r, c)];
            }
        }
        Ok(DensityMatrix { dims: vec![db, da], matrix: m })
    }
}

fn scatter(
    digits: &mut [usize],
    keep: &[usize],
    kept_dims: &[usize],
    mut kept_index: usize,
    traced: &[usize],
    traced_dims: &[usize],
    mut traced_index: usize,
) {
    for (pos, &d) in keep.iter().zip(kept_dims).rev() {
        digits[*pos] = kept_index % d;
        kept_index /= d;
    }
    for (pos, &d) in traced.iter().zip(traced_dims).rev() {
        digits[*pos] = traced_index % d;
        traced_index /= d;
    }
}

fn flatten(digits: &[usize], dims: &[usize]) -> usize {
    digits.iter().zip(dims).fold(0, |acc, (&x, &d)| acc * d + x)
}

/// ½ Σ |λ_i(ρ − σ)|.
pub fn trace_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch { expected: rho.dim(), actual: sigma.dim() });
    }
    trace_norm_half(&(rho.matrix() - sigma.matrix()))
}

pub(crate) fn trace_norm_half(diff: &ComplexMatrix) -> Result<f64> {
    let eig = eig_hermitian_with_tol(diff, f64::INFINITY)?;
    Ok(0.5 * eig.eigenvalues.iter().map(|l| l.abs()).sum::<f64>())
}
