//! Operations confined to one subsystem, applied as Kraus channels.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::density::DensityMatrix;
use super::matrix::{ComplexMatrix, Ket};
use crate::error::{Error, Result};

/// An operation performed inside a single lab.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LocalOperation {
    Unitary { matrix: ComplexMatrix },
    /// Non-selective complete projective measurement; the basis vectors are the columns.
    Measure { basis: ComplexMatrix },
    /// Swap the target with an independently prepared system in this state.
    Replace { state: DensityMatrix },
    Kraus { operators: Vec<ComplexMatrix> },
    /// Couple the target to a fresh ancilla with `unitary` on `target ⊗ ancilla`,
    /// then discard the ancilla.
    Dilated { ancilla: DensityMatrix, unitary: ComplexMatrix },
}

impl LocalOperation {
    pub fn unitary(matrix: ComplexMatrix) -> Self {
        LocalOperation::Unitary { matrix }
    }

    pub fn measure(basis: ComplexMatrix) -> Self {
        LocalOperation::Measure { basis }
    }

    pub fn computational_measurement(dim: usize) -> Self {
        LocalOperation::Measure { basis: ComplexMatrix::identity(dim) }
    }

    /// Dimension of the subsystem the operation acts on.
    pub fn dim(&self) -> usize {
        match self {
            LocalOperation::Unitary { matrix } => matrix.rows(),
            LocalOperation::Measure { basis } => basis.rows(),
            LocalOperation::Replace { state } => state.dim(),
            LocalOperation::Kraus { operators } => operators.first().map_or(0, |k| k.cols()),
            LocalOperation::Dilated { ancilla, unitary } => unitary.rows() / ancilla.dim().max(1),
        }
    }

    /// Kraus representation, checked for completeness Σ K†K = I within `tol`.
    pub fn kraus(&self, tol: f64) -> Result<Vec<ComplexMatrix>> {
        let ops = match self {
            LocalOperation::Unitary { matrix } => {
                let defect = matrix.unitarity_defect();
                if !matrix.is_square() || defect > tol {
                    return Err(Error::NotTracePreserving { defect });
                }
                vec![matrix.clone()]
            }
            LocalOperation::Measure { basis } => {
                check_orthonormal(basis, tol)?;
                (0..basis.cols()).map(|i| basis.column(i).projector()).collect()
            }
            LocalOperation::Replace { state } => {
                let d = state.dim();
                let eig = state.spectrum();
                let mut ops = Vec::new();
                for (i, &p) in eig.eigenvalues.iter().enumerate() {
                    if p <= 0.0 {
                        continue;
                    }
                    let s = eig.eigenvector(i);
                    for j in 0..d {
                        ops.push(ComplexMatrix::from_fn(d, d, |r, c| {
                            if c == j { s.0[r] * p.sqrt() } else { Complex64::new(0.0, 0.0) }
                        }));
                    }
                }
                ops
            }
            LocalOperation::Kraus { operators } => operators.clone(),
            LocalOperation::Dilated { ancilla, unitary } => dilation_kraus(ancilla, unitary, tol)?,
        };
        check_completeness(&ops, tol)?;
        Ok(ops)
    }
}

pub fn check_orthonormal(basis: &ComplexMatrix, tol: f64) -> Result<()> {
    let defect = basis.unitarity_defect();
    if !basis.is_square() || defect > tol {
        return Err(Error::NotOrthonormal { defect });
    }
    Ok(())
}

fn check_completeness(ops: &[ComplexMatrix], tol: f64) -> Result<()> {
    let Some(first) = ops.first() else {
        return Err(Error::NotTracePreserving { defect: f64::INFINITY });
    };
    let d = first.cols();
    let mut sum = ComplexMatrix::zeros(d, d);
    for k in ops {
        if k.cols() != d || k.rows() != d {
            return Err(Error::DimensionMismatch { expected: d, actual: k.rows().max(k.cols()) });
        }
        sum = &sum + &(&k.adjoint() * k);
    }
    let defect = (&sum - &ComplexMatrix::identity(d)).frobenius_norm();
    if defect > tol {
        return Err(Error::NotTracePreserving { defect });
    }
    Ok(())
}

fn dilation_kraus(ancilla: &DensityMatrix, unitary: &ComplexMatrix, tol: f64) -> Result<Vec<ComplexMatrix>> {
    let da = ancilla.dim();
    if !unitary.is_square() || unitary.rows() % da != 0 {
        return Err(Error::DimensionMismatch { expected: da, actual: unitary.rows() });
    }
    let defect = unitary.unitarity_defect();
    if defect > tol {
        return Err(Error::NotTracePreserving { defect });
    }
    let dt = unitary.rows() / da;
    let eig = ancilla.spectrum();
    let mut ops = Vec::new();
    for (k, &q) in eig.eigenvalues.iter().enumerate() {
        if q <= 0.0 {
            continue;
        }
        let f = eig.eigenvector(k);
        for j in 0..da {
            ops.push(ComplexMatrix::from_fn(dt, dt, |a, a2| {
                let amp: Complex64 = (0..da).map(|b| unitary[(a * da + j, a2 * da + b)] * f.0[b]).sum();
                amp * q.sqrt()
            }));
        }
    }
    Ok(ops)
}

/// Lifts an operator on the contiguous block of subsystems `first..first+count`
/// to the full space described by `dims`.
pub fn embed(op: &ComplexMatrix, dims: &[usize], first: usize, count: usize) -> Result<ComplexMatrix> {
    if count == 0 || first + count > dims.len() {
        return Err(Error::InvalidSelector(format!("block {first}..{} of {} subsystems", first + count, dims.len())));
    }
    let block: usize = dims[first..first + count].iter().product();
    if op.rows() != block || op.cols() != block {
        return Err(Error::DimensionMismatch { expected: block, actual: op.rows() });
    }
    let before: usize = dims[..first].iter().product();
    let after: usize = dims[first + count..].iter().product();
    Ok(ComplexMatrix::identity(before).kron(op).kron(&ComplexMatrix::identity(after)))
}

/// Applies the Kraus family `ops` to the block `first..first+count` of `rho`.
pub fn apply_kraus_block(rho: &DensityMatrix, ops: &[ComplexMatrix], first: usize, count: usize) -> Result<DensityMatrix> {
    let d = rho.dim();
    let mut out = ComplexMatrix::zeros(d, d);
    for k in ops {
        let big = embed(k, rho.dims(), first, count)?;
        out = &out + &(&(&big * rho.matrix()) * &big.adjoint());
    }
    DensityMatrix::new_unchecked(out, rho.dims().to_vec())
}

/// Applies `op` to subsystem `target` of `rho`.
pub fn apply_local(rho: &DensityMatrix, op: &LocalOperation, target: usize, tol: f64) -> Result<DensityMatrix> {
    let Some(&dt) = rho.dims().get(target) else {
        return Err(Error::InvalidSelector(format!("subsystem {target} of {:?}", rho.dims())));
    };
    if op.dim() != dt {
        return Err(Error::DimensionMismatch { expected: dt, actual: op.dim() });
    }
    let ops = op.kraus(tol)?;
    apply_kraus_block(rho, &ops, target, 1)
}

/// Swap gate on `d ⊗ d`.
pub fn swap_gate(d: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(d * d, d * d, |r, c| {
        let (a, b) = (c / d, c % d);
        if r == b * d + a { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) }
    })
}

/// Non-selective measurement of `rho`'s subsystem `target` in the columns of `basis`.
pub fn dephase(rho: &DensityMatrix, basis: &ComplexMatrix, target: usize, tol: f64) -> Result<DensityMatrix> {
    apply_local(rho, &LocalOperation::measure(basis.clone()), target, tol)
}

/// Qubit gates used throughout the crate.
pub mod gates {
    use super::*;

    pub fn x() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])
    }

    pub fn y() -> ComplexMatrix {
        ComplexMatrix::from_fn(2, 2, |r, c| match (r, c) {
            (0, 1) => Complex64::new(0.0, -1.0),
            (1, 0) => Complex64::new(0.0, 1.0),
            _ => Complex64::new(0.0, 0.0),
        })
    }

    pub fn z() -> ComplexMatrix {
        ComplexMatrix::diagonal(&[1.0, -1.0])
    }

    pub fn h() -> ComplexMatrix {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        ComplexMatrix::from_real_rows(&[&[s, s], &[s, -s]])
    }

    /// Basis {|+⟩, |−⟩} as columns.
    pub fn hadamard_basis() -> ComplexMatrix {
        h()
    }

    /// Basis {|+i⟩, |−i⟩} as columns.
    pub fn circular_basis() -> ComplexMatrix {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        ComplexMatrix::from_columns(&[
            Ket(vec![Complex64::new(s, 0.0), Complex64::new(0.0, s)]),
            Ket(vec![Complex64::new(s, 0.0), Complex64::new(0.0, -s)]),
        ])
    }
}
