//! Seeded random states, densities and unitaries for property tests and sweeps.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::density::DensityMatrix;
use super::matrix::{ComplexMatrix, Ket};

fn gaussian(rng: &mut impl Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

fn ginibre(rows: usize, cols: usize, rng: &mut impl Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

/// Haar-random unit vector.
pub fn random_ket(dim: usize, rng: &mut impl Rng) -> Ket {
    Ket((0..dim).map(|_| gaussian(rng)).collect()).normalized()
}

/// Haar-random unitary: QR of a Ginibre matrix with the R-diagonal phases removed.
pub fn random_unitary(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let g = ginibre(dim, dim, rng);
    let mut cols: Vec<Ket> = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut v = g.column(j);
        // Two rounds of modified Gram-Schmidt.
        for _ in 0..2 {
            for q in &cols {
                let proj = q.inner(&v);
                for (vi, qi) in v.0.iter_mut().zip(&q.0) {
                    *vi -= proj * qi;
                }
            }
        }
        let r_jj = v.norm();
        let mut q = v.normalized();
        // Mezzadri phase fix: make diag(R) real-positive relative to the input column.
        let overlap = q.inner(&g.column(j));
        if overlap.norm() > 0.0 {
            let phase = overlap / overlap.norm();
            q = Ket(q.0.iter().map(|z| z * phase).collect());
        }
        debug_assert!(r_jj > 0.0);
        cols.push(q);
    }
    ComplexMatrix::from_columns(&cols)
}

/// Hilbert-Schmidt random density matrix G G† / tr(G G†) on a single subsystem.
pub fn random_density(dim: usize, rng: &mut impl Rng) -> DensityMatrix {
    random_density_rank(dim, dim, rng)
}

/// Random density matrix of rank at most `rank`.
pub fn random_density_rank(dim: usize, rank: usize, rng: &mut impl Rng) -> DensityMatrix {
    let g = ginibre(dim, rank.max(1), rng);
    let w = &g * &g.adjoint();
    let tr = w.trace().re;
    let m = w.hermitian_part().scale_real(1.0 / tr);
    DensityMatrix::new_unchecked(m, vec![dim]).expect("square by construction")
}

/// Random Hermitian matrix with Gaussian entries (GUE-like), for eigensolver tests.
pub fn random_hermitian(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    ginibre(dim, dim, rng).hermitian_part()
}

/// Random probability vector of length `n` (flat Dirichlet).
pub fn random_simplex(n: usize, rng: &mut impl Rng) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| -rng.random::<f64>().max(f64::MIN_POSITIVE).ln()).collect();
    let s: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / s).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SampleKind {
    PureState,
    Density,
    Unitary,
}

#[derive(Clone, Debug)]
pub enum RandomSample {
    PureState(Ket),
    Density(DensityMatrix),
    Unitary(ComplexMatrix),
}

/// Deterministic for a fixed `seed`.
pub fn sample_random(kind: SampleKind, dim: usize, seed: u64) -> RandomSample {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match kind {
        SampleKind::PureState => RandomSample::PureState(random_ket(dim, &mut rng)),
        SampleKind::Density => RandomSample::Density(random_density(dim, &mut rng)),
        SampleKind::Unitary => RandomSample::Unitary(random_unitary(dim, &mut rng)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unitary_is_deterministic_and_unitary() {
        let (RandomSample::Unitary(a), RandomSample::Unitary(b)) =
            (sample_random(SampleKind::Unitary, 2, 5), sample_random(SampleKind::Unitary, 2, 5))
        else {
            unreachable!()
        };
        assert_eq!(a, b);
        for d in 1..=8 {
            let RandomSample::Unitary(u) = sample_random(SampleKind::Unitary, d, 99) else { unreachable!() };
            assert!(u.unitarity_defect() <= 1e-12);
        }
    }

    #[test]
    fn density_passes_validation() {
        let RandomSample::Density(rho) = sample_random(SampleKind::Density, 4, 1) else { unreachable!() };
        assert!(rho.diagnostics().is_valid(1e-12));
    }

    #[test]
    fn pure_state_unit_norm() {
        let RandomSample::PureState(k) = sample_random(SampleKind::PureState, 2, 1) else { unreachable!() };
        assert!((k.norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn haar_first_column_is_uniform_on_average() {
        // E|U_00|^2 = 1/d under the Haar measure.
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let d = 3;
        let n = 4000;
        let mean: f64 = (0..n).map(|_| random_unitary(d, &mut rng)[(0, 0)].norm_sqr()).sum::<f64>() / n as f64;
        assert!((mean - 1.0 / d as f64).abs() < 0.02, "{mean}");
    }
}
