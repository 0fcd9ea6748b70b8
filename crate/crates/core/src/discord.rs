//! Zero-discord test with respect to subsystem `A`.
//!
//! A bipartite state is classical on `A` exactly when it can be written as
//! Σ p_i |a_i⟩⟨a_i| ⊗ ρ_B^i for an orthonormal basis {|a_i⟩}. Writing the state
//! as a grid of `A`-operators C_mn = (I ⊗ ⟨m|) ρ (I ⊗ |n⟩), that form exists iff
//! the C_mn are normal and pairwise commuting; their common eigenbasis is then
//! the basis Alice can measure in without disturbing the joint state.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::channel::dephase;
use crate::linalg::eigen::eig_hermitian_with_tol;
use crate::linalg::{trace_distance, ComplexMatrix, DensityMatrix};

/// Default tolerance for commutator and normality norms.
pub const DISCORD_TOL: f64 = 1e-8;

const MAX_ATTEMPTS: usize = 8;

/// C_mn blocks of a bipartite state, indexed by Bob's basis labels.
#[derive(Clone, Debug)]
pub struct CorrelationBlocks {
    dim_b: usize,
    blocks: Vec<ComplexMatrix>,
}

impl CorrelationBlocks {
    pub fn get(&self, m: usize, n: usize) -> &ComplexMatrix {
        &self.blocks[m * self.dim_b + n]
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    fn iter(&self) -> impl Iterator<Item = ((usize, usize), &ComplexMatrix)> {
        self.blocks.iter().enumerate().map(move |(i, b)| ((i / self.dim_b, i % self.dim_b), b))
    }
}

pub fn correlation_blocks(rho: &DensityMatrix) -> Result<CorrelationBlocks> {
    rho.require_bipartite()?;
    let (da, db) = (rho.dims()[0], rho.dims()[1]);
    let m = rho.matrix();
    let mut blocks = Vec::with_capacity(db * db);
    for bm in 0..db {
        for bn in 0..db {
            blocks.push(ComplexMatrix::from_fn(da, da, |a, a2| m[(a * db + bm, a2 * db + bn)]));
        }
    }
    Ok(CorrelationBlocks { dim_b: db, blocks })
}

/// Evidence that a state carries discord.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    NonNormal { block: (usize, usize), defect: f64 },
    NonCommuting { first: (usize, usize), second: (usize, usize), norm: f64 },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiscordVerdict {
    pub zero_discord: bool,
    /// Columns form the witnessing orthonormal basis of `A`.
    pub witness_basis: Option<ComplexMatrix>,
    pub certificate: Option<Certificate>,
    /// Largest ‖[C, C†]‖_F over all blocks.
    pub max_non_normality: f64,
    /// Largest ‖[C, C']‖_F over all block pairs.
    pub max_commutator: f64,
    /// Set when the deciding norm lies within a factor of 100 of the tolerance.
    pub near_boundary: bool,
}

/// Decides zero discord on `A`. The randomized simultaneous diagonalization is
/// seeded, so the witness basis is reproducible.
pub fn is_zero_discord(rho: &DensityMatrix, tol: f64, seed: u64) -> Result<DiscordVerdict> {
    let blocks = correlation_blocks(rho)?;
    let all: Vec<_> = blocks.iter().collect();

    let mut max_non_normality = 0.0f64;
    let mut worst_normal = None;
    for &(idx, c) in &all {
        let defect = c.commutator(&c.adjoint()).frobenius_norm();
        if defect > max_non_normality {
            max_non_normality = defect;
            worst_normal = Some(Certificate::NonNormal { block: idx, defect });
        }
    }
    let mut max_commutator = 0.0f64;
    let mut worst_comm = None;
    for (i, &(idx_i, ci)) in all.iter().enumerate() {
        for &(idx_j, cj) in &all[i + 1..] {
            let norm = ci.commutator(cj).frobenius_norm();
            if norm > max_commutator {
                max_commutator = norm;
                worst_comm = Some(Certificate::NonCommuting { first: idx_i, second: idx_j, norm });
            }
        }
    }

    let deciding = max_non_normality.max(max_commutator);
    let near_boundary = deciding > tol / 100.0 && deciding < tol * 100.0;
    if deciding > tol {
        let certificate = if max_non_normality >= max_commutator { worst_normal } else { worst_comm };
        return Ok(DiscordVerdict {
            zero_discord: false,
            witness_basis: None,
            certificate,
            max_non_normality,
            max_commutator,
            near_boundary,
        });
    }

    let basis = common_eigenbasis(&blocks, tol, seed)?;
    Ok(DiscordVerdict {
        zero_discord: true,
        witness_basis: Some(basis),
        certificate: None,
        max_non_normality,
        max_commutator,
        near_boundary,
    })
}

/// Diagonalizes a random Hermitian combination of the (commuting, normal) blocks
/// and checks that every block is diagonal in the result.
fn common_eigenbasis(blocks: &CorrelationBlocks, tol: f64, seed: u64) -> Result<ComplexMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let da = blocks.get(0, 0).rows();
    let mut best_residual = f64::INFINITY;
    for _ in 0..MAX_ATTEMPTS {
        let mut h = ComplexMatrix::zeros(da, da);
        for (_, c) in blocks.iter() {
            let herm = c.hermitian_part();
            let anti = (c - &c.adjoint()).scale(num_complex::Complex64::new(0.0, -0.5));
            h = &h + &herm.scale_real(rng.random_range(-1.0..1.0));
            h = &h + &anti.scale_real(rng.random_range(-1.0..1.0));
        }
        let eig = eig_hermitian_with_tol(&h, f64::INFINITY)?;
        let v = eig.eigenvectors;
        let residual = blocks
            .iter()
            .map(|(_, c)| off_diagonal_norm(&(&(&v.adjoint() * c) * &v)))
            .fold(0.0, f64::max);
        if residual <= tol {
            return Ok(v);
        }
        best_residual = best_residual.min(residual);
    }
    Err(Error::DiagonalizationFailed { attempts: MAX_ATTEMPTS, residual: best_residual })
}

fn off_diagonal_norm(m: &ComplexMatrix) -> f64 {
    let mut s = 0.0;
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            if r != c {
                s += m[(r, c)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Trace distance between `rho` and its image under a non-selective
/// measurement of `A` in the columns of `basis`.
pub fn measurement_perturbation(rho: &DensityMatrix, basis: &ComplexMatrix, tol: f64) -> Result<f64> {
    rho.require_bipartite()?;
    let measured = dephase(rho, basis, 0, tol)?;
    trace_distance(rho, &measured)
}

/// Same test with the roles of `A` and `B` exchanged.
pub fn is_zero_discord_on_b(rho: &DensityMatrix, tol: f64, seed: u64) -> Result<DiscordVerdict> {
    is_zero_discord(&rho.swap_parties()?, tol, seed)
}
