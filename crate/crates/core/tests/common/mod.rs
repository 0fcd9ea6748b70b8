#![allow(dead_code)]

use num_complex::Complex64;
use qhouse_core::linalg::random::{random_density, random_ket, random_unitary};
use qhouse_core::linalg::{ComplexMatrix, DensityMatrix, Ket};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Oracle decision threshold on the best measurement disturbance found.
pub const ORACLE_ZERO: f64 = 1e-7;
/// Disturbances inside this band are too close to call either way.
pub const BOUNDARY_BAND: (f64, f64) = (1e-10, 1e-5);

#[derive(Clone, Copy, Debug)]
pub struct OracleResult {
    pub min_disturbance: f64,
    pub theta: f64,
    pub phi: f64,
}

impl OracleResult {
    pub fn zero_discord(&self) -> bool {
        self.min_disturbance <= ORACLE_ZERO
    }

    pub fn is_boundary(&self) -> bool {
        self.min_disturbance > BOUNDARY_BAND.0 && self.min_disturbance < BOUNDARY_BAND.1
    }
}

fn basis_pair(theta: f64, phi: f64) -> ([Complex64; 2], [Complex64; 2]) {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let e = Complex64::from_polar(1.0, phi);
    ([Complex64::new(c, 0.0), e * s], [-e.conj() * s, Complex64::new(c, 0.0)])
}

/// Frobenius norm of ρ − Σ_k (P_k ⊗ I) ρ (P_k ⊗ I) for the qubit basis at (θ, φ).
///
/// Only the cross term ⟨a0|ρ|a1⟩ survives, so this is √2 ‖⟨a0|ρ|a1⟩‖_F.
pub fn disturbance(rho: &DensityMatrix, theta: f64, phi: f64) -> f64 {
    let m = rho.matrix();
    let db = rho.dims()[1];
    let (a0, a1) = basis_pair(theta, phi);
    let mut sum = 0.0;
    for b in 0..db {
        for bp in 0..db {
            let mut acc = Complex64::new(0.0, 0.0);
            for a in 0..2 {
                for ap in 0..2 {
                    acc += a0[a].conj() * m[(a * db + b, ap * db + bp)] * a1[ap];
                }
            }
            sum += acc.norm_sqr();
        }
    }
    (2.0 * sum).sqrt()
}

/// Brute-force search over qubit bases: Fibonacci-sphere seeding and compass refinement.
pub fn qubit_discord_oracle(rho: &DensityMatrix, seeds: usize) -> OracleResult {
    assert_eq!(rho.dims()[0], 2, "oracle handles a qubit on A");
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    let mut cands: Vec<(f64, f64, f64)> = (0..seeds)
        .map(|i| {
            let z = 1.0 - 2.0 * (i as f64 + 0.5) / seeds as f64;
            let theta = z.acos();
            let phi = (golden * i as f64).rem_euclid(std::f64::consts::TAU);
            (disturbance(rho, theta, phi), theta, phi)
        })
        .collect();
    cands.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut best = OracleResult { min_disturbance: f64::INFINITY, theta: 0.0, phi: 0.0 };
    for &(mut f, mut theta, mut phi) in cands.iter().take(6) {
        let mut step = 0.1;
        while step > 1e-13 {
            let mut improved = false;
            for (dt, dp) in [(step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)] {
                let g = disturbance(rho, theta + dt, phi + dp);
                if g < f {
                    f = g;
                    theta += dt;
                    phi += dp;
                    improved = true;
                }
            }
            if !improved {
                step /= 2.0;
            }
        }
        if f < best.min_disturbance {
            best = OracleResult { min_disturbance: f, theta, phi };
        }
    }
    best
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Σ p_i |a_i⟩⟨a_i| ⊗ ρ_i for a random orthonormal qubit basis {a_i}.
pub fn random_cq(db: usize, r: &mut impl Rng) -> DensityMatrix {
    let u = random_unitary(2, r);
    let p: f64 = r.random_range(0.05..0.95);
    let mut m = ComplexMatrix::zeros(2 * db, 2 * db);
    for (i, w) in [(0, p), (1, 1.0 - p)] {
        let a = u.column(i).projector();
        let b = random_density(db, r);
        m = &m + &a.kron(b.matrix()).scale_real(w);
    }
    DensityMatrix::new(m, vec![2, db], 1e-9).unwrap()
}

pub fn random_product(db: usize, r: &mut impl Rng) -> DensityMatrix {
    let a = random_density(2, r);
    let b = random_density(db, r);
    a.tensor(&b)
}

pub fn random_bipartite(db: usize, r: &mut impl Rng) -> DensityMatrix {
    random_density(2 * db, r).with_dims(vec![2, db]).unwrap()
}

/// A state with exactly one pure factor, on A or on B.
pub fn random_pure_factor_product(r: &mut impl Rng) -> DensityMatrix {
    let da = r.random_range(2..=3);
    let db = r.random_range(2..=3);
    let pure_a = r.random_bool(0.5);
    let pure = |d, r: &mut ChaCha8Rng| DensityMatrix::from_ket(&random_ket(d, r), vec![d]).unwrap();
    let mut inner = ChaCha8Rng::seed_from_u64(r.random());
    if pure_a {
        pure(da, &mut inner).tensor(&random_density(db, &mut inner))
    } else {
        random_density(da, &mut inner).tensor(&pure(db, &mut inner))
    }
}

pub fn ket_of(v: &[f64]) -> Ket {
    Ket::from_real(v)
}

pub struct CrossValidation {
    pub total: usize,
    pub disagreements: Vec<String>,
    pub boundary: Vec<String>,
    pub zero_count: usize,
}

/// Random, classical-quantum, product and slightly perturbed classical-quantum
/// states on 2⊗2 and 2⊗3, each judged by the block criterion and by the oracle.
pub fn discord_cross_validation(seed: u64, n: usize) -> CrossValidation {
    use qhouse_core::discord::{is_zero_discord, DISCORD_TOL};
    let mut r = rng(seed);
    let mut out = CrossValidation { total: 0, disagreements: Vec::new(), boundary: Vec::new(), zero_count: 0 };
    for i in 0..n {
        let db = 2 + i % 2;
        let (label, rho) = match (i / 2) % 6 {
            0 | 1 => ("random", random_bipartite(db, &mut r)),
            2 | 3 => ("cq", random_cq(db, &mut r)),
            4 => ("product", random_product(db, &mut r)),
            _ => {
                let eps = 10f64.powf(r.random_range(-3.0..-1.0));
                let cq = random_cq(db, &mut r);
                ("perturbed-cq", random_bipartite(db, &mut r).mix(&cq, eps).unwrap())
            }
        };
        let verdict = is_zero_discord(&rho, DISCORD_TOL, i as u64).unwrap();
        let oracle = qubit_discord_oracle(&rho, 2000);
        out.total += 1;
        out.zero_count += verdict.zero_discord as usize;
        let line = format!(
            "#{i} {label} 2x{db}: block={} oracle={} (min disturbance {:.3e})",
            verdict.zero_discord,
            oracle.zero_discord(),
            oracle.min_disturbance
        );
        if oracle.is_boundary() {
            out.boundary.push(line);
        } else if verdict.zero_discord != oracle.zero_discord() {
            out.disagreements.push(line);
        }
    }
    out
}
