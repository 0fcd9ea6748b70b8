//! Ideal and pseudo-pure matrices for the two-qubit NMR pipeline: prepare an
//! EPR pair, then apply X to the first qubit.

use serde::{Deserialize, Serialize};

use crate::linalg::{gates, DensityMatrix};
use crate::qhouse::{noisy_metrics, verify_witness, NoiseModel, QhWitness, Thresholds};
use crate::states::{make, NamedState};
use crate::Result;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpinqStage {
    pub label: String,
    pub ideal: DensityMatrix,
    pub noisy: DensityMatrix,
    pub ideal_a: DensityMatrix,
    pub noisy_a: DensityMatrix,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpinqDemo {
    pub eta: f64,
    pub depolarizing: f64,
    pub stages: [SpinqStage; 2],
    pub delta_ab_ideal: f64,
    pub delta_ab_noisy: f64,
    pub delta_a_noisy: f64,
    pub noisy_verdict: bool,
}

pub fn spinq_demo(eta: f64, depolarizing: f64, tol: f64) -> Result<SpinqDemo> {
    let epr = make(&NamedState::Epr);
    let x = QhWitness::explicit_unitary(gates::x());
    let ideal = verify_witness(&epr, &x, tol)?;
    let noise = NoiseModel { eta, depolarizing };
    let noisy = noisy_metrics(&epr, &x, noise, Thresholds::default(), tol)?;
    let stage = |label: &str, ideal: DensityMatrix, noisy: DensityMatrix| -> Result<SpinqStage> {
        Ok(SpinqStage { label: label.to_owned(), ideal_a: ideal.marginal_a()?, noisy_a: noisy.marginal_a()?, ideal, noisy })
    };
    Ok(SpinqDemo {
        eta,
        depolarizing,
        stages: [
            stage("EPR pair", epr.clone(), noisy.without_operation.clone())?,
            stage("EPR pair + X on qubit 1", ideal.post_state.clone(), noisy.with_operation.clone())?,
        ],
        delta_ab_ideal: ideal.delta_ab,
        delta_ab_noisy: noisy.delta_ab,
        delta_a_noisy: noisy.delta_a,
        noisy_verdict: noisy.verdict,
    })
}
