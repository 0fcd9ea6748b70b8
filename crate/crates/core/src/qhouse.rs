//! Quantum-house effect: an operation in Alice's lab that changes ρ_AB while
//! leaving ρ_A untouched.
//!
//! States split into three classes. Non-product states always admit the effect
//! (swap `A` for a fresh copy of ρ_A, or measure in ρ_A's eigenbasis when the
//! state has discord). Product states with both factors mixed admit it only with
//! side information correlated with `B`. Product states with a pure factor never
//! admit it.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::discord::{is_zero_discord, DISCORD_TOL};
use crate::error::{Error, Result};
use crate::linalg::channel::{apply_kraus_block, swap_gate};
use crate::linalg::random::{random_density, random_unitary};
use crate::linalg::{apply_local, trace_distance, ComplexMatrix, DensityMatrix, LocalOperation};
use crate::states::pseudo_mix;

/// Largest-eigenvalue threshold above which a marginal counts as pure: λ_max ≥ 1 − PURITY_TOL.
pub const PURITY_TOL: f64 = 1e-8;

/// Minimum joint change a constructed witness must produce.
pub const MIN_JOINT_CHANGE: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum QhClass {
    NonProduct,
    ProductBothMixed,
    ProductPureFactor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum WitnessKind {
    EigenbasisMeasurement,
    SwapFresh,
    SwapCorrelatedAncilla,
    ExplicitUnitary,
}

/// A concrete local operation exhibiting the effect.
///
/// For [`WitnessKind::SwapCorrelatedAncilla`] the operation is a
/// [`LocalOperation::Dilated`] swap with Alice's ancilla `A'`, and `side_info`
/// holds the joint state σ_{A'B'} whose `B'` half is Bob's system.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QhWitness {
    pub kind: WitnessKind,
    pub operation: LocalOperation,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub side_info: Option<DensityMatrix>,
}

impl QhWitness {
    pub fn explicit_unitary(u: ComplexMatrix) -> Self {
        QhWitness { kind: WitnessKind::ExplicitUnitary, operation: LocalOperation::unitary(u), side_info: None }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WitnessCheck {
    pub delta_ab: f64,
    pub delta_a: f64,
    pub delta_b: f64,
    pub post_state: DensityMatrix,
}

impl WitnessCheck {
    pub fn exhibits_effect(&self, tol_a: f64, min_ab: f64) -> bool {
        self.delta_a <= tol_a && self.delta_ab > min_ab
    }
}

/// Product test by trace distance to ρ_A ⊗ ρ_B, then purity of the marginals.
pub fn classify(rho: &DensityMatrix, tol: f64) -> Result<QhClass> {
    let a = rho.marginal_a()?;
    let b = rho.marginal_b()?;
    if trace_distance(rho, &a.tensor(&b))? > tol {
        return Ok(QhClass::NonProduct);
    }
    if is_pure(&a) || is_pure(&b) {
        Ok(QhClass::ProductPureFactor)
    } else {
        Ok(QhClass::ProductBothMixed)
    }
}

fn is_pure(rho: &DensityMatrix) -> bool {
    rho.spectrum().eigenvalues[0] >= 1.0 - PURITY_TOL
}

/// Builds a witness, or `None` when the state admits no quantum-house effect.
///
/// `prefer` selects among applicable kinds; an inapplicable preference falls
/// back to the default order (eigenbasis measurement, then fresh swap).
pub fn construct_witness(rho: &DensityMatrix, prefer: Option<WitnessKind>, tol: f64) -> Result<Option<QhWitness>> {
    let class = classify(rho, tol)?;
    let a = rho.marginal_a()?;
    match class {
        QhClass::ProductPureFactor => Ok(None),
        QhClass::ProductBothMixed => {
            let b = rho.marginal_b()?;
            Ok(Some(correlated_ancilla_witness(&a, &b)))
        }
        QhClass::NonProduct => {
            let swap = QhWitness {
                kind: WitnessKind::SwapFresh,
                operation: LocalOperation::Replace { state: a.clone() },
                side_info: None,
            };
            if prefer == Some(WitnessKind::SwapFresh) {
                return Ok(Some(swap));
            }
            let verdict = is_zero_discord(rho, DISCORD_TOL, 0)?;
            if !verdict.zero_discord {
                let basis = a.spectrum().eigenvectors;
                let measure = QhWitness {
                    kind: WitnessKind::EigenbasisMeasurement,
                    operation: LocalOperation::measure(basis),
                    side_info: None,
                };
                // Near the zero-discord set the measurement barely moves the state.
                if verify_witness(rho, &measure, tol)?.delta_ab > MIN_JOINT_CHANGE {
                    return Ok(Some(measure));
                }
            }
            Ok(Some(swap))
        }
    }
}

/// Comonotone coupling of two probability vectors sorted in descending order
/// (north-west corner rule). Returns the joint weights π[i][j].
pub fn comonotone_coupling(p: &[f64], q: &[f64]) -> Vec<Vec<f64>> {
    let mut pi = vec![vec![0.0; q.len()]; p.len()];
    let (mut i, mut j) = (0, 0);
    let (mut rp, mut rq) = (p.first().copied().unwrap_or(0.0), q.first().copied().unwrap_or(0.0));
    while i < p.len() && j < q.len() {
        let m = rp.min(rq);
        pi[i][j] += m;
        rp -= m;
        rq -= m;
        if rp <= rq {
            i += 1;
            rp = p.get(i).copied().unwrap_or(0.0);
        } else {
            j += 1;
            rq = q.get(j).copied().unwrap_or(0.0);
        }
    }
    pi
}

/// σ_{A'B'} = Σ π_ij |a_i⟩⟨a_i| ⊗ |b_j⟩⟨b_j| with π the comonotone coupling of the spectra.
pub fn comonotone_state(a: &DensityMatrix, b: &DensityMatrix) -> DensityMatrix {
    let ea = a.spectrum();
    let eb = b.spectrum();
    let p: Vec<f64> = ea.eigenvalues.iter().map(|x| x.max(0.0)).collect();
    let q: Vec<f64> = eb.eigenvalues.iter().map(|x| x.max(0.0)).collect();
    let pi = comonotone_coupling(&p, &q);
    let d = a.dim() * b.dim();
    let mut m = ComplexMatrix::zeros(d, d);
    for (i, row) in pi.iter().enumerate() {
        for (j, &w) in row.iter().enumerate() {
            if w > 0.0 {
                let proj = ea.eigenvector(i).kron(&eb.eigenvector(j)).projector();
                m = &m + &proj.scale_real(w);
            }
        }
    }
    DensityMatrix::new_unchecked(m, vec![a.dim(), b.dim()]).expect("shapes fixed")
}

fn correlated_ancilla_witness(a: &DensityMatrix, b: &DensityMatrix) -> QhWitness {
    let sigma = comonotone_state(a, b);
    QhWitness {
        kind: WitnessKind::SwapCorrelatedAncilla,
        operation: LocalOperation::Dilated { ancilla: a.clone(), unitary: swap_gate(a.dim()) },
        side_info: Some(sigma),
    }
}

/// Post-state of `rho` after the witness acts in Alice's lab.
pub fn apply_witness(rho: &DensityMatrix, w: &QhWitness, tol: f64) -> Result<DensityMatrix> {
    rho.require_bipartite()?;
    match &w.side_info {
        None => apply_local(rho, &w.operation, 0, tol),
        Some(sigma) => {
            let tri = side_info_register(rho, sigma, tol)?;
            let after = apply_on_a_and_ancilla(&tri, &w.operation, tol)?;
            after.partial_trace(&[0, 2])
        }
    }
}

/// The register (A, A', B) = ρ_A ⊗ σ_{A'B'} whose (A, B) marginal must equal `rho`.
fn side_info_register(rho: &DensityMatrix, sigma: &DensityMatrix, tol: f64) -> Result<DensityMatrix> {
    sigma.require_bipartite()?;
    let a = rho.marginal_a()?;
    let sb = sigma.marginal_b()?;
    if sb.dim() != rho.dims()[1] {
        return Err(Error::DimensionMismatch { expected: rho.dims()[1], actual: sb.dim() });
    }
    let distance = trace_distance(rho, &a.tensor(&sb))?;
    if distance > tol {
        return Err(Error::SideInfoInconsistent { distance });
    }
    Ok(a.tensor(sigma))
}

fn apply_on_a_and_ancilla(tri: &DensityMatrix, op: &LocalOperation, tol: f64) -> Result<DensityMatrix> {
    let LocalOperation::Dilated { unitary, .. } = op else {
        return Err(Error::Parse("side information requires a dilated operation".into()));
    };
    let block = tri.dims()[0] * tri.dims()[1];
    if unitary.rows() != block {
        return Err(Error::DimensionMismatch { expected: block, actual: unitary.rows() });
    }
    let defect = unitary.unitarity_defect();
    if defect > tol {
        return Err(Error::NotTracePreserving { defect });
    }
    apply_kraus_block(tri, std::slice::from_ref(unitary), 0, 2)
}

/// Joint, Alice-side and Bob-side trace-distance changes caused by the witness.
pub fn verify_witness(rho: &DensityMatrix, w: &QhWitness, tol: f64) -> Result<WitnessCheck> {
    let post = apply_witness(rho, w, tol)?;
    check_change(rho, post)
}

fn check_change(before: &DensityMatrix, after: DensityMatrix) -> Result<WitnessCheck> {
    Ok(WitnessCheck {
        delta_ab: trace_distance(before, &after)?,
        delta_a: trace_distance(&before.marginal_a()?, &after.marginal_a()?)?,
        delta_b: trace_distance(&before.marginal_b()?, &after.marginal_b()?)?,
        post_state: after,
    })
}

/// Outcome of randomly probing a pure-factor product state for the effect.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepReport {
    pub trials: usize,
    /// Channels with Δ_A ≤ `tol_a` and Δ_AB > `min_ab`; zero for every valid input.
    pub violations: usize,
    /// Channels that left ρ_A unchanged (Δ_A ≤ `tol_a`).
    pub marginal_preserving: usize,
    /// Largest Δ_AB among marginal-preserving channels.
    pub max_joint_change_when_preserving: f64,
    pub tol_a: f64,
    pub min_ab: f64,
}

/// Which family a sweep trial draws its channel from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ChannelFamily {
    RandomKraus,
    Ancilla,
    Stabilizing,
    StabilizingMixture,
}

/// Applies `trials` random channels on `A` (random Kraus rank 1..4, random
/// ancilla circuits, and channels built to fix ρ_A) and counts cases where
/// the joint state changes although ρ_A does not. Channels use no side
/// information correlated with `B`.
pub fn impossibility_sweep(rho: &DensityMatrix, trials: usize, seed: u64, tol: f64) -> Result<SweepReport> {
    let class = classify(rho, tol)?;
    if class != QhClass::ProductPureFactor {
        return Err(Error::WrongClass(format!("{class:?}")));
    }
    let a = rho.marginal_a()?;
    let tol_a = DISCORD_TOL;
    let min_ab = MIN_JOINT_CHANGE;
    let mut report = SweepReport {
        trials,
        violations: 0,
        marginal_preserving: 0,
        max_joint_change_when_preserving: 0.0,
        tol_a,
        min_ab,
    };
    let families = [
        ChannelFamily::RandomKraus,
        ChannelFamily::Ancilla,
        ChannelFamily::Stabilizing,
        ChannelFamily::StabilizingMixture,
    ];
    for t in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, t as u64));
        let family = families[t % families.len()];
        let op = random_channel(family, &a, &mut rng);
        let check = check_change(rho, apply_local(rho, &op, 0, 1e-8)?)?;
        if check.delta_a <= tol_a {
            report.marginal_preserving += 1;
            report.max_joint_change_when_preserving = report.max_joint_change_when_preserving.max(check.delta_ab);
            if check.delta_ab > min_ab {
                report.violations += 1;
            }
        }
    }
    Ok(report)
}

/// SplitMix64 step used to derive per-trial seeds from a root seed.
pub fn trial_seed(root: u64, index: u64) -> u64 {
    let mut z = root.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn random_channel(family: ChannelFamily, a: &DensityMatrix, rng: &mut ChaCha8Rng) -> LocalOperation {
    let d = a.dim();
    match family {
        ChannelFamily::RandomKraus => {
            let rank = rng.random_range(1..=4usize);
            // First d columns of a Haar unitary on d·rank form an isometry; its
            // d×d row blocks are a complete Kraus family.
            let v = random_unitary(d * rank, rng);
            let operators = (0..rank)
                .map(|k| ComplexMatrix::from_fn(d, d, |r, c| v[(k * d + r, c)]))
                .collect();
            LocalOperation::Kraus { operators }
        }
        ChannelFamily::Ancilla => {
            let da = rng.random_range(2..=3usize);
            LocalOperation::Dilated { ancilla: random_density(da, rng), unitary: random_unitary(d * da, rng) }
        }
        ChannelFamily::Stabilizing => LocalOperation::unitary(stabilizing_unitary(a, rng)),
        ChannelFamily::StabilizingMixture => {
            // Convex mixture of channels that each fix ρ_A.
            let eig = a.spectrum();
            let weights = crate::linalg::random::random_simplex(3, rng);
            let mut operators = vec![stabilizing_unitary(a, rng).scale_real(weights[0].sqrt())];
            for i in 0..d {
                operators.push(eig.eigenvector(i).projector().scale_real(weights[1].sqrt()));
            }
            let replace = LocalOperation::Replace { state: a.clone() }.kraus(1e-8).expect("valid state");
            operators.extend(replace.into_iter().map(|k| k.scale_real(weights[2].sqrt())));
            LocalOperation::Kraus { operators }
        }
    }
}

/// Random unitary diagonal in ρ_A's eigenbasis, hence commuting with ρ_A.
fn stabilizing_unitary(a: &DensityMatrix, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let v = a.spectrum().eigenvectors;
    let phases = ComplexMatrix::from_fn(a.dim(), a.dim(), |r, c| {
        if r == c {
            Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU))
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    &(&v * &phases) * &v.adjoint()
}

/// Preparation-level pseudo-pure mixing plus a depolarizing channel on `A`
/// after the operation slot.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    pub eta: f64,
    pub depolarizing: f64,
}

impl NoiseModel {
    pub const NOISELESS: NoiseModel = NoiseModel { eta: 1.0, depolarizing: 0.0 };

    fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.eta) {
            return Err(Error::OutOfRange(format!("eta = {}", self.eta)));
        }
        if !(0.0..=1.0).contains(&self.depolarizing) {
            return Err(Error::OutOfRange(format!("depolarizing strength = {}", self.depolarizing)));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    pub significant: f64,
    pub insignificant: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds { significant: 0.1, insignificant: 0.01 }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NoisyQheReport {
    pub delta_ab: f64,
    pub delta_a: f64,
    pub thresholds: Thresholds,
    pub verdict: bool,
    pub with_operation: DensityMatrix,
    pub without_operation: DensityMatrix,
}

fn depolarize_a(rho: &DensityMatrix, p: f64, tol: f64) -> Result<DensityMatrix> {
    if p == 0.0 {
        return Ok(rho.clone());
    }
    let flat = DensityMatrix::maximally_mixed(vec![rho.dims()[0]]);
    let replaced = apply_local(rho, &LocalOperation::Replace { state: flat }, 0, tol)?;
    replaced.mix(rho, p)
}

/// Compares the noisy branches with and without the witness.
pub fn noisy_metrics(
    rho: &DensityMatrix,
    w: &QhWitness,
    noise: NoiseModel,
    thresholds: Thresholds,
    tol: f64,
) -> Result<NoisyQheReport> {
    noise.validate()?;
    let (without, with) = match &w.side_info {
        None => {
            let prepared = pseudo_mix(rho, noise.eta)?;
            let moved = apply_local(&prepared, &w.operation, 0, tol)?;
            (prepared, moved)
        }
        Some(sigma) => {
            // Noise acts on the whole device register (A, A', B).
            let tri = pseudo_mix(&side_info_register(rho, sigma, tol)?, noise.eta)?;
            let moved = apply_on_a_and_ancilla(&tri, &w.operation, tol)?;
            (tri.partial_trace(&[0, 2])?, moved.partial_trace(&[0, 2])?)
        }
    };
    let without = depolarize_a(&without, noise.depolarizing, tol)?;
    let with = depolarize_a(&with, noise.depolarizing, tol)?;
    let delta_ab = trace_distance(&without, &with)?;
    let delta_a = trace_distance(&without.marginal_a()?, &with.marginal_a()?)?;
    Ok(NoisyQheReport {
        delta_ab,
        delta_a,
        thresholds,
        verdict: delta_ab >= thresholds.significant && delta_a <= thresholds.insignificant,
        with_operation: with,
        without_operation: without,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::gates;
    use crate::states::{make, parse_state_expr, NamedState};

    const TOL: f64 = 1e-9;

    fn x_witness() -> QhWitness {
        QhWitness::explicit_unitary(gates::x())
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify(&make(&NamedState::Eq1), TOL).unwrap(), QhClass::NonProduct);
        assert_eq!(classify(&make(&NamedState::MaxMix(vec![2, 2])), TOL).unwrap(), QhClass::ProductBothMixed);
        assert_eq!(classify(&parse_state_expr("basis-0*maxmix-2").unwrap(), TOL).unwrap(), QhClass::ProductPureFactor);
        assert_eq!(classify(&parse_state_expr("maxmix-2*basis-1").unwrap(), TOL).unwrap(), QhClass::ProductPureFactor);
        assert_eq!(classify(&make(&NamedState::Epr), TOL).unwrap(), QhClass::NonProduct);
    }

    #[test]
    fn classical_corr_gets_fresh_swap() {
        let rho = make(&NamedState::ClassicalCorr);
        let w = construct_witness(&rho, None, TOL).unwrap().unwrap();
        assert_eq!(w.kind, WitnessKind::SwapFresh);
        let LocalOperation::Replace { state } = &w.operation else { panic!("{w:?}") };
        assert!(trace_distance(state, &make(&NamedState::MaxMix(vec![2]))).unwrap() < 1e-15);
        let check = verify_witness(&rho, &w, TOL).unwrap();
        assert!(trace_distance(&check.post_state, &make(&NamedState::MaxMix(vec![2, 2]))).unwrap() < 1e-12);
        assert!(check.delta_a < 1e-12 && (check.delta_ab - 0.5).abs() < 1e-12);
    }

    #[test]
    fn epr_gets_eigenbasis_measurement() {
        let rho = make(&NamedState::Epr);
        let w = construct_witness(&rho, None, TOL).unwrap().unwrap();
        assert_eq!(w.kind, WitnessKind::EigenbasisMeasurement);
        let check = verify_witness(&rho, &w, TOL).unwrap();
        assert!((check.delta_ab - 0.5).abs() < 1e-12 && check.delta_a < 1e-12);
        let swap = construct_witness(&rho, Some(WitnessKind::SwapFresh), TOL).unwrap().unwrap();
        assert_eq!(swap.kind, WitnessKind::SwapFresh);
    }

    #[test]
    fn product_of_mixed_gets_correlated_ancilla() {
        let rho = make(&NamedState::MaxMix(vec![2, 2]));
        let w = construct_witness(&rho, None, TOL).unwrap().unwrap();
        assert_eq!(w.kind, WitnessKind::SwapCorrelatedAncilla);
        let sigma = w.side_info.clone().unwrap();
        assert!(trace_distance(&sigma, &make(&NamedState::ClassicalCorr)).unwrap() < 1e-12);
        let check = verify_witness(&rho, &w, TOL).unwrap();
        assert!(trace_distance(&check.post_state, &sigma).unwrap() < 1e-12);
        assert!(check.delta_a < 1e-12 && check.delta_b < 1e-12);
        assert!((check.delta_ab - 0.5).abs() < 1e-12);
    }

    #[test]
    fn side_info_must_match_bob() {
        let rho = make(&NamedState::MaxMix(vec![2, 2]));
        let mut w = construct_witness(&rho, None, TOL).unwrap().unwrap();
        w.side_info = Some(parse_state_expr("maxmix-2*basis-0").unwrap());
        assert!(matches!(verify_witness(&rho, &w, TOL), Err(Error::SideInfoInconsistent { .. })));
    }

    #[test]
    fn pure_factor_is_impossible() {
        let rho = parse_state_expr("basis-0*maxmix-2").unwrap();
        assert!(construct_witness(&rho, None, TOL).unwrap().is_none());
    }

    #[test]
    fn x_witness_values() {
        // EPR and X·EPR are orthogonal pure states.
        let c = verify_witness(&make(&NamedState::Epr), &x_witness(), TOL).unwrap();
        assert!((c.delta_ab - 1.0).abs() < 1e-12 && c.delta_a < 1e-12);
        let c = verify_witness(&make(&NamedState::ClassicalCorr), &x_witness(), TOL).unwrap();
        assert!((c.delta_ab - 1.0).abs() < 1e-12 && c.delta_a < 1e-12);
        let c = verify_witness(&make(&NamedState::Eq1), &x_witness(), TOL).unwrap();
        assert!((c.delta_ab - 1.0 / 3.0).abs() < 1e-12 && c.delta_a < 1e-12);
        assert!(trace_distance(&c.post_state, &make(&NamedState::Eq3)).unwrap() < 1e-15);
    }

    #[test]
    fn comonotone_coupling_marginals() {
        let pi = comonotone_coupling(&[0.5, 0.3, 0.2], &[0.6, 0.4]);
        let rows: Vec<f64> = pi.iter().map(|r| r.iter().sum()).collect();
        let cols: Vec<f64> = (0..2).map(|j| pi.iter().map(|r| r[j]).sum()).collect();
        for (g, w) in rows.iter().zip([0.5, 0.3, 0.2]) {
            assert!((g - w).abs() < 1e-15);
        }
        for (g, w) in cols.iter().zip([0.6, 0.4]) {
            assert!((g - w).abs() < 1e-15);
        }
        assert!((pi[0][0] - 0.5).abs() < 1e-15);
        assert!((pi[1][0] - 0.1).abs() < 1e-15);
        assert!((pi[1][1] - 0.2).abs() < 1e-15);
        assert!((pi[2][1] - 0.2).abs() < 1e-15);
    }

    #[test]
    fn sweep_rejects_wrong_class_and_reports_zero_violations() {
        assert!(matches!(impossibility_sweep(&make(&NamedState::Epr), 10, 0, TOL), Err(Error::WrongClass(_))));
        for expr in ["basis-0*maxmix-2", "maxmix-2*basis-1"] {
            let rho = parse_state_expr(expr).unwrap();
            let r = impossibility_sweep(&rho, 200, 42, TOL).unwrap();
            assert_eq!(r.violations, 0, "{expr}");
            assert!(r.marginal_preserving >= 100, "{expr}: {r:?}");
        }
    }

    #[test]
    fn identity_channel_changes_nothing() {
        let rho = parse_state_expr("basis-0*maxmix-2").unwrap();
        let c = verify_witness(&rho, &QhWitness::explicit_unitary(ComplexMatrix::identity(2)), TOL).unwrap();
        assert_eq!(c.delta_ab, 0.0);
    }

    #[test]
    fn noisy_metric_limits() {
        let epr = make(&NamedState::Epr);
        let r = noisy_metrics(&epr, &x_witness(), NoiseModel::NOISELESS, Thresholds::default(), TOL).unwrap();
        assert!((r.delta_ab - 1.0).abs() < 1e-12 && r.delta_a < 1e-12 && r.verdict);
        let eta = 1e-5;
        let r = noisy_metrics(&epr, &x_witness(), NoiseModel { eta, depolarizing: 0.0 }, Thresholds::default(), TOL).unwrap();
        assert!((r.delta_ab - eta).abs() < 1e-12);
        assert!(!r.verdict);
        let id = QhWitness::explicit_unitary(ComplexMatrix::identity(2));
        let r = noisy_metrics(&epr, &id, NoiseModel { eta: 0.3, depolarizing: 0.2 }, Thresholds::default(), TOL).unwrap();
        assert!(r.delta_ab < 1e-15);
        assert!(noisy_metrics(&epr, &id, NoiseModel { eta: 1.3, depolarizing: 0.0 }, Thresholds::default(), TOL).is_err());
        assert!(noisy_metrics(&epr, &id, NoiseModel { eta: 1.0, depolarizing: -0.1 }, Thresholds::default(), TOL).is_err());
    }

    #[test]
    fn noisy_correlated_ancilla() {
        let rho = make(&NamedState::MaxMix(vec![2, 2]));
        let w = construct_witness(&rho, None, TOL).unwrap().unwrap();
        let r = noisy_metrics(&rho, &w, NoiseModel { eta: 0.5, depolarizing: 0.0 }, Thresholds::default(), TOL).unwrap();
        assert!((r.delta_ab - 0.25).abs() < 1e-12);
        assert!(r.delta_a < 1e-12);
    }
}
