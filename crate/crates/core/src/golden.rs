//! The nine worked examples, each recomputed from the library and compared
//! against hand-written expected matrices.

use serde::{Deserialize, Serialize};

use crate::discord::{is_zero_discord, measurement_perturbation, DISCORD_TOL};
use crate::linalg::{apply_local, gates, trace_distance, ComplexMatrix, DensityMatrix, Ket, LocalOperation};
use crate::qhouse::{apply_witness, construct_witness, QhWitness, WitnessKind};
use crate::states::{make, NamedState};
use crate::{Error, Result};

pub const GOLDEN_TOL: f64 = 1e-9;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GoldenResult {
    pub number: u8,
    pub title: String,
    pub passed: bool,
    /// Largest trace distance between a computed and an expected state.
    pub max_distance: f64,
    pub detail: String,
}

fn ket(entries: &[(usize, f64)]) -> Ket {
    let mut v = vec![0.0; 4];
    for &(i, x) in entries {
        v[i] = x;
    }
    Ket::from_real(&v)
}

fn pure(k: Ket) -> DensityMatrix {
    DensityMatrix::from_ket(&k, vec![2, 2]).expect("unit vector")
}

/// Σ w_i |i⟩⟨i| over two-qubit basis indices.
fn diag(entries: &[(usize, f64)]) -> DensityMatrix {
    let mut d = vec![0.0; 4];
    for &(i, w) in entries {
        d[i] = w;
    }
    DensityMatrix::new(ComplexMatrix::diagonal(&d), vec![2, 2], GOLDEN_TOL).expect("valid diagonal")
}

fn half_mixed() -> DensityMatrix {
    DensityMatrix::maximally_mixed(vec![2])
}

struct Tally {
    max_distance: f64,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { max_distance: 0.0, failures: Vec::new() }
    }

    fn same(&mut self, what: &str, got: &DensityMatrix, want: &DensityMatrix) -> Result<()> {
        let d = trace_distance(got, want)?;
        self.max_distance = self.max_distance.max(d);
        if d > GOLDEN_TOL {
            self.failures.push(format!("{what}: distance {d:.3e}"));
        }
        Ok(())
    }

    fn differ(&mut self, what: &str, a: &DensityMatrix, b: &DensityMatrix) -> Result<()> {
        let d = trace_distance(a, b)?;
        if d <= GOLDEN_TOL {
            self.failures.push(format!("{what}: states unexpectedly equal"));
        }
        Ok(())
    }

    fn holds(&mut self, what: &str, ok: bool) {
        if !ok {
            self.failures.push(what.to_owned());
        }
    }
}

fn epr() -> DensityMatrix {
    make(&NamedState::Epr)
}

fn cc() -> DensityMatrix {
    make(&NamedState::ClassicalCorr)
}

fn z_measure() -> LocalOperation {
    LocalOperation::computational_measurement(2)
}

fn example_1(t: &mut Tally) -> Result<()> {
    let rho = epr();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    t.same("input", &rho, &pure(ket(&[(0, s), (3, s)])))?;
    let post = apply_local(&rho, &z_measure(), 0, GOLDEN_TOL)?;
    t.same("post-measurement", &post, &diag(&[(0, 0.5), (3, 0.5)]))?;
    t.differ("measurement changes the pair", &post, &rho)?;
    for axis in [gates::hadamard_basis(), gates::circular_basis()] {
        t.holds("other bases perturb too", measurement_perturbation(&rho, &axis, GOLDEN_TOL)? > 0.1);
    }
    Ok(())
}

fn example_2(t: &mut Tally) -> Result<()> {
    let rho = cc();
    t.same("input", &rho, &diag(&[(0, 0.5), (3, 0.5)]))?;
    let post = apply_local(&rho, &z_measure(), 0, GOLDEN_TOL)?;
    t.same("unchanged by measurement", &post, &rho)
}

fn example_3(t: &mut Tally) -> Result<()> {
    let rho = cc();
    let zero = Ket::basis(2, 0).projector();
    let one = Ket::basis(2, 1).projector();
    let decomposed = &zero.kron(&zero).scale_real(0.5) + &one.kron(&one).scale_real(0.5);
    t.same("decomposition", &rho, &DensityMatrix::new(decomposed, vec![2, 2], GOLDEN_TOL)?)?;
    let v = is_zero_discord(&rho, DISCORD_TOL, 0)?;
    t.holds("zero discord", v.zero_discord);
    if let Some(basis) = v.witness_basis {
        let basis_ok = (0..2).all(|i| {
            let c = basis.column(i);
            (c.0[0].norm() - 1.0).abs() < 1e-9 || (c.0[1].norm() - 1.0).abs() < 1e-9
        });
        t.holds("witness basis is {|0>, |1>}", basis_ok);
    } else {
        t.holds("witness basis present", false);
    }
    t.holds("eq1 state has zero discord", is_zero_discord(&make(&NamedState::Eq1), DISCORD_TOL, 0)?.zero_discord);
    Ok(())
}

fn example_4(t: &mut Tally) -> Result<()> {
    let v = is_zero_discord(&epr(), DISCORD_TOL, 0)?;
    t.holds("EPR pair has non-zero discord", !v.zero_discord && v.certificate.is_some());
    Ok(())
}

fn example_5(t: &mut Tally) -> Result<()> {
    let rho = epr();
    let post = apply_local(&rho, &z_measure(), 0, GOLDEN_TOL)?;
    t.same("joint state", &post, &diag(&[(0, 0.5), (3, 0.5)]))?;
    t.differ("joint state changes", &post, &rho)?;
    t.same("Alice's marginal", &post.marginal_a()?, &rho.marginal_a()?)?;
    t.same("marginal is I/2", &post.marginal_a()?, &half_mixed())
}

fn example_6(t: &mut Tally) -> Result<()> {
    let rho = epr();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let post = apply_local(&rho, &LocalOperation::unitary(gates::x()), 0, GOLDEN_TOL)?;
    t.same("joint state", &post, &pure(ket(&[(2, s), (1, s)])))?;
    t.same("Alice's marginal", &post.marginal_a()?, &half_mixed())
}

fn example_7(t: &mut Tally) -> Result<()> {
    let rho = cc();
    let post = apply_local(&rho, &LocalOperation::unitary(gates::x()), 0, GOLDEN_TOL)?;
    t.same("joint state", &post, &diag(&[(2, 0.5), (1, 0.5)]))?;
    t.differ("joint state changes", &post, &rho)?;
    t.same("Alice's marginal", &post.marginal_a()?, &half_mixed())
}

fn example_8(t: &mut Tally) -> Result<()> {
    let rho = cc();
    let w = construct_witness(&rho, Some(WitnessKind::SwapFresh), GOLDEN_TOL)?
        .ok_or_else(|| Error::WrongClass("expected a witness".into()))?;
    t.holds("fresh swap chosen", w.kind == WitnessKind::SwapFresh);
    let post = apply_witness(&rho, &w, GOLDEN_TOL)?;
    t.same("joint state", &post, &half_mixed().tensor(&half_mixed()))?;
    t.same("Alice's marginal", &post.marginal_a()?, &half_mixed())
}

fn example_9(t: &mut Tally) -> Result<()> {
    let rho = half_mixed().tensor(&half_mixed());
    let w = construct_witness(&rho, None, GOLDEN_TOL)?.ok_or_else(|| Error::WrongClass("expected a witness".into()))?;
    t.holds("correlated ancilla chosen", w.kind == WitnessKind::SwapCorrelatedAncilla);
    let sigma = diag(&[(0, 0.5), (3, 0.5)]);
    if let Some(side) = &w.side_info {
        t.same("side information", side, &sigma)?;
    }
    let post = apply_witness(&rho, &w, GOLDEN_TOL)?;
    t.same("joint state", &post, &sigma)?;
    t.same("Alice's marginal", &post.marginal_a()?, &half_mixed())?;
    // The same swap run with σ supplied by hand.
    let manual = QhWitness { side_info: Some(sigma.clone()), ..w };
    t.same("hand-built side information", &apply_witness(&rho, &manual, GOLDEN_TOL)?, &sigma)
}

type ExampleFn = fn(&mut Tally) -> Result<()>;

const EXAMPLES: [(&str, ExampleFn); 9] = [
    ("measuring Alice's half of an EPR pair perturbs it", example_1),
    ("measuring a classically correlated pair leaves it unchanged", example_2),
    ("classically correlated pair has zero discord", example_3),
    ("EPR pair has non-zero discord", example_4),
    ("secret measurement on EPR keeps Alice's marginal", example_5),
    ("secret X on EPR keeps Alice's marginal", example_6),
    ("X on a zero-discord state changes the pair", example_7),
    ("swap with a fresh I/2 gives I/2 x I/2", example_8),
    ("swap with a correlated ancilla gives sigma", example_9),
];

pub fn verify_examples() -> Vec<GoldenResult> {
    EXAMPLES
        .iter()
        .enumerate()
        .map(|(i, (title, run))| {
            let mut t = Tally::new();
            if let Err(e) = run(&mut t) {
                t.failures.push(format!("error: {e}"));
            }
            GoldenResult {
                number: i as u8 + 1,
                title: (*title).to_owned(),
                passed: t.failures.is_empty(),
                max_distance: t.max_distance,
                detail: t.failures.join("; "),
            }
        })
        .collect()
}
