use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::flavor::Flavor;
use super::session::{new_session, Action, GameSession, Phase, Transcript};
use super::strategy::{AliceView, Choice, Strategy};
use super::GameError;
use crate::qhouse::trial_seed;

const ALICE_STREAM: u64 = 0xA11CE;

/// Drive one session to completion, with Charlie acting honestly.
pub fn play_round<R: Rng>(session: &mut GameSession, strategy: Strategy, alice_rng: &mut R) -> Result<(), GameError> {
    while !session.is_done() {
        let action = match session.phase() {
            Phase::Step2Precheck => match strategy.precheck_basis() {
                Some(basis) => Action::Measure { basis },
                None => Action::Ready,
            },
            Phase::Step2Check => Action::Check,
            Phase::Step3 => Action::Operate,
            Phase::Step4Examine if strategy.step4_basis().is_some() => Action::Measure { basis: strategy.step4_basis().unwrap() },
            Phase::Step4Examine | Phase::Step4Decide | Phase::Step5 => {
                let t = session.transcript();
                let view = AliceView { precheck: t.precheck, step4: t.step4, joint: t.joint };
                match strategy.choose(&view) {
                    Choice::AskBob { alice, bob } if session.phase() != Phase::Step5 => {
                        Action::AskBob { alice_basis: alice, bob_basis: bob }
                    }
                    Choice::Guess(performed) => Action::Guess { performed },
                    _ => Action::Guess { performed: alice_rng.random_bool(0.5) },
                }
            }
            Phase::Done => unreachable!(),
        };
        let role = session.phase().acting_role().expect("not done");
        session.advance(role, action)?;
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimulationStats {
    pub rounds: u64,
    pub seed: u64,
    pub caught: u64,
    pub catch_frequency: f64,
    pub catch_std_error: f64,
    pub finite_rounds: u64,
    pub mean_finite_score: f64,
    pub score_std: f64,
    pub std_error: f64,
    pub asked_bob: u64,
}

/// Run `rounds` independent seeded rounds.
pub fn simulate(flavor: &Flavor, strategy: Strategy, rounds: u64, seed: u64) -> SimulationStats {
    simulate_with(flavor, strategy, rounds, seed, |_| {})
}

/// As [`simulate`], handing each finished transcript to `sink`.
pub fn simulate_with(
    flavor: &Flavor,
    strategy: Strategy,
    rounds: u64,
    seed: u64,
    mut sink: impl FnMut(&Transcript),
) -> SimulationStats {
    let rounds = rounds.max(1);
    let mut alice_rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, ALICE_STREAM));
    let (mut caught, mut asked, mut n, mut mean, mut m2) = (0u64, 0u64, 0u64, 0.0f64, 0.0f64);
    for i in 0..rounds {
        let mut s = new_session(flavor.clone(), trial_seed(seed, i));
        play_round(&mut s, strategy, &mut alice_rng).expect("strategies only take legal actions");
        let t = s.transcript();
        sink(t);
        asked += t.asked_bob as u64;
        let score = t.score.expect("finished round is scored");
        if !score.is_finite() {
            caught += 1;
            continue;
        }
        n += 1;
        let x = score.to_f64();
        let d = x - mean;
        mean += d / n as f64;
        m2 += d * (x - mean);
    }
    let std = if n > 1 { (m2 / (n - 1) as f64).sqrt() } else { 0.0 };
    let f = caught as f64 / rounds as f64;
    SimulationStats {
        rounds,
        seed,
        caught,
        catch_frequency: f,
        catch_std_error: (f * (1.0 - f) / rounds as f64).sqrt(),
        finite_rounds: n,
        mean_finite_score: mean,
        score_std: std,
        std_error: if n > 0 { std / (n as f64).sqrt() } else { 0.0 },
        asked_bob: asked,
    }
}
