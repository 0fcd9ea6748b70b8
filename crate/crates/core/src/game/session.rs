//! The round state machine: preparation, Alice's optional pre-check measurement,
//! Charlie's check, the secret operation, Alice's examination and the optional
//! joint measurement with Bob.

use std::fmt;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::flavor::{Flavor, FlavorKind};
use super::qubit::{Axis, PauliState, Prob};
use super::score::ExtendedScore;
use super::GameError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Alice,
    Bob,
    Charlie,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Alice => "alice",
            Role::Bob => "bob",
            Role::Charlie => "charlie",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    /// Alice may measure her system before Charlie checks it.
    Step2Precheck,
    Step2Check,
    Step3,
    /// Alice holds her system and may examine it once.
    Step4Examine,
    /// Alice has examined and must guess or call Bob.
    Step4Decide,
    Step5,
    Done,
}

impl Phase {
    pub fn acting_role(self) -> Option<Role> {
        match self {
            Phase::Step2Precheck | Phase::Step4Examine | Phase::Step4Decide | Phase::Step5 => Some(Role::Alice),
            Phase::Step2Check | Phase::Step3 => Some(Role::Charlie),
            Phase::Done => None,
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default();
        f.write_str(&s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Action {
    Measure { basis: Axis },
    Ready,
    Check,
    Operate,
    Guess { performed: bool },
    AskBob {
        #[serde(default = "default_axis")]
        alice_basis: Axis,
        #[serde(default = "default_axis")]
        bob_basis: Axis,
    },
}

fn default_axis() -> Axis {
    Axis::Z
}

impl Action {
    pub fn kind(&self) -> ActionKind {
        match self {
            Action::Measure { .. } => ActionKind::Measure,
            Action::Ready => ActionKind::Ready,
            Action::Check => ActionKind::Check,
            Action::Operate => ActionKind::Operate,
            Action::Guess { .. } => ActionKind::Guess,
            Action::AskBob { .. } => ActionKind::AskBob,
        }
    }

    pub fn ask_bob() -> Self {
        Action::AskBob { alice_basis: Axis::Z, bob_basis: Axis::Z }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ActionKind {
    Measure,
    Ready,
    Check,
    Operate,
    Guess,
    AskBob,
}

impl fmt::Display for ActionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ActionKind::Measure => "measure",
            ActionKind::Ready => "ready",
            ActionKind::Check => "check",
            ActionKind::Operate => "operate",
            ActionKind::Guess => "guess",
            ActionKind::AskBob => "ask_bob",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MeasurementRecord {
    pub basis: Axis,
    pub outcome: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct JointRecord {
    pub alice: MeasurementRecord,
    pub bob: MeasurementRecord,
}

/// What the acting role learns from an action.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Observation {
    Measured(MeasurementRecord),
    Ready,
    Checked { caught: bool },
    Operated { performed: bool },
    Joint(JointRecord),
    Scored { correct: bool, score: ExtendedScore },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Transcript {
    pub flavor: FlavorKind,
    pub seed: u64,
    /// Index of the hidden preparation in the flavor's item list.
    pub item: usize,
    pub prepared_alice: PauliState,
    pub prepared_bob: PauliState,
    pub precheck: Option<MeasurementRecord>,
    pub caught: bool,
    pub charlie_coin: Option<bool>,
    pub step4: Option<MeasurementRecord>,
    pub asked_bob: bool,
    pub joint: Option<JointRecord>,
    pub guess: Option<bool>,
    pub score: Option<ExtendedScore>,
}

impl Transcript {
    pub fn is_terminal(&self) -> bool {
        self.caught || (self.guess.is_some() && self.charlie_coin.is_some())
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("transcript serializes")
    }
}

/// Score of a finished round.
pub fn score(t: &Transcript) -> Result<ExtendedScore, GameError> {
    if t.caught {
        return Ok(ExtendedScore::NegInfinity);
    }
    match (t.guess, t.charlie_coin) {
        (Some(g), Some(coin)) if g == coin => Ok(ExtendedScore::points(if t.asked_bob { 90 } else { 100 })),
        (Some(_), Some(_)) => Ok(ExtendedScore::points(0)),
        _ => Err(GameError::NotTerminal),
    }
}

/// Draw an index with exactly the given rational probabilities.
pub(crate) fn sample_rational<R: Rng>(rng: &mut R, weights: &[Prob]) -> usize {
    let lcm = weights.iter().fold(1i64, |acc, w| acc.lcm(w.denom()));
    let mut u = rng.random_range(0..lcm);
    for (i, w) in weights.iter().enumerate() {
        let share = (w * lcm).to_integer();
        if u < share {
            return i;
        }
        u -= share;
    }
    weights.len() - 1
}

#[derive(Clone, Debug)]
pub struct GameSession {
    flavor: Flavor,
    rng: ChaCha8Rng,
    alice: PauliState,
    bob: PauliState,
    phase: Phase,
    transcript: Transcript,
}

pub fn new_session(flavor: Flavor, seed: u64) -> GameSession {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights: Vec<Prob> = flavor.items().iter().map(|i| i.weight).collect();
    let item = sample_rational(&mut rng, &weights);
    let prepared = flavor.items()[item];
    let transcript = Transcript {
        flavor: flavor.kind(),
        seed,
        item,
        prepared_alice: prepared.alice,
        prepared_bob: prepared.bob,
        precheck: None,
        caught: false,
        charlie_coin: None,
        step4: None,
        asked_bob: false,
        joint: None,
        guess: None,
        score: None,
    };
    GameSession { alice: prepared.alice, bob: prepared.bob, flavor, rng, phase: Phase::Step2Precheck, transcript }
}

impl GameSession {
    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn flavor(&self) -> &Flavor {
        &self.flavor
    }

    pub fn transcript(&self) -> &Transcript {
        &self.transcript
    }

    pub fn is_done(&self) -> bool {
        self.phase == Phase::Done
    }

    pub fn legal_actions(&self, role: Role) -> Vec<ActionKind> {
        if self.phase.acting_role() != Some(role) {
            return Vec::new();
        }
        match self.phase {
            Phase::Step2Precheck => vec![ActionKind::Measure, ActionKind::Ready],
            Phase::Step2Check => vec![ActionKind::Check],
            Phase::Step3 => vec![ActionKind::Operate],
            Phase::Step4Examine => vec![ActionKind::Measure, ActionKind::Guess, ActionKind::AskBob],
            Phase::Step4Decide => vec![ActionKind::Guess, ActionKind::AskBob],
            Phase::Step5 => vec![ActionKind::Guess],
            Phase::Done => Vec::new(),
        }
    }

    fn measure(&mut self, state: PauliState, axis: Axis) -> (MeasurementRecord, PauliState) {
        let axis = self.flavor.effective_axis(axis);
        let outcomes = state.outcomes(axis);
        let weights: Vec<Prob> = outcomes.iter().map(|o| o.1).collect();
        let bit = outcomes[sample_rational(&mut self.rng, &weights)].0;
        (MeasurementRecord { basis: axis, outcome: bit }, PauliState::new(axis, bit))
    }

    pub fn advance(&mut self, role: Role, action: Action) -> Result<Observation, GameError> {
        if !self.legal_actions(role).contains(&action.kind()) {
            return Err(GameError::IllegalAction { role, phase: self.phase, action: action.kind() });
        }
        let obs = match action {
            Action::Measure { basis } => {
                let (rec, post) = self.measure(self.alice, basis);
                self.alice = post;
                if self.phase == Phase::Step2Precheck {
                    self.transcript.precheck = Some(rec);
                    self.phase = Phase::Step2Check;
                } else {
                    self.transcript.step4 = Some(rec);
                    self.phase = Phase::Step4Decide;
                }
                Observation::Measured(rec)
            }
            Action::Ready => {
                self.phase = Phase::Step2Check;
                Observation::Ready
            }
            Action::Check => {
                let prepared = self.transcript.prepared_alice;
                let (rec, post) = self.measure(self.alice, prepared.axis);
                self.alice = post;
                let caught = rec.outcome != prepared.bit;
                self.transcript.caught = caught;
                if caught {
                    self.transcript.score = Some(ExtendedScore::NegInfinity);
                    self.phase = Phase::Done;
                } else {
                    self.phase = Phase::Step3;
                }
                Observation::Checked { caught }
            }
            Action::Operate => {
                let performed = self.rng.random_bool(0.5);
                if performed {
                    self.alice = self.flavor.apply_op(self.alice);
                }
                self.transcript.charlie_coin = Some(performed);
                self.phase = Phase::Step4Examine;
                Observation::Operated { performed }
            }
            Action::AskBob { alice_basis, bob_basis } => {
                let (a, post_a) = self.measure(self.alice, alice_basis);
                let (b, post_b) = self.measure(self.bob, bob_basis);
                self.alice = post_a;
                self.bob = post_b;
                let joint = JointRecord { alice: a, bob: b };
                self.transcript.asked_bob = true;
                self.transcript.joint = Some(joint);
                self.phase = Phase::Step5;
                Observation::Joint(joint)
            }
            Action::Guess { performed } => {
                self.transcript.guess = Some(performed);
                let s = score(&self.transcript)?;
                self.transcript.score = Some(s);
                self.phase = Phase::Done;
                Observation::Scored { correct: self.transcript.charlie_coin == Some(performed), score: s }
            }
        };
        Ok(obs)
    }
}
