//! The guessing game built on the quantum-house effect.
//!
//! Charlie prepares a hidden two-party system, Alice may peek before Charlie
//! checks her half, Charlie secretly flips a fair coin to decide whether to
//! apply a pre-agreed operation on Alice's half, and Alice guesses, either
//! alone (100 points) or after a joint measurement with Bob (90 points).
//! Being caught tampering scores −∞.

mod exact;
mod flavor;
mod qubit;
mod score;
mod session;
mod simulate;
mod strategy;

pub use exact::{
    alice_view_distribution, catalog_analysis, decision_branches, exact_report, expected_score_exact, joint_branches,
    plan_value, Branch, CatalogReport, ExactReport, MeasurementPlan, PlanValue,
};
pub use flavor::{Flavor, FlavorKind, PreparedItem};
pub use qubit::{Axis, PauliState, Prob};
pub use score::ExtendedScore;
pub use session::{
    new_session, score, Action, ActionKind, GameSession, JointRecord, MeasurementRecord, Observation, Phase, Role,
    Transcript,
};
pub use simulate::{play_round, simulate, simulate_with, SimulationStats};
pub use strategy::{AliceView, Choice, Strategy};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GameError {
    #[error("{role} cannot `{action}` during {phase}")]
    IllegalAction { role: Role, phase: Phase, action: ActionKind },
    #[error("round is not finished")]
    NotTerminal,
}
