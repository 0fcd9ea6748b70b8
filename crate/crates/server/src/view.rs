//! Role-scoped views. Nothing that would let a player infer Charlie's coin or
//! the hidden preparation is serialized until the round is scored.

use qhouse_core::game::{ExtendedScore, FlavorKind, JointRecord, MeasurementRecord, Phase, Role, Transcript};
use serde::Serialize;
use serde_json::Value;

use crate::store::SessionRecord;

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum VisibleEvent {
    Precheck(MeasurementRecord),
    Check { caught: bool },
    /// Charlie's operation slot has passed; what he did stays hidden.
    OperationSlot,
    Examine(MeasurementRecord),
    Joint(JointRecord),
    Guess { op_performed: bool },
    Scored { score: ExtendedScore },
}

#[derive(Clone, Debug, Serialize)]
pub struct TallyView {
    pub rounds: usize,
    pub scores: Vec<ExtendedScore>,
    pub total: ExtendedScore,
    /// Mean score as a number, or `"-inf"`.
    pub mean: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct ViewModel {
    pub session_id: String,
    pub round: u64,
    pub flavor: FlavorKind,
    pub disclosure: &'static str,
    pub phase: Phase,
    pub role: Role,
    pub observations: Vec<VisibleEvent>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub caught: Option<bool>,
    pub legal_actions: Vec<String>,
    pub tally: TallyView,
    /// Full transcript, present only once the round is over.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reveal: Option<Transcript>,
}

fn tally(history: &[Transcript]) -> TallyView {
    let scores: Vec<ExtendedScore> = history.iter().filter_map(|t| t.score).collect();
    let n = scores.len() as i64;
    let weight = if n > 0 { qhouse_core::game::Prob::new(1, n) } else { qhouse_core::game::Prob::from_integer(0) };
    let mean = ExtendedScore::expectation(scores.iter().map(|s| (weight, s)));
    let total = ExtendedScore::expectation(scores.iter().map(|s| (qhouse_core::game::Prob::from_integer(1), s)));
    TallyView {
        rounds: scores.len(),
        total,
        mean: match mean {
            ExtendedScore::NegInfinity => Value::from("-inf"),
            m => serde_json::Number::from_f64(m.to_f64()).map(Value::Number).unwrap_or(Value::Null),
        },
        scores,
    }
}

fn past_check(phase: Phase) -> bool {
    !matches!(phase, Phase::Step2Precheck | Phase::Step2Check)
}

pub fn build_view(rec: &SessionRecord, role: Role) -> ViewModel {
    let t = rec.session.transcript();
    let phase = rec.session.phase();
    let done = phase == Phase::Done;
    let checked = past_check(phase);
    let mut obs = Vec::new();
    match role {
        Role::Alice => {
            if let Some(p) = t.precheck {
                obs.push(VisibleEvent::Precheck(p));
            }
            if checked {
                obs.push(VisibleEvent::Check { caught: t.caught });
            }
            if !t.caught && checked {
                obs.push(VisibleEvent::OperationSlot);
            }
            if let Some(m) = t.step4 {
                obs.push(VisibleEvent::Examine(m));
            }
            if let Some(j) = t.joint {
                obs.push(VisibleEvent::Joint(j));
            }
            if let Some(g) = t.guess {
                obs.push(VisibleEvent::Guess { op_performed: g });
            }
        }
        Role::Bob => {
            if let Some(j) = t.joint {
                obs.push(VisibleEvent::Joint(j));
            }
        }
        Role::Charlie => {
            if checked {
                obs.push(VisibleEvent::Check { caught: t.caught });
            }
        }
    }
    if let (true, Some(s)) = (done, t.score) {
        obs.push(VisibleEvent::Scored { score: s });
    }
    ViewModel {
        session_id: rec.id.clone(),
        round: rec.round,
        flavor: rec.flavor,
        disclosure: rec.session.flavor().disclosure(),
        phase,
        role,
        observations: obs,
        caught: checked.then_some(t.caught),
        legal_actions: rec.legal_actions(role),
        tally: tally(&rec.history),
        reveal: done.then(|| t.clone()),
    }
}
