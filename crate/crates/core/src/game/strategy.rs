use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::qubit::Axis;
use super::session::{JointRecord, MeasurementRecord};

/// Everything Alice has seen when she must decide.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AliceView {
    pub precheck: Option<MeasurementRecord>,
    pub step4: Option<MeasurementRecord>,
    pub joint: Option<JointRecord>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Choice {
    Guess(bool),
    /// Guess uniformly at random.
    CoinGuess,
    AskBob { alice: Axis, bob: Axis },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    RandomGuess,
    JoinBobComputational,
    Tamper(Axis),
    RestrictedBasisAttack,
    ClassicalLocalRead,
}

impl Strategy {
    pub fn catalog() -> Vec<Strategy> {
        let mut v = vec![Strategy::RandomGuess, Strategy::JoinBobComputational];
        v.extend(Axis::ALL.map(Strategy::Tamper));
        v.extend([Strategy::RestrictedBasisAttack, Strategy::ClassicalLocalRead]);
        v
    }

    fn read_axis(self) -> Option<Axis> {
        match self {
            Strategy::Tamper(a) => Some(a),
            Strategy::RestrictedBasisAttack | Strategy::ClassicalLocalRead => Some(Axis::Z),
            Strategy::RandomGuess | Strategy::JoinBobComputational => None,
        }
    }

    /// Basis Alice measures in before Charlie's check, if any.
    pub fn precheck_basis(self) -> Option<Axis> {
        self.read_axis()
    }

    /// Basis Alice measures in at Step 4, if any.
    pub fn step4_basis(self) -> Option<Axis> {
        self.read_axis()
    }

    pub fn choose(self, view: &AliceView) -> Choice {
        match self {
            Strategy::RandomGuess => Choice::CoinGuess,
            Strategy::JoinBobComputational => match view.joint {
                Some(j) => Choice::Guess(j.alice.outcome != j.bob.outcome),
                None => Choice::AskBob { alice: Axis::Z, bob: Axis::Z },
            },
            _ => match (view.precheck, view.step4) {
                (Some(before), Some(after)) => Choice::Guess(before.outcome != after.outcome),
                _ => Choice::CoinGuess,
            },
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::RandomGuess => f.write_str("random-guess"),
            Strategy::JoinBobComputational => f.write_str("join-bob"),
            Strategy::Tamper(a) => write!(f, "tamper:{a}"),
            Strategy::RestrictedBasisAttack => f.write_str("restricted-basis-attack"),
            Strategy::ClassicalLocalRead => f.write_str("classical-local-read"),
        }
    }
}

impl FromStr for Strategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let norm = s.trim().to_ascii_lowercase().replace('_', "-");
        if let Some(axis) = norm.strip_prefix("tamper") {
            let axis = axis.trim_start_matches([':', '-', '(']).trim_end_matches(')');
            return Ok(Strategy::Tamper(if axis.is_empty() { Axis::Z } else { axis.parse()? }));
        }
        match norm.as_str() {
            "random-guess" | "random" => Ok(Strategy::RandomGuess),
            "join-bob" | "join-bob-computational" => Ok(Strategy::JoinBobComputational),
            "restricted-basis-attack" => Ok(Strategy::RestrictedBasisAttack),
            "classical-local-read" => Ok(Strategy::ClassicalLocalRead),
            _ => Err(format!(
                "unknown strategy `{s}` (expected random-guess, join-bob, tamper:<z|x|y>, restricted-basis-attack, classical-local-read)"
            )),
        }
    }
}

impl Serialize for Strategy {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Strategy {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Strategy::catalog() {
            assert_eq!(s.to_string().parse::<Strategy>().unwrap(), s);
        }
        assert_eq!("TAMPER(computational)".parse::<Strategy>().unwrap(), Strategy::Tamper(Axis::Z));
        assert_eq!("JOIN_BOB_COMPUTATIONAL".parse::<Strategy>().unwrap(), Strategy::JoinBobComputational);
        assert!("cheat".parse::<Strategy>().is_err());
    }
}
