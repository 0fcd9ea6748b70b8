use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::qubit::{Axis, PauliState, Prob};
use crate::linalg::{gates, LocalOperation};
use crate::states::Ensemble;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FlavorKind {
    QuantumEq2,
    ClassicalCorrBits,
    RestrictedDevice,
}

impl FlavorKind {
    pub const ALL: [FlavorKind; 3] = [FlavorKind::QuantumEq2, FlavorKind::ClassicalCorrBits, FlavorKind::RestrictedDevice];

    pub fn as_str(self) -> &'static str {
        match self {
            FlavorKind::QuantumEq2 => "QUANTUM_EQ2",
            FlavorKind::ClassicalCorrBits => "CLASSICAL_CORR_BITS",
            FlavorKind::RestrictedDevice => "RESTRICTED_DEVICE",
        }
    }
}

impl fmt::Display for FlavorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FlavorKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        FlavorKind::ALL
            .into_iter()
            .find(|k| k.as_str() == norm)
            .ok_or_else(|| format!("unknown flavor `{s}` (expected one of QUANTUM_EQ2, CLASSICAL_CORR_BITS, RESTRICTED_DEVICE)"))
    }
}

/// One hidden preparation: Alice's and Bob's parts with its prior weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreparedItem {
    pub alice: PauliState,
    pub bob: PauliState,
    pub weight: Prob,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Flavor {
    kind: FlavorKind,
    items: Vec<PreparedItem>,
}

impl Flavor {
    pub fn new(kind: FlavorKind) -> Self {
        let z = |b| PauliState::new(Axis::Z, b);
        let item = |alice, bob, n, d| PreparedItem { alice, bob, weight: Prob::new(n, d) };
        let items = match kind {
            FlavorKind::QuantumEq2 => vec![
                item(z(0), z(0), 1, 6),
                item(z(1), z(1), 1, 6),
                item(PauliState::new(Axis::X, 0), z(0), 1, 6),
                item(PauliState::new(Axis::X, 1), z(0), 1, 6),
                item(PauliState::new(Axis::Y, 0), z(1), 1, 6),
                item(PauliState::new(Axis::Y, 1), z(1), 1, 6),
            ],
            FlavorKind::ClassicalCorrBits | FlavorKind::RestrictedDevice => vec![
                item(z(0), z(0), 1, 3),
                item(z(0), z(1), 1, 6),
                item(z(1), z(0), 1, 6),
                item(z(1), z(1), 1, 3),
            ],
        };
        Flavor { kind, items }
    }

    pub fn kind(&self) -> FlavorKind {
        self.kind
    }

    pub fn items(&self) -> &[PreparedItem] {
        &self.items
    }

    pub fn is_classical(&self) -> bool {
        self.kind == FlavorKind::ClassicalCorrBits
    }

    /// Bases Alice can meaningfully measure in. A classical bit has only one readout.
    pub fn allowed_axes(&self) -> &'static [Axis] {
        if self.is_classical() {
            &[Axis::Z]
        } else {
            &Axis::ALL
        }
    }

    /// Any requested basis reads the bit when the system is classical.
    pub fn effective_axis(&self, axis: Axis) -> Axis {
        if self.is_classical() {
            Axis::Z
        } else {
            axis
        }
    }

    pub fn pre_agreed_op(&self) -> LocalOperation {
        LocalOperation::unitary(gates::x())
    }

    pub fn apply_op(&self, alice: PauliState) -> PauliState {
        alice.after_x()
    }

    pub fn disclosure(&self) -> &'static str {
        match self.kind {
            FlavorKind::QuantumEq2 => {
                "AB is one of |00>, |11>, |+0>, |-0>, |+i 1>, |-i 1>, each with probability 1/6. The operation is X on A."
            }
            FlavorKind::ClassicalCorrBits => {
                "AB holds two classical bits: 00 and 11 with probability 1/3 each, 01 and 10 with 1/6 each. The operation flips A's bit."
            }
            FlavorKind::RestrictedDevice => {
                "Charlie's device only prepares computational basis states; the joint statistics are 00, 11 at 1/3 and 01, 10 at 1/6. The operation is X on A."
            }
        }
    }

    /// The preparation as a floating-point ensemble over two qubits.
    pub fn ensemble(&self) -> Ensemble {
        let items = self
            .items
            .iter()
            .map(|it| (it.weight.to_f64().unwrap_or(0.0), it.alice.ket().kron(&it.bob.ket())))
            .collect();
        Ensemble::new(items, vec![2, 2], 1e-12).expect("built-in ensembles are normalized")
    }
}

impl From<FlavorKind> for Flavor {
    fn from(kind: FlavorKind) -> Self {
        Flavor::new(kind)
    }
}
