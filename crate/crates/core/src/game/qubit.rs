//! Exact single-qubit states drawn from the three Pauli eigenbases.
//!
//! Every state in the game's preparation sets is an eigenstate of Z, X or Y,
//! and every measurement the catalog uses is in one of those bases, so outcome
//! probabilities are exactly 0, ½ or 1.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::linalg::{gates, ComplexMatrix, Ket};
use crate::states::NamedState;

pub type Prob = Ratio<i64>;

/// Measurement basis: computational (Z), Hadamard (X) or circular (Y).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    #[serde(alias = "computational")]
    Z,
    #[serde(alias = "hadamard")]
    X,
    #[serde(alias = "circular")]
    Y,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::Z, Axis::X, Axis::Y];

    /// Basis vectors as columns, outcome 0 first.
    pub fn basis(self) -> ComplexMatrix {
        match self {
            Axis::Z => ComplexMatrix::identity(2),
            Axis::X => gates::hadamard_basis(),
            Axis::Y => gates::circular_basis(),
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::Z => "z",
            Axis::X => "x",
            Axis::Y => "y",
        })
    }
}

impl FromStr for Axis {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "z" | "computational" => Ok(Axis::Z),
            "x" | "hadamard" => Ok(Axis::X),
            "y" | "circular" => Ok(Axis::Y),
            _ => Err(format!("unknown basis `{s}` (expected z|x|y)")),
        }
    }
}

/// Eigenstate of a Pauli axis; `bit` 0 is the +1 eigenvector (|0⟩, |+⟩, |+i⟩).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PauliState {
    pub axis: Axis,
    pub bit: u8,
}

impl PauliState {
    pub const fn new(axis: Axis, bit: u8) -> Self {
        PauliState { axis, bit }
    }

    /// Outcome distribution of measuring along `axis`.
    pub fn outcomes(self, axis: Axis) -> Vec<(u8, Prob)> {
        if axis == self.axis {
            vec![(self.bit, Prob::from_integer(1))]
        } else {
            vec![(0, Prob::new(1, 2)), (1, Prob::new(1, 2))]
        }
    }

    /// Image under Pauli X, up to global phase.
    pub fn after_x(self) -> Self {
        match self.axis {
            Axis::X => self,
            Axis::Z | Axis::Y => PauliState { axis: self.axis, bit: 1 - self.bit },
        }
    }

    pub fn named(self) -> NamedState {
        match (self.axis, self.bit) {
            (Axis::Z, b) => NamedState::Basis(vec![b]),
            (Axis::X, 0) => NamedState::Plus,
            (Axis::X, _) => NamedState::Minus,
            (Axis::Y, 0) => NamedState::PlusI,
            (Axis::Y, _) => NamedState::MinusI,
        }
    }

    pub fn ket(self) -> Ket {
        self.axis.basis().column(self.bit as usize)
    }
}

impl fmt::Display for PauliState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.named().id())
    }
}
