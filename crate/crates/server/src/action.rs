use qhouse_core::game::{Action, Axis};
use serde::{Deserialize, Serialize};

/// Actions accepted over the wire: the game's own moves plus `next_round`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ClientAction {
    Measure {
        basis: Axis,
    },
    Ready,
    Check,
    Operate,
    Guess {
        #[serde(alias = "op_performed")]
        performed: bool,
    },
    AskBob {
        #[serde(default = "z")]
        alice_basis: Axis,
        #[serde(default = "z")]
        bob_basis: Axis,
    },
    NextRound,
}

fn z() -> Axis {
    Axis::Z
}

impl ClientAction {
    pub fn into_game_action(self) -> Option<Action> {
        Some(match self {
            ClientAction::Measure { basis } => Action::Measure { basis },
            ClientAction::Ready => Action::Ready,
            ClientAction::Check => Action::Check,
            ClientAction::Operate => Action::Operate,
            ClientAction::Guess { performed } => Action::Guess { performed },
            ClientAction::AskBob { alice_basis, bob_basis } => Action::AskBob { alice_basis, bob_basis },
            ClientAction::NextRound => return None,
        })
    }

    /// Short string forms: `ready`, `ask_bob`, `next_round`, `measure:x`,
    /// `guess:op_performed`, `guess:op_not_performed`.
    pub fn parse_short(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let (verb, arg) = s.split_once(':').map(|(v, a)| (v.trim(), Some(a.trim()))).unwrap_or((s, None));
        let verb = verb.to_ascii_lowercase().replace('-', "_");
        match (verb.as_str(), arg) {
            ("ready", None) => Ok(ClientAction::Ready),
            ("check", None) => Ok(ClientAction::Check),
            ("operate", None) => Ok(ClientAction::Operate),
            ("next_round", None) => Ok(ClientAction::NextRound),
            ("ask_bob", None) => Ok(ClientAction::AskBob { alice_basis: Axis::Z, bob_basis: Axis::Z }),
            ("measure", Some(b)) => Ok(ClientAction::Measure { basis: b.parse()? }),
            ("guess", Some(g)) => match g.to_ascii_lowercase().replace('-', "_").as_str() {
                "op_performed" | "performed" | "true" | "yes" => Ok(ClientAction::Guess { performed: true }),
                "op_not_performed" | "not_performed" | "false" | "no" => Ok(ClientAction::Guess { performed: false }),
                _ => Err(format!("bad guess `{g}`")),
            },
            _ => Err(format!("unknown action `{s}`")),
        }
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, String> {
        match v {
            serde_json::Value::String(s) => Self::parse_short(s),
            other => serde_json::from_value(other.clone()).map_err(|e| e.to_string()),
        }
    }
}
