//! In-process session store with per-session locking and an optional
//! append-only journal.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, Write};
use std::path::Path;
use std::sync::{Arc, Mutex};
use std::time::{SystemTime, UNIX_EPOCH};

use qhouse_core::game::{new_session, Action, Flavor, FlavorKind, GameSession, Phase, Role, Transcript};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::action::ClientAction;
use crate::view::{build_view, ViewModel};
use crate::ApiError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tokens {
    pub alice: String,
    pub bob: String,
    pub charlie: String,
}

impl Tokens {
    fn generate() -> Self {
        let t = || format!("{:032x}", rand::random::<u128>());
        Tokens { alice: t(), bob: t(), charlie: t() }
    }

    pub fn role_of(&self, token: &str) -> Option<Role> {
        [(&self.alice, Role::Alice), (&self.bob, Role::Bob), (&self.charlie, Role::Charlie)]
            .into_iter()
            .find(|(t, _)| t.as_str() == token)
            .map(|(_, r)| r)
    }
}

fn now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

pub struct SessionRecord {
    pub id: String,
    pub flavor: FlavorKind,
    /// Root seed; round seeds are drawn from a private stream keyed by it.
    pub seed: u64,
    pub tokens: Tokens,
    pub round: u64,
    pub session: GameSession,
    pub history: Vec<Transcript>,
    pub created_at: u64,
    pub updated_at: u64,
    round_seeds: ChaCha8Rng,
}

impl SessionRecord {
    fn new(id: String, flavor: FlavorKind, seed: u64, tokens: Tokens) -> Self {
        let mut round_seeds = ChaCha8Rng::seed_from_u64(seed);
        let session = new_session(Flavor::new(flavor), round_seeds.next_u64());
        let t = now();
        let mut rec = SessionRecord {
            id,
            flavor,
            seed,
            tokens,
            round: 1,
            session,
            history: Vec::new(),
            created_at: t,
            updated_at: t,
            round_seeds,
        };
        rec.run_charlie();
        rec
    }

    /// Charlie is simulated and acts as soon as it is his turn.
    fn run_charlie(&mut self) {
        while self.session.phase().acting_role() == Some(Role::Charlie) {
            let action = match self.session.phase() {
                Phase::Step2Check => Action::Check,
                _ => Action::Operate,
            };
            self.session.advance(Role::Charlie, action).expect("Charlie's scripted move is legal");
        }
        if self.session.is_done() && self.history.len() < self.round as usize {
            self.history.push(self.session.transcript().clone());
        }
    }

    pub fn legal_actions(&self, role: Role) -> Vec<String> {
        let mut acts: Vec<String> = self.session.legal_actions(role).iter().map(|k| k.to_string()).collect();
        if role == Role::Alice && self.session.is_done() {
            acts.push("next_round".into());
        }
        acts
    }

    pub fn apply(&mut self, role: Role, action: ClientAction) -> Result<(), ApiError> {
        match action.into_game_action() {
            None => {
                if role != Role::Alice || !self.session.is_done() {
                    return Err(ApiError::IllegalAction(format!("{role} cannot start the next round now")));
                }
                self.round += 1;
                self.session = new_session(Flavor::new(self.flavor), self.round_seeds.next_u64());
            }
            Some(a) => {
                self.session.advance(role, a).map_err(|e| ApiError::IllegalAction(e.to_string()))?;
            }
        }
        self.run_charlie();
        self.updated_at = now();
        Ok(())
    }

    pub fn view(&self, role: Role) -> ViewModel {
        build_view(self, role)
    }

    pub fn transcripts_jsonl(&self) -> String {
        self.history.iter().map(|t| t.to_json_line() + "\n").collect()
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "snake_case")]
enum JournalEntry {
    Create { id: String, flavor: FlavorKind, seed: u64, tokens: Tokens },
    Action { id: String, role: Role, action: ClientAction },
}

#[derive(Default)]
pub struct SessionStore {
    sessions: Mutex<HashMap<String, Arc<Mutex<SessionRecord>>>>,
    journal: Option<Mutex<File>>,
}

impl SessionStore {
    pub fn new() -> Self {
        Self::default()
    }

    /// Store that appends every event to `path`, after replaying what is already there.
    pub fn with_journal(path: &Path) -> std::io::Result<Self> {
        let store = if path.exists() {
            let f = File::open(path)?;
            Self::replay(std::io::BufReader::new(f))?
        } else {
            Self::new()
        };
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        Ok(SessionStore { journal: Some(Mutex::new(file)), ..store })
    }

    /// Rebuild sessions from journal lines.
    pub fn replay(reader: impl BufRead) -> std::io::Result<Self> {
        let store = Self::new();
        for line in reader.lines() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let entry: JournalEntry =
                serde_json::from_str(&line).map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e))?;
            match entry {
                JournalEntry::Create { id, flavor, seed, tokens } => store.insert(SessionRecord::new(id, flavor, seed, tokens)),
                JournalEntry::Action { id, role, action } => {
                    if let Ok(rec) = store.get(&id) {
                        let _ = rec.lock().expect("session lock").apply(role, action);
                    }
                }
            }
        }
        Ok(store)
    }

    fn insert(&self, rec: SessionRecord) {
        self.sessions.lock().expect("store lock").insert(rec.id.clone(), Arc::new(Mutex::new(rec)));
    }

    fn log(&self, entry: &JournalEntry) -> Result<(), ApiError> {
        if let Some(j) = &self.journal {
            let mut f = j.lock().expect("journal lock");
            let line = serde_json::to_string(entry).expect("journal entries serialize");
            writeln!(f, "{line}").map_err(|e| ApiError::Internal(e.to_string()))?;
        }
        Ok(())
    }

    pub fn create(&self, flavor: FlavorKind, seed: Option<u64>) -> Result<(String, Tokens), ApiError> {
        let id = format!("{:016x}", rand::random::<u64>());
        let seed = seed.unwrap_or_else(rand::random);
        let tokens = Tokens::generate();
        self.log(&JournalEntry::Create { id: id.clone(), flavor, seed, tokens: tokens.clone() })?;
        self.insert(SessionRecord::new(id.clone(), flavor, seed, tokens.clone()));
        Ok((id, tokens))
    }

    pub fn get(&self, id: &str) -> Result<Arc<Mutex<SessionRecord>>, ApiError> {
        self.sessions.lock().expect("store lock").get(id).cloned().ok_or(ApiError::UnknownSession)
    }

    pub fn ids(&self) -> Vec<String> {
        let mut v: Vec<String> = self.sessions.lock().expect("store lock").keys().cloned().collect();
        v.sort();
        v
    }

    /// Resolve the token, apply the action under the session lock, and journal it.
    pub fn act(&self, id: &str, token: &str, action: ClientAction) -> Result<ViewModel, ApiError> {
        let rec = self.get(id)?;
        let mut rec = rec.lock().expect("session lock");
        let role = rec.tokens.role_of(token).ok_or(ApiError::Forbidden)?;
        rec.apply(role, action.clone())?;
        self.log(&JournalEntry::Action { id: id.to_owned(), role, action })?;
        Ok(rec.view(role))
    }

    pub fn view(&self, id: &str, token: &str) -> Result<ViewModel, ApiError> {
        let rec = self.get(id)?;
        let rec = rec.lock().expect("session lock");
        let role = rec.tokens.role_of(token).ok_or(ApiError::Forbidden)?;
        Ok(rec.view(role))
    }

    pub fn transcripts(&self, id: &str, token: &str) -> Result<String, ApiError> {
        let rec = self.get(id)?;
        let rec = rec.lock().expect("session lock");
        rec.tokens.role_of(token).ok_or(ApiError::Forbidden)?;
        Ok(rec.transcripts_jsonl())
    }
}
