//! Bipartite density-matrix toolkit for the quantum-house effect.
//!
//! - [`linalg`]: dense complex matrices, partial traces, local channels, trace distance.
//! - [`states`]: the named states and ensembles used throughout, plus pseudo-pure mixing.
//! - [`discord`]: zero-discord test with witnessing basis.
//! - [`qhouse`]: classification of states by quantum-house achievability and witnesses.
//! - [`game`]: the quantum-house game with exact and Monte-Carlo scoring.
//! - [`golden`]: the worked examples as executable checks.
//! - [`demo`]: ideal and pseudo-pure matrices for the EPR + X pipeline.

pub mod demo;
pub mod discord;
pub mod error;
pub mod game;
pub mod golden;
pub mod linalg;
pub mod qhouse;
pub mod states;

pub use error::{Error, Result};

/// Default tolerance for floating-point equality tests.
pub const DEFAULT_TOL: f64 = 1e-9;
