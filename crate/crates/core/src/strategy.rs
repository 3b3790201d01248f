//! Strategy interfaces shared by the referee, the adversary search and the service.

use crate::error::Result;
use crate::game::{GameSpec, MoveSet, Position};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Seeded generator handed to strategies by the referee.
pub type GameRng = ChaCha8Rng;

/// Result of a strategy self-check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Audit {
    pub check: String,
    pub ok: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Audit {
    pub fn new(check: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Audit { check: check.into(), ok, detail: detail.into() }
    }
}

/// What the spies see when it is their turn.
#[derive(Debug, Clone, Copy)]
pub struct SpyTurn<'a> {
    /// Position at the start of the round.
    pub start: &'a Position,
    pub rev_move: &'a MoveSet,
    /// Position after the revolutionaries moved.
    pub current: &'a Position,
}

pub trait SpyStrategy: Send {
    fn id(&self) -> &'static str;

    /// Spy counts per vertex, given the revolutionaries' placement.
    fn place(&mut self, spec: &GameSpec, revs: &[u32], rng: &mut GameRng) -> Result<Vec<u32>>;

    fn respond(&mut self, spec: &GameSpec, turn: &SpyTurn<'_>, rng: &mut GameRng) -> Result<MoveSet>;

    /// Self-checks on the position reached after this strategy's move.
    fn audit(&mut self, _spec: &GameSpec, _pos: &Position) -> Vec<Audit> {
        Vec::new()
    }

    fn clone_box(&self) -> Box<dyn SpyStrategy>;
}

pub trait RevStrategy: Send {
    fn id(&self) -> &'static str;

    fn place(&mut self, spec: &GameSpec, rng: &mut GameRng) -> Result<Vec<u32>>;

    /// Called with the revolutionaries to move.
    fn respond(&mut self, spec: &GameSpec, pos: &Position, rng: &mut GameRng) -> Result<MoveSet>;

    fn clone_box(&self) -> Box<dyn RevStrategy>;
}

impl Clone for Box<dyn SpyStrategy> {
    fn clone(&self) -> Self {
        self.clone_box()
    }
}

impl Clone for Box<dyn RevStrategy> {
    fn clone(&self) -> Self {
        self.clone_box()
    }
}
