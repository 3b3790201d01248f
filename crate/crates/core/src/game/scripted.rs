//! Strategies that replay a fixed list of moves. The session service records
//! human play under the id `human`; replaying it through `play` with these
//! must give back the same transcript.

use super::{counts_from_vertices, GameSpec, MoveSet, Position};
use crate::error::{Error, Result};
use crate::strategy::{GameRng, RevStrategy, SpyStrategy, SpyTurn};
use std::collections::VecDeque;

pub const SCRIPTED_ID: &str = "human";

#[derive(Debug, Clone, Default)]
pub struct ScriptedRev {
    pub placement: Vec<usize>,
    pub moves: VecDeque<MoveSet>,
}

#[derive(Debug, Clone, Default)]
pub struct ScriptedSpy {
    pub placement: Vec<usize>,
    pub moves: VecDeque<MoveSet>,
}

fn next(moves: &mut VecDeque<MoveSet>) -> Result<MoveSet> {
    moves.pop_front().ok_or_else(|| Error::pre("script exhausted"))
}

impl ScriptedRev {
    pub fn new(placement: Vec<usize>, moves: impl IntoIterator<Item = MoveSet>) -> Self {
        ScriptedRev { placement, moves: moves.into_iter().collect() }
    }
}

impl ScriptedSpy {
    pub fn new(placement: Vec<usize>, moves: impl IntoIterator<Item = MoveSet>) -> Self {
        ScriptedSpy { placement, moves: moves.into_iter().collect() }
    }
}

impl RevStrategy for ScriptedRev {
    fn id(&self) -> &'static str {
        SCRIPTED_ID
    }

    fn place(&mut self, spec: &GameSpec, _rng: &mut GameRng) -> Result<Vec<u32>> {
        counts_from_vertices(spec.n(), &self.placement)
    }

    fn respond(&mut self, _spec: &GameSpec, _pos: &Position, _rng: &mut GameRng) -> Result<MoveSet> {
        next(&mut self.moves)
    }

    fn clone_box(&self) -> Box<dyn RevStrategy> {
        Box::new(self.clone())
    }
}

impl SpyStrategy for ScriptedSpy {
    fn id(&self) -> &'static str {
        SCRIPTED_ID
    }

    fn place(&mut self, spec: &GameSpec, _revs: &[u32], _rng: &mut GameRng) -> Result<Vec<u32>> {
        counts_from_vertices(spec.n(), &self.placement)
    }

    fn respond(&mut self, _spec: &GameSpec, _turn: &SpyTurn<'_>, _rng: &mut GameRng) -> Result<MoveSet> {
        next(&mut self.moves)
    }

    fn clone_box(&self) -> Box<dyn SpyStrategy> {
        Box::new(self.clone())
    }
}
