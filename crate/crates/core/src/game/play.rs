use super::{counts_from_vertices, vertices_from_counts, GameSpec, MoveSet, Position, Side};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::strategy::{Audit, GameRng, RevStrategy, SpyStrategy, SpyTurn};
use rand::SeedableRng;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

pub const TRANSCRIPT_SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Outcome {
    RevolutionariesWin { round: u32, vertex: usize },
    SpiesSurvive { rounds: u32 },
    Fault { round: u32, side: Side, code: String, message: String },
}

impl Outcome {
    pub fn revolutionaries_won(&self) -> bool {
        matches!(self, Outcome::RevolutionariesWin { .. })
    }

    pub fn spies_survived(&self) -> bool {
        matches!(self, Outcome::SpiesSurvive { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundRecord {
    pub round: u32,
    pub rev: MoveSet,
    pub spy: MoveSet,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub audits: Vec<Audit>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub schema_version: u32,
    /// Graph in its text form.
    pub graph: String,
    pub m: u32,
    pub r: u32,
    pub s: u32,
    pub rev_strategy: String,
    pub spy_strategy: String,
    pub seed: u64,
    pub horizon: u32,
    pub rev_placement: Vec<usize>,
    pub spy_placement: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub placement_audits: Vec<Audit>,
    pub rounds: Vec<RoundRecord>,
    pub outcome: Outcome,
}

impl Transcript {
    pub fn spec(&self) -> Result<GameSpec> {
        let g = Graph::from_text(&self.graph)?;
        GameSpec::relaxed(Arc::new(g), self.m, self.r, self.s)
    }

    /// Every failed audit with the round it was raised in (0 for placement).
    pub fn audit_failures(&self) -> Vec<(u32, Audit)> {
        let placement = self.placement_audits.iter().filter(|a| !a.ok).map(|a| (0, a.clone()));
        let rounds = self.rounds.iter().flat_map(|r| r.audits.iter().filter(|a| !a.ok).map(move |a| (r.round, a.clone())));
        placement.chain(rounds).collect()
    }

    pub fn audit_count(&self) -> usize {
        self.placement_audits.len() + self.rounds.iter().map(|r| r.audits.len()).sum::<usize>()
    }

    /// Re-applies every recorded move and recomputes the outcome.
    pub fn replay(&self) -> Result<(Position, Outcome)> {
        let spec = self.spec()?;
        let n = spec.n();
        let mut pos = Position::new(n);
        if self.rev_placement.is_empty() && self.r > 0 {
            return Ok((pos, self.outcome.clone()));
        }
        pos.place_revs(&spec, &counts_from_vertices(n, &self.rev_placement)?)?;
        if self.spy_placement.is_empty() && self.s > 0 {
            return Ok((pos, self.outcome.clone()));
        }
        pos.place_spies(&spec, &counts_from_vertices(n, &self.spy_placement)?)?;
        if let Some(vertex) = pos.unguarded_meeting(spec.m) {
            return Ok((pos, Outcome::RevolutionariesWin { round: 0, vertex }));
        }
        for rec in &self.rounds {
            pos.apply_rev_move(&spec, &rec.rev)?;
            pos.apply_spy_move(&spec, &rec.spy)?;
            if let Some(vertex) = pos.unguarded_meeting(spec.m) {
                return Ok((pos, Outcome::RevolutionariesWin { round: rec.round, vertex }));
            }
        }
        let outcome = match &self.outcome {
            Outcome::Fault { .. } => self.outcome.clone(),
            _ => Outcome::SpiesSurvive { rounds: self.rounds.len() as u32 },
        };
        Ok((pos, outcome))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("transcript serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), message: e.to_string() })
    }
}

fn fault(round: u32, side: Side, e: &Error) -> Outcome {
    Outcome::Fault { round, side, code: e.code().into(), message: e.to_string() }
}

/// Plays one game to a win or `horizon` completed rounds.
pub fn play(
    spec: &GameSpec,
    rev: &mut dyn RevStrategy,
    spy: &mut dyn SpyStrategy,
    horizon: u32,
    seed: u64,
) -> Transcript {
    let mut rng = GameRng::seed_from_u64(seed);
    let mut t = Transcript {
        schema_version: TRANSCRIPT_SCHEMA,
        graph: spec.graph.to_text(),
        m: spec.m,
        r: spec.r,
        s: spec.s,
        rev_strategy: rev.id().into(),
        spy_strategy: spy.id().into(),
        seed,
        horizon,
        rev_placement: Vec::new(),
        spy_placement: Vec::new(),
        placement_audits: Vec::new(),
        rounds: Vec::new(),
        outcome: Outcome::SpiesSurvive { rounds: 0 },
    };
    t.outcome = run(spec, rev, spy, horizon, &mut rng, &mut t);
    t
}

fn run(
    spec: &GameSpec,
    rev: &mut dyn RevStrategy,
    spy: &mut dyn SpyStrategy,
    horizon: u32,
    rng: &mut GameRng,
    t: &mut Transcript,
) -> Outcome {
    let mut pos = Position::new(spec.n());
    let placed = rev.place(spec, rng).and_then(|c| pos.place_revs(spec, &c));
    if let Err(e) = placed {
        return fault(0, Side::Revolutionaries, &e);
    }
    t.rev_placement = vertices_from_counts(&pos.revs);
    let placed = spy.place(spec, &pos.revs, rng).and_then(|c| pos.place_spies(spec, &c));
    if let Err(e) = placed {
        return fault(0, Side::Spies, &e);
    }
    t.spy_placement = vertices_from_counts(&pos.spies);
    t.placement_audits = spy.audit(spec, &pos);
    if spec.initial_check {
        if let Some(vertex) = pos.unguarded_meeting(spec.m) {
            return Outcome::RevolutionariesWin { round: 0, vertex };
        }
    }
    for round in 1..=horizon {
        let start = pos.clone();
        let rev_move = match rev.respond(spec, &pos, rng) {
            Ok(mv) => mv,
            Err(e) => return fault(round, Side::Revolutionaries, &e),
        };
        if let Err(e) = pos.apply_rev_move(spec, &rev_move) {
            return fault(round, Side::Revolutionaries, &e);
        }
        let turn = SpyTurn { start: &start, rev_move: &rev_move, current: &pos };
        let spy_move = match spy.respond(spec, &turn, rng) {
            Ok(mv) => mv,
            Err(e) => return fault(round, Side::Spies, &e),
        };
        if let Err(e) = pos.apply_spy_move(spec, &spy_move) {
            return fault(round, Side::Spies, &e);
        }
        let audits = spy.audit(spec, &pos);
        t.rounds.push(RoundRecord { round, rev: rev_move, spy: spy_move, audits });
        if let Some(vertex) = pos.unguarded_meeting(spec.m) {
            return Outcome::RevolutionariesWin { round, vertex };
        }
    }
    Outcome::SpiesSurvive { rounds: horizon }
}
