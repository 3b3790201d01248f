//! One game between a human client and a registered strategy.
//!
//! The AI side draws from its own seeded generator exactly as `play` would,
//! so a finished session transcript equals `play` run with the human moves
//! scripted.

use crate::api::ApiError;
use rand::SeedableRng;
use revspy::family::Family;
use revspy::game::{
    counts_from_vertices, vertices_from_counts, Flow, MoveSet, Outcome, Phase, Position, RoundRecord, Side,
    Transcript, SCRIPTED_ID, TRANSCRIPT_SCHEMA,
};
use revspy::{registry, Error, GameRng, GameSpec, RevStrategy, SpyStrategy, SpyTurn};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

pub const SESSION_SCHEMA: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NewSession {
    /// `family:params` graph spec.
    pub graph: String,
    pub m: u32,
    pub r: u32,
    pub s: u32,
    pub human: Side,
    /// Registry id of the strategy playing the other side.
    pub ai: String,
    #[serde(default)]
    pub seed: u64,
    /// Defaults to the engine horizon 4|V|r.
    #[serde(default)]
    pub horizon: Option<u32>,
}

/// Exactly one of the two fields, matching the phase.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HumanAction {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub placement: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub moves: Option<Vec<Flow>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AiReply {
    Placement(Vec<usize>),
    Moves(Vec<Flow>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    AwaitingHuman,
    Finished,
    Resigned,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SessionView {
    pub schema_version: u32,
    pub id: String,
    pub graph: String,
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub m: u32,
    pub r: u32,
    pub s: u32,
    pub human: Side,
    pub ai_strategy: String,
    pub seed: u64,
    pub horizon: u32,
    pub phase: Phase,
    pub round: u32,
    pub revs: Vec<u32>,
    pub spies: Vec<u32>,
    pub meetings: Vec<usize>,
    pub status: Status,
    pub to_move: Option<Side>,
    pub outcome: Option<Outcome>,
    pub winner: Option<Side>,
    pub transcript: Transcript,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StepResponse {
    pub schema_version: u32,
    pub state: SessionView,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ai_reply: Option<AiReply>,
}

enum Ai {
    Rev(Box<dyn RevStrategy>),
    Spy(Box<dyn SpyStrategy>),
}

pub struct Session {
    id: String,
    graph: String,
    spec: GameSpec,
    human: Side,
    ai: Ai,
    rng: GameRng,
    pos: Position,
    pending_rev: Option<MoveSet>,
    transcript: Transcript,
    status: Status,
}

fn other(side: Side) -> Side {
    match side {
        Side::Revolutionaries => Side::Spies,
        Side::Spies => Side::Revolutionaries,
    }
}

fn fault(round: u32, side: Side, e: &Error) -> Outcome {
    Outcome::Fault { round, side, code: e.code().into(), message: e.to_string() }
}

impl Session {
    pub fn new(id: String, req: &NewSession) -> Result<(Session, Option<AiReply>), ApiError> {
        let family: Family = req.graph.parse()?;
        let spec = GameSpec::new(Arc::new(family.build()?), req.m, req.r, req.s)?;
        let ai = match req.human {
            Side::Revolutionaries => Ai::Spy(registry::spy_strategy(&req.ai)?),
            Side::Spies => Ai::Rev(registry::rev_strategy(&req.ai, Some(&family))?),
        };
        let ai_id = match &ai {
            Ai::Rev(a) => a.id(),
            Ai::Spy(a) => a.id(),
        };
        let (rev_strategy, spy_strategy) = match req.human {
            Side::Revolutionaries => (SCRIPTED_ID, ai_id),
            Side::Spies => (ai_id, SCRIPTED_ID),
        };
        let horizon = req.horizon.unwrap_or_else(|| spec.default_horizon());
        let transcript = Transcript {
            schema_version: TRANSCRIPT_SCHEMA,
            graph: spec.graph.to_text(),
            m: spec.m,
            r: spec.r,
            s: spec.s,
            rev_strategy: rev_strategy.into(),
            spy_strategy: spy_strategy.into(),
            seed: req.seed,
            horizon,
            rev_placement: Vec::new(),
            spy_placement: Vec::new(),
            placement_audits: Vec::new(),
            rounds: Vec::new(),
            outcome: Outcome::SpiesSurvive { rounds: 0 },
        };
        let mut session = Session {
            id,
            graph: family.to_string(),
            pos: Position::new(spec.n()),
            spec,
            human: req.human,
            ai,
            rng: GameRng::seed_from_u64(req.seed),
            pending_rev: None,
            transcript,
            status: Status::AwaitingHuman,
        };
        let reply = match req.human {
            Side::Spies => session.ai_rev_place(),
            Side::Revolutionaries => None,
        };
        Ok((session, reply))
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn transcript(&self) -> &Transcript {
        &self.transcript
    }

    fn finish(&mut self, outcome: Outcome) {
        self.transcript.outcome = outcome;
        self.status = Status::Finished;
    }

    fn ai_rev_place(&mut self) -> Option<AiReply> {
        let Ai::Rev(ai) = &mut self.ai else { return None };
        let placed = ai.place(&self.spec, &mut self.rng).and_then(|c| self.pos.place_revs(&self.spec, &c));
        if let Err(e) = placed {
            self.finish(fault(0, Side::Revolutionaries, &e));
            return None;
        }
        self.transcript.rev_placement = vertices_from_counts(&self.pos.revs);
        Some(AiReply::Placement(self.transcript.rev_placement.clone()))
    }

    fn ai_rev_move(&mut self) -> Option<AiReply> {
        let Ai::Rev(ai) = &mut self.ai else { return None };
        let round = self.pos.round + 1;
        let mv = match ai.respond(&self.spec, &self.pos, &mut self.rng) {
            Ok(mv) => mv,
            Err(e) => {
                self.finish(fault(round, Side::Revolutionaries, &e));
                return None;
            }
        };
        if let Err(e) = self.pos.apply_rev_move(&self.spec, &mv) {
            self.finish(fault(round, Side::Revolutionaries, &e));
            return None;
        }
        let reply = AiReply::Moves(mv.to_flows());
        self.pending_rev = Some(mv);
        Some(reply)
    }

    /// Both sides placed: the initial meeting check and a zero horizon.
    fn after_placement(&mut self) {
        if self.spec.initial_check {
            if let Some(vertex) = self.pos.unguarded_meeting(self.spec.m) {
                return self.finish(Outcome::RevolutionariesWin { round: 0, vertex });
            }
        }
        if self.transcript.horizon == 0 {
            self.finish(Outcome::SpiesSurvive { rounds: 0 });
        }
    }

    fn end_of_round(&mut self, round: u32) {
        if let Some(vertex) = self.pos.unguarded_meeting(self.spec.m) {
            self.finish(Outcome::RevolutionariesWin { round, vertex });
        } else if round >= self.transcript.horizon {
            self.finish(Outcome::SpiesSurvive { rounds: self.transcript.horizon });
        }
    }

    pub fn act(&mut self, action: &HumanAction) -> Result<Option<AiReply>, ApiError> {
        if self.status != Status::AwaitingHuman {
            return Err(ApiError::new(409, "game_over", "the game has ended"));
        }
        let placing = matches!(self.pos.phase, Phase::RevPlacement | Phase::SpyPlacement);
        match (&action.placement, &action.moves) {
            (Some(p), None) if placing => self.human_place(p),
            (None, Some(f)) if !placing => self.human_move(f),
            (Some(_), Some(_)) | (None, None) => {
                Err(ApiError::new(400, "bad_request", "send exactly one of `placement` and `moves`"))
            }
            _ => Err(Error::WrongPhase {
                expected: if placing { "placement" } else { "moves" }.into(),
                found: if placing { "moves" } else { "placement" }.into(),
            }
            .into()),
        }
    }

    fn human_place(&mut self, vertices: &[usize]) -> Result<Option<AiReply>, ApiError> {
        let counts = counts_from_vertices(self.spec.n(), vertices)?;
        let mut next = self.pos.clone();
        match self.human {
            Side::Revolutionaries => next.place_revs(&self.spec, &counts)?,
            Side::Spies => next.place_spies(&self.spec, &counts)?,
        }
        self.pos = next;
        match &mut self.ai {
            Ai::Spy(spy) => {
                self.transcript.rev_placement = vertices_from_counts(&self.pos.revs);
                let placed = spy.place(&self.spec, &self.pos.revs, &mut self.rng).and_then(|c| self.pos.place_spies(&self.spec, &c));
                if let Err(e) = placed {
                    self.finish(fault(0, Side::Spies, &e));
                    return Ok(None);
                }
                self.transcript.spy_placement = vertices_from_counts(&self.pos.spies);
                self.transcript.placement_audits = spy.audit(&self.spec, &self.pos);
                self.after_placement();
                Ok(Some(AiReply::Placement(self.transcript.spy_placement.clone())))
            }
            Ai::Rev(_) => {
                self.transcript.spy_placement = vertices_from_counts(&self.pos.spies);
                self.after_placement();
                if self.status != Status::AwaitingHuman {
                    return Ok(None);
                }
                Ok(self.ai_rev_move())
            }
        }
    }

    fn human_move(&mut self, flows: &[Flow]) -> Result<Option<AiReply>, ApiError> {
        let ms = MoveSet::from(flows.to_vec());
        let round = self.pos.round + 1;
        let mut next = self.pos.clone();
        match self.human {
            Side::Revolutionaries => next.apply_rev_move(&self.spec, &ms)?,
            Side::Spies => next.apply_spy_move(&self.spec, &ms)?,
        }
        let start = std::mem::replace(&mut self.pos, next);
        match &mut self.ai {
            Ai::Spy(spy) => {
                let turn = SpyTurn { start: &start, rev_move: &ms, current: &self.pos };
                let reply = match spy.respond(&self.spec, &turn, &mut self.rng) {
                    Ok(mv) => mv,
                    Err(e) => {
                        self.finish(fault(round, Side::Spies, &e));
                        return Ok(None);
                    }
                };
                if let Err(e) = self.pos.apply_spy_move(&self.spec, &reply) {
                    self.finish(fault(round, Side::Spies, &e));
                    return Ok(None);
                }
                let audits = spy.audit(&self.spec, &self.pos);
                let flows = reply.to_flows();
                self.transcript.rounds.push(RoundRecord { round, rev: ms, spy: reply, audits });
                self.end_of_round(round);
                Ok(Some(AiReply::Moves(flows)))
            }
            Ai::Rev(_) => {
                let rev = self.pending_rev.take().expect("revolutionaries moved this round");
                self.transcript.rounds.push(RoundRecord { round, rev, spy: ms, audits: Vec::new() });
                self.end_of_round(round);
                if self.status != Status::AwaitingHuman {
                    return Ok(None);
                }
                Ok(self.ai_rev_move())
            }
        }
    }

    pub fn resign(&mut self) -> Result<(), ApiError> {
        if self.status != Status::AwaitingHuman {
            return Err(ApiError::new(409, "game_over", "the game has ended"));
        }
        self.transcript.outcome = Outcome::SpiesSurvive { rounds: self.pos.round };
        self.status = Status::Resigned;
        Ok(())
    }

    pub fn view(&self) -> SessionView {
        let done = self.status != Status::AwaitingHuman;
        let winner = match (self.status, &self.transcript.outcome) {
            (Status::AwaitingHuman, _) => None,
            (Status::Resigned, _) => Some(other(self.human)),
            (_, Outcome::RevolutionariesWin { .. }) => Some(Side::Revolutionaries),
            (_, Outcome::SpiesSurvive { .. }) => Some(Side::Spies),
            (_, Outcome::Fault { side, .. }) => Some(other(*side)),
        };
        SessionView {
            schema_version: SESSION_SCHEMA,
            id: self.id.clone(),
            graph: self.graph.clone(),
            vertices: self.spec.n(),
            edges: self.spec.graph.edges(),
            m: self.spec.m,
            r: self.spec.r,
            s: self.spec.s,
            human: self.human,
            ai_strategy: match &self.ai {
                Ai::Rev(a) => a.id().into(),
                Ai::Spy(a) => a.id().into(),
            },
            seed: self.transcript.seed,
            horizon: self.transcript.horizon,
            phase: self.pos.phase,
            round: self.pos.round,
            revs: self.pos.revs.clone(),
            spies: self.pos.spies.clone(),
            meetings: self.pos.meetings(self.spec.m),
            status: self.status,
            to_move: (!done).then_some(self.human),
            outcome: done.then(|| self.transcript.outcome.clone()),
            winner,
            transcript: self.transcript.clone(),
        }
    }
}
