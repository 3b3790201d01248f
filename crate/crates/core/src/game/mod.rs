//! Rules of the game: positions, legal moves and the win condition.

mod play;
mod scripted;
mod swarm;

pub use play::{play, Outcome, RoundRecord, Transcript, TRANSCRIPT_SCHEMA};
pub use scripted::{ScriptedRev, ScriptedSpy, SCRIPTED_ID};
pub use swarm::{swarm_move, swarm_move_unchecked, swarm_threat};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::kernels::{max_matching, BipartiteInstance};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GameSpec {
    pub graph: Arc<Graph>,
    pub m: u32,
    pub r: u32,
    pub s: u32,
    /// Check for an unguarded meeting right after the spies are placed.
    #[serde(default = "yes")]
    pub initial_check: bool,
}

fn yes() -> bool {
    true
}

impl GameSpec {
    /// Validates |V| >= r - m + 1 >= floor(r/m) >= 1.
    pub fn new(graph: Arc<Graph>, m: u32, r: u32, s: u32) -> Result<Self> {
        let spec = GameSpec::relaxed(graph, m, r, s)?;
        let n = spec.graph.n() as u64;
        let (m64, r64) = (m as u64, r as u64);
        if r64 < m64 || n < r64 - m64 + 1 || r64 / m64 == 0 {
            return Err(Error::pre(format!(
                "standing assumption fails: |V| = {n}, m = {m}, r = {r}"
            )));
        }
        Ok(spec)
    }

    /// Skips the standing assumptions; only requires m >= 1.
    pub fn relaxed(graph: Arc<Graph>, m: u32, r: u32, s: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::param("meeting size must be at least 1"));
        }
        Ok(GameSpec { graph, m, r, s, initial_check: true })
    }

    pub fn with_spies(&self, s: u32) -> Self {
        GameSpec { s, ..self.clone() }
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn trivial_lower(&self) -> u32 {
        self.r / self.m
    }

    pub fn trivial_upper(&self) -> u32 {
        (self.r + 1).saturating_sub(self.m)
    }

    /// Default move horizon 4 |V| r.
    pub fn default_horizon(&self) -> u32 {
        (4 * self.n() as u64 * self.r.max(1) as u64).min(u32::MAX as u64) as u32
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Revolutionaries,
    Spies,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Revolutionaries => "revolutionaries",
            Side::Spies => "spies",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    RevPlacement,
    SpyPlacement,
    RevToMove,
    SpyToMove,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// One entry of a move set on the wire.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flow {
    pub from: usize,
    pub to: usize,
    pub count: u32,
}

/// Pieces moving from one vertex to another; unlisted pieces stay put.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "Vec<Flow>", into = "Vec<Flow>")]
pub struct MoveSet {
    flows: BTreeMap<(usize, usize), u32>,
}

impl MoveSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `count` pieces moving `from -> to`; self-moves and zero counts are dropped.
    pub fn add(&mut self, from: usize, to: usize, count: u32) {
        if from != to && count > 0 {
            *self.flows.entry((from, to)).or_default() += count;
        }
    }

    pub fn is_empty(&self) -> bool {
        self.flows.is_empty()
    }

    pub fn flows(&self) -> impl Iterator<Item = Flow> + '_ {
        self.flows.iter().map(|(&(from, to), &count)| Flow { from, to, count })
    }

    pub fn to_flows(&self) -> Vec<Flow> {
        self.flows().collect()
    }

    pub fn outflow(&self, v: usize) -> u32 {
        self.flows.range((v, 0)..=(v, usize::MAX)).map(|(_, c)| c).sum()
    }

    pub fn total_moving(&self) -> u32 {
        self.flows.values().sum()
    }

    /// Checks adjacency and piece availability against `counts`.
    pub fn check(&self, g: &Graph, counts: &[u32]) -> Result<()> {
        let mut out = vec![0u32; g.n()];
        for f in self.flows() {
            let bad = |reason: &str| Error::IllegalMove { from: f.from, to: f.to, count: f.count, reason: reason.into() };
            if f.from >= g.n() || f.to >= g.n() {
                return Err(bad("vertex out of range"));
            }
            if !g.has_edge(f.from, f.to) {
                return Err(bad("not adjacent"));
            }
            out[f.from] += f.count;
            if out[f.from] > counts[f.from] {
                return Err(bad("more pieces than present"));
            }
        }
        Ok(())
    }

    /// Applies to a count vector without checking.
    pub fn apply_to(&self, counts: &[u32]) -> Vec<u32> {
        let mut next = counts.to_vec();
        for f in self.flows() {
            next[f.from] -= f.count;
            next[f.to] += f.count;
        }
        next
    }
}

impl From<Vec<Flow>> for MoveSet {
    fn from(flows: Vec<Flow>) -> Self {
        let mut ms = MoveSet::new();
        for f in flows {
            ms.add(f.from, f.to, f.count);
        }
        ms
    }
}

impl From<MoveSet> for Vec<Flow> {
    fn from(ms: MoveSet) -> Self {
        ms.to_flows()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Position {
    pub revs: Vec<u32>,
    pub spies: Vec<u32>,
    pub phase: Phase,
    /// Completed movement rounds.
    pub round: u32,
}

impl Position {
    pub fn new(n: usize) -> Self {
        Position { revs: vec![0; n], spies: vec![0; n], phase: Phase::RevPlacement, round: 0 }
    }

    /// A position after both placements, revolutionaries to move.
    pub fn placed(revs: Vec<u32>, spies: Vec<u32>) -> Self {
        Position { revs, spies, phase: Phase::RevToMove, round: 0 }
    }

    fn expect(&self, phase: Phase) -> Result<()> {
        if self.phase != phase {
            return Err(Error::WrongPhase { expected: phase.to_string(), found: self.phase.to_string() });
        }
        Ok(())
    }

    pub fn place_revs(&mut self, spec: &GameSpec, counts: &[u32]) -> Result<()> {
        self.expect(Phase::RevPlacement)?;
        check_placement(spec.n(), counts, spec.r)?;
        self.revs = counts.to_vec();
        self.phase = Phase::SpyPlacement;
        Ok(())
    }

    pub fn place_spies(&mut self, spec: &GameSpec, counts: &[u32]) -> Result<()> {
        self.expect(Phase::SpyPlacement)?;
        check_placement(spec.n(), counts, spec.s)?;
        self.spies = counts.to_vec();
        self.phase = Phase::RevToMove;
        Ok(())
    }

    pub fn apply_rev_move(&mut self, spec: &GameSpec, moves: &MoveSet) -> Result<()> {
        self.expect(Phase::RevToMove)?;
        moves.check(&spec.graph, &self.revs)?;
        self.revs = moves.apply_to(&self.revs);
        self.phase = Phase::SpyToMove;
        Ok(())
    }

    pub fn apply_spy_move(&mut self, spec: &GameSpec, moves: &MoveSet) -> Result<()> {
        self.expect(Phase::SpyToMove)?;
        moves.check(&spec.graph, &self.spies)?;
        self.spies = moves.apply_to(&self.spies);
        self.phase = Phase::RevToMove;
        self.round += 1;
        Ok(())
    }

    /// Lowest-index vertex holding at least m revolutionaries and no spy.
    pub fn unguarded_meeting(&self, m: u32) -> Option<usize> {
        unguarded_meeting(&self.revs, &self.spies, m)
    }

    pub fn meetings(&self, m: u32) -> Vec<usize> {
        meetings(&self.revs, m)
    }
}

fn check_placement(n: usize, counts: &[u32], expected: u32) -> Result<()> {
    if counts.len() != n {
        return Err(Error::param(format!("placement has {} entries, graph has {n} vertices", counts.len())));
    }
    let total: u64 = counts.iter().map(|&c| c as u64).sum();
    if total != expected as u64 {
        return Err(Error::param(format!("placement holds {total} pieces, expected {expected}")));
    }
    Ok(())
}

pub fn meetings(revs: &[u32], m: u32) -> Vec<usize> {
    (0..revs.len()).filter(|&v| revs[v] >= m).collect()
}

pub fn unguarded_meeting(revs: &[u32], spies: &[u32], m: u32) -> Option<usize> {
    (0..revs.len()).find(|&v| revs[v] >= m && spies[v] == 0)
}

/// Count vector from a list of vertices, one entry per piece.
pub fn counts_from_vertices(n: usize, vertices: &[usize]) -> Result<Vec<u32>> {
    let mut counts = vec![0u32; n];
    for &v in vertices {
        if v >= n {
            return Err(Error::param(format!("vertex {v} out of range")));
        }
        counts[v] += 1;
    }
    Ok(counts)
}

/// One vertex per piece, in increasing order.
pub fn vertices_from_counts(counts: &[u32]) -> Vec<usize> {
    counts.iter().enumerate().flat_map(|(v, &c)| std::iter::repeat_n(v, c as usize)).collect()
}

/// A move taking the pieces at `from` to the counts `to`, if one exists.
pub fn realize_move(g: &Graph, from: &[u32], to: &[u32]) -> Option<MoveSet> {
    let pieces = vertices_from_counts(from);
    let slots = vertices_from_counts(to);
    if pieces.len() != slots.len() {
        return None;
    }
    let mut inst = BipartiteInstance::new(pieces.len(), slots.len());
    for (i, &a) in pieces.iter().enumerate() {
        // staying put first keeps the move small
        for (j, _) in slots.iter().enumerate().filter(|(_, &b)| b == a) {
            inst.add_edge(i, j);
        }
        for (j, _) in slots.iter().enumerate().filter(|(_, &b)| g.has_edge(a, b)) {
            inst.add_edge(i, j);
        }
    }
    let matching = max_matching(&inst);
    if !matching.saturates_left() {
        return None;
    }
    let mut ms = MoveSet::new();
    for (i, j) in matching.pairs() {
        ms.add(pieces[i], slots[j], 1);
    }
    Some(ms)
}

/// Whether spies at `spies` can, in one move, put a distinct spy on every meeting of `revs`.
pub fn spies_can_guard(g: &Graph, m: u32, revs: &[u32], spies: &[u32]) -> bool {
    let meets = meetings(revs, m);
    let units = vertices_from_counts(spies);
    if meets.len() > units.len() {
        return false;
    }
    let mut inst = BipartiteInstance::new(meets.len(), units.len());
    for (i, &x) in meets.iter().enumerate() {
        for (j, &v) in units.iter().enumerate() {
            if g.in_closed(x, v) {
                inst.add_edge(i, j);
            }
        }
    }
    max_matching(&inst).saturates_left()
}
