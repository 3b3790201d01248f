//! Exact solution of small instances by retrograde analysis over count vectors.

mod adversary;
mod space;

pub use adversary::{exhaustive_adversary, AdversaryReport};
pub use space::{all_multisets, successors};

use crate::error::{Error, Result};
use crate::game::{meetings, spies_can_guard, GameSpec, Phase, Position, Side};
use crate::graph::Graph;
use crate::util::multiset_count;
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

pub const DEFAULT_STATE_CAP: u64 = 50_000_000;
pub const STATE_CAP_ENV: &str = "REVSPY_STATE_CAP";
pub const SOLVE_SCHEMA: u32 = 1;

/// State cap, overridable through `REVSPY_STATE_CAP`.
pub fn state_cap() -> u64 {
    std::env::var(STATE_CAP_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_STATE_CAP)
}

/// Number of positions (both movers) the solver would materialise.
pub fn estimate_states(n: usize, r: u32, s: u32) -> u64 {
    multiset_count(n as u64, r as u64)
        .saturating_mul(multiset_count(n as u64, s as u64))
        .saturating_mul(2)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport {
    pub schema_version: u32,
    pub vertices: usize,
    pub edges: usize,
    pub m: u32,
    pub r: u32,
    pub s: u32,
    pub winner: Side,
    pub states: u64,
    /// A winning placement for the revolutionaries, one vertex per piece.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rev_placement: Option<Vec<usize>>,
    /// Rounds the revolutionaries need from that placement against best defence.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rounds_to_win: Option<u32>,
}

struct Table {
    sets: Vec<Vec<u32>>,
    succ: Vec<Vec<u32>>,
}

impl Table {
    fn build(g: &Graph, k: u32) -> Table {
        let sets = all_multisets(g.n(), k);
        let index: HashMap<Vec<u32>, u32> = sets.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect();
        let succ = sets
            .iter()
            .map(|s| space::successors(g, s).into_iter().map(|t| index[&t]).collect())
            .collect();
        Table { sets, succ }
    }
}

const NOT_WON: u16 = u16::MAX;

/// Retrograde solver for one graph, meeting size and revolutionary count.
pub struct Solver {
    graph: Arc<Graph>,
    m: u32,
    r: u32,
    revs: Table,
    /// Meeting vertices of each revolutionary configuration, as bit flags.
    meet_bits: Vec<Vec<bool>>,
}

impl Solver {
    pub fn new(graph: Arc<Graph>, m: u32, r: u32) -> Result<Solver> {
        if m == 0 {
            return Err(Error::param("meeting size must be at least 1"));
        }
        let rev_sets = multiset_count(graph.n() as u64, r as u64);
        let cap = state_cap();
        if rev_sets.saturating_mul(2) > cap {
            return Err(Error::CapExceeded { what: "solver states".into(), size: rev_sets.saturating_mul(2), cap });
        }
        let revs = Table::build(&graph, r);
        let meet_bits = revs.sets.iter().map(|c| c.iter().map(|&x| x >= m).collect()).collect();
        Ok(Solver { graph, m, r, revs, meet_bits })
    }

    fn unguarded(&self, ri: usize, spies: &[u32]) -> bool {
        self.meet_bits[ri].iter().zip(spies).any(|(&meet, &c)| meet && c == 0)
    }

    /// Solves the game with `s` spies.
    pub fn solve(&self, s: u32) -> Result<SolveReport> {
        let cap = state_cap();
        let states = estimate_states(self.graph.n(), self.r, s);
        if states > cap {
            return Err(Error::CapExceeded { what: "solver states".into(), size: states, cap });
        }
        let spies = Table::build(&self.graph, s);
        let nr = self.revs.sets.len();
        let ns = spies.sets.len();
        let idx = |ri: usize, si: usize| ri * ns + si;

        let mut unguarded = vec![false; nr * ns];
        for ri in 0..nr {
            for si in 0..ns {
                unguarded[idx(ri, si)] = self.unguarded(ri, &spies.sets[si]);
            }
        }
        // rank = rounds still needed by the revolutionaries, NOT_WON otherwise
        let mut rank_rev = vec![NOT_WON; nr * ns];
        let mut rank_spy = vec![NOT_WON; nr * ns];
        let mut pending = vec![0u32; nr * ns];
        let mut queue: VecDeque<(bool, usize)> = VecDeque::new();
        for ri in 0..nr {
            for si in 0..ns {
                let safe = spies.succ[si].iter().filter(|&&t| !unguarded[idx(ri, t as usize)]).count();
                pending[idx(ri, si)] = safe as u32;
                if safe == 0 {
                    rank_spy[idx(ri, si)] = 1;
                    queue.push_back((false, idx(ri, si)));
                }
            }
        }
        while let Some((rev_turn, state)) = queue.pop_front() {
            let (ri, si) = (state / ns, state % ns);
            if rev_turn {
                // a spy move into this state is now losing for the spies
                let k = rank_rev[state];
                for &prev in &spies.succ[si] {
                    let p = idx(ri, prev as usize);
                    if rank_spy[p] == NOT_WON {
                        pending[p] -= 1;
                        if pending[p] == 0 {
                            rank_spy[p] = k + 1;
                            queue.push_back((false, p));
                        }
                    }
                }
            } else {
                let k = rank_spy[state];
                for &prev in &self.revs.succ[ri] {
                    let p = idx(prev as usize, si);
                    if rank_rev[p] == NOT_WON && !unguarded[p] {
                        rank_rev[p] = k;
                        queue.push_back((true, p));
                    }
                }
            }
        }

        let mut best: Option<(u32, usize)> = None;
        for ri in 0..nr {
            let mut worst = 0u32;
            let mut wins = true;
            for si in 0..ns {
                let st = idx(ri, si);
                if unguarded[st] {
                    continue;
                }
                if rank_rev[st] == NOT_WON {
                    wins = false;
                    break;
                }
                worst = worst.max(rank_rev[st] as u32);
            }
            if wins && best.is_none_or(|(b, _)| worst < b) {
                best = Some((worst, ri));
            }
        }
        Ok(SolveReport {
            schema_version: SOLVE_SCHEMA,
            vertices: self.graph.n(),
            edges: self.graph.edge_count(),
            m: self.m,
            r: self.r,
            s,
            winner: if best.is_some() { Side::Revolutionaries } else { Side::Spies },
            states: (nr * ns * 2) as u64,
            rev_placement: best.map(|(_, ri)| crate::game::vertices_from_counts(&self.revs.sets[ri])),
            rounds_to_win: best.map(|(k, _)| k),
        })
    }

    /// Smallest s for which the spies win, found by binary search on
    /// floor(r/m) ..= r - m + 1 (the spies' result is monotone in s).
    pub fn sigma(&self) -> Result<u32> {
        let (mut lo, mut hi) = (self.r / self.m, (self.r + 1).saturating_sub(self.m));
        if lo > hi {
            return Err(Error::pre("requires r >= m"));
        }
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if self.solve(mid)?.winner == Side::Spies {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        Ok(lo)
    }

    /// Same as `sigma` by scanning every candidate upward.
    pub fn sigma_linear(&self) -> Result<u32> {
        let (lo, hi) = (self.r / self.m, (self.r + 1).saturating_sub(self.m));
        for s in lo..=hi {
            if self.solve(s)?.winner == Side::Spies {
                return Ok(s);
            }
        }
        Ok(hi)
    }
}

pub fn solve(spec: &GameSpec) -> Result<SolveReport> {
    let cap = state_cap();
    let states = estimate_states(spec.n(), spec.r, spec.s);
    if states > cap {
        return Err(Error::CapExceeded { what: "solver states".into(), size: states, cap });
    }
    Solver::new(spec.graph.clone(), spec.m, spec.r)?.solve(spec.s)
}

pub fn winner(spec: &GameSpec) -> Result<Side> {
    solve(spec).map(|r| r.winner)
}

pub fn sigma_exact(g: Arc<Graph>, m: u32, r: u32) -> Result<u32> {
    GameSpec::new(g.clone(), m, r, 0)?;
    let cap = state_cap();
    let worst = estimate_states(g.n(), r, (r + 1).saturating_sub(m));
    if worst > cap {
        return Err(Error::CapExceeded { what: "solver states".into(), size: worst, cap });
    }
    Solver::new(g, m, r)?.sigma()
}

/// Whether the revolutionaries, to move from `pos`, can force an unguarded
/// meeting within `rounds` rounds. The last round is decided by a matching.
pub fn rev_can_win_within(spec: &GameSpec, pos: &Position, rounds: u32) -> Result<bool> {
    if pos.phase != Phase::RevToMove {
        return Err(Error::WrongPhase { expected: "RevToMove".into(), found: pos.phase.to_string() });
    }
    if pos.unguarded_meeting(spec.m).is_some() {
        return Ok(true);
    }
    let mut memo = HashMap::new();
    let mut budget = state_cap();
    win_within(spec, &pos.revs, &pos.spies, rounds, &mut memo, &mut budget)
}

/// A successor configuration from which the revolutionaries force an
/// unguarded meeting within `rounds` rounds, if any.
pub fn forcing_rev_move(spec: &GameSpec, pos: &Position, rounds: u32) -> Result<Option<Vec<u32>>> {
    if rounds == 0 {
        return Ok(None);
    }
    let g = &spec.graph;
    let mut memo = HashMap::new();
    let mut budget = state_cap();
    let mut candidates = successors(g, &pos.revs);
    candidates.sort_by_key(|c| std::cmp::Reverse(meetings(c, spec.m).len()));
    for next in candidates {
        if !spies_can_guard(g, spec.m, &next, &pos.spies) {
            return Ok(Some(next));
        }
        if rounds == 1 {
            continue;
        }
        let mut all = true;
        for reply in successors(g, &pos.spies) {
            if crate::game::unguarded_meeting(&next, &reply, spec.m).is_some() {
                continue;
            }
            if !win_within(spec, &next, &reply, rounds - 1, &mut memo, &mut budget)? {
                all = false;
                break;
            }
        }
        if all {
            return Ok(Some(next));
        }
    }
    Ok(None)
}

type Memo = HashMap<(Vec<u32>, Vec<u32>, u32), bool>;

fn win_within(spec: &GameSpec, revs: &[u32], spies: &[u32], k: u32, memo: &mut Memo, budget: &mut u64) -> Result<bool> {
    if k == 0 {
        return Ok(false);
    }
    let key = (revs.to_vec(), spies.to_vec(), k);
    if let Some(&v) = memo.get(&key) {
        return Ok(v);
    }
    if *budget == 0 {
        return Err(Error::CapExceeded { what: "bounded search".into(), size: state_cap(), cap: state_cap() });
    }
    *budget -= 1;
    let g = &spec.graph;
    let mut candidates = successors(g, revs);
    // try configurations with more meetings first
    candidates.sort_by_key(|c| std::cmp::Reverse(meetings(c, spec.m).len()));
    let mut result = false;
    for next in &candidates {
        if !spies_can_guard(g, spec.m, next, spies) {
            result = true;
            break;
        }
        if k == 1 {
            continue;
        }
        let mut all = true;
        for reply in successors(g, spies) {
            if crate::game::unguarded_meeting(next, &reply, spec.m).is_some() {
                continue;
            }
            if !win_within(spec, next, &reply, k - 1, memo, budget)? {
                all = false;
                break;
            }
        }
        if all {
            result = true;
            break;
        }
    }
    memo.insert(key, result);
    Ok(result)
}
