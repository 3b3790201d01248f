//! Attacks from the weight-one vertices of a hypercube.

use super::{mismatch, single_threat};
use crate::error::{Error, Result};
use crate::game::{realize_move, GameSpec, MoveSet, Position};
use crate::graph::{greedy_code, Graph};
use crate::kernels::{avoiding_vertex_excluding, AvoidPhase};
use crate::solver::forcing_rev_move;
use crate::strategy::{GameRng, RevStrategy};
use crate::util::multiset_count;
use rand::Rng;
use serde::{Deserialize, Serialize};

fn cube_dim(g: &Graph, id: &str) -> Result<usize> {
    g.cube_dim().ok_or_else(|| mismatch(id, "graph is not a labelled hypercube"))
}

fn configurations(g: &Graph, counts: &[u32]) -> u64 {
    (0..g.n())
        .filter(|&v| counts[v] > 0)
        .map(|v| multiset_count(g.degree(v) as u64 + 1, counts[v] as u64))
        .fold(1u64, |a, b| a.saturating_mul(b))
}

/// Depth-two search is attempted while rev x spy x rev branching stays below this.
pub const SEARCH_BRANCHING_CAP: u64 = 20_000_000;

/// The scripted first move with exactly three uncovered weight-one
/// revolutionaries around `centre`: the lowest two step onto the centre.
fn three_uncovered(g: &Graph, centre: usize, d: usize, revs: &[u32], spies: &[u32]) -> Option<MoveSet> {
    let open: Vec<usize> = (0..d).map(|i| centre ^ (1 << i)).filter(|&v| revs[v] > 0 && spies[v] == 0).collect();
    if open.len() != 3 {
        return None;
    }
    let mut ms = MoveSet::new();
    for &v in &open[..2] {
        debug_assert!(g.has_edge(v, centre));
        ms.add(v, centre, 1);
    }
    Some(ms)
}

/// Meeting size 2 with d >= r: revolutionaries on v_1..v_r, then an immediate
/// unwatched threat, else a forced win found by depth-two search, else the
/// scripted line for three uncovered revolutionaries.
#[derive(Debug, Clone, Default)]
pub struct HypercubeM2Attack;

impl RevStrategy for HypercubeM2Attack {
    fn id(&self) -> &'static str {
        "rev.hypercube-m2"
    }

    fn place(&mut self, spec: &GameSpec, _rng: &mut GameRng) -> Result<Vec<u32>> {
        let d = cube_dim(&spec.graph, self.id())?;
        if spec.m != 2 || (spec.r as usize) > d {
            return Err(mismatch(self.id(), "needs m = 2 and r <= d"));
        }
        let mut out = vec![0u32; spec.n()];
        for i in 0..spec.r as usize {
            out[1 << i] = 1;
        }
        Ok(out)
    }

    fn respond(&mut self, spec: &GameSpec, pos: &Position, _rng: &mut GameRng) -> Result<MoveSet> {
        let g = &spec.graph;
        if let Some(mv) = single_threat(g, spec.m, &pos.revs, &pos.spies) {
            return Ok(mv);
        }
        let depth = 2u32.saturating_sub(pos.round).max(1);
        let (rb, sb) = (configurations(g, &pos.revs), configurations(g, &pos.spies));
        if rb.saturating_mul(sb).saturating_mul(rb) <= SEARCH_BRANCHING_CAP {
            if let Some(next) = forcing_rev_move(spec, pos, depth)? {
                return Ok(realize_move(g, &pos.revs, &next).expect("successor is reachable"));
            }
        }
        if pos.round == 0 {
            let d = cube_dim(g, self.id())?;
            if let Some(mv) = three_uncovered(g, 0, d, &pos.revs, &pos.spies) {
                return Ok(mv);
            }
        }
        Ok(MoveSet::new())
    }

    fn clone_box(&self) -> Box<dyn RevStrategy> {
        Box::new(self.clone())
    }
}

/// Meeting vertex and walkers chosen after the spies are placed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkPlan {
    /// Weight-m target vertex.
    pub w: u128,
    /// Indices i with a revolutionary on v_i and no spy there.
    pub uncovered: Vec<usize>,
    pub phase: AvoidPhase,
}

/// Picks w for revolutionaries on v_0..v_{r-1} facing `spies`: spies of weight
/// at least 2 are projected onto the uncovered coordinates; a projection of
/// weight 1 bars its coordinate, weight 0 is harmless.
pub fn plan_walk(d: usize, m: usize, r: usize, spies: &[u128], seed: u64) -> Result<WalkPlan> {
    if r > d || d > 128 || m < 2 {
        return Err(Error::pre(format!("need 2 <= m and r <= d <= 128, got m = {m}, r = {r}, d = {d}")));
    }
    let uncovered: Vec<usize> = (0..r).filter(|&i| !spies.contains(&(1u128 << i))).collect();
    let t = uncovered.len();
    if t < m {
        return Err(Error::AvoidingVertexNotFound);
    }
    let mut local = Vec::new();
    let mut excluded = 0u128;
    for &v in spies.iter().filter(|v| v.count_ones() >= 2) {
        let p: u128 = uncovered.iter().enumerate().filter(|(_, &c)| v >> c & 1 == 1).map(|(i, _)| 1u128 << i).sum();
        match p.count_ones() {
            0 => {}
            1 => excluded |= p,
            _ => local.push(p),
        }
    }
    let found = avoiding_vertex_excluding(t, m, &local, excluded, seed)?;
    let w = uncovered.iter().enumerate().filter(|(i, _)| found.w >> i & 1 == 1).map(|(_, &c)| 1u128 << c).sum();
    Ok(WalkPlan { w, uncovered, phase: found.phase })
}

/// Where the walker starting at v_i stands after `step` moves toward w.
fn walker_at(w: u128, i: usize, step: usize) -> u128 {
    let mut at = 1u128 << i;
    let mut rest = w & !at;
    for _ in 0..step {
        if rest == 0 {
            break;
        }
        let low = rest & rest.wrapping_neg();
        at |= low;
        rest &= !low;
    }
    at
}

/// Any meeting size: revolutionaries on v_1..v_r; the m of them indexed by an
/// avoiding vertex w walk to w, arriving together after m-1 rounds.
#[derive(Debug, Clone, Default)]
pub struct HypercubeGeneralAttack {
    plan: Option<WalkPlan>,
}

impl HypercubeGeneralAttack {
    pub fn plan(&self) -> Option<&WalkPlan> {
        self.plan.as_ref()
    }
}

impl RevStrategy for HypercubeGeneralAttack {
    fn id(&self) -> &'static str {
        "rev.hypercube-general"
    }

    fn place(&mut self, spec: &GameSpec, _rng: &mut GameRng) -> Result<Vec<u32>> {
        let d = cube_dim(&spec.graph, self.id())?;
        if (spec.r as usize) > d || spec.m < 2 {
            return Err(mismatch(self.id(), "needs m >= 2 and r <= d"));
        }
        self.plan = None;
        let mut out = vec![0u32; spec.n()];
        for i in 0..spec.r as usize {
            out[1 << i] = 1;
        }
        Ok(out)
    }

    fn respond(&mut self, spec: &GameSpec, pos: &Position, rng: &mut GameRng) -> Result<MoveSet> {
        let g = &spec.graph;
        if let Some(mv) = single_threat(g, spec.m, &pos.revs, &pos.spies) {
            return Ok(mv);
        }
        let d = cube_dim(g, self.id())?;
        if self.plan.is_none() {
            let spies: Vec<u128> = crate::game::vertices_from_counts(&pos.spies).into_iter().map(|v| v as u128).collect();
            self.plan = Some(plan_walk(d, spec.m as usize, spec.r as usize, &spies, rng.gen())?);
        }
        let w = self.plan.as_ref().expect("planned").w;
        let step = pos.round as usize;
        let mut ms = MoveSet::new();
        if step + 1 < spec.m as usize {
            for i in (0..d).filter(|&i| w >> i & 1 == 1) {
                ms.add(walker_at(w, i, step) as usize, walker_at(w, i, step + 1) as usize, 1);
            }
        }
        Ok(ms)
    }

    fn clone_box(&self) -> Box<dyn RevStrategy> {
        Box::new(self.clone())
    }
}

/// Outcome of a walk simulated without building the cube.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkReport {
    pub plan: WalkPlan,
    /// Smallest spy distance to w when the walk starts.
    pub min_spy_distance: u32,
    pub rounds: u32,
    pub walkers_at_w: u32,
    pub guarded: bool,
}

/// Plays the walk on Q_d for large d. Each round every spy steps one
/// coordinate closer to w.
pub fn simulate_walk(d: usize, m: usize, r: usize, spies: &[u128], seed: u64) -> Result<WalkReport> {
    let plan = plan_walk(d, m, r, spies, seed)?;
    let w = plan.w;
    let dist = |v: u128| (v ^ w).count_ones();
    let min_spy_distance = spies.iter().map(|&v| dist(v)).min().unwrap_or(u32::MAX);
    let mut chasers = spies.to_vec();
    for _ in 0..m - 1 {
        for v in chasers.iter_mut() {
            let diff = *v ^ w;
            if diff != 0 {
                *v ^= diff & diff.wrapping_neg();
            }
        }
    }
    let walkers: Vec<u128> = (0..d).filter(|&i| w >> i & 1 == 1).map(|i| walker_at(w, i, m - 1)).collect();
    Ok(WalkReport {
        min_spy_distance,
        rounds: (m - 1) as u32,
        walkers_at_w: walkers.iter().filter(|&&v| v == w).count() as u32,
        guarded: chasers.contains(&w),
        plan,
    })
}

/// Meeting size 2 with r > d: d revolutionaries around each centre of a
/// distance-9 code run the local attack; leftovers wait at the first centre.
#[derive(Debug, Clone, Default)]
pub struct ReplicatedHypercubeAttack {
    centres: Vec<usize>,
}

impl ReplicatedHypercubeAttack {
    pub const CODE_DISTANCE: u32 = 9;

    pub fn centres(&self) -> &[usize] {
        &self.centres
    }
}

impl RevStrategy for ReplicatedHypercubeAttack {
    fn id(&self) -> &'static str {
        "rev.replicated-hypercube"
    }

    fn place(&mut self, spec: &GameSpec, _rng: &mut GameRng) -> Result<Vec<u32>> {
        let d = cube_dim(&spec.graph, self.id())?;
        if spec.m != 2 {
            return Err(mismatch(self.id(), "implemented for m = 2"));
        }
        let groups = spec.r as usize / d;
        let code = greedy_code(d, Self::CODE_DISTANCE)?;
        if groups == 0 || code.words.len() < groups {
            return Err(Error::pre(format!("{groups} groups need {groups} code words, code has {}", code.words.len())));
        }
        let centres: Vec<usize> = code.words[..groups].iter().map(|&c| c as usize).collect();
        for (a, &x) in centres.iter().enumerate() {
            for &y in &centres[a + 1..] {
                // radius-4 balls are disjoint
                if (x ^ y).count_ones() < Self::CODE_DISTANCE {
                    return Err(Error::pre(format!("centres {x} and {y} too close")));
                }
            }
        }
        let mut out = vec![0u32; spec.n()];
        for &c in &centres {
            for i in 0..d {
                out[c ^ (1 << i)] += 1;
            }
        }
        out[centres[0]] += spec.r - (groups * d) as u32;
        self.centres = centres;
        Ok(out)
    }

    fn respond(&mut self, spec: &GameSpec, pos: &Position, _rng: &mut GameRng) -> Result<MoveSet> {
        let g = &spec.graph;
        if let Some(mv) = single_threat(g, spec.m, &pos.revs, &pos.spies) {
            return Ok(mv);
        }
        let mut ms = MoveSet::new();
        if pos.round == 0 {
            let d = cube_dim(g, self.id())?;
            for &c in &self.centres {
                if let Some(local) = three_uncovered(g, c, d, &pos.revs, &pos.spies) {
                    for f in local.flows() {
                        ms.add(f.from, f.to, f.count);
                    }
                }
            }
        }
        Ok(ms)
    }

    fn clone_box(&self) -> Box<dyn RevStrategy> {
        Box::new(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn walkers_meet_after_m_minus_one_steps() {
        let w = 0b1011u128;
        for i in [0, 1, 3] {
            assert_eq!(walker_at(w, i, 2), w);
            assert_eq!((walker_at(w, i, 1) ^ w).count_ones(), 1);
        }
    }

    #[test]
    fn covered_weight_one_spies_never_block() {
        // every spy on a revolutionary except v_0..v_2
        let spies: Vec<u128> = (3..10).map(|i| 1u128 << i).collect();
        let plan = plan_walk(10, 2, 10, &spies, 1).unwrap();
        assert_eq!(plan.uncovered, vec![0, 1, 2]);
        assert_eq!(plan.w.count_ones(), 2);
        assert_eq!(plan.w & !0b111, 0);
    }
}
