use super::mismatch;
use crate::error::Result;
use crate::game::{swarm_move_unchecked, swarm_threat, vertices_from_counts, GameSpec, MoveSet, Position};
use crate::graph::Graph;
use crate::strategy::{GameRng, RevStrategy};
use rand::seq::SliceRandom;
use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;

fn parts_of(g: &Graph, id: &str) -> Result<Vec<Vec<usize>>> {
    if !g.is_complete_multipartite() {
        return Err(mismatch(id, "graph is not complete multipartite"));
    }
    Ok(g.part_members().expect("labelled"))
}

/// The part whose swarm leaves the most new meetings beyond the spies able to
/// reach them, with that margin (threat minus spies outside the part).
pub fn best_swarm(parts: &[Vec<usize>], revs: &[u32], spies: &[u32], m: u32) -> (usize, i64) {
    let total: u32 = spies.iter().sum();
    let mut best = (0, i64::MIN);
    for (i, p) in parts.iter().enumerate() {
        let inside: u32 = p.iter().map(|&v| spies[v]).sum();
        let margin = swarm_threat(p, revs, spies, m) as i64 - (total - inside) as i64;
        if margin > best.1 {
            best = (i, margin);
        }
    }
    best
}

/// `t` revolutionaries on distinct vertices of every part, extras on part 0.
fn spread(g: &Graph, parts: &[Vec<usize>], r: u32) -> Vec<u32> {
    let k = parts.len();
    let mut out = vec![0u32; g.n()];
    for i in 0..r as usize {
        let p = &parts[i % k];
        out[p[(i / k) % p.len()]] += 1;
    }
    out
}

/// Always swarms the part with the largest margin.
#[derive(Debug, Clone, Default)]
pub struct SwarmRev;

impl RevStrategy for SwarmRev {
    fn id(&self) -> &'static str {
        "rev.swarm"
    }

    fn place(&mut self, spec: &GameSpec, _rng: &mut GameRng) -> Result<Vec<u32>> {
        Ok(spread(&spec.graph, &parts_of(&spec.graph, self.id())?, spec.r))
    }

    fn respond(&mut self, spec: &GameSpec, pos: &Position, _rng: &mut GameRng) -> Result<MoveSet> {
        let parts = parts_of(&spec.graph, self.id())?;
        let (i, _) = best_swarm(&parts, &pos.revs, &pos.spies, spec.m);
        Ok(swarm_move_unchecked(&spec.graph, spec.m, &pos.revs, &pos.spies, &parts[i]))
    }

    fn clone_box(&self) -> Box<dyn RevStrategy> {
        Box::new(self.clone())
    }
}

/// Swarms part `round mod k`.
#[derive(Debug, Clone, Default)]
pub struct AlternatingSwarmRev;

impl RevStrategy for AlternatingSwarmRev {
    fn id(&self) -> &'static str {
        "rev.alternating-swarm"
    }

    fn place(&mut self, spec: &GameSpec, _rng: &mut GameRng) -> Result<Vec<u32>> {
        Ok(spread(&spec.graph, &parts_of(&spec.graph, self.id())?, spec.r))
    }

    fn respond(&mut self, spec: &GameSpec, pos: &Position, _rng: &mut GameRng) -> Result<MoveSet> {
        let parts = parts_of(&spec.graph, self.id())?;
        let i = pos.round as usize % parts.len();
        Ok(swarm_move_unchecked(&spec.graph, spec.m, &pos.revs, &pos.spies, &parts[i]))
    }

    fn clone_box(&self) -> Box<dyn RevStrategy> {
        Box::new(self.clone())
    }
}

/// Placement biased toward random parts; each round a uniform fraction of the revolutionaries
/// crosses to random vertices of other parts while the rest stay.
#[derive(Debug, Clone, Default)]
pub struct SideShuffleRev;

impl RevStrategy for SideShuffleRev {
    fn id(&self) -> &'static str {
        "rev.side-shuffle"
    }

    fn place(&mut self, spec: &GameSpec, rng: &mut GameRng) -> Result<Vec<u32>> {
        let parts = parts_of(&spec.graph, self.id())?;
        let weights: Vec<f64> = parts.iter().map(|_| rng.gen::<f64>()).collect();
        let pick = WeightedIndex::new(&weights).map_err(|e| crate::error::Error::pre(e.to_string()))?;
        let mut out = vec![0u32; spec.n()];
        for _ in 0..spec.r {
            out[*parts[pick.sample(rng)].choose(rng).expect("nonempty part")] += 1;
        }
        Ok(out)
    }

    fn respond(&mut self, spec: &GameSpec, pos: &Position, rng: &mut GameRng) -> Result<MoveSet> {
        let g = &spec.graph;
        let p: f64 = rng.gen();
        let mut ms = MoveSet::new();
        for v in vertices_from_counts(&pos.revs) {
            if rng.gen_bool(p) {
                ms.add(v, *g.neighbors(v).choose(rng).expect("connected"), 1);
            }
        }
        Ok(ms)
    }

    fn clone_box(&self) -> Box<dyn RevStrategy> {
        Box::new(self.clone())
    }
}

/// floor(r/k) revolutionaries on distinct vertices of each part, then the
/// best swarm. Leftover revolutionaries wait in part 0 until they join a swarm.
#[derive(Debug, Clone, Default)]
pub struct KPartiteLowerAttack;

impl KPartiteLowerAttack {
    /// ceil(k(r-m+1)/(m(k-1)+1)) - 1 spies lose to this attack in one round.
    pub fn beaten_spies(k: u32, m: u32, r: u32) -> u32 {
        let r = k * (r / k);
        (k * (r + 1 - m)).div_ceil(m * (k - 1) + 1).saturating_sub(1)
    }
}

impl RevStrategy for KPartiteLowerAttack {
    fn id(&self) -> &'static str {
        "rev.kpartite-lower"
    }

    fn place(&mut self, spec: &GameSpec, _rng: &mut GameRng) -> Result<Vec<u32>> {
        let parts = parts_of(&spec.graph, self.id())?;
        let k = parts.len() as u32;
        if k < spec.m {
            return Err(mismatch(self.id(), &format!("needs at least m = {} parts, graph has {k}", spec.m)));
        }
        let t = spec.r / k;
        let mut out = vec![0u32; spec.n()];
        for p in &parts {
            for &v in p.iter().take(t as usize) {
                out[v] = 1;
            }
        }
        out[parts[0][t as usize % parts[0].len()]] += spec.r - t * k;
        Ok(out)
    }

    fn respond(&mut self, spec: &GameSpec, pos: &Position, _rng: &mut GameRng) -> Result<MoveSet> {
        let parts = parts_of(&spec.graph, self.id())?;
        let (i, _) = best_swarm(&parts, &pos.revs, &pos.spies, spec.m);
        Ok(swarm_move_unchecked(&spec.graph, spec.m, &pos.revs, &pos.spies, &parts[i]))
    }

    fn clone_box(&self) -> Box<dyn RevStrategy> {
        Box::new(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beaten_count_at_nine() {
        // k(r-m+1)/(m(k-1)+1) = 21/7 = 3
        assert_eq!(KPartiteLowerAttack::beaten_spies(3, 3, 9), 2);
    }
}
