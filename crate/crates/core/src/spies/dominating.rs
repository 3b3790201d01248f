use super::{covered_audit, local};
use crate::error::{Error, Result};
use crate::game::{GameSpec, MoveSet, Position};
use crate::graph::{dominating_vertex, min_dominating_set, Graph};
use crate::strategy::{Audit, GameRng, SpyStrategy, SpyTurn};

/// floor(r/m) spies on a graph with a dominating vertex u: every other vertex v
/// keeps exactly floor(r(v)/m) spies, the rest wait at u.
#[derive(Debug, Clone, Default)]
pub struct DominatingVertexSpy {
    u: Option<usize>,
}

impl DominatingVertexSpy {
    pub fn new(u: usize) -> Self {
        DominatingVertexSpy { u: Some(u) }
    }

    /// Picks the lowest-index dominating vertex when the game starts.
    pub fn auto() -> Self {
        Self::default()
    }

    fn centre(&mut self, g: &Graph) -> Result<usize> {
        let u = match self.u {
            Some(u) => u,
            None => dominating_vertex(g).ok_or_else(|| mismatch("spy.dominating-vertex", "graph has no dominating vertex"))?,
        };
        if u >= g.n() || g.degree(u) + 1 != g.n() {
            return Err(mismatch("spy.dominating-vertex", &format!("vertex {u} does not dominate")));
        }
        self.u = Some(u);
        Ok(u)
    }
}

fn mismatch(id: &str, reason: &str) -> Error {
    Error::StrategyMismatch { id: id.into(), reason: reason.into() }
}

/// Local vertex list for the closed neighbourhood of u, u first.
fn local_order(g: &Graph, u: usize) -> Vec<usize> {
    let mut order = vec![u];
    order.extend(g.neighbors(u).iter().copied());
    order
}

fn stable_counts(revs: &[u32], m: u32, s: u32) -> Result<Vec<u32>> {
    let mut spies: Vec<u32> = revs.iter().map(|&c| c / m).collect();
    spies[0] = 0;
    let used: u32 = spies.iter().sum();
    if used > s {
        return Err(Error::pre(format!("stable position needs {used} spies, have {s}")));
    }
    spies[0] = s - used;
    Ok(spies)
}

impl SpyStrategy for DominatingVertexSpy {
    fn id(&self) -> &'static str {
        "spy.dominating-vertex"
    }

    fn place(&mut self, spec: &GameSpec, revs: &[u32], _rng: &mut GameRng) -> Result<Vec<u32>> {
        let u = self.centre(&spec.graph)?;
        let order = local_order(&spec.graph, u);
        let local: Vec<u32> = order.iter().map(|&v| revs[v]).collect();
        let spies = stable_counts(&local, spec.m, spec.s)?;
        let mut out = vec![0u32; spec.n()];
        for (i, &v) in order.iter().enumerate() {
            out[v] = spies[i];
        }
        Ok(out)
    }

    fn respond(&mut self, spec: &GameSpec, turn: &SpyTurn<'_>, _rng: &mut GameRng) -> Result<MoveSet> {
        let u = self.centre(&spec.graph)?;
        let order = local_order(&spec.graph, u);
        let mut index = vec![0usize; spec.n()];
        for (i, &v) in order.iter().enumerate() {
            index[v] = i;
        }
        let before: Vec<u32> = order.iter().map(|&v| turn.start.revs[v]).collect();
        let spies: Vec<u32> = order.iter().map(|&v| turn.start.spies[v]).collect();
        let flows: Vec<(usize, usize, u32)> = turn.rev_move.flows().map(|f| (index[f.from], index[f.to], f.count)).collect();
        let reply = local::reply(u, &before, &spies, &flows, spec.m)?;
        let mut ms = MoveSet::new();
        for (a, b, c) in reply.moves {
            ms.add(order[a], order[b], c);
        }
        Ok(ms)
    }

    fn audit(&mut self, spec: &GameSpec, pos: &Position) -> Vec<Audit> {
        let Some(u) = self.u else { return Vec::new() };
        let bad = (0..pos.revs.len()).find(|&v| v != u && pos.spies[v] != pos.revs[v] / spec.m);
        vec![
            covered_audit(&pos.revs, &pos.spies, spec.m),
            match bad {
                None => Audit::new("stable", true, ""),
                Some(v) => Audit::new("stable", false, format!("vertex {v}: {} spies, {} revolutionaries", pos.spies[v], pos.revs[v])),
            },
        ]
    }

    fn clone_box(&self) -> Box<dyn SpyStrategy> {
        Box::new(self.clone())
    }
}

#[derive(Debug, Clone)]
struct Squad {
    /// N[u] with u first.
    order: Vec<usize>,
    /// Local index per global vertex; 0 (the centre) for vertices outside N[u].
    index: Vec<usize>,
    spies: Vec<u32>,
}

impl Squad {
    fn new(g: &Graph, u: usize) -> Self {
        let order = local_order(g, u);
        let mut index = vec![0usize; g.n()];
        for (i, &v) in order.iter().enumerate() {
            index[v] = i;
        }
        let spies = vec![0; order.len()];
        Squad { order, index, spies }
    }

    /// Revolutionaries outside N[u] are imagined at u.
    fn imagined(&self, revs: &[u32]) -> Vec<u32> {
        let mut local = vec![0u32; self.order.len()];
        for (v, &c) in revs.iter().enumerate() {
            local[self.index[v]] += c;
        }
        local
    }
}

/// One squad of floor(r/m) spies per vertex of a dominating set, each playing
/// the dominating-vertex strategy on the closed neighbourhood of its vertex.
#[derive(Debug, Clone, Default)]
pub struct DominationSetSpy {
    set: Vec<usize>,
    squads: Vec<Squad>,
    idle: u32,
}

impl DominationSetSpy {
    /// An empty set means a minimum dominating set is computed at placement.
    pub fn new(set: Vec<usize>) -> Self {
        DominationSetSpy { set, squads: Vec::new(), idle: 0 }
    }

    fn global_counts(&self, n: usize) -> Vec<u32> {
        let mut out = vec![0u32; n];
        for sq in &self.squads {
            for (i, &v) in sq.order.iter().enumerate() {
                out[v] += sq.spies[i];
            }
        }
        out[self.set[0]] += self.idle;
        out
    }
}

impl SpyStrategy for DominationSetSpy {
    fn id(&self) -> &'static str {
        "spy.domination-set"
    }

    fn place(&mut self, spec: &GameSpec, revs: &[u32], _rng: &mut GameRng) -> Result<Vec<u32>> {
        let g = &spec.graph;
        if self.set.is_empty() {
            self.set = min_dominating_set(g)?;
        }
        let mut covered = vec![false; g.n()];
        for &u in &self.set {
            if u >= g.n() {
                return Err(Error::param(format!("vertex {u} out of range")));
            }
            for v in g.closed_neighbors(u) {
                covered[v] = true;
            }
        }
        if let Some(v) = covered.iter().position(|c| !c) {
            return Err(mismatch("spy.domination-set", &format!("vertex {v} is not dominated")));
        }
        let squad = spec.r / spec.m;
        let need = squad * self.set.len() as u32;
        if spec.s < need {
            return Err(Error::pre(format!("{} squads of {squad} need {need} spies, have {}", self.set.len(), spec.s)));
        }
        self.idle = spec.s - need;
        self.squads = self
            .set
            .iter()
            .map(|&u| {
                let mut sq = Squad::new(g, u);
                sq.spies = stable_counts(&sq.imagined(revs), spec.m, squad).expect("floor sums fit");
                sq
            })
            .collect();
        Ok(self.global_counts(g.n()))
    }

    fn respond(&mut self, spec: &GameSpec, turn: &SpyTurn<'_>, _rng: &mut GameRng) -> Result<MoveSet> {
        if self.squads.is_empty() || self.global_counts(spec.n()) != turn.start.spies {
            return Err(Error::pre("spy position differs from squad bookkeeping"));
        }
        let mut ms = MoveSet::new();
        for sq in &mut self.squads {
            let before = sq.imagined(&turn.start.revs);
            let flows: Vec<(usize, usize, u32)> = turn
                .rev_move
                .flows()
                .map(|f| (sq.index[f.from], sq.index[f.to], f.count))
                .filter(|f| f.0 != f.1)
                .collect();
            let reply = local::reply(sq.order[0], &before, &sq.spies, &flows, spec.m)?;
            for (a, b, c) in reply.moves {
                ms.add(sq.order[a], sq.order[b], c);
            }
            sq.spies = reply.spies;
        }
        Ok(ms)
    }

    fn audit(&mut self, spec: &GameSpec, pos: &Position) -> Vec<Audit> {
        let stable = self.squads.iter().all(|sq| local::is_stable(&sq.imagined(&pos.revs), &sq.spies, spec.m));
        vec![
            covered_audit(&pos.revs, &pos.spies, spec.m),
            Audit::new("squads_stable", stable, ""),
            Audit::new("bookkeeping", self.global_counts(spec.n()) == pos.spies, ""),
        ]
    }

    fn clone_box(&self) -> Box<dyn SpyStrategy> {
        Box::new(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::star;
    use rand::SeedableRng;
    use std::sync::Arc;

    #[test]
    fn star_placement_matches_definition() {
        let spec = GameSpec::new(Arc::new(star(4).unwrap()), 2, 4, 2).unwrap();
        let mut rng = GameRng::seed_from_u64(0);
        let spies = DominatingVertexSpy::auto().place(&spec, &[0, 2, 2, 0, 0], &mut rng).unwrap();
        assert_eq!(spies, vec![0, 1, 1, 0, 0]);
        let spies = DominatingVertexSpy::auto().place(&spec, &[4, 0, 0, 0, 0], &mut rng).unwrap();
        assert_eq!(spies, vec![2, 0, 0, 0, 0]);
    }

    #[test]
    fn single_vertex_set_reduces_to_dominating_spy() {
        let spec = GameSpec::new(Arc::new(star(3).unwrap()), 2, 4, 2).unwrap();
        let mut rng = GameRng::seed_from_u64(0);
        let revs = [1, 2, 1, 0];
        let a = DominatingVertexSpy::auto().place(&spec, &revs, &mut rng).unwrap();
        let b = DominationSetSpy::new(vec![0]).place(&spec, &revs, &mut rng).unwrap();
        assert_eq!(a, b);
    }
}
