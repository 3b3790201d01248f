use super::{first_vertices, single_threat};
use crate::error::Result;
use crate::game::{vertices_from_counts, GameSpec, MoveSet, Position};
use crate::strategy::{GameRng, RevStrategy};
use rand::seq::SliceRandom;
use rand::Rng;

/// Uniform random placement; every revolutionary steps to a uniform vertex of
/// its closed neighbourhood.
#[derive(Debug, Clone, Default)]
pub struct RandomRev;

impl RevStrategy for RandomRev {
    fn id(&self) -> &'static str {
        "rev.random"
    }

    fn place(&mut self, spec: &GameSpec, rng: &mut GameRng) -> Result<Vec<u32>> {
        let mut c = vec![0u32; spec.n()];
        for _ in 0..spec.r {
            c[rng.gen_range(0..spec.n())] += 1;
        }
        Ok(c)
    }

    fn respond(&mut self, spec: &GameSpec, pos: &Position, rng: &mut GameRng) -> Result<MoveSet> {
        let mut ms = MoveSet::new();
        for v in vertices_from_counts(&pos.revs) {
            let to = *spec.graph.closed_neighbors(v).choose(rng).expect("nonempty");
            ms.add(v, to, 1);
        }
        Ok(ms)
    }

    fn clone_box(&self) -> Box<dyn RevStrategy> {
        Box::new(self.clone())
    }
}

/// Spreads over distinct vertices and waits for an unwatched neighbourhood
/// that m revolutionaries can reach.
#[derive(Debug, Clone, Default)]
pub struct SingleThreatRev;

impl RevStrategy for SingleThreatRev {
    fn id(&self) -> &'static str {
        "rev.single-threat"
    }

    /// With no spies at all everyone starts on vertex 0.
    fn place(&mut self, spec: &GameSpec, _rng: &mut GameRng) -> Result<Vec<u32>> {
        if spec.s == 0 {
            let mut counts = vec![0; spec.n()];
            counts[0] = spec.r;
            return Ok(counts);
        }
        first_vertices(spec.n(), spec.r, self.id())
    }

    fn respond(&mut self, spec: &GameSpec, pos: &Position, _rng: &mut GameRng) -> Result<MoveSet> {
        Ok(single_threat(&spec.graph, spec.m, &pos.revs, &pos.spies).unwrap_or_default())
    }

    fn clone_box(&self) -> Box<dyn RevStrategy> {
        Box::new(self.clone())
    }
}
