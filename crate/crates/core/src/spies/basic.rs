use super::{covered_audit, unit_moves};
use crate::error::Result;
use crate::game::{meetings, vertices_from_counts, GameSpec, MoveSet, Position};
use crate::kernels::partial_cover;
use crate::strategy::{Audit, GameRng, SpyStrategy, SpyTurn};
use rand::seq::SliceRandom;
use rand::Rng;

/// Each spy shadows one revolutionary. With s >= r-m+1 at most m-1
/// revolutionaries go unwatched, so no meeting is ever unguarded.
#[derive(Debug, Clone, Default)]
pub struct TrivialFollower;

impl SpyStrategy for TrivialFollower {
    fn id(&self) -> &'static str {
        "spy.trivial-follower"
    }

    fn place(&mut self, spec: &GameSpec, revs: &[u32], _rng: &mut GameRng) -> Result<Vec<u32>> {
        let mut spies = vec![0u32; spec.n()];
        let mut left = spec.s;
        for v in 0..spec.n() {
            let k = revs[v].min(left);
            spies[v] += k;
            left -= k;
        }
        spies[0] += left;
        Ok(spies)
    }

    fn respond(&mut self, _spec: &GameSpec, turn: &SpyTurn<'_>, _rng: &mut GameRng) -> Result<MoveSet> {
        let start = turn.start;
        let mut following: Vec<u32> = (0..start.revs.len()).map(|v| start.revs[v].min(start.spies[v])).collect();
        let mut ms = MoveSet::new();
        for f in turn.rev_move.flows() {
            let k = following[f.from].min(f.count);
            following[f.from] -= k;
            ms.add(f.from, f.to, k);
        }
        Ok(ms)
    }

    fn audit(&mut self, spec: &GameSpec, pos: &Position) -> Vec<Audit> {
        let watched: u32 = (0..pos.revs.len()).map(|v| pos.revs[v].min(pos.spies[v])).sum();
        let want = spec.s.min(spec.r);
        vec![
            covered_audit(&pos.revs, &pos.spies, spec.m),
            Audit::new("followed", watched >= want, format!("{watched} of {want} revolutionaries shadowed")),
        ]
    }

    fn clone_box(&self) -> Box<dyn SpyStrategy> {
        Box::new(self.clone())
    }
}

/// Spies start on uniformly random vertices and step to a uniformly random
/// vertex of their closed neighbourhood each round.
#[derive(Debug, Clone, Default)]
pub struct RandomSpy;

impl SpyStrategy for RandomSpy {
    fn id(&self) -> &'static str {
        "spy.random"
    }

    fn place(&mut self, spec: &GameSpec, _revs: &[u32], rng: &mut GameRng) -> Result<Vec<u32>> {
        let mut spies = vec![0u32; spec.n()];
        for _ in 0..spec.s {
            spies[rng.gen_range(0..spec.n())] += 1;
        }
        Ok(spies)
    }

    fn respond(&mut self, spec: &GameSpec, turn: &SpyTurn<'_>, rng: &mut GameRng) -> Result<MoveSet> {
        let g = &spec.graph;
        let pairs: Vec<(usize, usize)> = vertices_from_counts(&turn.current.spies)
            .into_iter()
            .map(|v| (v, *g.closed_neighbors(v).choose(rng).expect("closed neighbourhood is nonempty")))
            .collect();
        Ok(unit_moves(pairs))
    }

    fn clone_box(&self) -> Box<dyn SpyStrategy> {
        Box::new(self.clone())
    }
}

/// Covers as many meetings as possible, then drifts free spies toward the
/// most crowded reachable vertex without a spy.
#[derive(Debug, Clone, Default)]
pub struct GreedyCoverSpy;

impl SpyStrategy for GreedyCoverSpy {
    fn id(&self) -> &'static str {
        "spy.greedy-cover"
    }

    fn place(&mut self, spec: &GameSpec, revs: &[u32], _rng: &mut GameRng) -> Result<Vec<u32>> {
        let mut order: Vec<usize> = (0..spec.n()).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(revs[v]), v));
        let mut spies = vec![0u32; spec.n()];
        for i in 0..spec.s as usize {
            spies[order[i % order.len()]] += 1;
        }
        Ok(spies)
    }

    fn respond(&mut self, spec: &GameSpec, turn: &SpyTurn<'_>, _rng: &mut GameRng) -> Result<MoveSet> {
        let g = &spec.graph;
        let revs = &turn.current.revs;
        let units = vertices_from_counts(&turn.current.spies);
        let (plan, _) = partial_cover(g, &meetings(revs, spec.m), &units);
        let mut target: Vec<Option<usize>> = vec![None; units.len()];
        let mut taken = vec![false; g.n()];
        for &(x, j) in &plan.assignment {
            target[j] = Some(x);
            taken[x] = true;
        }
        for (j, &v) in units.iter().enumerate() {
            if target[j].is_some() {
                continue;
            }
            let best = g
                .closed_neighbors(v)
                .into_iter()
                .filter(|&x| !taken[x] && revs[x] > 0)
                .max_by_key(|&x| (revs[x], std::cmp::Reverse(x)));
            let dest = best.unwrap_or(v);
            taken[dest] = true;
            target[j] = Some(dest);
        }
        Ok(unit_moves(units.iter().zip(target).map(|(&v, t)| (v, t.expect("assigned")))))
    }

    fn audit(&mut self, spec: &GameSpec, pos: &Position) -> Vec<Audit> {
        vec![covered_audit(&pos.revs, &pos.spies, spec.m)]
    }

    fn clone_box(&self) -> Box<dyn SpyStrategy> {
        Box::new(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::play;
    use crate::graph::path;
    use std::sync::Arc;

    struct Wander;

    impl crate::strategy::RevStrategy for Wander {
        fn id(&self) -> &'static str {
            "test.wander"
        }
        fn place(&mut self, spec: &GameSpec, rng: &mut GameRng) -> Result<Vec<u32>> {
            let mut c = vec![0; spec.n()];
            for _ in 0..spec.r {
                c[rng.gen_range(0..spec.n())] += 1;
            }
            Ok(c)
        }
        fn respond(&mut self, spec: &GameSpec, pos: &Position, rng: &mut GameRng) -> Result<MoveSet> {
            let pairs: Vec<_> = vertices_from_counts(&pos.revs)
                .into_iter()
                .map(|v| (v, *spec.graph.closed_neighbors(v).choose(rng).unwrap()))
                .collect();
            Ok(unit_moves(pairs))
        }
        fn clone_box(&self) -> Box<dyn crate::strategy::RevStrategy> {
            Box::new(Wander)
        }
    }

    #[test]
    fn follower_survives_on_path() {
        let spec = GameSpec::new(Arc::new(path(5).unwrap()), 2, 4, 3).unwrap();
        for seed in 0..20 {
            let t = play(&spec, &mut Wander, &mut TrivialFollower, 50, seed);
            assert!(matches!(t.outcome, crate::game::Outcome::SpiesSurvive { .. }), "{:?}", t.outcome);
            assert!(t.audit_failures().is_empty());
        }
    }

    #[test]
    fn random_spy_moves_are_legal() {
        let spec = GameSpec::new(Arc::new(path(5).unwrap()), 2, 4, 2).unwrap();
        let t = play(&spec, &mut Wander, &mut RandomSpy, 30, 3);
        assert!(!matches!(t.outcome, crate::game::Outcome::Fault { .. }));
        let t = play(&spec, &mut Wander, &mut GreedyCoverSpy, 30, 3);
        assert!(!matches!(t.outcome, crate::game::Outcome::Fault { .. }));
    }
}
