use super::{covered_audit, free_revs, free_spies, unit_moves};
use crate::error::{Error, Result};
use crate::game::{meetings, vertices_from_counts, GameSpec, MoveSet, Position};
use crate::kernels::{min_movers_cover, partial_cover};
use crate::strategy::{Audit, GameRng, SpyStrategy, SpyTurn};
use std::cmp::Reverse;

/// ceil(k/(k-1) * r/m) + k.
pub fn kpartite_spy_count(k: u32, m: u32, r: u32) -> u32 {
    (k * r).div_ceil((k - 1) * m) + k
}

/// Spies on a complete k-partite graph: cover the meetings, then spread the
/// free spies evenly over the parts.
#[derive(Debug, Clone, Default)]
pub struct KPartiteSpy {
    parts: Vec<Vec<usize>>,
}

impl KPartiteSpy {
    pub fn new() -> Self {
        Self::default()
    }

    fn setup(&mut self, spec: &GameSpec) -> Result<()> {
        if !self.parts.is_empty() {
            return Ok(());
        }
        let g = &spec.graph;
        if !g.is_complete_multipartite() || g.part_count() < 2 {
            return Err(Error::StrategyMismatch { id: self.id().into(), reason: Error::NotMultipartite.to_string() });
        }
        self.parts = g.part_members().expect("labelled");
        Ok(())
    }

    /// Per-part targets: floor or ceil of the even share, extras to the
    /// parts already holding the most.
    fn shares(current: &[u32]) -> Vec<u32> {
        let k = current.len() as u32;
        let total: u32 = current.iter().sum();
        let mut order: Vec<usize> = (0..current.len()).collect();
        order.sort_by_key(|&i| (Reverse(current[i]), i));
        let mut out = vec![total / k; current.len()];
        for &i in order.iter().take((total % k) as usize) {
            out[i] += 1;
        }
        out
    }

    /// Vertices of a part ordered for landing: no spy yet, most revolutionaries, lowest index.
    fn landing(&self, part: usize, revs: &[u32], taken: &[bool]) -> Vec<usize> {
        let mut vs = self.parts[part].clone();
        vs.sort_by_key(|&v| (taken[v], Reverse(revs[v]), v));
        vs
    }
}

impl SpyStrategy for KPartiteSpy {
    fn id(&self) -> &'static str {
        "spy.k-partite"
    }

    fn place(&mut self, spec: &GameSpec, revs: &[u32], _rng: &mut GameRng) -> Result<Vec<u32>> {
        self.setup(spec)?;
        let meets = meetings(revs, spec.m);
        if meets.len() as u32 > spec.s {
            return Err(Error::pre(format!("{} meetings, {} spies", meets.len(), spec.s)));
        }
        let mut spies = vec![0u32; spec.n()];
        let mut taken = vec![false; spec.n()];
        for &v in &meets {
            spies[v] = 1;
            taken[v] = true;
        }
        let k = self.parts.len();
        let free = spec.s as usize - meets.len();
        let mut target = vec![0u32; k];
        for i in 0..free {
            target[i % k] += 1;
        }
        for (p, &t) in target.iter().enumerate() {
            let land = self.landing(p, revs, &taken);
            for i in 0..t as usize {
                let v = land[i % land.len()];
                spies[v] += 1;
                taken[v] = true;
            }
        }
        Ok(spies)
    }

    fn respond(&mut self, spec: &GameSpec, turn: &SpyTurn<'_>, _rng: &mut GameRng) -> Result<MoveSet> {
        self.setup(spec)?;
        let g = &spec.graph;
        let revs = &turn.current.revs;
        let part_of = g.parts().expect("labelled");
        let units = vertices_from_counts(&turn.current.spies);
        let meets = meetings(revs, spec.m);
        // outnumbered: guard what can be guarded and lose on the rest
        let plan = min_movers_cover(g, &meets, &units).unwrap_or_else(|_| partial_cover(g, &meets, &units).0);
        let mut dest: Vec<Option<usize>> = vec![None; units.len()];
        let mut taken = vec![false; g.n()];
        for &(x, j) in &plan.assignment {
            dest[j] = Some(x);
            taken[x] = true;
        }
        let k = self.parts.len();
        let mut pool: Vec<Vec<usize>> = vec![Vec::new(); k];
        for j in (0..units.len()).filter(|&j| dest[j].is_none()) {
            pool[part_of[units[j]]].push(j);
        }
        let current: Vec<u32> = pool.iter().map(|p| p.len() as u32).collect();
        let want = Self::shares(&current);
        let mut leaving = Vec::new();
        for p in 0..k {
            // spies on the emptiest vertices leave first
            pool[p].sort_by_key(|&j| (Reverse(revs[units[j]]), units[j]));
            while pool[p].len() as u32 > want[p] {
                leaving.push(pool[p].pop().expect("surplus"));
            }
            for &j in &pool[p] {
                dest[j] = Some(units[j]);
                taken[units[j]] = true;
            }
        }
        for p in 0..k {
            let short = want[p].saturating_sub(current[p]) as usize;
            if short == 0 {
                continue;
            }
            let land = self.landing(p, revs, &taken);
            for i in 0..short {
                let j = leaving.pop().expect("shares balance");
                let v = land[i % land.len()];
                dest[j] = Some(v);
                taken[v] = true;
            }
        }
        Ok(unit_moves(units.iter().zip(dest).map(|(&v, d)| (v, d.expect("assigned")))))
    }

    fn audit(&mut self, spec: &GameSpec, pos: &Position) -> Vec<Audit> {
        if self.parts.is_empty() {
            return Vec::new();
        }
        let free = free_spies(&pos.revs, &pos.spies, spec.m);
        let total: u32 = free.iter().sum();
        let need = free_revs(&pos.revs, spec.m);
        let bad = (0..self.parts.len()).find(|&i| {
            let inside: u32 = self.parts[i].iter().map(|&v| free[v]).sum();
            spec.m * (total - inside) < need
        });
        vec![
            covered_audit(&pos.revs, &pos.spies, spec.m),
            match bad {
                None => Audit::new("stablemult", true, ""),
                Some(i) => Audit::new("stablemult", false, format!("part {i}")),
            },
        ]
    }

    fn clone_box(&self) -> Box<dyn SpyStrategy> {
        Box::new(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spy_count() {
        // k=3, m=2, r=8: ceil(24/4) + 3
        assert_eq!(kpartite_spy_count(3, 2, 8), 9);
        assert_eq!(kpartite_spy_count(2, 2, 6), 8);
    }

    #[test]
    fn shares_favour_fuller_parts() {
        assert_eq!(KPartiteSpy::shares(&[0, 5, 2]), vec![2, 3, 2]);
        assert_eq!(KPartiteSpy::shares(&[3, 3, 2]), vec![3, 3, 2]);
    }
}
