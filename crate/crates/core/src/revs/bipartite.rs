//! Two-round attacks on complete bipartite graphs, optionally played by cells
//! of revolutionaries that move as single units.

use super::mismatch;
use crate::error::{Error, Result};
use crate::game::{swarm_move_unchecked, swarm_threat, GameSpec, MoveSet, Position};
use crate::spies::Sides;
use crate::strategy::{GameRng, RevStrategy};

/// Meeting size of the imagined game the cells play.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseGame {
    M2,
    M3,
}

impl BaseGame {
    fn meeting(self) -> u32 {
        match self {
            BaseGame::M2 => 2,
            BaseGame::M3 => 3,
        }
    }
}

#[derive(Debug, Clone)]
struct Plan {
    sides: Sides,
    unit: u32,
    /// Cells taking part in the imagined game.
    cells: u32,
    idle_at: usize,
    idle: u32,
}

impl Plan {
    fn imagined(&self, revs: &[u32]) -> Result<Vec<u32>> {
        let mut out = revs.to_vec();
        out[self.idle_at] -= self.idle.min(out[self.idle_at]);
        if out.iter().any(|&c| c % self.unit != 0) {
            return Err(Error::pre("a cell was split"));
        }
        Ok(out.into_iter().map(|c| c / self.unit).collect())
    }

    fn scale(&self, ms: MoveSet) -> MoveSet {
        let mut out = MoveSet::new();
        for f in ms.flows() {
            out.add(f.from, f.to, f.count * self.unit);
        }
        out
    }
}

/// Swarm-based attack. With unit 1 it is the direct attack for m = 2 or 3;
/// otherwise cells of `unit` revolutionaries play the base game.
#[derive(Debug, Clone)]
pub struct BipartiteAttack {
    base: BaseGame,
    /// None: one revolutionary per cell and spec.m must equal the base meeting size.
    cell_size: Option<fn(u32) -> u32>,
    id: &'static str,
    plan: Option<Plan>,
}

impl BipartiteAttack {
    pub fn m2() -> Self {
        BipartiteAttack { base: BaseGame::M2, cell_size: None, id: "rev.bipartite-m2", plan: None }
    }

    pub fn m3() -> Self {
        BipartiteAttack { base: BaseGame::M3, cell_size: None, id: "rev.bipartite-m3", plan: None }
    }

    /// Cells of ceil(m/3) playing the m = 3 attack.
    pub fn cells3() -> Self {
        BipartiteAttack { base: BaseGame::M3, cell_size: Some(|m| m.div_ceil(3)), id: "rev.cell-grouping-3", plan: None }
    }

    /// Cells of m/2 playing the m = 2 attack (m even).
    pub fn cells2() -> Self {
        BipartiteAttack { base: BaseGame::M2, cell_size: Some(|m| m / 2), id: "rev.cell-grouping-2", plan: None }
    }

    /// Largest spy count the attack beats: one below the matching upper bound
    /// of the base game on the number of cells.
    pub fn beaten_spies(&self, m: u32, r: u32) -> u32 {
        let unit = self.cell_size.map_or(1, |f| f(m)).max(1);
        let cells = r / unit;
        match self.base {
            BaseGame::M2 => crate::spies::M2Params::theorem_spies(cells).saturating_sub(1),
            BaseGame::M3 => (cells / 2).saturating_sub(1),
        }
    }

    fn plan(&self) -> Result<&Plan> {
        self.plan.as_ref().ok_or_else(|| Error::pre("attack not placed"))
    }

    /// Moves `count` cells from X_1, covered vertices first, to distinct empty unwatched X_2 vertices.
    fn shift(plan: &Plan, img: &[u32], spies: &[u32], count: usize) -> MoveSet {
        let mut from: Vec<usize> = plan.sides.members[0].iter().copied().filter(|&v| img[v] > 0).collect();
        from.sort_by_key(|&v| (spies[v] == 0, v));
        let to = plan.sides.members[1].iter().copied().filter(|&v| img[v] == 0 && spies[v] == 0 && v != plan.idle_at);
        let mut ms = MoveSet::new();
        for (a, b) in from.into_iter().zip(to).take(count) {
            ms.add(a, b, 1);
        }
        ms
    }
}

impl RevStrategy for BipartiteAttack {
    fn id(&self) -> &'static str {
        self.id
    }

    fn place(&mut self, spec: &GameSpec, _rng: &mut GameRng) -> Result<Vec<u32>> {
        let sides = Sides::of(&spec.graph).map_err(|e| mismatch(self.id, &e.to_string()))?;
        let unit = match self.cell_size {
            None if spec.m != self.base.meeting() => {
                return Err(mismatch(self.id, &format!("meeting size must be {}", self.base.meeting())));
            }
            None => 1,
            Some(f) => f(spec.m),
        };
        if unit == 0 || unit * self.base.meeting() < spec.m {
            return Err(mismatch(self.id, "cells too small for this meeting size"));
        }
        let all = spec.r / unit;
        let cells = match self.base {
            BaseGame::M2 => all,
            BaseGame::M3 => all - all % 2,
        };
        let idle = spec.r - cells * unit;
        let idle_at = *sides.members[1].last().expect("nonempty side");
        let mut img = vec![0u32; spec.n()];
        let (left, right) = if self.base == BaseGame::M3 && cells % 4 == 0 { (cells / 2, cells / 2) } else { (cells, 0) };
        for (j, count) in [(0, left), (1, right)] {
            if sides.members[j].len() < count as usize + 1 {
                return Err(mismatch(self.id, "sides too small"));
            }
            for &v in sides.members[j].iter().take(count as usize) {
                img[v] = 1;
            }
        }
        let plan = Plan { sides, unit, cells, idle_at, idle };
        let mut out: Vec<u32> = img.iter().map(|&c| c * unit).collect();
        out[idle_at] += idle;
        self.plan = Some(plan);
        Ok(out)
    }

    fn respond(&mut self, spec: &GameSpec, pos: &Position, _rng: &mut GameRng) -> Result<MoveSet> {
        let plan = self.plan()?;
        let mi = self.base.meeting();
        let img = plan.imagined(&pos.revs)?;
        let spies = &pos.spies;
        let total: u32 = spies.iter().sum();
        let margin = |j: usize| {
            let guard = total - plan.sides.total(spies, j);
            swarm_threat(&plan.sides.members[j], &img, spies, mi) as i64 - guard as i64
        };
        let best = if margin(1) > margin(0) { 1 } else { 0 };
        let swarm = |j: usize| plan.scale(swarm_move_unchecked(&spec.graph, mi, &img, spies, &plan.sides.members[j]));
        if margin(best) > 0 || pos.round > 0 {
            return Ok(swarm(best));
        }
        let r = plan.cells as i64;
        let movers = match self.base {
            BaseGame::M2 => r / 2,
            BaseGame::M3 if r % 4 == 0 => return Ok(swarm(best)),
            BaseGame::M3 => {
                let x = plan.sides.total(spies, 1) as i64;
                let j = (r - x).rem_euclid(3);
                (2 * (r - x - j) / 3).clamp(0, r)
            }
        };
        Ok(plan.scale(Self::shift(plan, &img, spies, movers as usize)))
    }

    fn clone_box(&self) -> Box<dyn RevStrategy> {
        Box::new(self.clone())
    }
}
