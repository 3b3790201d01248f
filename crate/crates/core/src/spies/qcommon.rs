//! Randomised spies for graphs where every q-fraction of vertices shares many
//! common neighbours.

use super::{covered_audit, free_revs, free_spies, unit_moves};
use crate::error::{Error, Result};
use crate::game::{meetings, GameSpec, MoveSet, Position};
use crate::graph::Graph;
use crate::kernels::{min_movers_cover, partial_cover};
use crate::strategy::{Audit, GameRng, SpyStrategy, SpyTurn};
use rand::seq::SliceRandom;
use rand::Rng;

/// Spies sufficient on an n-vertex q-common graph:
/// max(ceil((1+eps)/q * r/m), ceil(r/m + ln n / (2 (1 - 1/(1+eps))^2 q^2))).
pub fn qcommon_spy_count(n: usize, q: f64, m: u32, r: u32, eps: f64) -> u32 {
    let ratio = r as f64 / m as f64;
    let a = ((1.0 + eps) / q * ratio - 1e-9).ceil();
    let shrink = 1.0 - 1.0 / (1.0 + eps);
    let b = (ratio + (n as f64).ln() / (2.0 * shrink * shrink * q * q) - 1e-9).ceil();
    a.max(b) as u32
}

/// A vertex whose closed neighbourhood holds fewer than r^/m free spies, where
/// r^ counts revolutionaries outside meetings.
pub fn stability_deficit(g: &Graph, revs: &[u32], spies: &[u32], m: u32) -> Option<usize> {
    let free = free_spies(revs, spies, m);
    let need = free_revs(revs, m);
    (0..g.n()).find(|&v| m * g.closed_neighbors(v).iter().map(|&x| free[x]).sum::<u32>() < need)
}

fn nbhd_counts(g: &Graph, at: &[usize]) -> Vec<u32> {
    let mut per = vec![0u32; g.n()];
    for &v in at {
        per[v] += 1;
    }
    (0..g.n()).map(|v| g.closed_neighbors(v).iter().map(|&x| per[x]).sum()).collect()
}

fn score(cnt: &[u32]) -> (u32, std::cmp::Reverse<usize>) {
    let lo = cnt.iter().copied().min().unwrap_or(0);
    (lo, std::cmp::Reverse(cnt.iter().filter(|&&c| c == lo).count()))
}

/// Moves free spies one at a time, each at most once, to the destination that
/// most raises the minimum neighbourhood count. `dests(j)` lists the options of spy j.
fn greedy_stabilize(g: &Graph, at: &mut [usize], dests: impl Fn(usize) -> Vec<usize>, enough: impl Fn(&[u32]) -> bool) -> bool {
    let mut moved = vec![false; at.len()];
    let mut cnt = nbhd_counts(g, at);
    loop {
        if enough(&cnt) {
            return true;
        }
        let here = score(&cnt);
        let mut best: Option<((u32, std::cmp::Reverse<usize>), usize, usize)> = None;
        for j in (0..at.len()).filter(|&j| !moved[j]) {
            for b in dests(j) {
                if b == at[j] {
                    continue;
                }
                let mut trial = cnt.clone();
                for x in g.closed_neighbors(at[j]) {
                    trial[x] -= 1;
                }
                for x in g.closed_neighbors(b) {
                    trial[x] += 1;
                }
                let sc = score(&trial);
                if sc > here && best.as_ref().is_none_or(|(s, _, _)| sc > *s) {
                    best = Some((sc, j, b));
                }
            }
        }
        let Some((_, j, b)) = best else { return false };
        for x in g.closed_neighbors(at[j]) {
            cnt[x] -= 1;
        }
        for x in g.closed_neighbors(b) {
            cnt[x] += 1;
        }
        at[j] = b;
        moved[j] = true;
    }
}

/// One spy sits on each meeting; the free spies wander randomly until every
/// closed neighbourhood holds at least r^/m of them.
#[derive(Debug, Clone)]
pub struct QCommonSpy {
    pub attempts: usize,
    pending: Vec<Audit>,
}

impl Default for QCommonSpy {
    fn default() -> Self {
        QCommonSpy { attempts: 50, pending: Vec::new() }
    }
}

impl QCommonSpy {
    pub fn new(attempts: usize) -> Self {
        QCommonSpy { attempts: attempts.max(1), pending: Vec::new() }
    }
}

impl SpyStrategy for QCommonSpy {
    fn id(&self) -> &'static str {
        "spy.q-common"
    }

    fn place(&mut self, spec: &GameSpec, revs: &[u32], rng: &mut GameRng) -> Result<Vec<u32>> {
        let g = &spec.graph;
        let (m, n) = (spec.m, spec.n());
        let meets = meetings(revs, m);
        if meets.len() as u32 > spec.s {
            return Err(Error::pre(format!("{} meetings, {} spies", meets.len(), spec.s)));
        }
        let free = (spec.s as usize) - meets.len();
        let need = free_revs(revs, m);
        let enough = |cnt: &[u32]| cnt.iter().all(|&c| m * c >= need);
        let mut at: Vec<usize> = Vec::new();
        for _ in 0..self.attempts {
            at = (0..free).map(|_| rng.gen_range(0..n)).collect();
            if enough(&nbhd_counts(g, &at)) {
                break;
            }
        }
        let all: Vec<usize> = (0..n).collect();
        let ok = greedy_stabilize(g, &mut at, |_| all.clone(), enough);
        self.pending = vec![Audit::new("placement_stable", ok, "")];
        let mut spies = vec![0u32; n];
        for v in meets.into_iter().chain(at) {
            spies[v] += 1;
        }
        Ok(spies)
    }

    fn respond(&mut self, spec: &GameSpec, turn: &SpyTurn<'_>, rng: &mut GameRng) -> Result<MoveSet> {
        let g = &spec.graph;
        let m = spec.m;
        let revs = &turn.current.revs;
        let units = crate::game::vertices_from_counts(&turn.current.spies);
        let meets = meetings(revs, m);
        // off the q-common hypotheses a full cover can be missing; cover what we can and lose
        let plan = min_movers_cover(g, &meets, &units).unwrap_or_else(|_| partial_cover(g, &meets, &units).0);
        let mut dest: Vec<Option<usize>> = vec![None; units.len()];
        for &(x, j) in &plan.assignment {
            dest[j] = Some(x);
        }
        let free: Vec<usize> = (0..units.len()).filter(|&j| dest[j].is_none()).collect();
        let origin: Vec<usize> = free.iter().map(|&j| units[j]).collect();
        let need = free_revs(revs, m);
        let enough = |cnt: &[u32]| cnt.iter().all(|&c| m * c >= need);

        let mut found = None;
        for _ in 0..self.attempts {
            let at: Vec<usize> = origin.iter().map(|&v| *g.neighbors(v).choose(rng).unwrap_or(&v)).collect();
            if enough(&nbhd_counts(g, &at)) {
                found = Some(at);
                break;
            }
        }
        let fallback = found.is_none();
        let at = match found {
            Some(at) => at,
            None => {
                let mut at = origin.clone();
                if !greedy_stabilize(g, &mut at, |j| g.closed_neighbors(origin[j]), enough) {
                    return Err(Error::StabilizationFailed { attempts: self.attempts });
                }
                at
            }
        };
        for (k, &j) in free.iter().enumerate() {
            dest[j] = Some(at[k]);
        }
        self.pending = vec![Audit::new("random_phase", true, format!("movers={} fallback={fallback}", plan.movers))];
        Ok(unit_moves(units.iter().zip(dest).map(|(&v, d)| (v, d.expect("assigned")))))
    }

    fn audit(&mut self, spec: &GameSpec, pos: &Position) -> Vec<Audit> {
        let mut out = std::mem::take(&mut self.pending);
        out.push(covered_audit(&pos.revs, &pos.spies, spec.m));
        out.push(match stability_deficit(&spec.graph, &pos.revs, &pos.spies, spec.m) {
            None => Audit::new("stable", true, ""),
            Some(v) => Audit::new("stable", false, format!("vertex {v}")),
        });
        out
    }

    fn clone_box(&self) -> Box<dyn SpyStrategy> {
        Box::new(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spy_count_at_forty() {
        assert_eq!(qcommon_spy_count(40, 0.4, 2, 24, 1.0), 60);
        assert_eq!(qcommon_spy_count(41, 0.4, 2, 24, 1.0), 60);
    }

    #[test]
    fn deficit_counts_only_free_spies() {
        let g = crate::graph::path(3).unwrap();
        // meeting at 0 binds its spy; one free revolutionary at 2 needs half a spy nearby
        assert_eq!(stability_deficit(&g, &[2, 0, 1], &[1, 0, 0], 2), Some(0));
        assert_eq!(stability_deficit(&g, &[2, 0, 1], &[1, 1, 0], 2), None);
    }
}
