//! Attacks tailored to the extension, split and domination constructions.

use super::{first_vertices, mismatch, single_threat};
use crate::error::Result;
use crate::game::{spies_can_guard, GameSpec, MoveSet, Position};
use crate::graph::{domination_sharp_construction, split_graph_construction, DomSharpLayout, Graph, SplitLayout};
use crate::strategy::{GameRng, RevStrategy};
use crate::util::binomial;

fn uncovered(revs: &[u32], spies: &[u32]) -> Vec<usize> {
    (0..revs.len()).filter(|&v| revs[v] > 0 && spies[v] == 0).collect()
}

/// Revolutionaries on `0..r`. Every unwatched revolutionary heads for a common
/// neighbour that no spy can see.
#[derive(Debug, Clone, Default)]
pub struct ExtensionAttack;

impl ExtensionAttack {
    fn gather(g: &Graph, m: u32, revs: &[u32], spies: &[u32]) -> Option<MoveSet> {
        let t = uncovered(revs, spies);
        if t.iter().map(|&v| revs[v]).sum::<u32>() < m {
            return None;
        }
        let x = (0..g.n()).find(|&x| {
            revs[x] == 0 && spies[x] == 0 && t.iter().all(|&v| g.has_edge(v, x)) && g.neighbors(x).iter().all(|&u| spies[u] == 0)
        })?;
        let mut ms = MoveSet::new();
        for &v in &t {
            ms.add(v, x, revs[v]);
        }
        Some(ms)
    }
}

impl RevStrategy for ExtensionAttack {
    fn id(&self) -> &'static str {
        "rev.extension"
    }

    fn place(&mut self, spec: &GameSpec, _rng: &mut GameRng) -> Result<Vec<u32>> {
        first_vertices(spec.n(), spec.r, self.id())
    }

    fn respond(&mut self, spec: &GameSpec, pos: &Position, _rng: &mut GameRng) -> Result<MoveSet> {
        let g = &spec.graph;
        Ok(Self::gather(g, spec.m, &pos.revs, &pos.spies)
            .or_else(|| single_threat(g, spec.m, &pos.revs, &pos.spies))
            .unwrap_or_default())
    }

    fn clone_box(&self) -> Box<dyn RevStrategy> {
        Box::new(self.clone())
    }
}

fn split_layout(g: &Graph, m: u32, r: u32) -> Option<SplitLayout> {
    let (m, r) = (m as usize, r as usize);
    if r + binomial(r as u64, m as u64) as usize != g.n() {
        return None;
    }
    let (h, layout) = split_graph_construction(m, r).ok()?;
    (h.edges() == g.edges()).then_some(layout)
}

/// One revolutionary per clique vertex; m unwatched ones meet on the
/// independent vertex joined to exactly them.
#[derive(Debug, Clone, Default)]
pub struct SplitAttack {
    layout: Option<SplitLayout>,
}

impl RevStrategy for SplitAttack {
    fn id(&self) -> &'static str {
        "rev.split"
    }

    fn place(&mut self, spec: &GameSpec, _rng: &mut GameRng) -> Result<Vec<u32>> {
        let layout = split_layout(&spec.graph, spec.m, spec.r).ok_or_else(|| mismatch(self.id(), "graph is not the split construction for (m, r)"))?;
        self.layout = Some(layout);
        first_vertices(spec.n(), spec.r, self.id())
    }

    fn respond(&mut self, spec: &GameSpec, pos: &Position, _rng: &mut GameRng) -> Result<MoveSet> {
        let (revs, spies) = (&pos.revs, &pos.spies);
        if let Some(layout) = &self.layout {
            let free = |q: usize| revs[q] > 0 && spies[q] == 0;
            let hit = layout.subsets.iter().enumerate().find(|(i, a)| spies[layout.r + i] == 0 && a.iter().all(|&q| free(q)));
            if let Some((i, a)) = hit {
                let mut ms = MoveSet::new();
                for &q in a {
                    ms.add(q, layout.r + i, 1);
                }
                return Ok(ms);
            }
        }
        Ok(single_threat(&spec.graph, spec.m, revs, spies).unwrap_or_default())
    }

    fn clone_box(&self) -> Box<dyn RevStrategy> {
        Box::new(self.clone())
    }
}

fn domsharp_layout(g: &Graph, m: u32, r: u32) -> Option<DomSharpLayout> {
    let (m, r) = (m as usize, r as usize);
    let block = 1 + binomial(r as u64, m as u64) as usize;
    let rest = g.n().checked_sub(r)?;
    if rest == 0 || rest % block != 0 {
        return None;
    }
    let (h, layout) = domination_sharp_construction(rest / block, m, r).ok()?;
    (h.edges() == g.edges()).then_some(layout)
}

/// Revolutionaries on R. Pick a T vertex v holding k-1 spies and send k
/// disjoint unwatched m-sets A to the vertices u(A, v) that only v can see.
#[derive(Debug, Clone, Default)]
pub struct DomSharpAttack {
    layout: Option<DomSharpLayout>,
}

impl DomSharpAttack {
    /// k disjoint subsets of `free` whose u-vertex at column `v` is empty.
    fn disjoint_sets(layout: &DomSharpLayout, spies: &[u32], free: &[bool], v: usize, k: usize) -> Option<Vec<usize>> {
        fn dfs(layout: &DomSharpLayout, spies: &[u32], used: &mut Vec<bool>, v: usize, k: usize, from: usize, out: &mut Vec<usize>) -> bool {
            if out.len() == k {
                return true;
            }
            for i in from..layout.subsets.len() {
                let a = &layout.subsets[i];
                if spies[layout.u_vertex(i, v)] > 0 || a.iter().any(|&q| used[q]) {
                    continue;
                }
                a.iter().for_each(|&q| used[q] = true);
                out.push(i);
                if dfs(layout, spies, used, v, k, i + 1, out) {
                    return true;
                }
                out.pop();
                a.iter().for_each(|&q| used[q] = false);
            }
            false
        }
        // vertices that are not free count as used
        let mut used: Vec<bool> = free.iter().map(|&f| !f).collect();
        let mut out = Vec::new();
        dfs(layout, spies, &mut used, v, k, 0, &mut out).then_some(out)
    }

    fn strike(&self, g: &Graph, m: u32, revs: &[u32], spies: &[u32]) -> Option<MoveSet> {
        let layout = self.layout.as_ref()?;
        let free: Vec<bool> = (0..g.n()).map(|q| revs[q] > 0 && spies[q] == 0).collect();
        let mut load = vec![0u32; layout.t];
        for (q, &c) in spies.iter().enumerate() {
            if q < layout.t {
                load[q] += c;
            } else if let Some((_, j)) = layout.u_coords(q) {
                load[j] += c;
            }
        }
        let mut order: Vec<usize> = (0..layout.t).collect();
        order.sort_by_key(|&v| (load[v], v));
        for v in order {
            let k = spies[v] as usize + 1;
            let Some(sets) = Self::disjoint_sets(layout, spies, &free, v, k) else { continue };
            let mut ms = MoveSet::new();
            for &i in &sets {
                for &q in &layout.subsets[i] {
                    ms.add(q, layout.u_vertex(i, v), 1);
                }
            }
            if !spies_can_guard(g, m, &ms.apply_to(revs), spies) {
                return Some(ms);
            }
        }
        None
    }
}

impl RevStrategy for DomSharpAttack {
    fn id(&self) -> &'static str {
        "rev.domsharp"
    }

    fn place(&mut self, spec: &GameSpec, _rng: &mut GameRng) -> Result<Vec<u32>> {
        let layout = domsharp_layout(&spec.graph, spec.m, spec.r).ok_or_else(|| mismatch(self.id(), "graph is not the domination construction for (m, r)"))?;
        let mut out = vec![0u32; spec.n()];
        for i in 0..layout.r {
            out[layout.r_vertex(i)] = 1;
        }
        self.layout = Some(layout);
        Ok(out)
    }

    fn respond(&mut self, spec: &GameSpec, pos: &Position, _rng: &mut GameRng) -> Result<MoveSet> {
        let g = &spec.graph;
        Ok(self
            .strike(g, spec.m, &pos.revs, &pos.spies)
            .or_else(|| single_threat(g, spec.m, &pos.revs, &pos.spies))
            .unwrap_or_default())
    }

    fn clone_box(&self) -> Box<dyn RevStrategy> {
        Box::new(self.clone())
    }
}
