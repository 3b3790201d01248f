use super::{conformal_audit, covered_audit, local};
use crate::error::{Error, Result};
use crate::game::{GameSpec, MoveSet, Position};
use crate::graph::{recognize_webbed_tree, RootedTree};
use crate::strategy::{Audit, GameRng, SpyStrategy, SpyTurn};

/// Spy counts s(v) = floor(w(v)/m) - sum over children x of floor(w(x)/m),
/// where w(v) counts revolutionaries among the descendants of v.
pub fn webbed_spy_counts(tree: &RootedTree, revs: &[u32], m: u32) -> Vec<u32> {
    let w = tree.subtree_sums(revs);
    (0..tree.n()).map(|v| w[v] / m - tree.children(v).iter().map(|&x| w[x] / m).sum::<u32>()).collect()
}

/// floor(r/m) spies on a webbed tree. Each round is split into independent
/// dominating-vertex games on every parent together with its children.
#[derive(Debug, Clone, Default)]
pub struct WebbedTreeSpy {
    tree: Option<RootedTree>,
    depth: Vec<usize>,
    pending: Vec<Audit>,
}

impl WebbedTreeSpy {
    pub fn new(tree: RootedTree) -> Self {
        WebbedTreeSpy { tree: Some(tree), depth: Vec::new(), pending: Vec::new() }
    }

    /// Finds a witness tree when the game starts.
    pub fn auto() -> Self {
        Self::default()
    }

    fn setup(&mut self, spec: &GameSpec) -> Result<()> {
        let g = &spec.graph;
        if self.tree.is_none() {
            self.tree = recognize_webbed_tree(g);
        }
        let Some(tree) = &self.tree else {
            return Err(Error::StrategyMismatch { id: self.id().into(), reason: "graph is not a webbed tree".into() });
        };
        if tree.n() != g.n() || !tree.webs(g) {
            return Err(Error::StrategyMismatch { id: self.id().into(), reason: "tree does not witness the graph".into() });
        }
        if spec.s < spec.r / spec.m {
            return Err(Error::pre(format!("needs floor(r/m) = {} spies, have {}", spec.r / spec.m, spec.s)));
        }
        let mut depth = vec![0; g.n()];
        for &v in tree.bfs_order() {
            if let Some(p) = tree.parent(v) {
                depth[v] = depth[p] + 1;
            }
        }
        self.depth = depth;
        Ok(())
    }

    fn target(&self, spec: &GameSpec, revs: &[u32]) -> Vec<u32> {
        let tree = self.tree.as_ref().expect("set up");
        let mut s = webbed_spy_counts(tree, revs, spec.m);
        s[tree.root()] += spec.s - spec.r / spec.m;
        s
    }
}

impl SpyStrategy for WebbedTreeSpy {
    fn id(&self) -> &'static str {
        "spy.webbed-tree"
    }

    fn place(&mut self, spec: &GameSpec, revs: &[u32], _rng: &mut GameRng) -> Result<Vec<u32>> {
        self.setup(spec)?;
        Ok(self.target(spec, revs))
    }

    fn respond(&mut self, spec: &GameSpec, turn: &SpyTurn<'_>, _rng: &mut GameRng) -> Result<MoveSet> {
        if self.depth.len() != spec.n() {
            self.setup(spec)?;
        }
        let tree = self.tree.as_ref().expect("set up");
        let m = spec.m;
        let n = spec.n();
        let (revs, after) = (&turn.start.revs, &turn.current.revs);
        if turn.start.spies != self.target(spec, revs) {
            return Err(Error::LocalGameInfeasible { vertex: tree.root(), reason: "spy counts at round start break the invariant".into() });
        }
        let w = tree.subtree_sums(revs);
        let w2 = tree.subtree_sums(after);

        // pieces inside D(v) minus v at the start or after the move
        let mut wstar = vec![0u32; n];
        let mut credit = |x: usize, c: u32| {
            let mut a = tree.parent(x);
            while let Some(p) = a {
                wstar[p] += c;
                a = tree.parent(p);
            }
        };
        for v in 0..n {
            credit(v, revs[v] - turn.rev_move.outflow(v));
        }
        for f in turn.rev_move.flows() {
            let deeper = if self.depth[f.to] > self.depth[f.from] { f.to } else { f.from };
            credit(deeper, f.count);
        }

        let kids_floor = |v: usize, w: &[u32]| tree.children(v).iter().map(|&x| w[x] / m).sum::<u32>();
        let kids_sum = |v: usize, w: &[u32]| tree.children(v).iter().map(|&x| w[x]).sum::<u32>();
        let s_up: Vec<u32> = (0..n).map(|v| w[v] / m - wstar[v] / m).collect();
        let s_down: Vec<u32> = (0..n).map(|v| wstar[v] / m - kids_floor(v, &w)).collect();
        let r_up: Vec<u32> = (0..n).map(|v| w[v] - m * (wstar[v] / m)).collect();
        let r_down: Vec<u32> = (0..n).map(|v| wstar[v] - kids_sum(v, &w)).collect();

        // local index of each vertex inside its parent's game
        let mut slot = vec![0usize; n];
        for v in 0..n {
            for (i, &x) in tree.children(v).iter().enumerate() {
                slot[x] = i + 1;
            }
        }
        let mut flows: Vec<Vec<(usize, usize, u32)>> = vec![Vec::new(); n];
        for f in turn.rev_move.flows() {
            let (a, b) = (f.from, f.to);
            if tree.parent(b) == Some(a) {
                flows[a].push((0, slot[b], f.count));
            } else if tree.parent(a) == Some(b) {
                flows[b].push((slot[a], 0, f.count));
            } else {
                match tree.parent(a) {
                    Some(p) if tree.parent(b) == Some(p) => flows[p].push((slot[a], slot[b], f.count)),
                    _ => {
                        return Err(Error::LocalGameInfeasible { vertex: a, reason: format!("edge {a}-{b} joins no parent and child or siblings") });
                    }
                }
            }
        }

        let mut ms = MoveSet::new();
        let mut eq6 = true;
        for v in 0..n {
            let kids = tree.children(v);
            if kids.is_empty() {
                continue;
            }
            let mut before = vec![r_down[v]];
            let mut spies = vec![s_down[v]];
            for &x in kids {
                before.push(r_up[x]);
                spies.push(s_up[x]);
            }
            let reply = local::reply(v, &before, &spies, &flows[v], m)?;
            eq6 &= reply.after[0] == wstar[v] - kids_sum(v, &w2);
            for (i, &x) in kids.iter().enumerate() {
                eq6 &= reply.after[i + 1] == w2[x] - m * (wstar[x] / m);
            }
            let at = |i: usize| if i == 0 { v } else { kids[i - 1] };
            for (a, b, c) in reply.moves {
                ms.add(at(a), at(b), c);
            }
        }
        self.pending = vec![Audit::new("imagined_update", eq6, "")];
        Ok(ms)
    }

    fn audit(&mut self, spec: &GameSpec, pos: &Position) -> Vec<Audit> {
        let Some(tree) = &self.tree else { return Vec::new() };
        let want = self.target(spec, &pos.revs);
        let mut out = std::mem::take(&mut self.pending);
        out.push(match (0..pos.spies.len()).find(|&v| pos.spies[v] != want[v]) {
            None => Audit::new("invariant", true, ""),
            Some(v) => Audit::new("invariant", false, format!("vertex {v}: {} spies, formula {}", pos.spies[v], want[v])),
        });
        let w = tree.subtree_sums(&pos.revs);
        let below = tree.subtree_sums(&pos.spies);
        let extra = spec.s - spec.r / spec.m;
        let tel = (0..pos.spies.len()).all(|v| below[v] == w[v] / spec.m + if v == tree.root() { extra } else { 0 });
        out.push(Audit::new("telescoping", tel, ""));
        out.push(conformal_audit(&pos.revs, &pos.spies, spec.m));
        out.push(covered_audit(&pos.revs, &pos.spies, spec.m));
        out
    }

    fn clone_box(&self) -> Box<dyn SpyStrategy> {
        Box::new(self.clone())
    }
}
