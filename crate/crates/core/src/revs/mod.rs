//! Revolutionary strategies.

mod basic;
mod bipartite;
mod constructions;
mod hypercube;
mod pullback;
mod swarm;

pub use basic::{RandomRev, SingleThreatRev};
pub use bipartite::{BaseGame, BipartiteAttack};
pub use constructions::{DomSharpAttack, ExtensionAttack, SplitAttack};
pub use hypercube::{plan_walk, simulate_walk, HypercubeGeneralAttack, HypercubeM2Attack, ReplicatedHypercubeAttack, WalkPlan, WalkReport};
pub use pullback::RetractPullback;
pub use swarm::{best_swarm, AlternatingSwarmRev, KPartiteLowerAttack, SideShuffleRev, SwarmRev};

use crate::error::{Error, Result};
use crate::game::MoveSet;
use crate::graph::Graph;

/// A vertex x with no spy in N[x] that at least m revolutionaries can reach,
/// and the move sending m of them there (those already on x stay).
pub fn single_threat(g: &Graph, m: u32, revs: &[u32], spies: &[u32]) -> Option<MoveSet> {
    for x in 0..g.n() {
        let near = g.closed_neighbors(x);
        if near.iter().any(|&v| spies[v] > 0) {
            continue;
        }
        if near.iter().map(|&v| revs[v]).sum::<u32>() < m {
            continue;
        }
        let mut need = m.saturating_sub(revs[x]);
        let mut ms = MoveSet::new();
        for &v in near.iter().filter(|&&v| v != x) {
            let k = revs[v].min(need);
            ms.add(v, x, k);
            need -= k;
        }
        return Some(ms);
    }
    None
}

/// One revolutionary on each of the vertices `0..r`.
pub(crate) fn first_vertices(n: usize, r: u32, id: &str) -> Result<Vec<u32>> {
    if (r as usize) > n {
        return Err(mismatch(id, &format!("{r} revolutionaries need {r} distinct vertices, graph has {n}")));
    }
    let mut out = vec![0u32; n];
    for v in out.iter_mut().take(r as usize) {
        *v = 1;
    }
    Ok(out)
}

pub(crate) fn mismatch(id: &str, reason: &str) -> Error {
    Error::StrategyMismatch { id: id.into(), reason: reason.into() }
}
