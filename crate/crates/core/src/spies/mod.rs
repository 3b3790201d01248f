//! Spy strategies.

mod basic;
mod bipartite;
mod dominating;
mod kpartite;
mod local;
mod qcommon;
mod webbed;

pub use basic::{GreedyCoverSpy, RandomSpy, TrivialFollower};
pub use bipartite::{
    greedy_migration, BipartiteGeneralSpy, BipartiteM2Spy, BipartiteM3Spy, GeneralRound, M2Params, M3Params, Sides, CLOSED_FORM_TOL,
};
pub use dominating::{DominatingVertexSpy, DominationSetSpy};
pub use kpartite::{kpartite_spy_count, KPartiteSpy};
pub use qcommon::{qcommon_spy_count, stability_deficit, QCommonSpy};
pub use webbed::{webbed_spy_counts, WebbedTreeSpy};

use crate::game::{meetings, MoveSet};
use crate::strategy::Audit;

/// Audit that every meeting holds a spy.
pub fn covered_audit(revs: &[u32], spies: &[u32], m: u32) -> Audit {
    match crate::game::unguarded_meeting(revs, spies, m) {
        None => Audit::new("covered", true, ""),
        Some(v) => Audit::new("covered", false, format!("unguarded meeting at {v}")),
    }
}

/// Audit that every vertex holds at least floor(r(v)/m) spies.
pub fn conformal_audit(revs: &[u32], spies: &[u32], m: u32) -> Audit {
    match (0..revs.len()).find(|&v| spies[v] < revs[v] / m) {
        None => Audit::new("conformal", true, ""),
        Some(v) => Audit::new("conformal", false, format!("vertex {v}: {} spies, {} revolutionaries", spies[v], revs[v])),
    }
}

/// Free spies per vertex once one spy per covered meeting is bound.
pub fn free_spies(revs: &[u32], spies: &[u32], m: u32) -> Vec<u32> {
    (0..revs.len()).map(|v| if revs[v] >= m && spies[v] > 0 { spies[v] - 1 } else { spies[v] }).collect()
}

/// Revolutionaries not bound to a meeting (each meeting binds exactly m).
pub fn free_revs(revs: &[u32], m: u32) -> u32 {
    let total: u32 = revs.iter().sum();
    total - m * meetings(revs, m).len() as u32
}

/// Builds a move set from `(from, to)` pairs, one piece each.
pub(crate) fn unit_moves(pairs: impl IntoIterator<Item = (usize, usize)>) -> MoveSet {
    let mut ms = MoveSet::new();
    for (a, b) in pairs {
        ms.add(a, b, 1);
    }
    ms
}
