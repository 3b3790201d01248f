//! Bounded-depth exhaustive spy adversary against a fixed revolutionary strategy.

use super::space::{all_multisets, successors};
use super::state_cap;
use crate::error::{Error, Result};
use crate::game::{spies_can_guard, unguarded_meeting, GameSpec, Position};
use crate::strategy::{GameRng, RevStrategy};
use crate::util::multiset_count;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdversaryReport {
    /// True when every spy placement and reply loses within the horizon.
    pub rev_always_wins: bool,
    pub placements: u64,
    /// Positions at which the strategy was asked to move.
    pub nodes: u64,
    /// Spy count vectors along a surviving line, placement first.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub survivor: Option<Vec<Vec<u32>>>,
}

/// Plays `rev` against every spy placement and every spy reply for `horizon`
/// rounds. The final round is settled by a guard matching, which is equivalent
/// to trying every reply.
pub fn exhaustive_adversary(spec: &GameSpec, rev: &dyn RevStrategy, horizon: u32, seed: u64) -> Result<AdversaryReport> {
    exhaustive_adversary_over(spec, rev, horizon, seed, None)
}

/// As `exhaustive_adversary`, restricted to the given spy placements.
pub fn exhaustive_adversary_over(
    spec: &GameSpec,
    rev: &dyn RevStrategy,
    horizon: u32,
    seed: u64,
    placements: Option<Vec<Vec<u32>>>,
) -> Result<AdversaryReport> {
    let mut rng = GameRng::seed_from_u64(seed);
    let mut root = rev.clone_box();
    let revs = root.place(spec, &mut rng)?;
    let mut report = AdversaryReport { rev_always_wins: true, placements: 0, nodes: 0, survivor: None };
    let placements = match placements {
        Some(p) => p,
        None => {
            let count = multiset_count(spec.n() as u64, spec.s as u64);
            if count > state_cap() {
                return Err(Error::CapExceeded { what: "spy placements".into(), size: count, cap: state_cap() });
            }
            all_multisets(spec.n(), spec.s)
        }
    };
    for spies in placements {
        report.placements += 1;
        if spec.initial_check && unguarded_meeting(&revs, &spies, spec.m).is_some() {
            continue;
        }
        let mut line = vec![spies.clone()];
        let pos = Position::placed(revs.clone(), spies);
        if !branch(spec, root.clone_box(), rng.clone(), pos, horizon, &mut report, &mut line)? {
            report.rev_always_wins = false;
            report.survivor = Some(line);
            break;
        }
    }
    Ok(report)
}

fn branch(
    spec: &GameSpec,
    mut rev: Box<dyn RevStrategy>,
    mut rng: GameRng,
    pos: Position,
    left: u32,
    report: &mut AdversaryReport,
    line: &mut Vec<Vec<u32>>,
) -> Result<bool> {
    if left == 0 {
        return Ok(false);
    }
    report.nodes += 1;
    let mv = rev.respond(spec, &pos, &mut rng)?;
    let mut after = pos.clone();
    after.apply_rev_move(spec, &mv)?;
    let g = &spec.graph;
    if left == 1 {
        return Ok(!spies_can_guard(g, spec.m, &after.revs, &after.spies));
    }
    for reply in successors(g, &after.spies) {
        if unguarded_meeting(&after.revs, &reply, spec.m).is_some() {
            continue;
        }
        let mut next = after.clone();
        next.spies = reply.clone();
        next.phase = crate::game::Phase::RevToMove;
        next.round += 1;
        line.push(reply);
        if !branch(spec, rev.clone_box(), rng.clone(), next, left - 1, report, line)? {
            return Ok(false);
        }
        line.pop();
    }
    Ok(true)
}
