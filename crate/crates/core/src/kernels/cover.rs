use super::matching::{hall_violator, max_matching, BipartiteInstance};
use crate::error::{Error, Result};
use crate::graph::Graph;
use serde::{Deserialize, Serialize};

/// Assignment of one distinct spy to each meeting vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverPlan {
    /// `(meeting vertex, spy index)` in meeting order.
    pub assignment: Vec<(usize, usize)>,
    /// Spies that must leave their vertex.
    pub movers: usize,
}

/// Covers every meeting with a distinct spy from its closed neighbourhood while
/// keeping as many spies in place as possible.
///
/// `spies[i]` is the vertex of spy i. Solved as a min-cost assignment (cost 0
/// for a spy already on the meeting, 1 for a neighbour).
pub fn min_movers_cover(g: &Graph, meetings: &[usize], spies: &[usize]) -> Result<CoverPlan> {
    let mut feasible = BipartiteInstance::new(meetings.len(), spies.len());
    for (i, &x) in meetings.iter().enumerate() {
        for (j, &v) in spies.iter().enumerate() {
            if g.in_closed(x, v) {
                feasible.add_edge(i, j);
            }
        }
    }
    if let Some(bad) = hall_violator(&feasible) {
        return Err(Error::NoCover { violator: bad.into_iter().map(|i| meetings[i]).collect() });
    }
    if meetings.is_empty() {
        return Ok(CoverPlan { assignment: Vec::new(), movers: 0 });
    }
    const FORBIDDEN: i64 = 1 << 40;
    let cost: Vec<Vec<i64>> = meetings
        .iter()
        .map(|&x| {
            spies
                .iter()
                .map(|&v| if v == x { 0 } else if g.has_edge(x, v) { 1 } else { FORBIDDEN })
                .collect()
        })
        .collect();
    let cols = assignment(&cost);
    let mut movers = 0;
    let mut plan = Vec::with_capacity(meetings.len());
    for (i, &j) in cols.iter().enumerate() {
        debug_assert!(cost[i][j] < FORBIDDEN);
        movers += cost[i][j] as usize;
        plan.push((meetings[i], j));
    }
    Ok(CoverPlan { assignment: plan, movers })
}

/// Best-effort variant: a maximum set of meetings covered, fewest movers among
/// maximum covers not guaranteed. Returns the plan and the uncovered meetings.
pub fn partial_cover(g: &Graph, meetings: &[usize], spies: &[usize]) -> (CoverPlan, Vec<usize>) {
    let mut inst = BipartiteInstance::new(meetings.len(), spies.len());
    for (i, &x) in meetings.iter().enumerate() {
        // residents first so the augmenting search prefers them
        let mut order: Vec<usize> = (0..spies.len()).filter(|&j| g.in_closed(x, spies[j])).collect();
        order.sort_by_key(|&j| (spies[j] != x, j));
        for j in order {
            inst.add_edge(i, j);
        }
    }
    let m = max_matching(&inst);
    let mut plan = Vec::new();
    let mut missing = Vec::new();
    let mut movers = 0;
    for (i, &x) in meetings.iter().enumerate() {
        match m.left_to_right[i] {
            Some(j) => {
                movers += usize::from(spies[j] != x);
                plan.push((x, j));
            }
            None => missing.push(x),
        }
    }
    (CoverPlan { assignment: plan, movers }, missing)
}

/// Rectangular Hungarian method (rows <= cols); returns the column of each row.
fn assignment(cost: &[Vec<i64>]) -> Vec<usize> {
    let n = cost.len();
    let m = cost[0].len();
    assert!(n <= m);
    const INF: i64 = i64::MAX / 4;
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; m + 1];
    let mut p = vec![0usize; m + 1];
    let mut way = vec![0usize; m + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![INF; m + 1];
        let mut used = vec![false; m + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = INF;
            let mut j1 = 0;
            for j in 1..=m {
                if !used[j] {
                    let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=m {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut row_to_col = vec![0; n];
    for j in 1..=m {
        if p[j] != 0 {
            row_to_col[p[j] - 1] = j - 1;
        }
    }
    row_to_col
}
