//! Piece configurations as count vectors and their one-move successors.

use crate::graph::Graph;
use std::collections::HashSet;

/// All count vectors over `n` vertices summing to `k`, lexicographically descending.
pub fn all_multisets(n: usize, k: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fill(&mut cur, 0, k, &mut out);
    out
}

fn fill(cur: &mut Vec<u32>, i: usize, left: u32, out: &mut Vec<Vec<u32>>) {
    if i + 1 == cur.len() {
        cur[i] = left;
        out.push(cur.clone());
        cur[i] = 0;
        return;
    }
    for c in (0..=left).rev() {
        cur[i] = c;
        fill(cur, i + 1, left - c, out);
    }
    cur[i] = 0;
}

/// Distinct count vectors reachable when every piece stays or steps to a neighbour.
pub fn successors(g: &Graph, counts: &[u32]) -> Vec<Vec<u32>> {
    let occupied: Vec<usize> = (0..counts.len()).filter(|&v| counts[v] > 0).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut acc = vec![0u32; counts.len()];
    spread(g, counts, &occupied, 0, &mut acc, &mut seen, &mut out);
    out
}

fn spread(
    g: &Graph,
    counts: &[u32],
    occupied: &[usize],
    i: usize,
    acc: &mut Vec<u32>,
    seen: &mut HashSet<Vec<u32>>,
    out: &mut Vec<Vec<u32>>,
) {
    if i == occupied.len() {
        if seen.insert(acc.clone()) {
            out.push(acc.clone());
        }
        return;
    }
    let v = occupied[i];
    let targets = g.closed_neighbors(v);
    let mut split = vec![0u32; targets.len()];
    distribute(g, counts, occupied, i, &targets, &mut split, 0, counts[v], acc, seen, out);
}

#[allow(clippy::too_many_arguments)]
fn distribute(
    g: &Graph,
    counts: &[u32],
    occupied: &[usize],
    i: usize,
    targets: &[usize],
    split: &mut Vec<u32>,
    j: usize,
    left: u32,
    acc: &mut Vec<u32>,
    seen: &mut HashSet<Vec<u32>>,
    out: &mut Vec<Vec<u32>>,
) {
    if j + 1 == targets.len() {
        acc[targets[j]] += left;
        spread(g, counts, occupied, i + 1, acc, seen, out);
        acc[targets[j]] -= left;
        return;
    }
    for c in 0..=left {
        acc[targets[j]] += c;
        distribute(g, counts, occupied, i, targets, split, j + 1, left - c, acc, seen, out);
        acc[targets[j]] -= c;
    }
}
