//! One round of the dominating-vertex game on a small local graph.
//!
//! Local vertex 0 is the dominating vertex. A position is stable when every
//! other local vertex x holds exactly floor(revs[x]/m) spies; spare spies sit at 0.

use crate::error::{Error, Result};
use crate::kernels::{hall_violator, max_matching, BipartiteInstance};

pub(crate) struct LocalReply {
    /// Imagined revolutionary counts after the move.
    pub after: Vec<u32>,
    /// Spy counts after the reply.
    pub spies: Vec<u32>,
    /// Spy flows `(from, to, count)` between local vertices.
    pub moves: Vec<(usize, usize, u32)>,
}

pub(crate) fn is_stable(revs: &[u32], spies: &[u32], m: u32) -> bool {
    (1..revs.len()).all(|x| spies[x] == revs[x] / m)
}

/// Replays `flows` on the imagined revolutionaries and restores stability.
///
/// Tokens keep the meeting they started in; a new meeting may take the spy of
/// any old meeting sharing a token with it, or a spare spy from vertex 0.
/// `label` names the local game in errors.
pub(crate) fn reply(label: usize, before: &[u32], spies: &[u32], flows: &[(usize, usize, u32)], m: u32) -> Result<LocalReply> {
    let k = before.len();
    if !is_stable(before, spies, m) {
        return Err(Error::LocalGameInfeasible { vertex: label, reason: "position is not stable".into() });
    }
    // token lists: Some(meeting) for tokens in an old meeting, meeting tokens first
    let mut groups_at: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut tokens: Vec<Vec<Option<usize>>> = Vec::with_capacity(k);
    let mut x_count = 0usize;
    for x in 0..k {
        let mut list = Vec::with_capacity(before[x] as usize);
        if x > 0 {
            for _ in 0..before[x] / m {
                groups_at[x].push(x_count);
                for _ in 0..m {
                    list.push(Some(x_count));
                }
                x_count += 1;
            }
        }
        while list.len() < before[x] as usize {
            list.push(None);
        }
        tokens.push(list);
    }
    let mut arrivals: Vec<Vec<Option<usize>>> = vec![Vec::new(); k];
    for &(a, b, c) in flows {
        if a >= k || b >= k {
            return Err(Error::LocalGameInfeasible { vertex: label, reason: format!("flow {a}->{b} leaves the local graph") });
        }
        if (tokens[a].len() as u32) < c {
            return Err(Error::LocalGameInfeasible {
                vertex: label,
                reason: format!("{c} leave local vertex {a} holding {}", tokens[a].len()),
            });
        }
        for _ in 0..c {
            let t = tokens[a].pop().expect("checked");
            arrivals[b].push(t);
        }
    }
    for x in 0..k {
        let arr = std::mem::take(&mut arrivals[x]);
        tokens[x].extend(arr);
    }
    let after: Vec<u32> = tokens.iter().map(|t| t.len() as u32).collect();

    // new meetings away from 0, m consecutive tokens each
    let mut y_at: Vec<usize> = Vec::new();
    let mut y_groups: Vec<Vec<usize>> = Vec::new();
    for x in 1..k {
        for chunk in tokens[x].chunks(m as usize).take((after[x] / m) as usize) {
            let mut olds: Vec<usize> = chunk.iter().flatten().copied().collect();
            olds.sort_unstable();
            olds.dedup();
            y_at.push(x);
            y_groups.push(olds);
        }
    }
    let spare = spies[0] as usize;
    let mut x_at = vec![0usize; x_count];
    for (x, gs) in groups_at.iter().enumerate() {
        for &g in gs {
            x_at[g] = x;
        }
    }
    let mut inst = BipartiteInstance::new(y_at.len(), x_count + spare);
    for (j, olds) in y_groups.iter().enumerate() {
        let (same, other): (Vec<usize>, Vec<usize>) = olds.iter().partition(|&&g| x_at[g] == y_at[j]);
        for g in same.into_iter().chain(other) {
            inst.add_edge(j, g);
        }
        for p in 0..spare {
            inst.add_edge(j, x_count + p);
        }
    }
    let matching = max_matching(&inst);
    if !matching.saturates_left() {
        let violator = hall_violator(&inst).unwrap_or_default().into_iter().map(|j| y_at[j]).collect();
        return Err(Error::NoCover { violator });
    }
    let mut moves = Vec::new();
    let mut new_spies = vec![0u32; k];
    let mut used = vec![false; x_count + spare];
    for (j, right) in matching.pairs() {
        used[right] = true;
        let from = if right < x_count { x_at[right] } else { 0 };
        new_spies[y_at[j]] += 1;
        if from != y_at[j] {
            moves.push((from, y_at[j], 1));
        }
    }
    for g in 0..x_count {
        if !used[g] {
            new_spies[0] += 1;
            if x_at[g] != 0 {
                moves.push((x_at[g], 0, 1));
            }
        }
    }
    new_spies[0] += used[x_count..].iter().filter(|u| !**u).count() as u32;
    Ok(LocalReply { after, spies: new_spies, moves })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn meeting_moves_with_its_spy() {
        // star: 0 centre, leaves 1..3; two revs at 1 with a spy move to 2
        let r = reply(0, &[0, 2, 0, 0], &[0, 1, 0, 0], &[(1, 2, 2)], 2).unwrap();
        assert_eq!(r.after, vec![0, 0, 2, 0]);
        assert_eq!(r.spies, vec![0, 0, 1, 0]);
        assert_eq!(r.moves, vec![(1, 2, 1)]);
    }

    #[test]
    fn spare_spy_covers_fresh_meeting() {
        let r = reply(0, &[1, 1, 0, 0], &[1, 0, 0, 0], &[(0, 3, 1), (1, 3, 1)], 2).unwrap();
        assert_eq!(r.spies, vec![0, 0, 0, 1]);
        assert!(is_stable(&r.after, &r.spies, 2));
    }

    #[test]
    fn dissolved_meeting_returns_spy() {
        let r = reply(0, &[0, 2, 0], &[0, 1, 0], &[(1, 0, 1)], 2).unwrap();
        assert_eq!(r.spies, vec![1, 0, 0]);
        assert_eq!(r.moves, vec![(1, 0, 1)]);
    }

    #[test]
    fn rejects_unstable_input() {
        assert!(matches!(reply(7, &[0, 2], &[1, 0], &[], 2), Err(Error::LocalGameInfeasible { vertex: 7, .. })));
    }
}
