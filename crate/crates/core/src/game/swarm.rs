use super::{GameSpec, MoveSet, Position};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// All revolutionaries outside `part` move into it.
///
/// Uncovered partial meetings are topped up first (fewest missing first), then
/// fresh meetings of size m go to empty unspied vertices, lowest index first.
/// Requires a complete multipartite graph whose parts have at least 2r vertices.
pub fn swarm_move(spec: &GameSpec, pos: &Position, part: usize) -> Result<MoveSet> {
    let g = &spec.graph;
    if !g.is_complete_multipartite() {
        return Err(Error::NotMultipartite);
    }
    let members = g.part_members().expect("labels checked");
    if part >= members.len() {
        return Err(Error::param(format!("no part {part}")));
    }
    if let Some(small) = members.iter().position(|p| p.len() < 2 * spec.r as usize) {
        return Err(Error::NotRLarge(format!("part {small} has {} < 2r vertices", members[small].len())));
    }
    Ok(swarm_move_unchecked(g, spec.m, &pos.revs, &pos.spies, &members[part]))
}

/// Swarm into `members`, assuming each member is adjacent to every vertex outside it.
pub fn swarm_move_unchecked(g: &Graph, m: u32, revs: &[u32], spies: &[u32], members: &[usize]) -> MoveSet {
    let mut inside = vec![false; g.n()];
    for &v in members {
        inside[v] = true;
    }
    let mut sources: Vec<(usize, u32)> = (0..g.n()).filter(|&v| !inside[v] && revs[v] > 0).map(|v| (v, revs[v])).collect();
    let mut remaining: u32 = sources.iter().map(|s| s.1).sum();
    let mut arrivals = vec![0u32; g.n()];

    let mut partial: Vec<usize> = members.iter().copied().filter(|&v| spies[v] == 0 && revs[v] > 0 && revs[v] < m).collect();
    partial.sort_by_key(|&v| (m - revs[v], v));
    for &v in &partial {
        let need = m - revs[v];
        if need > remaining {
            break;
        }
        arrivals[v] += need;
        remaining -= need;
    }
    for &v in members {
        if remaining < m {
            break;
        }
        if spies[v] == 0 && revs[v] == 0 {
            arrivals[v] += m;
            remaining -= m;
        }
    }
    if remaining > 0 {
        // leftovers gather on the fullest uncovered vertex still short of a meeting
        let target = members
            .iter()
            .copied()
            .filter(|&v| spies[v] == 0 && revs[v] + arrivals[v] < m)
            .max_by_key(|&v| (revs[v] + arrivals[v], std::cmp::Reverse(v)))
            .unwrap_or(members[0]);
        arrivals[target] += remaining;
    }

    let mut moves = MoveSet::new();
    let mut src = 0;
    for &v in members {
        let mut want = arrivals[v];
        while want > 0 {
            let (from, avail) = &mut sources[src];
            let take = want.min(*avail);
            moves.add(*from, v, take);
            *avail -= take;
            want -= take;
            if *avail == 0 {
                src += 1;
            }
        }
    }
    moves
}

/// New meetings a swarm into `members` forms: everyone else moves in, topping
/// up uncovered partial meetings fewest-missing first.
pub fn swarm_threat(members: &[usize], revs: &[u32], spies: &[u32], m: u32) -> u32 {
    let mut inside = vec![false; revs.len()];
    for &v in members {
        inside[v] = true;
    }
    let mut incoming: u32 = (0..revs.len()).filter(|&v| !inside[v]).map(|v| revs[v]).sum();
    let mut partial: Vec<u32> =
        members.iter().filter(|&&v| spies[v] == 0 && revs[v] > 0 && revs[v] < m).map(|&v| m - revs[v]).collect();
    partial.sort_unstable();
    let mut made = 0;
    for need in partial {
        if need > incoming {
            break;
        }
        incoming -= need;
        made += 1;
    }
    made + incoming / m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complete_multipartite;
    use std::sync::Arc;

    #[test]
    fn tops_up_then_fresh() {
        let g = Arc::new(complete_multipartite(&[8, 8]).unwrap());
        let spec = GameSpec::new(g, 3, 4, 0).unwrap();
        let mut revs = vec![0u32; 16];
        revs[0] = 2; // uncovered partial in part 0
        revs[8] = 1;
        revs[9] = 1;
        let pos = Position::placed(revs, vec![0; 16]);
        let mv = swarm_move(&spec, &pos, 0).unwrap();
        let after = mv.apply_to(&pos.revs);
        assert_eq!(after[0], 3);
        assert_eq!(after[8] + after[9], 0);
    }

    #[test]
    fn errors() {
        let spec = GameSpec::new(Arc::new(complete_multipartite(&[3, 3]).unwrap()), 2, 2, 0).unwrap();
        let pos = Position::placed(vec![1, 1, 0, 0, 0, 0], vec![0; 6]);
        assert!(matches!(swarm_move(&spec, &pos, 1), Err(Error::NotRLarge(_))));
        let spec = GameSpec::new(Arc::new(crate::graph::path(4).unwrap()), 2, 2, 0).unwrap();
        let pos = Position::placed(vec![1, 1, 0, 0], vec![0; 4]);
        assert!(matches!(swarm_move(&spec, &pos, 0), Err(Error::NotMultipartite)));
    }
}
