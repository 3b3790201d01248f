use serde::{Deserialize, Serialize};

/// Bipartite graph on left nodes `0..left` and right nodes `0..right`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteInstance {
    pub left: usize,
    pub right: usize,
    pub adj: Vec<Vec<usize>>,
}

impl BipartiteInstance {
    pub fn new(left: usize, right: usize) -> Self {
        BipartiteInstance { left, right, adj: vec![Vec::new(); left] }
    }

    pub fn add_edge(&mut self, l: usize, r: usize) {
        assert!(l < self.left && r < self.right, "edge references undeclared node");
        self.adj[l].push(r);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matching {
    pub left_to_right: Vec<Option<usize>>,
    pub right_to_left: Vec<Option<usize>>,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.left_to_right.iter().flatten().count()
    }

    pub fn saturates_left(&self) -> bool {
        self.left_to_right.iter().all(Option::is_some)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.left_to_right.iter().enumerate().filter_map(|(l, r)| r.map(|r| (l, r)))
    }
}

/// Maximum matching by augmenting paths; left nodes and edges are tried in order.
pub fn max_matching(inst: &BipartiteInstance) -> Matching {
    let mut m = Matching { left_to_right: vec![None; inst.left], right_to_left: vec![None; inst.right] };
    let mut seen = vec![0usize; inst.right];
    for l in 0..inst.left {
        augment(inst, l, &mut m, &mut seen, l + 1);
    }
    m
}

fn augment(inst: &BipartiteInstance, l: usize, m: &mut Matching, seen: &mut [usize], stamp: usize) -> bool {
    for &r in &inst.adj[l] {
        if seen[r] == stamp {
            continue;
        }
        seen[r] = stamp;
        let free = match m.right_to_left[r] {
            None => true,
            Some(other) => augment(inst, other, m, seen, stamp),
        };
        if free {
            m.left_to_right[l] = Some(r);
            m.right_to_left[r] = Some(l);
            return true;
        }
    }
    false
}

/// A set S of left nodes with |N(S)| < |S|, or `None` when the left side can be saturated.
///
/// Built from an unmatched left node by following alternating paths.
pub fn hall_violator(inst: &BipartiteInstance) -> Option<Vec<usize>> {
    let m = max_matching(inst);
    let start = m.left_to_right.iter().position(Option::is_none)?;
    let mut in_set = vec![false; inst.left];
    let mut seen_right = vec![false; inst.right];
    in_set[start] = true;
    let mut stack = vec![start];
    while let Some(l) = stack.pop() {
        for &r in &inst.adj[l] {
            if seen_right[r] {
                continue;
            }
            seen_right[r] = true;
            let mate = m.right_to_left[r].expect("maximum matching leaves no augmenting path");
            if !in_set[mate] {
                in_set[mate] = true;
                stack.push(mate);
            }
        }
    }
    Some((0..inst.left).filter(|&l| in_set[l]).collect())
}
