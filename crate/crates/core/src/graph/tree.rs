use super::Graph;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootedTree {
    root: usize,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    /// Breadth-first order from the root.
    order: Vec<usize>,
}

impl RootedTree {
    pub fn from_parents(root: usize, parent: Vec<Option<usize>>) -> Result<Self> {
        let n = parent.len();
        if root >= n || parent[root].is_some() {
            return Err(Error::InvalidGraph("root must exist and have no parent".into()));
        }
        let mut children = vec![Vec::new(); n];
        for (v, p) in parent.iter().enumerate() {
            match p {
                Some(p) if *p >= n || *p == v => {
                    return Err(Error::InvalidGraph(format!("bad parent for {v}")));
                }
                Some(p) => children[*p].push(v),
                None if v != root => return Err(Error::InvalidGraph(format!("{v} has no parent"))),
                None => {}
            }
        }
        let mut order = vec![root];
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            order.extend(children[v].iter().copied());
            i += 1;
        }
        if order.len() != n {
            return Err(Error::InvalidGraph("parent pointers contain a cycle".into()));
        }
        Ok(RootedTree { root, parent, children, order })
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn bfs_order(&self) -> &[usize] {
        &self.order
    }

    /// D(v): v and all of its descendants.
    pub fn descendants(&self, v: usize) -> Vec<usize> {
        let mut out = vec![v];
        let mut i = 0;
        while i < out.len() {
            let u = out[i];
            out.extend(self.children[u].iter().copied());
            i += 1;
        }
        out
    }

    /// Sums `values` over D(v) for every v.
    pub fn subtree_sums(&self, values: &[u32]) -> Vec<u32> {
        let mut w = values.to_vec();
        for &v in self.order.iter().rev() {
            if let Some(p) = self.parent[v] {
                w[p] += w[v];
            }
        }
        w
    }

    pub fn are_siblings(&self, a: usize, b: usize) -> bool {
        a != b && self.parent[a].is_some() && self.parent[a] == self.parent[b]
    }

    /// Checks that this tree spans `g` and every other edge of `g` joins siblings.
    pub fn webs(&self, g: &Graph) -> bool {
        if g.n() != self.n() {
            return false;
        }
        for v in 0..self.n() {
            if let Some(p) = self.parent[v] {
                if !g.has_edge(p, v) {
                    return false;
                }
            }
        }
        g.edges().into_iter().all(|(a, b)| {
            self.parent[a] == Some(b) || self.parent[b] == Some(a) || self.are_siblings(a, b)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_cycles() {
        assert!(RootedTree::from_parents(0, vec![None, Some(2), Some(1)]).is_err());
    }

    #[test]
    fn subtree_sums_telescope() {
        let t = RootedTree::from_parents(0, vec![None, Some(0), Some(1), Some(1)]).unwrap();
        assert_eq!(t.subtree_sums(&[1, 2, 3, 4]), vec![10, 9, 3, 4]);
        assert_eq!(t.descendants(1), vec![1, 2, 3]);
    }
}
