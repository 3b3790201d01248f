//! Simple undirected graphs with dense vertex ids.

mod cube;
mod generate;
mod ops;
mod tree;

pub use cube::{greedy_code, path_product, product_retraction, subcube_retraction, CodeSet, RetractionMap};
pub use generate::{
    complete, complete_multipartite, cycle, domination_sharp_construction, hypercube, paley, path,
    random, random_tree, split_graph_construction, star, webbed_tree, DomSharpLayout, SplitLayout,
};
pub use ops::{
    dominating_vertex, domination_number, expand_vertex, graph_power, has_r_extension_property,
    is_q_common, min_dominating_set, recognize_webbed_tree, ExpansionMap, DOMINATION_BUDGET,
};
pub use tree::RootedTree;

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    parts: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cube_dim: Option<usize>,
}

impl Graph {
    /// Builds a graph, rejecting loops, duplicates and out-of-range ends.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("graph must have at least one vertex".into()));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge {u}-{v} out of range")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(format!("duplicate edge at {v}")));
            }
        }
        Ok(Graph { adj, parts: None, cube_dim: None })
    }

    /// Like `from_edges` but silently merges duplicate edges.
    pub(crate) fn from_edge_set(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u != v {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
        }
        Graph { adj, parts: None, cube_dim: None }
    }

    pub fn with_parts(mut self, parts: Vec<usize>) -> Result<Self> {
        if parts.len() != self.n() {
            return Err(Error::InvalidGraph("part label count mismatch".into()));
        }
        self.parts = Some(parts);
        Ok(self)
    }

    pub fn with_cube_dim(mut self, d: usize) -> Result<Self> {
        if d >= usize::BITS as usize || self.n() != 1usize << d {
            return Err(Error::InvalidGraph(format!("hypercube dimension {d} does not match order")));
        }
        self.cube_dim = Some(d);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// N[v] in increasing order.
    pub fn closed_neighbors(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.adj[v].len() + 1);
        let mut placed = false;
        for &u in &self.adj[v] {
            if !placed && u > v {
                out.push(v);
                placed = true;
            }
            out.push(u);
        }
        if !placed {
            out.push(v);
        }
        out
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// True when `v` is `u` or adjacent to it.
    pub fn in_closed(&self, u: usize, v: usize) -> bool {
        u == v || self.has_edge(u, v)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn parts(&self) -> Option<&[usize]> {
        self.parts.as_deref()
    }

    pub fn part_count(&self) -> usize {
        self.parts.as_ref().map_or(0, |p| p.iter().max().map_or(0, |m| m + 1))
    }

    /// Vertices of each part, in increasing order.
    pub fn part_members(&self) -> Option<Vec<Vec<usize>>> {
        let parts = self.parts.as_ref()?;
        let mut out = vec![Vec::new(); self.part_count()];
        for (v, &p) in parts.iter().enumerate() {
            out[p].push(v);
        }
        Some(out)
    }

    pub fn cube_dim(&self) -> Option<usize> {
        self.cube_dim
    }

    /// True when the part labels describe a complete multipartite graph.
    pub fn is_complete_multipartite(&self) -> bool {
        let Some(parts) = &self.parts else { return false };
        let n = self.n();
        for u in 0..n {
            let expected = parts.iter().filter(|&&p| p != parts[u]).count();
            if self.adj[u].len() != expected {
                return false;
            }
            if self.adj[u].iter().any(|&v| parts[v] == parts[u]) {
                return false;
            }
        }
        true
    }

    /// Subgraph induced by `vertices`; local index i is `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            for &u in &self.adj[v] {
                let j = local[u];
                if j != usize::MAX && i < j {
                    edges.push((i, j));
                }
            }
        }
        Graph::from_edge_set(vertices.len(), edges)
    }

    /// BFS distances from `src`; unreachable vertices get `usize::MAX`.
    pub fn distances_from(&self, src: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.distances_from(0).iter().all(|&d| d != usize::MAX)
    }

    /// Line-oriented text form: `n`, optional `parts` and `hypercube`, then sorted `e` lines.
    pub fn to_text(&self) -> String {
        let mut out = format!("n {}\n", self.n());
        if let Some(parts) = &self.parts {
            out.push_str("parts");
            for p in parts {
                let _ = write!(out, " {p}");
            }
            out.push('\n');
        }
        if let Some(d) = self.cube_dim {
            let _ = writeln!(out, "hypercube {d}");
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "e {u} {v}");
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let perr = |line: usize, message: String| Error::Parse { line, message };
        let mut n: Option<usize> = None;
        let mut parts = None;
        let mut cube = None;
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let raw = raw.trim();
            if raw.is_empty() || raw.starts_with('#') {
                continue;
            }
            let mut tok = raw.split_whitespace();
            let head = tok.next().unwrap_or_default();
            let nums: std::result::Result<Vec<usize>, _> = tok.map(str::parse::<usize>).collect();
            let nums = nums.map_err(|e| perr(line, format!("bad number: {e}")))?;
            match head {
                "n" => {
                    if n.is_some() {
                        return Err(perr(line, "repeated n".into()));
                    }
                    if nums.len() != 1 {
                        return Err(perr(line, "expected `n <count>`".into()));
                    }
                    n = Some(nums[0]);
                }
                "parts" if n.is_some() && edges.is_empty() && parts.is_none() => parts = Some(nums),
                "hypercube" if n.is_some() && edges.is_empty() && cube.is_none() => {
                    if nums.len() != 1 {
                        return Err(perr(line, "expected `hypercube <d>`".into()));
                    }
                    cube = Some(nums[0]);
                }
                "e" if n.is_some() => {
                    if nums.len() != 2 || nums[0] >= nums[1] {
                        return Err(perr(line, "expected `e u v` with u < v".into()));
                    }
                    let e = (nums[0], nums[1]);
                    if let Some(&last) = edges.last() {
                        if last == e {
                            return Err(perr(line, format!("duplicate edge {} {}", e.0, e.1)));
                        }
                        if last > e {
                            return Err(perr(line, "edges not sorted".into()));
                        }
                    }
                    edges.push(e);
                }
                _ => return Err(perr(line, format!("unexpected `{head}`"))),
            }
        }
        let n = n.ok_or_else(|| perr(0, "missing `n` line".into()))?;
        let mut g = Graph::from_edges(n, &edges)?;
        if let Some(p) = parts {
            g = g.with_parts(p)?;
        }
        if let Some(d) = cube {
            g = g.with_cube_dim(d)?;
        }
        Ok(g)
    }
}
