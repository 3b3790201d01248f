use super::{Graph, RootedTree};
use crate::error::{Error, Result};
use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

fn nonzero(n: usize, what: &str) -> Result<()> {
    if n == 0 {
        Err(Error::param(format!("{what} must be positive")))
    } else {
        Ok(())
    }
}

pub fn path(n: usize) -> Result<Graph> {
    nonzero(n, "path order")?;
    Ok(Graph::from_edge_set(n, (1..n).map(|i| (i - 1, i))))
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::param("cycle needs at least 3 vertices"));
    }
    Ok(Graph::from_edge_set(n, (0..n).map(|i| (i, (i + 1) % n))))
}

/// K_{1,leaves} with centre 0.
pub fn star(leaves: usize) -> Result<Graph> {
    nonzero(leaves, "star leaf count")?;
    Ok(Graph::from_edge_set(leaves + 1, (1..=leaves).map(|i| (0, i))))
}

pub fn complete(n: usize) -> Result<Graph> {
    nonzero(n, "complete graph order")?;
    Ok(Graph::from_edge_set(n, (0..n).tuple_combinations()))
}

/// Q_d; vertex ids are the subsets of [d] as bitmasks.
pub fn hypercube(d: usize) -> Result<Graph> {
    if d > 20 {
        return Err(Error::CapExceeded { what: "hypercube dimension".into(), size: d as u64, cap: 20 });
    }
    let n = 1usize << d;
    let edges = (0..n).flat_map(|v| (0..d).map(move |i| (v, v ^ (1 << i)))).filter(|&(u, v)| u < v);
    Graph::from_edge_set(n, edges).with_cube_dim(d)
}

/// Complete multipartite graph; part i holds a contiguous block of ids.
pub fn complete_multipartite(sizes: &[usize]) -> Result<Graph> {
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(Error::param("part sizes must be positive"));
    }
    let labels: Vec<usize> = sizes.iter().enumerate().flat_map(|(i, &s)| std::iter::repeat_n(i, s)).collect();
    let n = labels.len();
    let edges = (0..n).tuple_combinations().filter(|&(u, v)| labels[u] != labels[v]);
    Graph::from_edge_set(n, edges).with_parts(labels)
}

/// G(n, p): pairs (i, j), i < j, visited lexicographically; one uniform draw each.
pub fn random(n: usize, p: f64, seed: u64) -> Result<Graph> {
    nonzero(n, "random graph order")?;
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::param(format!("edge probability {p} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((i, j));
            }
        }
    }
    Ok(Graph::from_edge_set(n, edges))
}

/// Uniform labelled tree via a random Pruefer sequence.
pub fn random_tree(n: usize, seed: u64) -> Result<Graph> {
    nonzero(n, "tree order")?;
    if n <= 2 {
        return path(n);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &c in &code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &c in &code {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf exists");
        edges.push((leaf, c));
        degree[leaf] -= 1;
        degree[c] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Ok(Graph::from_edge_set(n, edges))
}

/// Random rooted tree (root 0, parent drawn below each vertex) plus each sibling
/// edge independently with probability 1/2.
pub fn webbed_tree(n: usize, seed: u64) -> Result<(Graph, RootedTree)> {
    nonzero(n, "webbed tree order")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut parent = vec![None; n];
    for (v, slot) in parent.iter_mut().enumerate().skip(1) {
        *slot = Some(rng.gen_range(0..v));
    }
    let tree = RootedTree::from_parents(0, parent.clone())?;
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (parent[v].unwrap(), v)).collect();
    for v in 0..n {
        for (a, b) in tree.children(v).iter().copied().tuple_combinations() {
            if rng.gen_bool(0.5) {
                edges.push((a, b));
            }
        }
    }
    Ok((Graph::from_edge_set(n, edges), tree))
}

/// Paley graph on a prime q with q = 1 (mod 4).
pub fn paley(q: usize) -> Result<Graph> {
    let prime = q >= 5 && (2..q).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d));
    if !prime || q % 4 != 1 {
        return Err(Error::param(format!("paley order {q} must be a prime = 1 mod 4")));
    }
    let mut square = vec![false; q];
    for x in 1..q {
        square[x * x % q] = true;
    }
    let edges = (0..q).tuple_combinations().filter(|&(a, b)| square[(b - a) % q]);
    Ok(Graph::from_edge_set(q, edges))
}

/// Ids: clique vertices `0..r`, then one vertex per m-subset of the clique.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitLayout {
    pub m: usize,
    pub r: usize,
    /// `subsets[i]` is the neighbourhood of vertex `r + i`.
    pub subsets: Vec<Vec<usize>>,
}

pub fn split_graph_construction(m: usize, r: usize) -> Result<(Graph, SplitLayout)> {
    if m == 0 || m > r {
        return Err(Error::param("split construction needs 1 <= m <= r"));
    }
    let subsets: Vec<Vec<usize>> = (0..r).combinations(m).collect();
    if subsets.len() > 100_000 {
        return Err(Error::CapExceeded { what: "split construction".into(), size: subsets.len() as u64, cap: 100_000 });
    }
    let mut edges: Vec<(usize, usize)> = (0..r).tuple_combinations().collect();
    for (i, a) in subsets.iter().enumerate() {
        edges.extend(a.iter().map(|&q| (q, r + i)));
    }
    let g = Graph::from_edge_set(r + subsets.len(), edges);
    Ok((g, SplitLayout { m, r, subsets }))
}

/// Ids: T = `0..t`, R = `t..t+r`, then for each m-subset A of R (lexicographic)
/// a block of t vertices; the j-th vertex of the block is matched to T vertex j.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomSharpLayout {
    pub t: usize,
    pub m: usize,
    pub r: usize,
    pub subsets: Vec<Vec<usize>>,
}

impl DomSharpLayout {
    pub fn t_vertex(&self, j: usize) -> usize {
        j
    }

    pub fn r_vertex(&self, i: usize) -> usize {
        self.t + i
    }

    pub fn u_vertex(&self, subset: usize, j: usize) -> usize {
        self.t + self.r + subset * self.t + j
    }

    pub fn is_u(&self, v: usize) -> bool {
        v >= self.t + self.r
    }

    /// For a U vertex, its subset index and matched T vertex.
    pub fn u_coords(&self, v: usize) -> Option<(usize, usize)> {
        let k = v.checked_sub(self.t + self.r)?;
        Some((k / self.t, k % self.t))
    }

    pub fn subset_index(&self, set: &[usize]) -> Option<usize> {
        self.subsets.binary_search_by(|s| s.as_slice().cmp(set)).ok()
    }
}

pub fn domination_sharp_construction(t: usize, m: usize, r: usize) -> Result<(Graph, DomSharpLayout)> {
    if t == 0 || m == 0 || m > r {
        return Err(Error::param("domination construction needs t >= 1 and 1 <= m <= r"));
    }
    let subsets: Vec<Vec<usize>> = (t..t + r).combinations(m).collect();
    let n = t + r + t * subsets.len();
    if n > 200_000 {
        return Err(Error::CapExceeded { what: "domination construction".into(), size: n as u64, cap: 200_000 });
    }
    let layout = DomSharpLayout { t, m, r, subsets };
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for j in 0..t {
        for i in 0..r {
            edges.push((j, t + i));
        }
    }
    for (k, a) in layout.subsets.iter().enumerate() {
        for j in 0..t {
            let u = layout.u_vertex(k, j);
            edges.push((j, u));
            edges.extend(a.iter().map(|&x| (x, u)));
        }
    }
    Ok((Graph::from_edge_set(n, edges), layout))
}
