use super::Graph;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Binary code in Q_d with pairwise distance at least `min_distance`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeSet {
    pub d: usize,
    pub min_distance: u32,
    pub words: Vec<u64>,
}

/// Lexicographic greedy code: scan 0..2^d, keep words far from all kept ones.
pub fn greedy_code(d: usize, k: u32) -> Result<CodeSet> {
    if d > 24 {
        return Err(Error::CapExceeded { what: "greedy code dimension".into(), size: d as u64, cap: 24 });
    }
    let mut words: Vec<u64> = Vec::new();
    for v in 0..(1u64 << d) {
        if words.iter().all(|&w| (w ^ v).count_ones() >= k) {
            words.push(v);
        }
    }
    Ok(CodeSet { d, min_distance: k, words })
}

/// Retraction of a host graph onto an induced subgraph H.
///
/// `image[i]` is the host vertex playing H-vertex i; `map[v]` is the H-vertex
/// that host vertex v is sent to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RetractionMap {
    pub image: Vec<usize>,
    pub map: Vec<usize>,
    /// Set when H-vertex i is the subset `i` of a d-cube.
    pub cube_dim: Option<usize>,
}

impl RetractionMap {
    /// Induced subgraph on the image, in H order.
    pub fn image_graph(&self, host: &Graph) -> Result<Graph> {
        let h = host.induced(&self.image);
        match self.cube_dim {
            Some(d) => h.with_cube_dim(d),
            None => Ok(h),
        }
    }

    /// Checks that f fixes H and sends edges to equal-or-adjacent vertices.
    pub fn verify(&self, host: &Graph) -> Result<()> {
        if self.map.len() != host.n() {
            return Err(Error::pre("retraction map length differs from host order"));
        }
        for (i, &v) in self.image.iter().enumerate() {
            if self.map[v] != i {
                return Err(Error::pre(format!("retraction moves image vertex {v}")));
            }
        }
        let h = host.induced(&self.image);
        for (a, b) in host.edges() {
            let (x, y) = (self.map[a], self.map[b]);
            if x != y && !h.has_edge(x, y) {
                return Err(Error::pre(format!("edge {a}-{b} maps to non-adjacent {x}, {y}")));
            }
        }
        Ok(())
    }
}

/// Retraction of Q_d onto the subcube on `coords`: v maps to v restricted to `coords`.
pub fn subcube_retraction(d: usize, coords: &[usize]) -> Result<RetractionMap> {
    if d > 20 || coords.iter().any(|&c| c >= d) {
        return Err(Error::param("subcube coordinates out of range"));
    }
    let mut sorted = coords.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let t = sorted.len();
    let expand = |local: usize| -> usize {
        sorted.iter().enumerate().filter(|(i, _)| local >> i & 1 == 1).map(|(_, &c)| 1 << c).sum()
    };
    let compress = |v: usize| -> usize {
        sorted.iter().enumerate().filter(|(_, &c)| v >> c & 1 == 1).map(|(i, _)| 1 << i).sum()
    };
    let image = (0..1usize << t).map(expand).collect();
    let map = (0..1usize << d).map(compress).collect();
    Ok(RetractionMap { image, map, cube_dim: Some(t) })
}

/// Retraction of a Cartesian product of connected bipartite factors onto Q_d.
///
/// Factor i has `sizes[i]` vertices and a chosen edge `edges[i] = (v_i, w_i)`;
/// x maps to v_i when x = v_i and to w_i otherwise in each coordinate.
/// Host ids are mixed radix with factor 0 least significant.
pub fn product_retraction(sizes: &[usize], edges: &[(usize, usize)]) -> Result<RetractionMap> {
    if sizes.len() != edges.len() || sizes.is_empty() || sizes.len() > 20 {
        return Err(Error::param("one chosen edge per factor required"));
    }
    for (&s, &(a, b)) in sizes.iter().zip(edges) {
        if a >= s || b >= s || a == b {
            return Err(Error::param("chosen edge endpoints out of range"));
        }
    }
    let total: usize = sizes.iter().product();
    let d = sizes.len();
    let encode = |coords: &[usize]| -> usize {
        coords.iter().zip(sizes).rev().fold(0, |acc, (&c, &s)| acc * s + c)
    };
    let image: Vec<usize> = (0..1usize << d)
        .map(|mask| {
            let coords: Vec<usize> =
                (0..d).map(|i| if mask >> i & 1 == 1 { edges[i].1 } else { edges[i].0 }).collect();
            encode(&coords)
        })
        .collect();
    let map = (0..total)
        .map(|mut id| {
            let mut mask = 0;
            for (i, &s) in sizes.iter().enumerate() {
                if id % s != edges[i].0 {
                    mask |= 1 << i;
                }
                id /= s;
            }
            mask
        })
        .collect();
    Ok(RetractionMap { image, map, cube_dim: Some(d) })
}

/// Cartesian product of paths, ids as in `product_retraction`.
pub fn path_product(sizes: &[usize]) -> Result<Graph> {
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(Error::param("factor sizes must be positive"));
    }
    let total: usize = sizes.iter().product();
    let mut edges = Vec::new();
    for id in 0..total {
        let mut stride = 1;
        for &s in sizes {
            if (id / stride) % s + 1 < s {
                edges.push((id, id + stride));
            }
            stride *= s;
        }
    }
    Ok(Graph::from_edge_set(total, edges))
}
