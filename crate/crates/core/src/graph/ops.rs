use super::{Graph, RootedTree};
use crate::error::{Error, Result};
use crate::util::Bits;
use itertools::Itertools;
use serde::{Deserialize, Serialize};

/// Subset budget for the exact domination search.
pub const DOMINATION_BUDGET: u64 = 50_000_000;

/// G^k: distinct vertices are adjacent when their distance is at most k.
pub fn graph_power(g: &Graph, k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::param("power must be at least 1"));
    }
    let mut edges = Vec::new();
    for u in 0..g.n() {
        for (v, &d) in g.distances_from(u).iter().enumerate() {
            if u < v && d <= k {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::from_edge_set(g.n(), edges))
}

/// `origin[x]` is the vertex of the original graph that x came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionMap {
    pub origin: Vec<usize>,
}

/// Replaces v by a clique of `size` vertices sharing v's neighbourhood.
/// v keeps its id; the copies are appended.
pub fn expand_vertex(g: &Graph, v: usize, size: usize) -> Result<(Graph, ExpansionMap)> {
    if v >= g.n() || size == 0 {
        return Err(Error::param("expansion needs an existing vertex and size >= 1"));
    }
    let n = g.n();
    let copies: Vec<usize> = (n..n + size - 1).collect();
    let mut edges = g.edges();
    for &c in &copies {
        edges.push((v, c));
        edges.extend(g.neighbors(v).iter().map(|&u| (u, c)));
    }
    edges.extend(copies.iter().copied().tuple_combinations::<(usize, usize)>());
    let mut origin: Vec<usize> = (0..n).collect();
    origin.extend(copies.iter().map(|_| v));
    Ok((Graph::from_edge_set(n + size - 1, edges), ExpansionMap { origin }))
}

/// Lowest-index vertex adjacent to every other vertex.
pub fn dominating_vertex(g: &Graph) -> Option<usize> {
    (0..g.n()).find(|&v| g.degree(v) + 1 == g.n())
}

fn closed_bits(g: &Graph) -> Vec<Bits> {
    (0..g.n())
        .map(|v| {
            let mut b = Bits::new(g.n());
            for u in g.closed_neighbors(v) {
                b.set(u);
            }
            b
        })
        .collect()
}

/// Lexicographically first minimum dominating set.
pub fn min_dominating_set(g: &Graph) -> Result<Vec<usize>> {
    let n = g.n();
    let closed = closed_bits(g);
    let mut examined: u64 = 0;
    for k in 1..=n {
        for set in (0..n).combinations(k) {
            examined += 1;
            if examined > DOMINATION_BUDGET {
                return Err(Error::CapExceeded {
                    what: "domination search".into(),
                    size: examined,
                    cap: DOMINATION_BUDGET,
                });
            }
            let mut covered = Bits::new(n);
            for &v in &set {
                covered.or_with(&closed[v]);
            }
            if covered.count() == n {
                return Ok(set);
            }
        }
    }
    unreachable!("the whole vertex set dominates")
}

pub fn domination_number(g: &Graph) -> Result<usize> {
    min_dominating_set(g).map(|s| s.len())
}

/// Finds a rooted spanning tree whose non-tree edges all join siblings.
///
/// Such a tree is a BFS tree from its root in which every non-root vertex has a
/// unique neighbour one level up, and same-level edges share that neighbour.
pub fn recognize_webbed_tree(g: &Graph) -> Option<RootedTree> {
    (0..g.n()).find_map(|root| webbed_from_root(g, root))
}

fn webbed_from_root(g: &Graph, root: usize) -> Option<RootedTree> {
    let dist = g.distances_from(root);
    if dist.contains(&usize::MAX) {
        return None;
    }
    let mut parent = vec![None; g.n()];
    for v in 0..g.n() {
        if v == root {
            continue;
        }
        let mut up = g.neighbors(v).iter().filter(|&&u| dist[u] + 1 == dist[v]);
        let p = *up.next()?;
        if up.next().is_some() {
            return None;
        }
        parent[v] = Some(p);
    }
    for (a, b) in g.edges() {
        if dist[a] == dist[b] && parent[a] != parent[b] {
            return None;
        }
    }
    RootedTree::from_parents(root, parent).ok()
}

/// Every ordered pair v, w (v = w included) has |N(v) & N(w)| >= q |N(v)|.
pub fn is_q_common(g: &Graph, q: f64) -> Result<bool> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::param(format!("q = {q} outside [0, 1]")));
    }
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) == 0) {
        return Err(Error::IsolatedVertex(v));
    }
    let open: Vec<Bits> = (0..g.n())
        .map(|v| {
            let mut b = Bits::new(g.n());
            g.neighbors(v).iter().for_each(|&u| b.set(u));
            b
        })
        .collect();
    for v in 0..g.n() {
        let need = q * g.degree(v) as f64;
        for w in 0..g.n() {
            if (open[v].count_and(&open[w]) as f64) < need {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Cap on the number of (T, U) pairs examined.
const EXTENSION_CAP: u64 = 200_000_000;

/// For all disjoint T, U with |T| + |U| <= r some x outside both is adjacent to
/// all of T and to none of U.
pub fn has_r_extension_property(g: &Graph, r: usize) -> Result<bool> {
    let n = g.n();
    let pairs: u64 = (0..=r as u64)
        .map(|k| crate::util::binomial(n as u64, k).saturating_mul(1 << k))
        .fold(0u64, u64::saturating_add);
    if pairs > EXTENSION_CAP {
        return Err(Error::CapExceeded { what: "extension check".into(), size: pairs, cap: EXTENSION_CAP });
    }
    let open: Vec<Bits> = (0..n)
        .map(|v| {
            let mut b = Bits::new(n);
            g.neighbors(v).iter().for_each(|&u| b.set(u));
            b
        })
        .collect();
    for k in 0..=r.min(n) {
        for set in (0..n).combinations(k) {
            for signs in 0u32..(1 << k) {
                let mut cand = Bits::full(n);
                for (i, &v) in set.iter().enumerate() {
                    if signs >> i & 1 == 1 {
                        cand.and_with(&open[v]);
                    } else {
                        cand.and_not(&open[v]);
                        cand.clear(v);
                    }
                }
                if cand.is_empty() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, hypercube, path, star};

    #[test]
    fn power_of_path() {
        let p = graph_power(&path(4).unwrap(), 2).unwrap();
        assert_eq!(p.edges(), vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn expansion_keeps_neighbourhood() {
        let (g, map) = expand_vertex(&star(2).unwrap(), 0, 3).unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(map.origin, vec![0, 1, 2, 0, 0]);
        assert!(g.has_edge(3, 4) && g.has_edge(0, 3) && g.has_edge(1, 4));
        assert!(!g.has_edge(1, 2));
    }

    #[test]
    fn domination() {
        assert_eq!(dominating_vertex(&star(3).unwrap()), Some(0));
        assert_eq!(dominating_vertex(&path(4).unwrap()), None);
        assert_eq!(domination_number(&cycle(6).unwrap()).unwrap(), 2);
        assert_eq!(domination_number(&hypercube(3).unwrap()).unwrap(), 2);
        assert_eq!(min_dominating_set(&path(3).unwrap()).unwrap(), vec![1]);
    }

    #[test]
    fn q_common_complete() {
        let k5 = complete(5).unwrap();
        assert!(is_q_common(&k5, 0.74).unwrap());
        assert!(!is_q_common(&k5, 0.76).unwrap());
        let iso = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(is_q_common(&iso, 0.1), Err(Error::IsolatedVertex(2)));
    }

    #[test]
    fn extension_small() {
        assert!(has_r_extension_property(&complete(3).unwrap(), 0).unwrap());
        assert!(!has_r_extension_property(&complete(4).unwrap(), 1).unwrap());
        assert!(!has_r_extension_property(&cycle(5).unwrap(), 2).unwrap());
    }

    #[test]
    fn webbed_examples() {
        assert!(recognize_webbed_tree(&star(4).unwrap()).is_some());
        assert!(recognize_webbed_tree(&cycle(3).unwrap()).is_some());
        assert!(recognize_webbed_tree(&cycle(4).unwrap()).is_none());
        // two 4-cycles sharing vertex 0, each with a chord
        let bowtie = Graph::from_edges(
            7,
            &[(0, 1), (1, 2), (2, 3), (0, 3), (1, 3), (0, 4), (4, 5), (5, 6), (0, 6), (4, 6)],
        )
        .unwrap();
        assert!(recognize_webbed_tree(&bowtie).is_none());
    }
}
