use proptest::prelude::*;
use revspy::game::{play, GameSpec, MoveSet, Side};
use revspy::graph::*;
use revspy::kernels::{avoiding_vertex, max_matching, min_movers_cover, BipartiteInstance};
use revspy::revs::{RandomRev, SingleThreatRev};
use revspy::solver::{sigma_exact, winner};
use revspy::spies::{greedy_migration, DominatingVertexSpy, GreedyCoverSpy, RandomSpy, Sides};
use revspy::Transcript;
use std::collections::HashSet;
use std::sync::Arc;

fn simple(g: &Graph) -> bool {
    (0..g.n()).all(|v| !g.has_edge(v, v) && g.neighbors(v).iter().all(|&u| g.has_edge(u, v)))
}

fn edge_set(g: &Graph) -> HashSet<(usize, usize)> {
    g.edges().into_iter().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generators_are_simple(n in 2usize..30, p in 0.0f64..1.0, seed in any::<u64>(), d in 1usize..7) {
        prop_assert!(simple(&random(n, p, seed).unwrap()));
        let t = random_tree(n, seed).unwrap();
        prop_assert!(simple(&t) && t.is_connected() && t.edge_count() == n - 1);
        let (w, tree) = webbed_tree(n, seed).unwrap();
        prop_assert!(simple(&w) && tree.webs(&w));
        let q = hypercube(d).unwrap();
        prop_assert!(simple(&q));
        prop_assert!((0..q.n()).all(|v| q.neighbors(v).iter().all(|&u| (u ^ v).count_ones() == 1)));
        prop_assert!(simple(&complete_multipartite(&[1 + n % 4, 2, n]).unwrap()));
    }

    #[test]
    fn powers_are_monotone(n in 2usize..14, seed in any::<u64>(), k in 1usize..4) {
        let g = random_tree(n, seed).unwrap();
        prop_assert_eq!(edge_set(&graph_power(&g, 1).unwrap()), edge_set(&g));
        let a = edge_set(&graph_power(&g, k).unwrap());
        let b = edge_set(&graph_power(&g, k + 1).unwrap());
        prop_assert!(a.is_subset(&b));
    }

    #[test]
    fn product_retractions_verify(sizes in prop::collection::vec(2usize..5, 1..4), pick in any::<u64>()) {
        let edges: Vec<(usize, usize)> = sizes.iter().enumerate().map(|(i, &s)| {
            let a = (pick as usize >> (2 * i)) % (s - 1);
            if pick >> (20 + i) & 1 == 1 { (a + 1, a) } else { (a, a + 1) }
        }).collect();
        let map = product_retraction(&sizes, &edges).unwrap();
        let host = path_product(&sizes).unwrap();
        prop_assert!(map.verify(&host).is_ok());
        let h = map.image_graph(&host).unwrap();
        prop_assert_eq!(h.n(), 1 << sizes.len());
        prop_assert_eq!(h.edge_count(), sizes.len() << (sizes.len() - 1));
    }

    #[test]
    fn code_distance_holds(d in 1usize..12, k in 1u32..6) {
        let code = greedy_code(d, k).unwrap();
        for (i, a) in code.words.iter().enumerate() {
            for b in &code.words[i + 1..] {
                prop_assert!((a ^ b).count_ones() >= k);
            }
        }
    }

    #[test]
    fn matching_size_ignores_order(edges in prop::collection::vec((0usize..6, 0usize..6), 0..20), rot in 0usize..6) {
        let mut a = BipartiteInstance::new(6, 6);
        let mut b = BipartiteInstance::new(6, 6);
        let mut seen = HashSet::new();
        for &(l, r) in &edges {
            if seen.insert((l, r)) {
                a.add_edge(l, r);
            }
        }
        for &(l, r) in seen.iter().collect::<Vec<_>>().iter().rev() {
            b.add_edge((l + rot) % 6, (r + 5 * rot) % 6);
        }
        prop_assert_eq!(max_matching(&a).size(), max_matching(&b).size());
    }

    #[test]
    fn covers_are_injective_and_local(seed in any::<u64>(), meets in prop::collection::vec(0usize..8, 0..4), spies in prop::collection::vec(0usize..8, 0..6)) {
        let g = random(8, 0.5, seed).unwrap();
        let mut meets = meets;
        meets.sort_unstable();
        meets.dedup();
        if let Ok(plan) = min_movers_cover(&g, &meets, &spies) {
            let used: HashSet<usize> = plan.assignment.iter().map(|&(_, j)| j).collect();
            prop_assert_eq!(used.len(), meets.len());
            prop_assert!(plan.assignment.iter().all(|&(x, j)| g.in_closed(x, spies[j])));
        }
    }

    #[test]
    fn avoiding_vertices_avoid(t in 10usize..40, m in 2usize..4, seed in any::<u64>(), raw in prop::collection::vec(any::<u64>(), 1..10)) {
        let mask = (1u128 << t) - 1;
        let spies: Vec<u128> = raw.iter().map(|&x| ((x as u128) | ((x as u128) << 7) | 3) & mask).filter(|v| v.count_ones() >= 2).collect();
        let w = avoiding_vertex(t, m, &spies, seed).unwrap();
        prop_assert_eq!(w.count_ones() as usize, m);
        for &v in &spies {
            prop_assert!(2 * (v & w).count_ones() <= v.count_ones());
        }
    }

    #[test]
    fn moves_preserve_totals(seed in any::<u64>(), n in 3usize..10, flows in prop::collection::vec((0usize..10, 0usize..10, 0u32..3), 0..8)) {
        let g = random(n, 0.5, seed).unwrap();
        let counts: Vec<u32> = (0..n).map(|v| (v as u32 * 7 + seed as u32) % 3).collect();
        let mut ms = MoveSet::new();
        for (a, b, c) in flows {
            ms.add(a % n, b % n, c);
        }
        if ms.check(&g, &counts).is_ok() {
            prop_assert_eq!(ms.apply_to(&counts).iter().sum::<u32>(), counts.iter().sum::<u32>());
        }
    }

    #[test]
    fn transcripts_replay(seed in any::<u64>(), n in 3usize..12, r in 2u32..5, s in 0u32..4) {
        let g = random_tree(n, seed).unwrap();
        prop_assume!(n as u32 >= r - 1);
        let spec = GameSpec::new(Arc::new(g), 2, r, s).unwrap();
        let t = play(&spec, &mut RandomRev, &mut RandomSpy, 30, seed);
        let (_, outcome) = t.replay().unwrap();
        prop_assert_eq!(&outcome, &t.outcome);
        let again = play(&spec, &mut RandomRev, &mut RandomSpy, 30, seed);
        prop_assert_eq!(again.to_json(), t.to_json());
        prop_assert_eq!(Transcript::from_json(&t.to_json()).unwrap(), t);
    }

    #[test]
    fn migration_hits_targets(r in 2u32..8, seed in any::<u64>(), s in 1u32..6, left in 0u32..6) {
        let a = 2 * r as usize;
        let g = complete_multipartite(&[a, a]).unwrap();
        let sides = Sides::of(&g).unwrap();
        let n = 2 * a;
        let mut spies = vec![0u32; n];
        for i in 0..s as usize {
            spies[(seed as usize + 3 * i) % n] = 1;
        }
        let s = spies.iter().sum::<u32>();
        prop_assume!(s as usize <= a);
        let revs: Vec<u32> = (0..n).map(|v| (v as u64 ^ seed).is_multiple_of(3) as u32).collect();
        let t0 = left.min(s);
        let ms = greedy_migration(&sides, &revs, &spies, [t0, s - t0]).unwrap();
        prop_assert!(ms.check(&g, &spies).is_ok());
        let after = ms.apply_to(&spies);
        prop_assert!(after.iter().all(|&c| c <= 1));
        prop_assert_eq!([sides.total(&after, 0), sides.total(&after, 1)], [t0, s - t0]);
        let mut movers = HashSet::new();
        prop_assert!(ms.flows().all(|f| movers.insert(f.from)));
    }

    #[test]
    fn dominating_vertex_spy_holds(seed in any::<u64>(), n in 3usize..10, m in 2u32..4, extra in 0u32..4) {
        let base = random(n, 0.3, seed).unwrap();
        let mut edges = base.edges();
        edges.extend((1..n).map(|v| (0, v)).filter(|e| !base.has_edge(e.0, e.1)));
        let g = Graph::from_edges(n, &edges).unwrap();
        let r = m + extra;
        let spec = GameSpec::new(Arc::new(g), m, r, r / m);
        prop_assume!(spec.is_ok());
        let spec = spec.unwrap();
        let mut revs: Vec<Box<dyn revspy::RevStrategy>> = vec![Box::new(RandomRev)];
        if r as usize <= n {
            revs.push(Box::new(SingleThreatRev));
        }
        for rev in revs.iter_mut() {
            let rev = rev.as_mut();
            let t = play(&spec, rev, &mut DominatingVertexSpy::auto(), 100, seed);
            prop_assert!(t.outcome.spies_survived(), "{:?}", t.outcome);
            prop_assert!(t.audit_failures().is_empty(), "{:?}", t.audit_failures());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn solver_is_antitone_and_bounded(seed in any::<u64>(), n in 3usize..6, m in 2u32..4, extra in 0u32..2) {
        let g = random_tree(n, seed).unwrap();
        let r = m + extra;
        prop_assume!(n as u32 + m > r);
        let g = Arc::new(g);
        let sigma = sigma_exact(g.clone(), m, r).unwrap();
        prop_assert!(r / m <= sigma && sigma <= r - m + 1);
        for s in 0..=r {
            let w = winner(&GameSpec::new(g.clone(), m, r, s).unwrap()).unwrap();
            prop_assert_eq!(w == Side::Spies, s >= sigma);
        }
        let spec = GameSpec::new(g, m, r, sigma).unwrap();
        let t = play(&spec, &mut RandomRev, &mut GreedyCoverSpy, 20, seed);
        let faulted = matches!(t.outcome, revspy::Outcome::Fault { .. });
        prop_assert!(!faulted);
    }
}
