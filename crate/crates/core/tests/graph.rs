use modcolor::gen::{random_graph, rng};
use modcolor::graph::{
    canonical_code, enumerate_graphs_up_to, find_induced_isomorphism, is_member, ClassTag, Graph,
    VertexSet,
};
use proptest::prelude::*;

#[test]
fn known_class_counts() {
    // one edgeless graph per order
    let mut per_n = [0usize; 7];
    for g in enumerate_graphs_up_to(6, ClassTag::Independent).unwrap() {
        assert_eq!(g.edge_count(), 0);
        per_n[g.vertex_count()] += 1;
    }
    assert_eq!(per_n, [0, 1, 1, 1, 1, 1, 1]);
    let everything = enumerate_graphs_up_to(6, ClassTag::Cograph)
        .unwrap()
        .len();
    // cographs on 1..6 vertices: 1 + 2 + 4 + 10 + 24 + 66 (OEIS A000084)
    assert_eq!(everything, 107);
}

#[test]
fn class_hierarchy_on_all_small_graphs() {
    for n in 1..=6 {
        let graphs = enumerate_graphs_up_to(n, ClassTag::Forest).unwrap();
        for g in graphs.iter().filter(|g| g.vertex_count() == n) {
            if is_member(g, ClassTag::Path) {
                assert!(is_member(g, ClassTag::LinearForest));
            }
            if is_member(g, ClassTag::LinearForest) {
                assert!(is_member(g, ClassTag::Forest));
            }
        }
    }
    for g in every_graph(6) {
        if is_member(&g, ClassTag::Split) {
            assert!(is_member(&g, ClassTag::UnionSplit), "{g:?}");
        }
        if is_member(&g, ClassTag::Independent) {
            for tag in [
                ClassTag::Forest,
                ClassTag::LinearForest,
                ClassTag::Split,
                ClassTag::UnionSplit,
                ClassTag::Cograph,
            ] {
                assert!(is_member(&g, tag));
            }
        }
    }
}

/// Every graph on `1..=n_max` vertices up to isomorphism, by brute force
/// over labelled graphs.
fn every_graph(n_max: usize) -> Vec<Graph> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for n in 1..=n_max {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        for mask in 0u64..1 << pairs.len() {
            let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
            let g = Graph::from_edges(n, edges).unwrap();
            if seen.insert((n, canonical_code(&g))) {
                out.push(g);
            }
        }
    }
    out
}

#[test]
fn enumeration_matches_labelled_dedup() {
    let brute = every_graph(5);
    assert_eq!(brute.len(), 1 + 2 + 4 + 11 + 34);
    for tag in ClassTag::ALL {
        let expected = brute.iter().filter(|g| is_member(g, tag)).count();
        assert_eq!(enumerate_graphs_up_to(5, tag).unwrap().len(), expected, "{tag}");
    }
}

#[test]
fn hereditary_classes_are_closed_under_vertex_deletion() {
    for g in every_graph(6) {
        let n = g.vertex_count();
        for tag in ClassTag::ALL.into_iter().filter(|t| t.is_hereditary()) {
            if !is_member(&g, tag) {
                continue;
            }
            for v in 0..n {
                let rest: Vec<usize> = (0..n).filter(|&u| u != v).collect();
                assert!(is_member(&g.induced_on(&rest), tag), "{tag} {g:?} minus {v}");
            }
        }
    }
    // the path class is not hereditary
    assert!(!is_member(&Graph::path(3).induced_on(&[0, 2]), ClassTag::Path));
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, any::<u64>()).prop_map(|(n, seed)| random_graph(n, 0.45, &mut rng(seed)))
}

proptest! {
    #[test]
    fn induced_subgraph_is_functorial(g in arb_graph(10), s_bits in any::<u32>(), t_bits in any::<u32>()) {
        let n = g.vertex_count();
        let s = VertexSet::from_vertices(n, (0..n).filter(|v| s_bits >> v & 1 == 1)).unwrap();
        let (gs, map_s) = g.induced_subgraph(&s).unwrap();
        let t_local = VertexSet::from_vertices(gs.vertex_count(), (0..gs.vertex_count()).filter(|i| t_bits >> i & 1 == 1)).unwrap();
        let (gst, map_t) = gs.induced_subgraph(&t_local).unwrap();
        let t_global = VertexSet::from_vertices(n, t_local.iter().map(|i| map_s[i])).unwrap();
        let (gt, map_global) = g.induced_subgraph(&t_global).unwrap();
        prop_assert_eq!(&gst, &gt);
        let composed: Vec<usize> = map_t.iter().map(|&i| map_s[i]).collect();
        prop_assert_eq!(composed, map_global);
    }

    #[test]
    fn found_isomorphisms_pass_the_checker(host in arb_graph(9), pattern in arb_graph(4)) {
        let all = VertexSet::full(host.vertex_count());
        if let Some(map) = find_induced_isomorphism(&pattern, &host, &all) {
            prop_assert!(map.is_valid(&pattern, &host));
        } else {
            // no embedding: no subset of the right size induces the pattern
            let h = pattern.vertex_count();
            let code = canonical_code(&pattern);
            let n = host.vertex_count();
            for mask in 0u32..1 << n {
                if mask.count_ones() as usize == h {
                    let vs: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
                    prop_assert_ne!(canonical_code(&host.induced_on(&vs)), code);
                }
            }
        }
    }

    #[test]
    fn canonical_code_ignores_labels(g in arb_graph(8), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let n = g.vertex_count();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng(seed));
        let h = Graph::from_edges(n, g.edges().map(|(u, v)| (perm[u], perm[v]))).unwrap();
        prop_assert_eq!(canonical_code(&g), canonical_code(&h));
    }
}
