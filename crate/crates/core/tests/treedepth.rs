use modcolor::gen::{random_bounded_depth_graph, random_graph, random_lists, rng};
use modcolor::graph::{enumerate_all_graphs_up_to, Graph};
use modcolor::oracle::{chromatic_number_ie, is_list_colorable, ListAssignment};
use modcolor::treedepth::{
    dfs_treedepth, exact_treedepth, mark_no_certificate, marking_bound,
    prune_to_q_plus_1_colorable,
};
use proptest::prelude::*;

/// Vertex count of a longest path, by exhaustive search.
fn longest_path(g: &Graph) -> usize {
    fn extend(g: &Graph, v: usize, used: &mut Vec<bool>) -> usize {
        used[v] = true;
        let mut best = 0;
        for &u in g.neighbors(v) {
            if !used[u] {
                best = best.max(extend(g, u, used));
            }
        }
        used[v] = false;
        best + 1
    }
    let n = g.vertex_count();
    (0..n).map(|v| extend(g, v, &mut vec![false; n])).max().unwrap_or(0)
}

#[test]
fn exact_le_dfs_le_longest_path_on_all_small_graphs() {
    let graphs = enumerate_all_graphs_up_to(7).unwrap();
    assert_eq!(graphs.len(), 1 + 2 + 4 + 11 + 34 + 156 + 1044);
    for g in graphs {
        let (td, dec) = exact_treedepth(&g).unwrap();
        let dfs = dfs_treedepth(&g);
        assert!(dec.is_valid_for(&g) && dfs.is_valid_for(&g));
        assert_eq!(dec.depth(), td);
        assert!(td <= dfs.depth(), "{g:?}");
        assert!(dfs.depth() <= longest_path(&g), "{g:?}");
    }
}

#[test]
fn closed_forms() {
    for n in 1usize..=12 {
        let expected = (usize::BITS - n.leading_zeros()) as usize; // ⌈log2(n+1)⌉
        assert_eq!(exact_treedepth(&Graph::path(n)).unwrap().0, expected, "P{n}");
    }
    for n in 1..=4 {
        assert_eq!(exact_treedepth(&Graph::complete_bipartite(n, n)).unwrap().0, n + 1);
        assert_eq!(exact_treedepth(&Graph::complete(n + 2)).unwrap().0, n + 2);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn exact_never_exceeds_dfs(n in 1usize..=11, p in 0.1f64..0.7, seed in any::<u64>()) {
        let g = random_graph(n, p, &mut rng(seed));
        let (td, dec) = exact_treedepth(&g).unwrap();
        prop_assert!(dec.is_valid_for(&g));
        prop_assert!(td <= dfs_treedepth(&g).depth());
    }

    #[test]
    fn pruning_keeps_a_q_plus_1_colorable_no_instance(n in 1usize..=10, q in 1u32..=3, seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_graph(n, 0.6, &mut r);
        let lists = random_lists(n, q, 0.8, &mut r);
        prop_assume!(!is_list_colorable(&g, &lists).unwrap());
        let sub = prune_to_q_plus_1_colorable(&g, &lists).unwrap();
        prop_assert!(!sub.is_colorable().unwrap());
        prop_assert!(chromatic_number_ie(&sub.graph).unwrap() <= q as usize + 1);
    }

    #[test]
    fn marked_sets_are_small_no_instances(n in 1usize..=12, t in 1usize..=4, q in 1u32..=3, seed in any::<u64>()) {
        let mut r = rng(seed);
        let (g, dec) = random_bounded_depth_graph(n, t, 0.7, &mut r);
        let lists = random_lists(n, q, 0.75, &mut r);
        prop_assume!(!is_list_colorable(&g, &lists).unwrap());
        let m = mark_no_certificate(&g, &lists, &dec).unwrap().to_vec();
        prop_assert!(m.len() as u64 <= marking_bound(q, dec.depth()));
        prop_assert!(!is_list_colorable(&g.induced_on(&m), &lists.restrict(&m)).unwrap());
    }
}

#[test]
fn marking_rejects_yes_instances_and_bad_decompositions() {
    let g = Graph::path(3);
    let dec = dfs_treedepth(&g);
    assert!(mark_no_certificate(&g, &ListAssignment::full(3, 2), &dec).is_err());
    let lists = ListAssignment::from_colors(2, &[&[1], &[1], &[]]).unwrap();
    let star = dfs_treedepth(&Graph::star(2));
    assert!(mark_no_certificate(&g, &lists, &star).is_err());
    // root 0 is marked; coloring it 1 empties the list of vertex 1, the
    // root of what remains
    assert_eq!(mark_no_certificate(&g, &lists, &dec).unwrap().to_vec(), vec![0, 1]);
}
