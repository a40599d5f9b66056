use modcolor::gen::{random_cnf, rng};
use modcolor::graph::{is_member, ClassTag};
use modcolor::oracle::{brute_force_list_color, is_list_colorable, ColorSet};
use modcolor::reductions::{
    attach_palette_clique, build_clause_path, join_paths, reduce_3sat, reduce_3sat_lists,
    reduce_ssat, ssat_group_size, CnfFormula, ReductionOutput, Role,
};
use proptest::prelude::*;

fn satisfying(f: &CnfFormula) -> Option<Vec<bool>> {
    let n = f.num_vars();
    (0u32..1 << n)
        .map(|bits| (0..n).map(|i| bits >> i & 1 == 1).collect::<Vec<_>>())
        .find(|a| f.evaluate(a))
}

fn remainder_in(out: &ReductionOutput, tag: ClassTag) -> bool {
    let (rest, _) = out.graph.induced_subgraph(&out.modulator.vertices.complement()).unwrap();
    is_member(&rest, tag)
}

/// Solving, decoding the witness, and re-encoding a satisfying assignment
/// must all agree with the SAT oracle.
fn check_equisat(f: &CnfFormula, out: &ReductionOutput) -> Result<(), TestCaseError> {
    let sat = satisfying(f);
    let witness = brute_force_list_color(&out.graph, &out.lists).unwrap();
    prop_assert_eq!(witness.is_some(), sat.is_some());
    if let Some(c) = witness {
        let a = out.decode_assignment(&c).unwrap().expect("a coloring decodes");
        prop_assert!(f.evaluate(&a));
    }
    if let Some(a) = sat {
        let mut lists = out.lists.clone();
        for (v, c) in out.encode_assignment(&a).unwrap() {
            prop_assert!(lists.list(v).contains(c));
            lists.set(v, ColorSet::single(c));
        }
        prop_assert!(is_list_colorable(&out.graph, &lists).unwrap());
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn three_sat_lists_equisatisfiable(n in 1usize..=4, m in 1usize..=4, width in 1usize..=3, seed in any::<u64>()) {
        let f = random_cnf(n, m, width, &mut rng(seed));
        let out = reduce_3sat_lists(&f, 2).unwrap();
        prop_assert!(remainder_in(&out, ClassTag::Independent));
        prop_assert_eq!(out.modulator.size(), 3 * n);
        check_equisat(&f, &out)?;
    }

    #[test]
    fn three_sat_with_palette_equisatisfiable(n in 1usize..=4, m in 1usize..=3, seed in any::<u64>()) {
        let f = random_cnf(n, m, 3, &mut rng(seed));
        let out = reduce_3sat(&f, 2).unwrap();
        prop_assert_eq!(out.modulator.size(), 3 * n + 6);
        prop_assert!(out.lists.lists().iter().all(|&l| l == ColorSet::full(6)));
        check_equisat(&f, &out)?;
    }

    #[test]
    fn three_sat_q4_equisatisfiable(n in 1usize..=4, m in 1usize..=3, seed in any::<u64>()) {
        let f = random_cnf(n, m, 3, &mut rng(seed));
        let out = reduce_3sat_lists(&f, 4).unwrap();
        prop_assert_eq!(out.modulator.size(), 3 * n.div_ceil(2));
        check_equisat(&f, &out)?;
    }

    #[test]
    fn ssat_equisatisfiable(n in 1usize..=5, m in 1usize..=4, s in 1usize..=3, q in 3u32..=4, seed in any::<u64>()) {
        let f = random_cnf(n, m, s, &mut rng(seed));
        let out = reduce_ssat(&f, q, 1).unwrap();
        let b = ssat_group_size(q, 1).unwrap();
        prop_assert_eq!(out.modulator.size(), n.div_ceil(b));
        prop_assert!(remainder_in(&out, ClassTag::LinearForest));
        check_equisat(&f, &out)?;
        let joined = join_paths(out).unwrap();
        prop_assert!(remainder_in(&joined, ClassTag::Path));
        check_equisat(&f, &joined)?;
    }

    #[test]
    fn ssat_p2_equisatisfiable(n in 1usize..=4, m in 1usize..=2, seed in any::<u64>()) {
        let f = random_cnf(n, m, 2, &mut rng(seed));
        let out = reduce_ssat(&f, 3, 2).unwrap();
        prop_assert_eq!(out.modulator.size(), 2 * n.div_ceil(3));
        check_equisat(&f, &out)?;
    }
}

#[test]
fn palette_clique_on_ssat_output() {
    let f = CnfFormula::new(2, vec![vec![1, 2], vec![-1], vec![-2]]).unwrap();
    let out = attach_palette_clique(reduce_ssat(&f, 3, 1).unwrap()).unwrap();
    assert_eq!(out.modulator.size(), 2 + 3);
    assert!(!is_list_colorable(&out.graph, &out.lists).unwrap());
    let palette = out.vertices_with(|r| matches!(r, Role::Palette { .. }));
    assert_eq!(palette.len(), 3);
}

#[test]
fn clause_path_lemma_for_three_colors() {
    for m in 1..=2 {
        let vectors: Vec<Vec<u32>> = (0..3u32.pow(m))
            .map(|i| (0..m).map(|j| i / 3u32.pow(j) % 3 + 1).collect())
            .collect();
        for c in &vectors {
            let gadget = build_clause_path(c, 3).unwrap();
            assert_eq!(gadget.path.vertex_count(), 6 * m as usize + 2);
            for d in &vectors {
                assert_eq!(gadget.avoids(d).unwrap(), d != c, "c = {c:?}, d = {d:?}");
            }
        }
    }
}
