//! Acceptance run: one pass/fail line per criterion. Exits non-zero if any
//! criterion fails.

use std::time::{Duration, Instant};

use modcolor::bench::{run_bench, BenchConfig, BenchSolver, Family};
use modcolor::gen::{
    derive_seed, random_bounded_depth_graph, random_cnf, random_lists,
    random_modulator_instance, random_split_graph, rng,
};
use modcolor::graph::{
    enumerate_all_graphs_up_to, enumerate_graphs_up_to, is_member, ClassTag, Graph, VertexSet,
};
use modcolor::nocert::{build_certificate_set, solve_nocert_with, SolveOptions, TraceEvent};
use modcolor::oracle::{
    brute_force_list_color, check_coloring, chromatic_number_brute, chromatic_number_ie,
    is_list_colorable, is_q_colorable, ColorSet, ListAssignment,
};
use modcolor::reductions::{
    build_clause_path, join_paths, reduce_3sat, reduce_3sat_lists, reduce_ssat, ssat_group_size,
    CnfFormula, ReductionOutput,
};
use modcolor::treedepth::{dfs_treedepth, exact_treedepth, mark_no_certificate, marking_bound};
use modcolor::vc::solve_vc;
use rand::Rng;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn within(pass: bool, start: Instant, limit: Duration, detail: String) -> Verdict {
    let took = start.elapsed();
    verdict(pass && took < limit, format!("{detail}, {:.1}s (limit {}s)", took.as_secs_f64(), limit.as_secs()))
}

/// Complement of a greedy maximal independent set.
fn greedy_cover(g: &Graph) -> VertexSet {
    let n = g.vertex_count();
    let mut independent = vec![false; n];
    for v in 0..n {
        if g.neighbors(v).iter().all(|&u| !independent[u]) {
            independent[v] = true;
        }
    }
    VertexSet::from_vertices(n, (0..n).filter(|&v| !independent[v])).unwrap()
}

fn satisfying(f: &CnfFormula) -> Option<Vec<bool>> {
    let n = f.num_vars();
    (0u32..1 << n)
        .map(|bits| (0..n).map(|i| bits >> i & 1 == 1).collect::<Vec<_>>())
        .find(|a| f.evaluate(a))
}

/// Colorability matches satisfiability, a witness decodes to a satisfying
/// assignment, and a satisfying assignment extends to a coloring.
fn equisatisfiable(f: &CnfFormula, out: &ReductionOutput) -> bool {
    let sat = satisfying(f);
    let witness = brute_force_list_color(&out.graph, &out.lists).unwrap();
    if witness.is_some() != sat.is_some() {
        return false;
    }
    if let Some(c) = witness {
        match out.decode_assignment(&c).unwrap() {
            Some(a) if f.evaluate(&a) => {}
            _ => return false,
        }
    }
    if let Some(a) = sat {
        let mut lists = out.lists.clone();
        for (v, c) in out.encode_assignment(&a).unwrap() {
            if !lists.list(v).contains(c) {
                return false;
            }
            lists.set(v, ColorSet::single(c));
        }
        return is_list_colorable(&out.graph, &lists).unwrap();
    }
    true
}

fn remainder_in(out: &ReductionOutput, tag: ClassTag) -> bool {
    let (rest, _) = out.graph.induced_subgraph(&out.modulator.vertices.complement()).unwrap();
    is_member(&rest, tag)
}

fn oracle_consistency() -> Verdict {
    let start = Instant::now();
    let graphs: Vec<Graph> = enumerate_all_graphs_up_to(7)
        .unwrap()
        .into_iter()
        .filter(|g| g.vertex_count() == 7)
        .collect();
    let bad = graphs
        .iter()
        .filter(|g| chromatic_number_ie(g).unwrap() != chromatic_number_brute(g).unwrap() as usize)
        .count();
    within(
        bad == 0 && graphs.len() == 1044,
        start,
        Duration::from_secs(60),
        format!("{} graphs on 7 vertices, {bad} mismatches", graphs.len()),
    )
}

fn vc_correctness() -> Verdict {
    let start = Instant::now();
    let (mut runs, mut bad) = (0, 0);
    let mut agree = |g: &Graph, cover: &VertexSet, q: u32| {
        let out = solve_vc(g, cover, q).unwrap();
        let ok = out.colorable == is_q_colorable(g, q).unwrap()
            && out.coloring.as_ref().is_none_or(|c| {
                check_coloring(g, &ListAssignment::full(g.vertex_count(), q), c).is_ok()
            });
        runs += 1;
        bad += usize::from(!ok);
    };
    for g in enumerate_all_graphs_up_to(7).unwrap() {
        let all = VertexSet::from_vertices(g.vertex_count(), 0..g.vertex_count()).unwrap();
        for q in 1..=5 {
            agree(&g, &greedy_cover(&g), q);
            agree(&g, &all, q);
        }
    }
    for i in 0..300 {
        let mut r = rng(derive_seed(2, i));
        let n = r.gen_range(1..=14);
        let k = r.gen_range(0..=n.min(10));
        let q = r.gen_range(1..=5);
        let inst = random_modulator_instance(ClassTag::Independent, n, k, q, 0.5, 1.0, &mut r);
        agree(&inst.graph, &inst.modulator.vertices, q);
    }
    within(bad == 0, start, Duration::from_secs(300), format!("{runs} runs, {bad} disagreements"))
}

fn vc_branching_bound() -> Verdict {
    let report = run_bench(&BenchConfig {
        solver: BenchSolver::Vc,
        family: Family::Cover,
        q: 3,
        k_min: 6,
        k_max: 14,
        per_k: 12,
        seed: 3,
        workers: 0,
        g: 1,
    })
    .unwrap();
    let over = report
        .rows
        .iter()
        .filter(|r| r.top_level_subsets as f64 > 2f64.powf(0.9183 * r.k as f64))
        .count();
    let Some(fit) = report.fit else {
        return verdict(false, "no fit");
    };
    verdict(
        over == 0 && fit.base <= 1.89 + 0.05 && fit.r_squared >= 0.9,
        format!(
            "{} instances, {over} above 2^(0.9183k); fitted b = {:.4} (gate 1.94), R^2 = {:.4}",
            report.rows.len(),
            fit.base,
            fit.r_squared
        ),
    )
}

/// Runs the No-certificate solver against brute force; returns
/// (instances, disagreements, skipped colorings, skipped violations).
fn nocert_runs(tag: ClassTag, g: usize, count: u64) -> (usize, usize, usize, usize) {
    let (mut runs, mut bad, mut skipped, mut unsound) = (0, 0, 0, 0);
    for q in [2, 3] {
        let zeta = build_certificate_set(tag, q, g, false).unwrap();
        for i in 0..count {
            let mut r = rng(derive_seed(u64::from(q) * 1000 + g as u64, i));
            let n = r.gen_range(1..=14);
            let k = r.gen_range(0..=n.min(8));
            let inst = random_modulator_instance(tag, n, k, q, 0.5, 0.8, &mut r);
            let out = solve_nocert_with(
                &inst.graph,
                &inst.lists,
                &inst.modulator.vertices,
                &zeta,
                SolveOptions { record_trace: true },
            )
            .unwrap();
            let ok = out.colorable == is_list_colorable(&inst.graph, &inst.lists).unwrap()
                && out.coloring.as_ref().is_none_or(|c| check_coloring(&inst.graph, &inst.lists, c).is_ok());
            runs += 1;
            bad += usize::from(!ok);
            for event in &out.trace {
                if let TraceEvent::Skipped { instance, assignment } = event {
                    skipped += 1;
                    let mut lists = instance.lists.clone();
                    for &(v, c) in assignment {
                        let forced = if lists.list(v).contains(c) { ColorSet::single(c) } else { ColorSet::EMPTY };
                        lists.set(v, forced);
                    }
                    unsound += usize::from(is_list_colorable(&instance.graph, &lists).unwrap());
                }
            }
        }
    }
    (runs, bad, skipped, unsound)
}

fn nocert_correctness_and_soundness() -> (Verdict, Verdict) {
    let start = Instant::now();
    let mut parts = Vec::new();
    let (mut all_bad, mut all_skipped, mut all_unsound, mut smallest) = (0, 0, 0, usize::MAX);
    for (tag, g) in [(ClassTag::Independent, 1), (ClassTag::UnionSplit, 3), (ClassTag::Cograph, 3)] {
        let (runs, bad, skipped, unsound) = nocert_runs(tag, g, 150);
        parts.push(format!("{tag} g={g}: {runs} runs, {bad} disagreements"));
        smallest = smallest.min(runs);
        all_bad += bad;
        all_skipped += skipped;
        all_unsound += unsound;
    }
    (
        within(all_bad == 0 && smallest >= 200, start, Duration::from_secs(600), parts.join("; ")),
        verdict(
            all_unsound == 0 && all_skipped > 0,
            format!("{all_skipped} skipped colorings, {all_unsound} extendible"),
        ),
    )
}

fn treedepth_certificates() -> Verdict {
    let (mut found, mut bad, mut tries) = (0, 0, 0u64);
    while found < 200 && tries < 100_000 {
        let mut r = rng(derive_seed(6, tries));
        tries += 1;
        let n = r.gen_range(1..=12);
        let t = r.gen_range(1..=4);
        let q = r.gen_range(1..=3);
        let (g, dec) = random_bounded_depth_graph(n, t, 0.7, &mut r);
        let lists = random_lists(n, q, 0.75, &mut r);
        if is_list_colorable(&g, &lists).unwrap() {
            continue;
        }
        found += 1;
        let m = mark_no_certificate(&g, &lists, &dec).unwrap().to_vec();
        let ok = m.len() as u64 <= marking_bound(q, dec.depth())
            && !is_list_colorable(&g.induced_on(&m), &lists.restrict(&m)).unwrap();
        bad += usize::from(!ok);
    }
    let mut star_ok = true;
    for q in 1..=4u32 {
        let g = Graph::star(q as usize);
        let mut lists = ListAssignment::full(q as usize + 1, q);
        for leaf in 1..=q as usize {
            lists.set(leaf, ColorSet::single(leaf as u32));
        }
        let dec = dfs_treedepth(&g);
        let m = mark_no_certificate(&g, &lists, &dec).unwrap();
        star_ok &= dec.depth() == 2 && m.len() as u64 == marking_bound(q, 2) && m.len() == q as usize + 1;
    }
    verdict(
        found == 200 && bad == 0 && star_ok,
        format!("{found} No-instances, {bad} violations; star meets q+1 for q = 1..4: {star_ok}"),
    )
}

fn split_treedepth() -> Verdict {
    let (mut checked, mut bad) = (0, 0);
    for q in 1..=2u32 {
        let mut check = |g: &Graph| {
            if chromatic_number_ie(g).unwrap() <= q as usize + 1 {
                checked += 1;
                bad += usize::from(exact_treedepth(g).unwrap().0 > q as usize + 2);
            }
        };
        for g in enumerate_graphs_up_to(7, ClassTag::Split).unwrap() {
            check(&g);
        }
        for i in 0..2000 {
            let mut r = rng(derive_seed(7, u64::from(q) * 10_000 + i));
            let n = r.gen_range(8..=10);
            let p = r.gen_range(0.1..0.9);
            check(&random_split_graph(n, p, &mut r));
        }
    }
    verdict(bad == 0, format!("{checked} split graphs checked, {bad} above q+2"))
}

fn clause_path_lemma() -> Verdict {
    let start = Instant::now();
    let (mut pairs, mut bad) = (0, 0);
    for q in [3u32, 4] {
        for m in 1..=2u32 {
            let vectors: Vec<Vec<u32>> = (0..q.pow(m))
                .map(|i| (0..m).map(|j| i / q.pow(j) % q + 1).collect())
                .collect();
            for c in &vectors {
                let gadget = build_clause_path(c, q).unwrap();
                for d in &vectors {
                    pairs += 1;
                    bad += usize::from(gadget.avoids(d).unwrap() != (d != c));
                }
            }
        }
    }
    within(bad == 0, start, Duration::from_secs(120), format!("{pairs} pairs, {bad} exceptions"))
}

fn reductions() -> (Verdict, Verdict) {
    let (mut runs, mut bad, mut size_bad, mut shape_bad) = (0, 0, 0, 0);
    for i in 0..120 {
        let mut r = rng(derive_seed(9, i));
        let n = r.gen_range(1..=4);
        let m = r.gen_range(1..=4);
        let f = random_cnf(n, m, 3, &mut r);
        let lists_only = reduce_3sat_lists(&f, 2).unwrap();
        shape_bad += usize::from(!remainder_in(&lists_only, ClassTag::Independent));
        let out = reduce_3sat(&f, 2).unwrap();
        size_bad += usize::from(out.modulator.size() != 3 * n + 3 * 2);
        bad += usize::from(!equisatisfiable(&f, &out));
        runs += 1;
    }
    let b = ssat_group_size(3, 1).unwrap();
    for i in 0..120 {
        let mut r = rng(derive_seed(90, i));
        let n = r.gen_range(1..=6);
        let m = r.gen_range(1..=3);
        let f = random_cnf(n, m, 3, &mut r);
        let out = reduce_ssat(&f, 3, 1).unwrap();
        size_bad += usize::from(out.modulator.size() != n.div_ceil(b));
        shape_bad += usize::from(!remainder_in(&out, ClassTag::LinearForest));
        bad += usize::from(!equisatisfiable(&f, &out));
        let joined = join_paths(out).unwrap();
        size_bad += usize::from(joined.modulator.size() != n.div_ceil(b));
        shape_bad += usize::from(!remainder_in(&joined, ClassTag::Path));
        bad += usize::from(!equisatisfiable(&f, &joined));
        runs += 2;
    }
    (
        verdict(
            bad == 0 && size_bad == 0,
            format!("{runs} reductions, {bad} equisatisfiability failures, {size_bad} modulator size mismatches"),
        ),
        verdict(shape_bad == 0, format!("{shape_bad} remainders outside their class")),
    )
}

fn main() {
    let (nocert, skipped) = nocert_correctness_and_soundness();
    let (equisat, shape) = reductions();
    let results = [
        ("1 oracle consistency", oracle_consistency()),
        ("2 vertex cover solver correctness", vc_correctness()),
        ("3 vertex cover branching bound", vc_branching_bound()),
        ("4 no-certificate solver correctness", nocert),
        ("5 skipped coloring soundness", skipped),
        ("6 treedepth certificate marking", treedepth_certificates()),
        ("7 split graph treedepth", split_treedepth()),
        ("8 clause path lemma", clause_path_lemma()),
        ("9 reduction equisatisfiability", equisat),
        ("10 structural recognition", shape),
    ];
    let mut failed = 0;
    for (name, v) in &results {
        println!("[{}] {name}: {}", if v.pass { "PASS" } else { "FAIL" }, v.detail);
        failed += usize::from(!v.pass);
    }
    println!("acceptance: {} of {} criteria pass", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

