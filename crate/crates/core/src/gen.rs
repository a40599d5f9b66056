//! Seeded random instances for tests, fuzzing and benchmarks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{ClassTag, Graph, Modulator, VertexSet};
use crate::oracle::{ColorSet, ListAssignment};
use crate::reductions::CnfFormula;
use crate::treedepth::TreedepthDecomposition;

pub type InstanceRng = ChaCha8Rng;

pub fn rng(seed: u64) -> InstanceRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Mixes a base seed with an instance index so that instances are
/// independent of how many were drawn before them.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// G(n, p).
pub fn random_graph(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("edges are in range")
}

/// Each color joins each list independently with probability `p`; lists
/// may come out empty.
pub fn random_lists(n: usize, q: u32, p: f64, rng: &mut impl Rng) -> ListAssignment {
    let lists = (0..n)
        .map(|_| (1..=q).filter(|_| rng.gen_bool(p)).collect::<ColorSet>())
        .collect();
    ListAssignment::new(q, lists).expect("colors are in range")
}

/// A random member of `tag` on `n` vertices.
pub fn random_class_graph(tag: ClassTag, n: usize, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    match tag {
        ClassTag::Independent => {}
        ClassTag::Forest => {
            for v in 1..n {
                if rng.gen_bool(0.75) {
                    edges.push((rng.gen_range(0..v), v));
                }
            }
        }
        ClassTag::LinearForest | ClassTag::Path => {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(rng);
            for w in order.windows(2) {
                if tag == ClassTag::Path || rng.gen_bool(0.7) {
                    edges.push((w[0], w[1]));
                }
            }
        }
        ClassTag::Split => split_edges(&(0..n).collect::<Vec<_>>(), rng, &mut edges),
        ClassTag::UnionSplit => {
            let mut start = 0;
            while start < n {
                let len = rng.gen_range(1..=(n - start).min(4));
                split_edges(&(start..start + len).collect::<Vec<_>>(), rng, &mut edges);
                start += len;
            }
        }
        ClassTag::Cograph => cograph_edges(&(0..n).collect::<Vec<_>>(), rng, &mut edges),
    }
    Graph::from_edges(n, edges).expect("edges are in range")
}

fn split_edges(vertices: &[usize], rng: &mut impl Rng, edges: &mut Vec<(usize, usize)>) {
    if vertices.is_empty() {
        return;
    }
    let clique = rng.gen_range(0..=vertices.len());
    let (k, rest) = vertices.split_at(clique);
    for (i, &u) in k.iter().enumerate() {
        for &v in &k[i + 1..] {
            edges.push((u, v));
        }
    }
    for &u in rest {
        for &v in k {
            if rng.gen_bool(0.5) {
                edges.push((u, v));
            }
        }
    }
}

/// Cographs are built from single vertices by disjoint union and join.
fn cograph_edges(vertices: &[usize], rng: &mut impl Rng, edges: &mut Vec<(usize, usize)>) {
    if vertices.len() <= 1 {
        return;
    }
    let cut = rng.gen_range(1..vertices.len());
    let (a, b) = vertices.split_at(cut);
    cograph_edges(a, rng, edges);
    cograph_edges(b, rng, edges);
    if rng.gen_bool(0.5) {
        for &u in a {
            for &v in b {
                edges.push((u, v));
            }
        }
    }
}

/// A split graph: a clique on a random prefix, every other vertex joined to
/// each clique vertex with probability `p`.
pub fn random_split_graph(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let clique = rng.gen_range(0..=n);
    let mut edges = Vec::new();
    for u in 0..clique {
        for v in u + 1..clique {
            edges.push((u, v));
        }
        for v in clique..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("edges are in range")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulatorInstance {
    pub graph: Graph,
    pub lists: ListAssignment,
    pub modulator: Modulator,
}

/// A graph in which removing `k` of the `n` vertices leaves a random member
/// of `tag`. Edges touching the modulator appear with probability `p`;
/// colors join lists with probability `list_p` (`1.0` gives full lists).
pub fn random_modulator_instance(
    tag: ClassTag,
    n: usize,
    k: usize,
    q: u32,
    p: f64,
    list_p: f64,
    rng: &mut impl Rng,
) -> ModulatorInstance {
    assert!(k <= n, "modulator larger than the graph");
    let rest = random_class_graph(tag, n - k, rng);
    let mut ids: Vec<usize> = (0..n).collect();
    ids.shuffle(rng);
    let (x, others) = ids.split_at(k);
    let mut edges: Vec<(usize, usize)> = rest.edges().map(|(u, v)| (others[u], others[v])).collect();
    for (i, &u) in x.iter().enumerate() {
        for &v in x[i + 1..].iter().chain(others) {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    let lists = if list_p >= 1.0 {
        ListAssignment::full(n, q)
    } else {
        random_lists(n, q, list_p, rng)
    };
    ModulatorInstance {
        graph: Graph::from_edges(n, edges).expect("edges are in range"),
        lists,
        modulator: Modulator::new(
            VertexSet::from_vertices(n, x.to_vec()).expect("vertices are in range"),
            tag,
        ),
    }
}

/// Vertex-cover benchmark family: the cover holds a `K_{q+1}` (so every
/// instance is a No-instance and the search is exhaustive) and `k - q - 1`
/// further cover vertices; `k` outside vertices each see a random half of
/// the cover.
pub fn vc_bench_instance(k: usize, q: u32, rng: &mut impl Rng) -> (Graph, VertexSet) {
    let clique = (q as usize + 1).min(k);
    let mut edges = Vec::new();
    for u in 0..clique {
        for v in u + 1..clique {
            edges.push((u, v));
        }
    }
    for w in k..2 * k {
        for x in 0..k {
            if rng.gen_bool(0.5) {
                edges.push((x, w));
            }
        }
    }
    let cover = VertexSet::from_vertices(2 * k, 0..k).expect("in range");
    (Graph::from_edges(2 * k, edges).expect("in range"), cover)
}

/// `m` clauses, each on `min(width, n)` distinct variables with random
/// signs.
pub fn random_cnf(n: usize, m: usize, width: usize, rng: &mut impl Rng) -> CnfFormula {
    assert!(n > 0, "formula needs a variable");
    let vars: Vec<i32> = (1..=n as i32).collect();
    let clauses = (0..m)
        .map(|_| {
            vars.choose_multiple(rng, width.min(n))
                .map(|&x| if rng.gen_bool(0.5) { x } else { -x })
                .collect()
        })
        .collect();
    CnfFormula::new(n, clauses).expect("literals are in range")
}

/// A random rooted forest of depth at most `t` and a graph whose edges
/// join ancestor-descendant pairs (each with probability `p`), so the
/// forest is a treedepth decomposition of the graph.
pub fn random_bounded_depth_graph(
    n: usize,
    t: usize,
    p: f64,
    rng: &mut impl Rng,
) -> (Graph, TreedepthDecomposition) {
    assert!(t > 0 || n == 0, "depth 0 only fits the empty graph");
    let mut parent = vec![None; n];
    let mut level = vec![0usize; n];
    for v in 0..n {
        let eligible: Vec<usize> = (0..v).filter(|&u| level[u] < t).collect();
        if !eligible.is_empty() && rng.gen_bool(0.85) {
            let u = *eligible.choose(rng).expect("nonempty");
            parent[v] = Some(u);
            level[v] = level[u] + 1;
        } else {
            level[v] = 1;
        }
    }
    let mut edges = Vec::new();
    for v in 0..n {
        let mut a = parent[v];
        while let Some(u) = a {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
            a = parent[u];
        }
    }
    let dec = TreedepthDecomposition::new(parent).expect("parents precede children");
    (Graph::from_edges(n, edges).expect("in range"), dec)
}
