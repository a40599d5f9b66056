//! Simple undirected graphs, vertex subsets and the structural utilities the
//! solvers are built on.

mod classes;
mod enumerate;
mod iso;

pub use classes::{is_member, verify_modulator, ClassTag, Modulator};
pub use enumerate::{
    enumerate_all_graphs_up_to, enumerate_graphs_up_to, enumerate_graphs_with_cap, DEFAULT_ENUMERATION_CAP,
    MAX_ENUMERATION_CAP,
};
pub use iso::{
    canonical_code, canonical_labeled_code, find_induced_isomorphism, induced_isomorphisms,
    InducedMap, MAX_CANONICAL_ORDER,
};

use crate::error::{Error, Result};

/// A finite simple undirected graph on vertices `0..n`.
///
/// Neighbor lists are kept sorted, so equal edge sets compare equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a graph from an edge list. Self-loops are rejected; repeated
    /// edges collapse to one.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!(
                    "edge {{{u}, {v}}} out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut edge_count = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            edge_count += list.len();
        }
        Ok(Graph {
            adj,
            edge_count: edge_count / 2,
        })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edges(n, edges).expect("complete graph edges are valid")
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("path edges are valid")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least three vertices");
        Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle edges are valid")
    }

    /// `K_{a,b}` with the `a`-side on vertices `0..a`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
        Graph::from_edges(a + b, edges).expect("biclique edges are valid")
    }

    /// The star `K_{1,leaves}` centred at vertex 0.
    pub fn star(leaves: usize) -> Self {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("star edges are valid")
    }

    pub fn petersen() -> Self {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (i + 5, (i + 2) % 5 + 5));
        Graph::from_edges(10, outer.chain(spokes).chain(inner)).expect("petersen edges are valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Neighborhood as a bitmask. Only meaningful for graphs with at most 64
    /// vertices.
    pub fn neighbor_mask(&self, v: usize) -> u64 {
        debug_assert!(self.vertex_count() <= 64);
        self.adj[v].iter().fold(0u64, |m, &u| m | (1u64 << u))
    }

    /// Subgraph induced by `subset`, together with the old→new index map
    /// (`map[i]` is the old id of new vertex `i`).
    pub fn induced_subgraph(&self, subset: &VertexSet) -> Result<(Graph, Vec<usize>)> {
        if subset.universe() != self.vertex_count() {
            return Err(Error::invalid(format!(
                "vertex set over {} vertices used with a graph on {}",
                subset.universe(),
                self.vertex_count()
            )));
        }
        let kept: Vec<usize> = subset.iter().collect();
        Ok((self.induced_on(&kept), kept))
    }

    /// Subgraph induced by the listed vertices, numbered in the given order.
    /// Panics on out-of-range or repeated vertices.
    pub fn induced_on(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.vertex_count()];
        for (new, &old) in vertices.iter().enumerate() {
            assert!(index[old] == usize::MAX, "vertex {old} listed twice");
            index[old] = new;
        }
        let mut adj = vec![Vec::new(); vertices.len()];
        let mut edge_count = 0;
        for (new, &old) in vertices.iter().enumerate() {
            for &w in &self.adj[old] {
                if index[w] != usize::MAX {
                    adj[new].push(index[w]);
                }
            }
            adj[new].sort_unstable();
            edge_count += adj[new].len();
        }
        Graph {
            adj,
            edge_count: edge_count / 2,
        }
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Disjoint union; vertices of `other` are shifted by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.vertex_count();
        let edges = self
            .edges()
            .chain(other.edges().map(|(u, v)| (u + shift, v + shift)));
        Graph::from_edges(shift + other.vertex_count(), edges).expect("union edges are valid")
    }

    pub fn complement(&self) -> Graph {
        let n = self.vertex_count();
        let edges = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| !self.has_edge(u, v));
        Graph::from_edges(n, edges).expect("complement edges are valid")
    }

    /// True if no two vertices of `vertices` are adjacent.
    pub fn is_independent(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges=", self.vertex_count())?;
        f.debug_list().entries(self.edges()).finish()?;
        write!(f, ")")
    }
}

/// A subset of `0..universe` with bitset semantics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    universe: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new(universe: usize) -> Self {
        VertexSet {
            universe,
            words: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = VertexSet::new(universe);
        for v in 0..universe {
            s.insert(v);
        }
        s
    }

    pub fn from_vertices(
        universe: usize,
        vertices: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let mut s = VertexSet::new(universe);
        for v in vertices {
            if v >= universe {
                return Err(Error::invalid(format!(
                    "vertex {v} out of range for {universe} vertices"
                )));
            }
            s.insert(v);
        }
        Ok(s)
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Panics if `v` is outside the universe.
    pub fn insert(&mut self, v: usize) -> bool {
        assert!(v < self.universe, "vertex {v} out of range");
        let (w, b) = (v / 64, v % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, v: usize) -> bool {
        if v >= self.universe {
            return false;
        }
        let (w, b) = (v / 64, v % 64);
        let present = self.words[w] & (1 << b) != 0;
        self.words[w] &= !(1 << b);
        present
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && self.words[v / 64] & (1 << (v % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i * 64 + b)
            })
        })
    }

    pub fn complement(&self) -> VertexSet {
        let mut out = VertexSet::new(self.universe);
        for v in 0..self.universe {
            if !self.contains(v) {
                out.insert(v);
            }
        }
        out
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl std::fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
