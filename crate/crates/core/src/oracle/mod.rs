//! Ground-truth solvers and the small reductions around them.

mod brute;
mod chromatic;
mod lists;

pub use brute::{
    brute_force_list_color, brute_force_with_budget, chromatic_number_brute, is_list_colorable,
    is_q_colorable, node_budget, BruteForceOutcome, BUDGET_ENV, DEFAULT_NODE_BUDGET,
};
pub use chromatic::{
    chromatic_number_ie, chromatic_number_ie_with_cap, is_k_colorable_ie, DEFAULT_IE_CAP,
};
pub use lists::{
    check_coloring, is_proper_list_coloring, Color, ColorSet, Coloring, ColoringViolation,
    ListAssignment, MAX_PALETTE,
};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Adds a `q`-clique of palette vertices and joins each vertex to the
/// palette vertices of the colors missing from its list.
///
/// Palette vertex for color `c` is `n + c - 1`; the returned vector lists
/// them in color order. The result is `q`-colorable iff `(g, lists)` is
/// `q`-list-colorable.
pub fn list_to_coloring(g: &Graph, lists: &ListAssignment) -> Result<(Graph, Vec<usize>)> {
    lists.check_graph(g)?;
    let n = g.vertex_count();
    let q = lists.q() as usize;
    let palette: Vec<usize> = (n..n + q).collect();
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    for i in 0..q {
        for j in i + 1..q {
            edges.push((palette[i], palette[j]));
        }
    }
    let full = ColorSet::full(lists.q());
    for v in 0..n {
        for c in full.difference(lists.list(v)).iter() {
            edges.push((v, n + c as usize - 1));
        }
    }
    Ok((Graph::from_edges(n + q, edges)?, palette))
}

/// Total number of palette colors missing from the lists.
pub fn deficiency(lists: &ListAssignment) -> usize {
    let q = lists.q() as usize;
    lists.lists().iter().map(|l| q - l.len()).sum()
}

/// An induced subinstance: `vertices` of the host (ascending) with the
/// induced graph and the host's lists copied unchanged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subinstance {
    pub vertices: Vec<usize>,
    pub graph: Graph,
    pub lists: ListAssignment,
}

impl Subinstance {
    pub fn new(g: &Graph, lists: &ListAssignment, vertices: Vec<usize>) -> Result<Self> {
        lists.check_graph(g)?;
        let set = VertexSet::from_vertices(g.vertex_count(), vertices)?;
        let vertices = set.to_vec();
        Ok(Subinstance {
            graph: g.induced_on(&vertices),
            lists: lists.restrict(&vertices),
            vertices,
        })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_colorable(&self) -> Result<bool> {
        is_list_colorable(&self.graph, &self.lists)
    }
}

/// Shrinks a No-instance to a vertex-minimal No-subinstance by trying to
/// drop each vertex once, in ascending order.
///
/// One pass is enough: if dropping `v` left a Yes-instance at some point,
/// it still does after further removals, since subinstances of Yes-instances
/// are Yes-instances.
pub fn minimize_no_instance(g: &Graph, lists: &ListAssignment) -> Result<Subinstance> {
    lists.check_graph(g)?;
    if is_list_colorable(g, lists)? {
        return Err(Error::invalid("instance is list-colorable"));
    }
    let mut keep: Vec<usize> = (0..g.vertex_count()).collect();
    let mut i = 0;
    while i < keep.len() {
        let trial: Vec<usize> = keep.iter().copied().filter(|&u| u != keep[i]).collect();
        if is_list_colorable(&g.induced_on(&trial), &lists.restrict(&trial))? {
            i += 1;
        } else {
            keep = trial;
        }
    }
    Subinstance::new(g, lists, keep)
}
