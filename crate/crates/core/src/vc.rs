//! `q`-coloring parameterized by a given vertex cover.
//!
//! Some color class of a `q`-coloring meets the cover `X` in at most
//! `⌊k/q⌋` vertices. For each independent `S ⊆ X` that small, `S` is grown
//! by every non-cover vertex with no neighbor in `S`, the grown set takes
//! color `q`, and the rest is solved with `q - 1` colors. Two colors is a
//! bipartiteness test and one color an edgelessness test.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{verify_modulator, ClassTag, Graph, VertexSet};
use crate::oracle::{Color, Coloring};
use crate::stats::BranchStats;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VcOutcome {
    pub colorable: bool,
    pub coloring: Option<Coloring>,
    pub stats: BranchStats,
    /// Branching sets tried by the outermost call.
    pub top_level_subsets: u64,
}

/// A branching step as seen from the original graph.
#[derive(Clone, Copy, Debug)]
pub struct VcBranch<'a> {
    /// Colors still available at this level.
    pub q: u32,
    /// The chosen set inside the cover.
    pub subset: &'a [usize],
    /// `subset` plus the non-cover vertices it absorbs.
    pub extended: &'a [usize],
}

pub fn solve_vc(g: &Graph, cover: &VertexSet, q: u32) -> Result<VcOutcome> {
    solve_vc_observed(g, cover, q, |_| {})
}

/// [`solve_vc`], reporting every branching set to `observe`.
pub fn solve_vc_observed(
    g: &Graph,
    cover: &VertexSet,
    q: u32,
    mut observe: impl FnMut(VcBranch<'_>),
) -> Result<VcOutcome> {
    let n = g.vertex_count();
    if cover.universe() != n {
        return Err(Error::invalid(format!(
            "modulator is over {} vertices, graph has {n}",
            cover.universe()
        )));
    }
    if !verify_modulator(g, cover, ClassTag::Independent) {
        return Err(Error::invalid("modulator is not a vertex cover"));
    }
    let mut solver = VcSolver {
        g,
        stats: BranchStats::default(),
        top_level: 0,
        observe: &mut observe,
    };
    let vertices: Vec<usize> = (0..n).collect();
    let in_cover: Vec<bool> = (0..n).map(|v| cover.contains(v)).collect();
    let mut colors = vec![0; n];
    let colorable = solver.solve(&vertices, &in_cover, q, 1, &mut colors);
    Ok(VcOutcome {
        colorable,
        coloring: colorable.then_some(Coloring(colors)),
        stats: solver.stats,
        top_level_subsets: solver.top_level,
    })
}

struct VcSolver<'a, F> {
    g: &'a Graph,
    stats: BranchStats,
    top_level: u64,
    observe: &'a mut F,
}

impl<F: FnMut(VcBranch<'_>)> VcSolver<'_, F> {
    /// Colors `vertices` (original ids) with `1..=q`, writing into `colors`.
    fn solve(
        &mut self,
        vertices: &[usize],
        in_cover: &[bool],
        q: u32,
        level: u64,
        colors: &mut [Color],
    ) -> bool {
        self.stats.enter(level);
        match q {
            0 => return vertices.is_empty(),
            1 => {
                let sub = self.g.induced_on(vertices);
                if sub.edge_count() > 0 {
                    return false;
                }
                for &v in vertices {
                    colors[v] = 1;
                }
                return true;
            }
            2 => {
                let Some(two) = is_bipartite(&self.g.induced_on(vertices)) else {
                    return false;
                };
                for (i, &v) in vertices.iter().enumerate() {
                    colors[v] = two.color(i);
                }
                return true;
            }
            _ => {}
        }
        let cover: Vec<usize> = vertices.iter().copied().filter(|&v| in_cover[v]).collect();
        let limit = cover.len() / q as usize;
        let mut chosen = Vec::with_capacity(limit);
        for size in 0..=limit {
            if self.subsets(vertices, in_cover, &cover, size, 0, &mut chosen, q, level, colors) {
                return true;
            }
        }
        false
    }

    /// Independent subsets of `cover` of exactly `size`, in lex order.
    #[allow(clippy::too_many_arguments)]
    fn subsets(
        &mut self,
        vertices: &[usize],
        in_cover: &[bool],
        cover: &[usize],
        size: usize,
        start: usize,
        chosen: &mut Vec<usize>,
        q: u32,
        level: u64,
        colors: &mut [Color],
    ) -> bool {
        if chosen.len() == size {
            return self.branch(vertices, in_cover, chosen, q, level, colors);
        }
        let need = size - chosen.len();
        for i in start..cover.len() {
            if cover.len() - i < need {
                break;
            }
            let v = cover[i];
            if chosen.iter().any(|&u| self.g.has_edge(u, v)) {
                continue;
            }
            chosen.push(v);
            let found = self.subsets(vertices, in_cover, cover, size, i + 1, chosen, q, level, colors);
            chosen.pop();
            if found {
                return true;
            }
        }
        false
    }

    fn branch(
        &mut self,
        vertices: &[usize],
        in_cover: &[bool],
        subset: &[usize],
        q: u32,
        level: u64,
        colors: &mut [Color],
    ) -> bool {
        self.stats.subsets_enumerated += 1;
        if level == 1 {
            self.top_level += 1;
        }
        let mut extended = subset.to_vec();
        extended.extend(vertices.iter().copied().filter(|&v| {
            !in_cover[v] && !self.g.neighbors(v).iter().any(|u| subset.contains(u))
        }));
        extended.sort_unstable();
        (self.observe)(VcBranch {
            q,
            subset,
            extended: &extended,
        });
        let rest: Vec<usize> = vertices
            .iter()
            .copied()
            .filter(|v| extended.binary_search(v).is_err())
            .collect();
        if !self.solve(&rest, in_cover, q - 1, level + 1, colors) {
            return false;
        }
        for &v in &extended {
            colors[v] = q;
        }
        true
    }
}

/// A 2-coloring (colors 1 and 2) if the graph is bipartite, by BFS from the
/// lowest uncolored vertex of each component.
pub fn is_bipartite(g: &Graph) -> Option<Coloring> {
    let n = g.vertex_count();
    let mut color = vec![0; n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        if color[s] != 0 {
            continue;
        }
        color[s] = 1;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            for &u in g.neighbors(v) {
                if color[u] == 0 {
                    color[u] = 3 - color[v];
                    queue.push_back(u);
                } else if color[u] == color[v] {
                    return None;
                }
            }
        }
    }
    Some(Coloring(color))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{is_proper_list_coloring, ListAssignment};

    fn cover(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_vertices(n, vs.iter().copied()).unwrap()
    }

    #[test]
    fn cliques() {
        let out = solve_vc(&Graph::complete(3), &cover(3, &[0, 1]), 3).unwrap();
        assert!(out.colorable);
        let w = out.coloring.unwrap();
        assert!(is_proper_list_coloring(&Graph::complete(3), &ListAssignment::full(3, 3), &w));
        assert!(!solve_vc(&Graph::complete(4), &cover(4, &[1, 2, 3]), 3).unwrap().colorable);
    }

    #[test]
    fn petersen_with_six_vertex_cover() {
        let g = Graph::petersen();
        // {0, 2, 8, 9} is independent, so the other six vertices cover every edge
        let x = cover(10, &[1, 3, 4, 5, 6, 7]);
        assert!(verify_modulator(&g, &x, ClassTag::Independent));
        let out = solve_vc(&g, &x, 3).unwrap();
        assert!(out.colorable);
        assert!(is_proper_list_coloring(&g, &ListAssignment::full(10, 3), &out.coloring.unwrap()));
        assert!(!solve_vc(&g, &x, 2).unwrap().colorable);
    }

    #[test]
    fn rejects_non_cover() {
        assert!(matches!(
            solve_vc(&Graph::path(3), &cover(3, &[0]), 3),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn small_q() {
        let g = Graph::empty(3);
        assert!(solve_vc(&g, &cover(3, &[]), 1).unwrap().colorable);
        assert!(!solve_vc(&g, &cover(3, &[]), 0).unwrap().colorable);
        assert!(solve_vc(&Graph::empty(0), &cover(0, &[]), 0).unwrap().colorable);
        assert!(!solve_vc(&Graph::cycle(5), &cover(5, &[0, 1, 3]), 2).unwrap().colorable);
    }

    #[test]
    fn bipartite_examples() {
        assert!(is_bipartite(&Graph::cycle(4)).is_some());
        assert!(is_bipartite(&Graph::cycle(5)).is_none());
        let forest = Graph::star(3).disjoint_union(&Graph::path(4)).disjoint_union(&Graph::path(2));
        let w = is_bipartite(&forest).unwrap();
        assert!(is_proper_list_coloring(&forest, &ListAssignment::full(10, 2), &w));
    }
}
