use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Graph, VertexSet};
use crate::error::{Error, Result};

/// The graph classes a modulator can target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassTag {
    Independent,
    Forest,
    LinearForest,
    Path,
    Split,
    UnionSplit,
    Cograph,
}

impl ClassTag {
    pub const ALL: [ClassTag; 7] = [
        ClassTag::Independent,
        ClassTag::Forest,
        ClassTag::LinearForest,
        ClassTag::Path,
        ClassTag::Split,
        ClassTag::UnionSplit,
        ClassTag::Cograph,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClassTag::Independent => "independent",
            ClassTag::Forest => "forest",
            ClassTag::LinearForest => "linear-forest",
            ClassTag::Path => "path",
            ClassTag::Split => "split",
            ClassTag::UnionSplit => "union-split",
            ClassTag::Cograph => "cograph",
        }
    }

    /// Closed under induced subgraphs. `Path` is the only class here that is
    /// not: deleting an interior vertex disconnects it.
    pub fn is_hereditary(self) -> bool {
        self != ClassTag::Path
    }
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClassTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.to_ascii_lowercase().replace('_', "-");
        let tag = match norm.as_str() {
            "independent" | "edgeless" | "vc" => ClassTag::Independent,
            "forest" => ClassTag::Forest,
            "linear-forest" | "linearforest" => ClassTag::LinearForest,
            "path" => ClassTag::Path,
            "split" => ClassTag::Split,
            "union-split" | "unionsplit" => ClassTag::UnionSplit,
            "cograph" => ClassTag::Cograph,
            _ => return Err(Error::invalid(format!("unknown graph class '{s}'"))),
        };
        Ok(tag)
    }
}

/// A vertex set whose removal leaves a graph in `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Modulator {
    pub vertices: VertexSet,
    pub target: ClassTag,
}

impl Modulator {
    pub fn new(vertices: VertexSet, target: ClassTag) -> Self {
        Modulator { vertices, target }
    }

    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    pub fn verify(&self, g: &Graph) -> bool {
        verify_modulator(g, &self.vertices, self.target)
    }
}

pub fn is_member(g: &Graph, tag: ClassTag) -> bool {
    match tag {
        ClassTag::Independent => g.edge_count() == 0,
        ClassTag::Forest => is_forest(g),
        ClassTag::LinearForest => g.max_degree() <= 2 && is_forest(g),
        ClassTag::Path => g.max_degree() <= 2 && is_forest(g) && g.is_connected(),
        ClassTag::Split => is_split(g),
        ClassTag::UnionSplit => g
            .components()
            .iter()
            .all(|comp| is_split(&g.induced_on(comp))),
        ClassTag::Cograph => !has_induced_p4(g),
    }
}

/// True iff `G - X` belongs to `tag`. A set over the wrong universe is never
/// a modulator.
pub fn verify_modulator(g: &Graph, x: &VertexSet, tag: ClassTag) -> bool {
    if x.universe() != g.vertex_count() {
        return false;
    }
    let rest: Vec<usize> = (0..g.vertex_count()).filter(|&v| !x.contains(v)).collect();
    is_member(&g.induced_on(&rest), tag)
}

fn is_forest(g: &Graph) -> bool {
    g.edge_count() + g.components().len() == g.vertex_count()
}

/// Degree-sequence test: with degrees sorted non-increasingly and `m` the
/// largest index with `d_m >= m - 1`, the graph is split iff
/// `sum_{i<=m} d_i = m(m-1) + sum_{i>m} d_i`.
fn is_split(g: &Graph) -> bool {
    let mut deg: Vec<usize> = (0..g.vertex_count()).map(|v| g.degree(v)).collect();
    deg.sort_unstable_by(|a, b| b.cmp(a));
    let m = deg
        .iter()
        .enumerate()
        .filter(|&(i, &d)| d >= i)
        .map(|(i, _)| i + 1)
        .max()
        .unwrap_or(0);
    let head: usize = deg[..m].iter().sum();
    let tail: usize = deg[m..].iter().sum();
    head == m * m.saturating_sub(1) + tail
}

/// Looks for an induced `a-b-c-d` by fixing the middle edge `{b, c}`.
fn has_induced_p4(g: &Graph) -> bool {
    for (b, c) in g.edges() {
        for (first, second) in [(b, c), (c, b)] {
            for &a in g.neighbors(first) {
                if a == second || g.has_edge(a, second) {
                    continue;
                }
                for &d in g.neighbors(second) {
                    if d != first && d != a && !g.has_edge(d, first) && !g.has_edge(a, d) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn split_by_partition(g: &Graph) -> bool {
        let n = g.vertex_count();
        (0u32..1 << n).any(|clique| {
            let inside: Vec<usize> = (0..n).filter(|&v| clique >> v & 1 == 1).collect();
            let outside: Vec<usize> = (0..n).filter(|&v| clique >> v & 1 == 0).collect();
            inside
                .iter()
                .enumerate()
                .all(|(i, &u)| inside[i + 1..].iter().all(|&v| g.has_edge(u, v)))
                && g.is_independent(&outside)
        })
    }

    fn p4_by_tuples(g: &Graph) -> bool {
        let n = g.vertex_count();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let vs = [a, b, c, d];
                        if (0..4).any(|i| (i + 1..4).any(|j| vs[i] == vs[j])) {
                            continue;
                        }
                        let want = [(a, b), (b, c), (c, d)];
                        let ok = (0..4).all(|i| {
                            (i + 1..4).all(|j| {
                                let e = (vs[i], vs[j]);
                                let path = want.contains(&e) || want.contains(&(e.1, e.0));
                                g.has_edge(vs[i], vs[j]) == path
                            })
                        });
                        if ok {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    fn all_labeled(n: usize) -> impl Iterator<Item = Graph> {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        (0u64..1 << pairs.len()).map(move |mask| {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|&(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e);
            Graph::from_edges(n, edges).unwrap()
        })
    }

    #[test]
    fn split_recognizer_matches_partition_search() {
        for n in 0..=5 {
            for g in all_labeled(n) {
                assert_eq!(is_member(&g, ClassTag::Split), split_by_partition(&g), "{g:?}");
            }
        }
    }

    #[test]
    fn cograph_recognizer_matches_tuple_search() {
        for n in 0..=5 {
            for g in all_labeled(n) {
                assert_eq!(is_member(&g, ClassTag::Cograph), !p4_by_tuples(&g), "{g:?}");
            }
        }
    }

    #[test]
    fn class_examples() {
        assert!(is_member(&Graph::cycle(4), ClassTag::Cograph));
        assert!(!is_member(&Graph::path(4), ClassTag::Cograph));
        assert!(is_member(&Graph::complete(3), ClassTag::Split));
        let p5 = Graph::path(5);
        assert!(is_member(&p5, ClassTag::Path));
        let p5_plus = p5.disjoint_union(&Graph::empty(1));
        assert!(!is_member(&p5_plus, ClassTag::Path));
        assert!(is_member(&p5_plus, ClassTag::LinearForest));
        assert!(is_member(&Graph::empty(0), ClassTag::Path));
        assert!(is_member(&Graph::empty(1), ClassTag::Path));
        assert!(!is_member(&Graph::star(3), ClassTag::LinearForest));
        assert!(is_member(&Graph::star(3), ClassTag::Forest));
        assert!(!is_member(&Graph::cycle(4), ClassTag::Split));
        let two_triangles = Graph::complete(3).disjoint_union(&Graph::complete(3));
        assert!(!is_member(&two_triangles, ClassTag::Split));
        assert!(is_member(&two_triangles, ClassTag::UnionSplit));
    }

    #[test]
    fn modulator_examples() {
        let k4 = Graph::complete(4);
        let x = VertexSet::from_vertices(4, [0, 1, 2]).unwrap();
        assert!(verify_modulator(&k4, &x, ClassTag::Independent));
        let c5 = Graph::cycle(5);
        assert!(!verify_modulator(&c5, &VertexSet::new(5), ClassTag::Forest));
        let one = VertexSet::from_vertices(5, [2]).unwrap();
        assert!(verify_modulator(&c5, &one, ClassTag::Path));
        assert!(!verify_modulator(&c5, &VertexSet::new(4), ClassTag::Forest));
    }

    #[test]
    fn tags_parse_back() {
        for tag in ClassTag::ALL {
            assert_eq!(tag.name().parse::<ClassTag>().unwrap(), tag);
        }
        assert!("cochordal".parse::<ClassTag>().is_err());
    }
}
