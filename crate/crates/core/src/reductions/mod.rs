//! SAT-to-coloring constructions used as hard-instance generators.

mod cnf;
mod path_gadget;
mod ssat;
mod three_sat;

pub use cnf::CnfFormula;
pub use path_gadget::{build_clause_path, default_list, ClausePathGadget};
pub use ssat::{injection_digits, reduce_ssat, ssat_group_size};
pub use three_sat::{reduce_3sat, reduce_3sat_lists};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{is_member, ClassTag, Graph, Modulator, VertexSet};
use crate::oracle::{list_to_coloring, Color, ColorSet, Coloring, ListAssignment};

/// What a generated vertex stands for. Groups, layers, clauses and paths
/// are numbered from 1; path positions from 0 (the source).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum Role {
    /// Encodes a group of variables. `slot` is the layer (1..=3) in the
    /// 3-SAT construction and the vertex index within the group (1..=p) in
    /// the s-SAT construction.
    Variable { group: usize, slot: usize },
    /// Forces the color of `(layer + 1, group)` to be `q` above that of
    /// `(layer, group)`.
    Propagation {
        layer: usize,
        group: usize,
        colors: [Color; 2],
    },
    /// Forbids one falsifying color triple of a clause.
    Clause { clause: usize, colors: Vec<Color> },
    /// A vertex of the clause path for one bad coloring of a clause.
    Path {
        clause: usize,
        path: usize,
        position: usize,
        distinguished: Option<usize>,
    },
    /// Full-list vertex joining two consecutive paths.
    Connector,
    /// Palette clique vertex for `color`.
    Palette { color: Color },
}

/// How colorings of the variable vertices encode truth assignments.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "scheme", rename_all = "snake_case")]
pub enum Encoding {
    /// Variable `x_i` is bit `(i - 1) mod bits` (least significant first)
    /// of `color - 1` on the layer-1 vertex of group `⌈i / bits⌉`; bit 1
    /// means true.
    Layered {
        q: u32,
        bits: usize,
        num_vars: usize,
    },
    /// Group `g` holds variables `(g-1)·group_size + 1 ..`; its assignment,
    /// read as a binary number with the first variable least significant,
    /// is written in base `q` over the group's `p` vertices, most
    /// significant digit first, as `digit + 1`.
    Injection {
        q: u32,
        p: usize,
        group_size: usize,
        num_vars: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionOutput {
    pub graph: Graph,
    pub lists: ListAssignment,
    pub modulator: Modulator,
    pub roles: Vec<Role>,
    pub encoding: Encoding,
}

impl ReductionOutput {
    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn has_palette(&self) -> bool {
        self.roles.iter().any(|r| matches!(r, Role::Palette { .. }))
    }

    pub fn variable_vertex(&self, group: usize, slot: usize) -> Option<usize> {
        self.roles
            .iter()
            .position(|r| *r == Role::Variable { group, slot })
    }

    pub fn vertices_with(&self, pred: impl Fn(&Role) -> bool) -> Vec<usize> {
        (0..self.roles.len()).filter(|&v| pred(&self.roles[v])).collect()
    }

    /// Colors of the variable vertices that encode `assignment`
    /// (`assignment[i]` is `x_{i+1}`), as `(vertex, color)` pairs.
    pub fn encode_assignment(&self, assignment: &[bool]) -> Result<Vec<(usize, Color)>> {
        let mut out = Vec::new();
        match self.encoding {
            Encoding::Layered { q, bits, num_vars } => {
                check_len(assignment, num_vars)?;
                for group in 1..=num_vars.div_ceil(bits) {
                    let start = (group - 1) * bits;
                    let value = (start..num_vars.min(start + bits))
                        .filter(|&i| assignment[i])
                        .fold(0u32, |acc, i| acc | 1 << (i - start));
                    for layer in 1..=3 {
                        let v = self.expect_variable(group, layer)?;
                        out.push((v, value + 1 + (layer as u32 - 1) * q));
                    }
                }
            }
            Encoding::Injection {
                q,
                p,
                group_size,
                num_vars,
            } => {
                check_len(assignment, num_vars)?;
                for group in 1..=num_vars.div_ceil(group_size) {
                    let start = (group - 1) * group_size;
                    let value = (start..num_vars.min(start + group_size))
                        .filter(|&i| assignment[i])
                        .fold(0u64, |acc, i| acc | 1 << (i - start));
                    for (slot, digit) in injection_digits(value, q, p).into_iter().enumerate() {
                        out.push((self.expect_variable(group, slot + 1)?, digit + 1));
                    }
                }
            }
        }
        Ok(out)
    }

    /// The assignment a coloring encodes, or `None` if some group's colors
    /// are outside the injection's image. With a palette clique, colors
    /// are first renamed so that each palette vertex carries its own color.
    pub fn decode_assignment(&self, coloring: &Coloring) -> Result<Option<Vec<bool>>> {
        if coloring.len() != self.vertex_count() {
            return Err(Error::invalid(format!(
                "coloring has {} entries, instance has {} vertices",
                coloring.len(),
                self.vertex_count()
            )));
        }
        let renamed;
        let coloring = if self.has_palette() {
            let mut rename = vec![0; self.lists.q() as usize + 1];
            for (v, role) in self.roles.iter().enumerate() {
                if let Role::Palette { color } = role {
                    rename[coloring.color(v) as usize] = *color;
                }
            }
            renamed = Coloring(coloring.colors().iter().map(|&c| rename[c as usize]).collect());
            &renamed
        } else {
            coloring
        };
        match self.encoding {
            Encoding::Layered { bits, num_vars, .. } => {
                let mut out = vec![false; num_vars];
                for (i, value) in out.iter_mut().enumerate() {
                    let v = self.expect_variable(i / bits + 1, 1)?;
                    *value = (coloring.color(v) - 1) >> (i % bits) & 1 == 1;
                }
                Ok(Some(out))
            }
            Encoding::Injection {
                q,
                p,
                group_size,
                num_vars,
            } => {
                let mut out = vec![false; num_vars];
                for group in 1..=num_vars.div_ceil(group_size) {
                    let start = (group - 1) * group_size;
                    let size = group_size.min(num_vars - start);
                    let mut value = 0u64;
                    for slot in 1..=p {
                        let c = coloring.color(self.expect_variable(group, slot)?);
                        value = value * u64::from(q) + u64::from(c - 1);
                    }
                    if value >> size != 0 {
                        return Ok(None);
                    }
                    for k in 0..size {
                        out[start + k] = value >> k & 1 == 1;
                    }
                }
                Ok(Some(out))
            }
        }
    }

    fn expect_variable(&self, group: usize, slot: usize) -> Result<usize> {
        self.variable_vertex(group, slot).ok_or_else(|| {
            Error::invalid(format!("no variable vertex for group {group}, slot {slot}"))
        })
    }
}

fn check_len(assignment: &[bool], num_vars: usize) -> Result<()> {
    if assignment.len() != num_vars {
        return Err(Error::invalid(format!(
            "assignment has {} values, formula has {num_vars} variables",
            assignment.len()
        )));
    }
    Ok(())
}

/// Turns a list instance into a plain coloring instance by adding a palette
/// clique; its vertices join the modulator.
pub fn attach_palette_clique(out: ReductionOutput) -> Result<ReductionOutput> {
    let n = out.vertex_count();
    let q = out.lists.q();
    let (graph, palette) = list_to_coloring(&out.graph, &out.lists)?;
    let mut roles = out.roles;
    roles.extend((1..=q).map(|color| Role::Palette { color }));
    let mut modulator = VertexSet::new(n + q as usize);
    for v in out.modulator.vertices.iter().chain(palette) {
        modulator.insert(v);
    }
    Ok(ReductionOutput {
        graph,
        lists: ListAssignment::full(n + q as usize, q),
        modulator: Modulator::new(modulator, out.modulator.target),
        roles,
        encoding: out.encoding,
    })
}

/// Chains the paths left after removing the modulator into one path, with
/// a full-list connector between consecutive paths. Paths are taken in
/// order of their smallest vertex and walked from their smaller endpoint.
pub fn join_paths(out: ReductionOutput) -> Result<ReductionOutput> {
    let n = out.vertex_count();
    let rest = out.modulator.vertices.complement();
    let (sub, map) = out.graph.induced_subgraph(&rest)?;
    if !is_member(&sub, ClassTag::LinearForest) {
        return Err(Error::invalid(
            "graph minus modulator is not a disjoint union of paths",
        ));
    }
    let mut walks: Vec<Vec<usize>> = Vec::new();
    for comp in sub.components() {
        let start = *comp
            .iter()
            .find(|&&v| sub.degree(v) <= 1)
            .expect("a path component has an endpoint");
        let mut walk = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while let Some(&next) = sub.neighbors(cur).iter().find(|&&u| u != prev) {
            walk.push(next);
            prev = cur;
            cur = next;
        }
        walks.push(walk.into_iter().map(|v| map[v]).collect());
    }
    let links = walks.len().saturating_sub(1);
    let q = out.lists.q();
    let mut edges: Vec<(usize, usize)> = out.graph.edges().collect();
    let mut sets = out.lists.lists().to_vec();
    let mut roles = out.roles;
    for (i, pair) in walks.windows(2).enumerate() {
        let connector = n + i;
        edges.push((*pair[0].last().expect("nonempty walk"), connector));
        edges.push((connector, pair[1][0]));
        sets.push(ColorSet::full(q));
        roles.push(Role::Connector);
    }
    let mut modulator = VertexSet::new(n + links);
    for v in out.modulator.vertices.iter() {
        modulator.insert(v);
    }
    Ok(ReductionOutput {
        graph: Graph::from_edges(n + links, edges)?,
        lists: ListAssignment::new(q, sets)?,
        modulator: Modulator::new(modulator, ClassTag::Path),
        roles,
        encoding: out.encoding,
    })
}

/// Accumulates vertices, lists and roles while a construction runs.
struct Builder {
    q: u32,
    edges: Vec<(usize, usize)>,
    lists: Vec<ColorSet>,
    roles: Vec<Role>,
}

impl Builder {
    fn new(q: u32) -> Self {
        Builder {
            q,
            edges: Vec::new(),
            lists: Vec::new(),
            roles: Vec::new(),
        }
    }

    fn add(&mut self, list: ColorSet, role: Role) -> usize {
        self.lists.push(list);
        self.roles.push(role);
        self.lists.len() - 1
    }

    fn edge(&mut self, u: usize, v: usize) {
        self.edges.push((u, v));
    }

    fn finish(
        self,
        modulator: Vec<usize>,
        tag: ClassTag,
        encoding: Encoding,
    ) -> Result<ReductionOutput> {
        let n = self.lists.len();
        Ok(ReductionOutput {
            graph: Graph::from_edges(n, self.edges)?,
            lists: ListAssignment::new(self.q, self.lists)?,
            modulator: Modulator::new(VertexSet::from_vertices(n, modulator)?, tag),
            roles: self.roles,
            encoding,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bare(graph: Graph, q: u32) -> ReductionOutput {
        let n = graph.vertex_count();
        ReductionOutput {
            graph,
            lists: ListAssignment::full(n, q),
            modulator: Modulator::new(VertexSet::new(n), ClassTag::LinearForest),
            roles: vec![Role::Connector; n],
            encoding: Encoding::Layered {
                q,
                bits: 1,
                num_vars: 0,
            },
        }
    }

    #[test]
    fn two_edges_become_p5() {
        let out = join_paths(bare(Graph::path(2).disjoint_union(&Graph::path(2)), 3)).unwrap();
        assert_eq!(out.vertex_count(), 5);
        assert!(is_member(&out.graph, ClassTag::Path));
        assert_eq!(out.graph.degree(4), 2);
        assert_eq!(out.lists.list(4), ColorSet::full(3));
        assert_eq!(out.modulator.target, ClassTag::Path);
    }

    #[test]
    fn single_path_only_changes_tag() {
        let input = bare(Graph::path(4), 3);
        let out = join_paths(input.clone()).unwrap();
        assert_eq!(out.graph, input.graph);
        assert_eq!(out.modulator.target, ClassTag::Path);
    }

    #[test]
    fn join_rejects_non_paths() {
        assert!(join_paths(bare(Graph::star(3), 3)).is_err());
    }

    #[test]
    fn palette_clique_grows_modulator() {
        let mut input = bare(Graph::path(2), 3);
        input.lists = ListAssignment::from_colors(3, &[&[1], &[1, 2]]).unwrap();
        let out = attach_palette_clique(input).unwrap();
        assert_eq!(out.vertex_count(), 5);
        assert_eq!(out.modulator.size(), 3);
        assert_eq!(out.roles[4], Role::Palette { color: 3 });
        assert!(out.graph.has_edge(0, 3) && out.graph.has_edge(0, 4) && !out.graph.has_edge(0, 2));
    }
}
