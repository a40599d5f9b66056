//! List coloring on `F + kv` graphs for classes `F` whose No-instances
//! contain No-subinstances of bounded size.
//!
//! If some small No-instance `(H, Λ_H)` sits inside `G - X` and every color
//! `v` has beyond `Λ_H` can be blocked by a neighbor in `X`, the coloring of
//! those blockers that does the blocking cannot extend, so it is skipped
//! while every other coloring of the blockers is branched on. When no such
//! configuration exists, only `G[X]` has to be decided.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::graph::{
    canonical_labeled_code, enumerate_graphs_up_to, induced_isomorphisms,
    verify_modulator, ClassTag, Graph, VertexSet,
};
use crate::oracle::{
    brute_force_list_color, is_k_colorable_ie, is_list_colorable, list_to_coloring, Color,
    ColorSet, Coloring, ListAssignment, DEFAULT_IE_CAP,
};
use crate::stats::BranchStats;

/// Largest certificate order enumerated without an explicit cap.
pub const MAX_CERTIFICATE_ORDER: usize = 4;
/// Upper limit on the `(graph, list assignment)` pairs examined while
/// building a certificate set.
pub const DEFAULT_CERTIFICATE_BUDGET: u64 = 4_000_000;

/// A small No-instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoCertificate {
    pub graph: Graph,
    pub lists: ListAssignment,
}

/// The No-instances of a class up to `g` vertices, one per isomorphism class
/// of list-labelled graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoCertificateSet {
    pub tag: ClassTag,
    pub q: u32,
    pub g: usize,
    pub minimal_only: bool,
    pub members: Vec<NoCertificate>,
}

impl NoCertificateSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

pub fn build_certificate_set(
    tag: ClassTag,
    q: u32,
    g: usize,
    minimal_only: bool,
) -> Result<NoCertificateSet> {
    build_certificate_set_with_limits(tag, q, g, minimal_only, MAX_CERTIFICATE_ORDER, DEFAULT_CERTIFICATE_BUDGET)
}

/// Members are ordered by graph (as enumerated) and then by list assignment,
/// reading lists as base-`2^q` digits with vertex 0 most significant.
pub fn build_certificate_set_with_limits(
    tag: ClassTag,
    q: u32,
    g: usize,
    minimal_only: bool,
    max_order: usize,
    budget: u64,
) -> Result<NoCertificateSet> {
    if g > max_order {
        return Err(Error::limit(format!(
            "certificate order {g} exceeds the cap of {max_order}"
        )));
    }
    if !(1..=16).contains(&q) {
        return Err(Error::invalid(format!("palette size {q} outside 1..=16")));
    }
    let graphs = enumerate_graphs_up_to(g, tag)?;
    let total: u64 = graphs
        .iter()
        .map(|h| 1u64.checked_shl(q * h.vertex_count() as u32).unwrap_or(u64::MAX))
        .fold(0u64, u64::saturating_add);
    if total > budget {
        return Err(Error::limit(format!(
            "certificate enumeration needs {total} checks, budget is {budget}"
        )));
    }
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut members = Vec::new();
    for h in &graphs {
        let n = h.vertex_count();
        let radix = 1u64 << q;
        for index in 0..radix.pow(n as u32) {
            let mut rest = index;
            let mut sets = vec![ColorSet::EMPTY; n];
            for v in (0..n).rev() {
                sets[v] = ColorSet(rest % radix);
                rest /= radix;
            }
            let lists = ListAssignment::new(q, sets)?;
            if is_list_colorable(h, &lists)? {
                continue;
            }
            if minimal_only && !is_vertex_minimal(h, &lists)? {
                continue;
            }
            let labels: Vec<u64> = lists.lists().iter().map(|l| l.0).collect();
            if seen.insert(canonical_labeled_code(h, &labels)) {
                members.push(NoCertificate {
                    graph: h.clone(),
                    lists,
                });
            }
        }
    }
    Ok(NoCertificateSet {
        tag,
        q,
        g,
        minimal_only,
        members,
    })
}

fn is_vertex_minimal(h: &Graph, lists: &ListAssignment) -> Result<bool> {
    let n = h.vertex_count();
    for u in 0..n {
        let rest: Vec<usize> = (0..n).filter(|&v| v != u).collect();
        if !is_list_colorable(&h.induced_on(&rest), &lists.restrict(&rest))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A witness for the branching condition: member `member` of the set embeds
/// on `domain` (sorted vertices of `G - X`, `domain[i] ↦ image[i]`), and
/// `blockers[c - 1]` is the set `X_c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockingConfiguration {
    pub member: usize,
    pub domain: Vec<usize>,
    pub image: Vec<usize>,
    pub blockers: Vec<Vec<usize>>,
}

impl BlockingConfiguration {
    /// All blocker vertices, ascending.
    pub fn blocker_union(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.blockers.iter().flatten().copied().collect();
        set.into_iter().collect()
    }

    /// The one coloring of the blockers that cannot extend, if the blocker
    /// sets are disjoint.
    pub fn blocking_coloring(&self) -> Option<Vec<(usize, Color)>> {
        let mut out: Vec<(usize, Color)> = Vec::new();
        for (i, xs) in self.blockers.iter().enumerate() {
            for &w in xs {
                if out.iter().any(|&(u, _)| u == w) {
                    return None;
                }
                out.push((w, i as Color + 1));
            }
        }
        out.sort_unstable();
        Some(out)
    }

    /// Checks the three conditions against an instance.
    pub fn holds(
        &self,
        g: &Graph,
        lists: &ListAssignment,
        modulator: &VertexSet,
        set: &NoCertificateSet,
    ) -> bool {
        let Some(member) = set.members.get(self.member) else {
            return false;
        };
        let map = crate::graph::InducedMap {
            domain: self.domain.clone(),
            image: self.image.clone(),
        };
        if self.domain.iter().any(|&v| v >= g.vertex_count() || modulator.contains(v))
            || !map.is_valid(&member.graph, g)
            || self.blockers.len() != set.q as usize
        {
            return false;
        }
        for (i, xs) in self.blockers.iter().enumerate() {
            let c = i as Color + 1;
            if xs.len() > set.g
                || xs.iter().any(|&w| !modulator.contains(w) || !lists.list(w).contains(c))
            {
                return false;
            }
        }
        self.domain.iter().zip(&self.image).all(|(&v, &h)| {
            lists
                .list(v)
                .difference(member.lists.list(h))
                .iter()
                .all(|c| self.blockers[c as usize - 1].iter().any(|&w| g.has_edge(v, w)))
        })
    }
}

/// First configuration satisfying the branching condition, searching
/// members in order, then embeddings in the order of
/// [`induced_isomorphisms`].
pub fn find_blocking_configuration(
    g: &Graph,
    lists: &ListAssignment,
    modulator: &VertexSet,
    set: &NoCertificateSet,
) -> Result<Option<BlockingConfiguration>> {
    check_instance(g, lists, modulator, set)?;
    Ok(search_blocking(g, lists, modulator, set))
}

fn check_instance(
    g: &Graph,
    lists: &ListAssignment,
    modulator: &VertexSet,
    set: &NoCertificateSet,
) -> Result<()> {
    lists.check_graph(g)?;
    if lists.q() != set.q {
        return Err(Error::invalid(format!(
            "certificate set is for q = {}, instance has q = {}",
            set.q,
            lists.q()
        )));
    }
    if modulator.universe() != g.vertex_count() {
        return Err(Error::invalid("modulator and graph sizes differ"));
    }
    if !verify_modulator(g, modulator, set.tag) {
        return Err(Error::invalid(format!(
            "removing the modulator does not leave a {} graph",
            set.tag
        )));
    }
    Ok(())
}

fn search_blocking(
    g: &Graph,
    lists: &ListAssignment,
    modulator: &VertexSet,
    set: &NoCertificateSet,
) -> Option<BlockingConfiguration> {
    let outside = modulator.complement();
    for (index, member) in set.members.iter().enumerate() {
        let found = induced_isomorphisms(&member.graph, g, &outside, |map| {
            match assign_blockers(g, lists, modulator, member, &map.domain, &map.image, set.q) {
                Some(blockers) => ControlFlow::Break(BlockingConfiguration {
                    member: index,
                    domain: map.domain.clone(),
                    image: map.image.clone(),
                    blockers,
                }),
                None => ControlFlow::Continue(()),
            }
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Greedy choice of `X_1..X_q`. Each `(v, c)` pair needs some neighbor `w`
/// of `v` in `X` with `c` on its list; a `w` already in `X_c` is reused,
/// then one outside every other `X_c'` and not adjacent to `X_c` (keeping the
/// skipped coloring proper), then the lowest index.
fn assign_blockers(
    g: &Graph,
    lists: &ListAssignment,
    modulator: &VertexSet,
    member: &NoCertificate,
    domain: &[usize],
    image: &[usize],
    q: u32,
) -> Option<Vec<Vec<usize>>> {
    let mut blockers: Vec<Vec<usize>> = vec![Vec::new(); q as usize];
    for (&v, &h) in domain.iter().zip(image) {
        for c in lists.list(v).difference(member.lists.list(h)).iter() {
            let slot = c as usize - 1;
            let candidates: Vec<usize> = g
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&w| modulator.contains(w) && lists.list(w).contains(c))
                .collect();
            if candidates.iter().any(|w| blockers[slot].contains(w)) {
                continue;
            }
            let fresh = candidates.iter().copied().find(|&w| {
                blockers.iter().all(|xs| !xs.contains(&w))
                    && blockers[slot].iter().all(|&u| !g.has_edge(u, w))
            });
            let w = fresh.or_else(|| candidates.first().copied())?;
            blockers[slot].push(w);
        }
    }
    for xs in &mut blockers {
        xs.sort_unstable();
    }
    Some(blockers)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveOptions {
    /// Keep a [`TraceEvent`] for every skipped coloring and every leaf
    /// decided on the modulator alone.
    pub record_trace: bool,
}

/// A recursion node's instance, in that node's local vertex ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeInstance {
    pub graph: Graph,
    pub lists: ListAssignment,
    pub modulator: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceEvent {
    /// The coloring `assignment` of blocker vertices was not branched on.
    Skipped {
        instance: NodeInstance,
        assignment: Vec<(usize, Color)>,
    },
    /// No configuration existed and the answer came from `G[X]`.
    ModulatorOnly {
        instance: NodeInstance,
        /// Whether `G[X]` is list-colorable.
        modulator_colorable: bool,
        /// Whether the first coloring of `G[X]` extended to the whole graph.
        extended: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NocertOutcome {
    pub colorable: bool,
    pub coloring: Option<Coloring>,
    pub stats: BranchStats,
    /// Leaves decided on the modulator alone.
    pub modulator_leaves: u64,
    /// Leaves where `G[X]` was colorable but its first coloring did not
    /// extend; only possible when the certificate set is incomplete, and
    /// resolved there by an exact search of the whole node instance.
    pub extension_failures: u64,
    pub trace: Vec<TraceEvent>,
}

pub fn solve_nocert(
    g: &Graph,
    lists: &ListAssignment,
    modulator: &VertexSet,
    set: &NoCertificateSet,
) -> Result<NocertOutcome> {
    solve_nocert_with(g, lists, modulator, set, SolveOptions::default())
}

pub fn solve_nocert_with(
    g: &Graph,
    lists: &ListAssignment,
    modulator: &VertexSet,
    set: &NoCertificateSet,
    options: SolveOptions,
) -> Result<NocertOutcome> {
    check_instance(g, lists, modulator, set)?;
    let mut solver = Solver {
        set,
        options,
        stats: BranchStats::default(),
        modulator_leaves: 0,
        extension_failures: 0,
        trace: Vec::new(),
    };
    let coloring = solver.solve(g, lists, modulator, 1)?;
    Ok(NocertOutcome {
        colorable: coloring.is_some(),
        coloring: coloring.map(Coloring),
        stats: solver.stats,
        modulator_leaves: solver.modulator_leaves,
        extension_failures: solver.extension_failures,
        trace: solver.trace,
    })
}

struct Solver<'a> {
    set: &'a NoCertificateSet,
    options: SolveOptions,
    stats: BranchStats,
    modulator_leaves: u64,
    extension_failures: u64,
    trace: Vec<TraceEvent>,
}

impl Solver<'_> {
    fn solve(
        &mut self,
        g: &Graph,
        lists: &ListAssignment,
        modulator: &VertexSet,
        level: u64,
    ) -> Result<Option<Vec<Color>>> {
        self.stats.enter(level);
        let Some(config) = search_blocking(g, lists, modulator, self.set) else {
            return self.decide_on_modulator(g, lists, modulator);
        };
        let blockers = config.blocker_union();
        let skipped = config.blocking_coloring();
        let mut colors = vec![0; blockers.len()];
        let mut found = None;
        let flow = for_each_list_coloring(g, lists, &blockers, 0, &mut colors, &mut |gamma| {
            self.stats.subsets_enumerated += 1;
            let assignment: Vec<(usize, Color)> =
                blockers.iter().copied().zip(gamma.iter().copied()).collect();
            if skipped.as_ref() == Some(&assignment) {
                if self.options.record_trace {
                    self.trace.push(TraceEvent::Skipped {
                        instance: node_instance(g, lists, modulator),
                        assignment,
                    });
                }
                return Ok(ControlFlow::Continue(()));
            }
            if let Some(rest) = self.branch(g, lists, modulator, &assignment, level)? {
                found = Some(rest);
                return Ok(ControlFlow::Break(()));
            }
            Ok(ControlFlow::Continue(()))
        })?;
        debug_assert!(flow.is_break() == found.is_some());
        Ok(found)
    }

    /// Colors the blockers as given, removes them and recurses.
    fn branch(
        &mut self,
        g: &Graph,
        lists: &ListAssignment,
        modulator: &VertexSet,
        assignment: &[(usize, Color)],
        level: u64,
    ) -> Result<Option<Vec<Color>>> {
        let n = g.vertex_count();
        let mut reduced = lists.clone();
        for &(w, c) in assignment {
            for &u in g.neighbors(w) {
                reduced.remove_color(u, c);
            }
        }
        let rest: Vec<usize> = (0..n)
            .filter(|v| assignment.binary_search_by_key(v, |&(w, _)| w).is_err())
            .collect();
        let sub = g.induced_on(&rest);
        let sub_lists = reduced.restrict(&rest);
        let sub_mod = VertexSet::from_vertices(
            rest.len(),
            rest.iter().enumerate().filter(|&(_, &v)| modulator.contains(v)).map(|(i, _)| i),
        )?;
        let Some(inner) = self.solve(&sub, &sub_lists, &sub_mod, level + 1)? else {
            return Ok(None);
        };
        let mut colors = vec![0; n];
        for (i, &v) in rest.iter().enumerate() {
            colors[v] = inner[i];
        }
        for &(w, c) in assignment {
            colors[w] = c;
        }
        Ok(Some(colors))
    }

    fn decide_on_modulator(
        &mut self,
        g: &Graph,
        lists: &ListAssignment,
        modulator: &VertexSet,
    ) -> Result<Option<Vec<Color>>> {
        self.modulator_leaves += 1;
        let xs = modulator.to_vec();
        let gx = g.induced_on(&xs);
        let lx = lists.restrict(&xs);
        let q = lists.q() as usize;
        let colorable = if xs.len() + q <= DEFAULT_IE_CAP {
            let (with_palette, _) = list_to_coloring(&gx, &lx)?;
            is_k_colorable_ie(&with_palette, q)?
        } else {
            is_list_colorable(&gx, &lx)?
        };
        let mut result = None;
        let mut extended = false;
        if colorable {
            let gamma = brute_force_list_color(&gx, &lx)?
                .expect("modulator instance was found colorable");
            let mut colors = vec![0; g.vertex_count()];
            for (i, &v) in xs.iter().enumerate() {
                colors[v] = gamma.color(i);
            }
            if extend_outside(g, lists, modulator, &mut colors)? {
                extended = true;
                result = Some(colors);
            } else {
                self.extension_failures += 1;
                result = brute_force_list_color(g, lists)?.map(|c| c.0);
            }
        }
        if self.options.record_trace {
            self.trace.push(TraceEvent::ModulatorOnly {
                instance: node_instance(g, lists, modulator),
                modulator_colorable: colorable,
                extended,
            });
        }
        Ok(result)
    }
}

fn node_instance(g: &Graph, lists: &ListAssignment, modulator: &VertexSet) -> NodeInstance {
    NodeInstance {
        graph: g.clone(),
        lists: lists.clone(),
        modulator: modulator.to_vec(),
    }
}

/// Extends a coloring of the modulator onto the rest: greedily in ascending
/// order, then by exact search on the reduced lists if greedy gets stuck.
fn extend_outside(
    g: &Graph,
    lists: &ListAssignment,
    modulator: &VertexSet,
    colors: &mut [Color],
) -> Result<bool> {
    let outside = modulator.complement().to_vec();
    let mut reduced = lists.clone();
    for &v in &outside {
        for &u in g.neighbors(v) {
            if modulator.contains(u) {
                reduced.remove_color(v, colors[u]);
            }
        }
    }
    let mut greedy_ok = true;
    for &v in &outside {
        let taken: ColorSet = g
            .neighbors(v)
            .iter()
            .filter(|&&u| !modulator.contains(u) && colors[u] != 0)
            .map(|&u| colors[u])
            .collect();
        match reduced.list(v).difference(taken).min() {
            Some(c) => colors[v] = c,
            None => {
                greedy_ok = false;
                break;
            }
        }
    }
    if greedy_ok {
        return Ok(true);
    }
    let sub = g.induced_on(&outside);
    match brute_force_list_color(&sub, &reduced.restrict(&outside))? {
        Some(found) => {
            for (i, &v) in outside.iter().enumerate() {
                colors[v] = found.color(i);
            }
            Ok(true)
        }
        None => Ok(false),
    }
}

/// Proper list colorings of `vertices` (ascending), in lexicographic order.
fn for_each_list_coloring(
    g: &Graph,
    lists: &ListAssignment,
    vertices: &[usize],
    i: usize,
    colors: &mut [Color],
    f: &mut impl FnMut(&[Color]) -> Result<ControlFlow<()>>,
) -> Result<ControlFlow<()>> {
    if i == vertices.len() {
        return f(colors);
    }
    let v = vertices[i];
    for c in lists.list(v).iter() {
        if (0..i).any(|j| colors[j] == c && g.has_edge(vertices[j], v)) {
            continue;
        }
        colors[i] = c;
        if for_each_list_coloring(g, lists, vertices, i + 1, colors, f)?.is_break() {
            return Ok(ControlFlow::Break(()));
        }
    }
    Ok(ControlFlow::Continue(()))
}
