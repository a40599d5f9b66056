//! Exact backtracking list-coloring, used as ground truth everywhere else.
//!
//! The search is plain chronological backtracking with a few exact
//! simplifications applied at every node:
//! - singleton lists are propagated immediately;
//! - a vertex whose list is longer than its number of uncolored neighbors can
//!   always be colored last, so it is set aside and colored greedily once
//!   the rest of its component succeeds;
//! - the remaining uncolored vertices are split into connected components,
//!   which are solved independently.
//!
//! The branching vertex minimises `|list| / (uncolored degree + 1)`; colors
//! are tried in ascending order.

use super::lists::{Color, Coloring, ListAssignment};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;

/// Environment variable overriding [`DEFAULT_NODE_BUDGET`].
pub const BUDGET_ENV: &str = "MODCOLOR_BUDGET";

/// Node budget from `MODCOLOR_BUDGET`, or the default when unset or
/// unparsable.
pub fn node_budget() -> u64 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_NODE_BUDGET)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteForceOutcome {
    pub coloring: Option<Coloring>,
    /// Branching nodes visited.
    pub nodes: u64,
}

/// A proper list-respecting coloring if one exists.
pub fn brute_force_list_color(g: &Graph, lists: &ListAssignment) -> Result<Option<Coloring>> {
    Ok(brute_force_with_budget(g, lists, node_budget())?.coloring)
}

pub fn is_list_colorable(g: &Graph, lists: &ListAssignment) -> Result<bool> {
    Ok(brute_force_list_color(g, lists)?.is_some())
}

/// Plain `q`-colorability through full lists.
pub fn is_q_colorable(g: &Graph, q: u32) -> Result<bool> {
    is_list_colorable(g, &ListAssignment::full(g.vertex_count(), q))
}

/// Smallest `q` for which full lists of size `q` are colorable.
pub fn chromatic_number_brute(g: &Graph) -> Result<u32> {
    let mut q = 0;
    while !is_q_colorable(g, q)? {
        q += 1;
    }
    Ok(q)
}

/// Recursion depth grows with the number of branching decisions, so large
/// instances get a dedicated thread with a generous stack.
const BIG_INSTANCE: usize = 400;

pub fn brute_force_with_budget(
    g: &Graph,
    lists: &ListAssignment,
    budget: u64,
) -> Result<BruteForceOutcome> {
    lists.check_graph(g)?;
    if g.vertex_count() <= BIG_INSTANCE {
        return run(g, lists, budget);
    }
    std::thread::scope(|scope| {
        std::thread::Builder::new()
            .stack_size(512 << 20)
            .spawn_scoped(scope, || run(g, lists, budget))
            .expect("spawn search thread")
            .join()
            .expect("search thread panicked")
    })
}

fn run(g: &Graph, lists: &ListAssignment, budget: u64) -> Result<BruteForceOutcome> {
    let n = g.vertex_count();
    let mut search = Search {
        g,
        dom: lists.lists().iter().map(|l| l.0).collect(),
        color: vec![0; n],
        deferred: vec![false; n],
        trail: Vec::new(),
        nodes: 0,
        budget,
        stamp: vec![0; n],
        generation: 0,
        degree: vec![0; n],
    };
    let all: Vec<usize> = (0..n).collect();
    let found = search.solve_set(all)?;
    Ok(BruteForceOutcome {
        coloring: found.then(|| Coloring(search.color.clone())),
        nodes: search.nodes,
    })
}

enum Undo {
    Dom(usize, u64),
    Color(usize),
    Defer(usize),
}

struct Search<'a> {
    g: &'a Graph,
    dom: Vec<u64>,
    color: Vec<Color>,
    deferred: Vec<bool>,
    trail: Vec<Undo>,
    nodes: u64,
    budget: u64,
    stamp: Vec<u32>,
    generation: u32,
    degree: Vec<usize>,
}

impl Search<'_> {
    fn is_free(&self, v: usize) -> bool {
        self.color[v] == 0 && !self.deferred[v]
    }

    fn free_degree(&self, v: usize) -> usize {
        self.g
            .neighbors(v)
            .iter()
            .filter(|&&u| self.is_free(u))
            .count()
    }

    /// Colors `v` and strikes `c` from uncolored neighbors. Returns false
    /// when a free neighbor runs out of colors.
    fn assign(&mut self, v: usize, c: Color, queue: &mut Vec<usize>) -> bool {
        self.color[v] = c;
        self.trail.push(Undo::Color(v));
        let bit = 1u64 << (c - 1);
        for &u in self.g.neighbors(v) {
            if self.color[u] != 0 || self.dom[u] & bit == 0 {
                continue;
            }
            self.trail.push(Undo::Dom(u, self.dom[u]));
            self.dom[u] &= !bit;
            if !self.deferred[u] {
                match self.dom[u].count_ones() {
                    0 => return false,
                    1 => queue.push(u),
                    _ => {}
                }
            }
        }
        true
    }

    fn propagate(&mut self, queue: &mut Vec<usize>) -> bool {
        while let Some(v) = queue.pop() {
            if !self.is_free(v) {
                continue;
            }
            match self.dom[v].count_ones() {
                0 => return false,
                1 => {
                    let c = self.dom[v].trailing_zeros() + 1;
                    if !self.assign(v, c, queue) {
                        return false;
                    }
                }
                _ => {}
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().expect("trail entry") {
                Undo::Dom(v, d) => self.dom[v] = d,
                Undo::Color(v) => self.color[v] = 0,
                Undo::Defer(v) => self.deferred[v] = false,
            }
        }
    }

    /// Solves the free vertices `vs`, a union of components of the free
    /// subgraph. On failure the caller undoes the trail.
    fn solve_set(&mut self, vs: Vec<usize>) -> Result<bool> {
        let mut queue: Vec<usize> = Vec::new();
        for &v in &vs {
            if self.is_free(v) {
                match self.dom[v].count_ones() {
                    0 => return Ok(false),
                    1 => queue.push(v),
                    _ => {}
                }
            }
        }
        if !self.propagate(&mut queue) {
            return Ok(false);
        }

        // Set aside vertices that can always be colored after their
        // neighbours; deleting one can free up others.
        let free: Vec<usize> = vs.into_iter().filter(|&v| self.is_free(v)).collect();
        self.generation += 1;
        let gen = self.generation;
        for &v in &free {
            self.stamp[v] = gen;
        }
        for &v in &free {
            self.degree[v] = self.free_degree(v);
        }
        let mut peel_order: Vec<usize> = Vec::new();
        let mut stack: Vec<usize> = free
            .iter()
            .copied()
            .filter(|&v| self.dom[v].count_ones() as usize > self.degree[v])
            .collect();
        while let Some(v) = stack.pop() {
            if self.deferred[v] {
                continue;
            }
            self.deferred[v] = true;
            self.trail.push(Undo::Defer(v));
            peel_order.push(v);
            for &u in self.g.neighbors(v) {
                if self.color[u] != 0 || self.deferred[u] || self.stamp[u] != gen {
                    continue;
                }
                self.degree[u] -= 1;
                if self.dom[u].count_ones() as usize > self.degree[u] {
                    stack.push(u);
                }
            }
        }

        let components = self.free_components(&free);
        for comp in components {
            if !self.branch(comp)? {
                return Ok(false);
            }
        }

        let mut scratch = Vec::new();
        for &v in peel_order.iter().rev() {
            let c = self.dom[v].trailing_zeros() + 1;
            debug_assert!(self.dom[v] != 0, "set-aside vertex {v} lost all colors");
            let ok = self.assign(v, c, &mut scratch);
            debug_assert!(ok);
        }
        Ok(true)
    }

    fn free_components(&mut self, vs: &[usize]) -> Vec<Vec<usize>> {
        self.generation += 1;
        let gen = self.generation;
        let mut out = Vec::new();
        for &s in vs {
            if !self.is_free(s) || self.stamp[s] == gen {
                continue;
            }
            self.stamp[s] = gen;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &w in self.g.neighbors(v) {
                    if self.is_free(w) && self.stamp[w] != gen {
                        self.stamp[w] = gen;
                        comp.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    fn branch(&mut self, comp: Vec<usize>) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::limit(format!(
                "brute-force search exceeded its budget of {} nodes (set {BUDGET_ENV} to raise it)",
                self.budget
            )));
        }
        let mut best = comp[0];
        let mut best_key = (self.dom[best].count_ones() as usize, self.free_degree(best) + 1);
        for &v in &comp[1..] {
            let key = (self.dom[v].count_ones() as usize, self.free_degree(v) + 1);
            let lhs = key.0 * best_key.1;
            let rhs = best_key.0 * key.1;
            if lhs < rhs || (lhs == rhs && v < best) {
                best = v;
                best_key = key;
            }
        }
        let v = best;
        let mut options = self.dom[v];
        while options != 0 {
            let c = options.trailing_zeros() + 1;
            options &= options - 1;
            let mark = self.trail.len();
            let mut queue = Vec::new();
            if self.assign(v, c, &mut queue) && self.propagate(&mut queue) {
                let rest: Vec<usize> = comp.iter().copied().filter(|&u| self.is_free(u)).collect();
                if self.solve_set(rest)? {
                    return Ok(true);
                }
            }
            self.undo(mark);
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::lists::{check_coloring, ColorSet};

    fn naive(g: &Graph, lists: &ListAssignment) -> bool {
        fn go(g: &Graph, lists: &ListAssignment, col: &mut Vec<Color>) -> bool {
            let v = col.len();
            if v == g.vertex_count() {
                return true;
            }
            for c in lists.list(v).iter() {
                if g.neighbors(v).iter().all(|&u| u >= v || col[u] != c) {
                    col.push(c);
                    if go(g, lists, col) {
                        return true;
                    }
                    col.pop();
                }
            }
            false
        }
        go(g, lists, &mut Vec::new())
    }

    #[test]
    fn empty_list_vertex_is_no() {
        let g = Graph::empty(1);
        let lists = ListAssignment::from_colors(2, &[&[]]).unwrap();
        assert_eq!(brute_force_list_color(&g, &lists).unwrap(), None);
    }

    #[test]
    fn triangle_examples() {
        let k3 = Graph::complete(3);
        let three = ListAssignment::full(3, 3);
        let col = brute_force_list_color(&k3, &three).unwrap().unwrap();
        assert_eq!(col, Coloring(vec![1, 2, 3]));
        assert!(check_coloring(&k3, &three, &col).is_ok());
        assert!(!is_q_colorable(&k3, 2).unwrap());
    }

    #[test]
    fn petersen_is_three_chromatic() {
        assert_eq!(chromatic_number_brute(&Graph::petersen()).unwrap(), 3);
    }

    #[test]
    fn budget_is_enforced() {
        let g = Graph::complete(9);
        let lists = ListAssignment::full(9, 8);
        assert!(matches!(
            brute_force_with_budget(&g, &lists, 3),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn agrees_with_naive_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..3000 {
            let n = rng.gen_range(0..9);
            let q = rng.gen_range(1..5u32);
            let p = rng.gen_range(0.1..0.8);
            let edges: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|_| rng.gen_bool(p))
                .collect();
            let g = Graph::from_edges(n, edges).unwrap();
            let lists = ListAssignment::new(
                q,
                (0..n).map(|_| ColorSet(rng.gen_range(0..1u64 << q))).collect(),
            )
            .unwrap();
            let got = brute_force_list_color(&g, &lists).unwrap();
            assert_eq!(got.is_some(), naive(&g, &lists), "{g:?} {lists:?}");
            if let Some(col) = got {
                assert!(check_coloring(&g, &lists, &col).is_ok());
            }
        }
    }

    #[test]
    fn long_path_with_forced_ends() {
        // a 2-list path forced from both ends: colorable iff parity works out
        for n in [200usize, 201, 1500] {
            let g = Graph::path(n);
            let mut lists = ListAssignment::full(n, 2);
            lists.set(0, ColorSet::single(1));
            lists.set(n - 1, ColorSet::single(1));
            let got = brute_force_list_color(&g, &lists).unwrap();
            assert_eq!(got.is_some(), n % 2 == 1);
        }
    }
}
