//! Treedepth decompositions and the certificate marking that bounds
//! minimal No-instances by a function of the depth.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::oracle::{
    chromatic_number_ie, is_list_colorable, is_q_colorable, ListAssignment, Subinstance,
    DEFAULT_IE_CAP,
};

/// Largest graph [`exact_treedepth`] accepts by default.
pub const DEFAULT_EXACT_CAP: usize = 16;

/// A rooted forest on the vertices; every edge of the graph must join an
/// ancestor to a descendant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreedepthDecomposition {
    parent: Vec<Option<usize>>,
    depth: usize,
}

impl TreedepthDecomposition {
    /// Fails if a parent is out of range or the parent map has a cycle.
    pub fn new(parent: Vec<Option<usize>>) -> Result<Self> {
        let n = parent.len();
        let mut level = vec![0usize; n];
        for v in 0..n {
            let mut chain = Vec::new();
            let mut cur = v;
            while level[cur] == 0 {
                chain.push(cur);
                if chain.len() > n {
                    return Err(Error::invalid("parent map contains a cycle"));
                }
                match parent[cur] {
                    None => break,
                    Some(p) if p >= n => {
                        return Err(Error::invalid(format!("parent {p} out of range")))
                    }
                    Some(p) => cur = p,
                }
            }
            let mut base = level[cur];
            for &u in chain.iter().rev() {
                base += 1;
                level[u] = base;
            }
        }
        let depth = level.iter().copied().max().unwrap_or(0);
        Ok(TreedepthDecomposition { parent, depth })
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Vertex count of the longest root-to-leaf path.
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn roots(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.parent[v].is_none()).collect()
    }

    pub fn is_ancestor(&self, a: usize, mut v: usize) -> bool {
        while let Some(p) = self.parent[v] {
            if p == a {
                return true;
            }
            v = p;
        }
        false
    }

    /// The first edge that joins two vertices not in ancestor relation, if
    /// any, or a size mismatch.
    pub fn violation(&self, g: &Graph) -> Option<String> {
        if self.len() != g.vertex_count() {
            return Some(format!(
                "decomposition covers {} vertices, graph has {}",
                self.len(),
                g.vertex_count()
            ));
        }
        g.edges()
            .find(|&(u, v)| !self.is_ancestor(u, v) && !self.is_ancestor(v, u))
            .map(|(u, v)| {
                format!("edge {{{}, {}}} joins unrelated vertices", u + 1, v + 1)
            })
    }

    pub fn is_valid_for(&self, g: &Graph) -> bool {
        self.violation(g).is_none()
    }

    /// The decomposition induced on `vertices` (sorted, renumbered
    /// `0..len`): each vertex's parent becomes its nearest kept ancestor.
    /// Valid for the induced subgraph whenever `self` is valid for the
    /// whole graph, and never deeper.
    pub fn restrict(&self, vertices: &[usize]) -> Result<TreedepthDecomposition> {
        let mut local = vec![None; self.len()];
        for (i, &v) in vertices.iter().enumerate() {
            if v >= self.len() {
                return Err(Error::invalid(format!("vertex {v} out of range")));
            }
            local[v] = Some(i);
        }
        let parent = vertices
            .iter()
            .map(|&v| {
                let mut a = self.parent[v];
                while let Some(u) = a {
                    if local[u].is_some() {
                        return local[u];
                    }
                    a = self.parent[u];
                }
                None
            })
            .collect();
        TreedepthDecomposition::new(parent)
    }

    fn children(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.len()];
        for v in 0..self.len() {
            if let Some(p) = self.parent[v] {
                out[p].push(v);
            }
        }
        out
    }
}

/// Exact treedepth with a witness decomposition.
pub fn exact_treedepth(g: &Graph) -> Result<(usize, TreedepthDecomposition)> {
    exact_treedepth_with_cap(g, DEFAULT_EXACT_CAP)
}

pub fn exact_treedepth_with_cap(
    g: &Graph,
    cap: usize,
) -> Result<(usize, TreedepthDecomposition)> {
    let n = g.vertex_count();
    if n > cap.min(32) {
        return Err(Error::limit(format!(
            "exact treedepth on {n} vertices exceeds the cap of {}",
            cap.min(32)
        )));
    }
    let adj: Vec<u32> = (0..n).map(|v| g.neighbor_mask(v) as u32).collect();
    let mut memo = TdMemo {
        adj: &adj,
        best: HashMap::new(),
    };
    let mut parent = vec![None; n];
    let mut td = 0;
    let all = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
    for comp in memo.components(all) {
        td = td.max(memo.td(comp));
        memo.build(comp, None, &mut parent);
    }
    Ok((td, TreedepthDecomposition::new(parent)?))
}

struct TdMemo<'a> {
    adj: &'a [u32],
    /// Connected subset -> (treedepth, best root).
    best: HashMap<u32, (usize, usize)>,
}

impl TdMemo<'_> {
    fn components(&self, set: u32) -> Vec<u32> {
        let mut rest = set;
        let mut out = Vec::new();
        while rest != 0 {
            let mut comp = rest & rest.wrapping_neg();
            let mut frontier = comp;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let fresh = self.adj[v] & rest & !comp;
                comp |= fresh;
                frontier |= fresh;
            }
            rest &= !comp;
            out.push(comp);
        }
        out
    }

    /// Treedepth of a connected set.
    fn td(&mut self, set: u32) -> usize {
        if set.count_ones() == 1 {
            return 1;
        }
        if let Some(&(d, _)) = self.best.get(&set) {
            return d;
        }
        let mut best = (usize::MAX, 0);
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let mut worst = 0;
            for comp in self.components(set & !(1 << v)) {
                worst = worst.max(self.td(comp));
                if 1 + worst >= best.0 {
                    break;
                }
            }
            if 1 + worst < best.0 {
                best = (1 + worst, v);
            }
        }
        self.best.insert(set, best);
        best.0
    }

    fn build(&mut self, set: u32, above: Option<usize>, parent: &mut [Option<usize>]) {
        let root = if set.count_ones() == 1 {
            set.trailing_zeros() as usize
        } else {
            self.td(set);
            self.best[&set].1
        };
        parent[root] = above;
        for comp in self.components(set & !(1 << root)) {
            self.build(comp, Some(root), parent);
        }
    }
}

/// Depth-first search forest: one tree per component, rooted at its lowest
/// vertex, neighbors visited in ascending order.
pub fn dfs_treedepth(g: &Graph) -> TreedepthDecomposition {
    let n = g.vertex_count();
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack: Vec<(usize, usize)> = vec![(s, 0)];
        while let Some(top) = stack.last_mut() {
            let (v, i) = *top;
            if let Some(&u) = g.neighbors(v).get(i) {
                top.1 += 1;
                if !seen[u] {
                    seen[u] = true;
                    parent[u] = Some(v);
                    stack.push((u, 0));
                }
            } else {
                stack.pop();
            }
        }
    }
    TreedepthDecomposition::new(parent).expect("a search forest is acyclic")
}

/// Removes the lowest remaining vertex while the graph needs more than
/// `q + 1` colors. Each removal lowers the chromatic number by at most one,
/// so the result is still a No-instance.
pub fn prune_to_q_plus_1_colorable(g: &Graph, lists: &ListAssignment) -> Result<Subinstance> {
    lists.check_graph(g)?;
    if is_list_colorable(g, lists)? {
        return Err(Error::invalid("instance is list-colorable"));
    }
    let q = lists.q();
    let mut keep: Vec<usize> = (0..g.vertex_count()).collect();
    loop {
        let h = g.induced_on(&keep);
        let fits = if h.vertex_count() <= DEFAULT_IE_CAP {
            chromatic_number_ie(&h)? <= q as usize + 1
        } else {
            is_q_colorable(&h, q + 1)?
        };
        if fits {
            break;
        }
        keep.remove(0);
    }
    Subinstance::new(g, lists, keep)
}

/// Size bound `1 + q + ... + q^(t-1)` on a marked set for depth `t`.
pub fn marking_bound(q: u32, t: usize) -> u64 {
    (0..t).map(|i| u64::from(q).pow(i as u32)).sum()
}

/// Marks a No-subinstance of size at most [`marking_bound`]`(q, depth)`.
///
/// Take the first tree (by root index) whose vertices form a No-instance.
/// A single-vertex tree is a vertex with an empty list. Otherwise mark its
/// root `r` and, for each color `c` on `r`'s list, recurse below `r` with `c`
/// removed from the lists of `r`'s neighbors; that subinstance is No, or
/// `r = c` would extend a coloring of it.
pub fn mark_no_certificate(
    g: &Graph,
    lists: &ListAssignment,
    decomposition: &TreedepthDecomposition,
) -> Result<VertexSet> {
    lists.check_graph(g)?;
    if let Some(why) = decomposition.violation(g) {
        return Err(Error::invalid(format!("invalid decomposition: {why}")));
    }
    if is_list_colorable(g, lists)? {
        return Err(Error::invalid("instance is list-colorable"));
    }
    let marker = Marker {
        g,
        children: decomposition.children(),
    };
    let mut marked = VertexSet::new(g.vertex_count());
    marker.mark(&decomposition.roots(), lists, &mut marked)?;
    Ok(marked)
}

struct Marker<'a> {
    g: &'a Graph,
    children: Vec<Vec<usize>>,
}

impl Marker<'_> {
    fn subtree(&self, root: usize) -> Vec<usize> {
        let mut out = vec![root];
        let mut i = 0;
        while i < out.len() {
            out.extend_from_slice(&self.children[out[i]]);
            i += 1;
        }
        out.sort_unstable();
        out
    }

    /// `roots` span a forest whose vertex set is a No-instance under
    /// `lists`.
    fn mark(&self, roots: &[usize], lists: &ListAssignment, marked: &mut VertexSet) -> Result<()> {
        let mut roots = roots.to_vec();
        roots.sort_unstable();
        for &r in &roots {
            let tree = self.subtree(r);
            if is_list_colorable(&self.g.induced_on(&tree), &lists.restrict(&tree))? {
                continue;
            }
            marked.insert(r);
            for c in lists.list(r).iter() {
                let mut reduced = lists.clone();
                for &u in self.g.neighbors(r) {
                    reduced.remove_color(u, c);
                }
                self.mark(&self.children[r], &reduced, marked)?;
            }
            return Ok(());
        }
        unreachable!("a No-instance forest has a No tree")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::ColorSet;

    #[test]
    fn exact_examples() {
        assert_eq!(exact_treedepth(&Graph::empty(1)).unwrap().0, 1);
        assert_eq!(exact_treedepth(&Graph::empty(5)).unwrap().0, 1);
        assert_eq!(exact_treedepth(&Graph::empty(0)).unwrap().0, 0);
        assert_eq!(exact_treedepth(&Graph::path(4)).unwrap().0, 3);
        assert_eq!(exact_treedepth(&Graph::path(7)).unwrap().0, 3);
        assert_eq!(exact_treedepth(&Graph::path(8)).unwrap().0, 4);
        let (td, dec) = exact_treedepth(&Graph::complete_bipartite(3, 3)).unwrap();
        assert_eq!(td, 4);
        assert_eq!(dec.depth(), 4);
        assert!(dec.is_valid_for(&Graph::complete_bipartite(3, 3)));
        assert!(exact_treedepth(&Graph::empty(17)).is_err());
    }

    #[test]
    fn restriction_skips_removed_ancestors() {
        let p5 = Graph::path(5);
        let dec = dfs_treedepth(&p5);
        let sub = dec.restrict(&[0, 2, 3]).unwrap();
        assert_eq!(sub.parents(), &[None, Some(0), Some(1)]);
        assert!(sub.is_valid_for(&p5.induced_on(&[0, 2, 3])));
    }

    #[test]
    fn dfs_examples() {
        assert_eq!(dfs_treedepth(&Graph::path(5)).depth(), 5);
        assert_eq!(dfs_treedepth(&Graph::complete(4)).depth(), 4);
        let star = dfs_treedepth(&Graph::star(4));
        assert_eq!(star.depth(), 2);
        assert_eq!(star.roots(), vec![0]);
    }

    #[test]
    fn decomposition_validation() {
        assert!(TreedepthDecomposition::new(vec![Some(1), Some(0)]).is_err());
        assert!(TreedepthDecomposition::new(vec![Some(5)]).is_err());
        let flat = TreedepthDecomposition::new(vec![None, None]).unwrap();
        assert!(flat.violation(&Graph::path(2)).is_some());
        assert!(flat.is_valid_for(&Graph::empty(2)));
    }

    #[test]
    fn pruning_cliques() {
        let k5 = Graph::complete(5);
        let sub = prune_to_q_plus_1_colorable(&k5, &ListAssignment::full(5, 3)).unwrap();
        assert_eq!(sub.vertices, vec![1, 2, 3, 4]);
        let k4 = Graph::complete(4);
        let sub = prune_to_q_plus_1_colorable(&k4, &ListAssignment::full(4, 3)).unwrap();
        assert_eq!(sub.len(), 4);
        assert!(prune_to_q_plus_1_colorable(&k4, &ListAssignment::full(4, 4)).is_err());
    }

    #[test]
    fn marking_examples() {
        let g = Graph::empty(3);
        let l = ListAssignment::from_colors(2, &[&[1], &[], &[1, 2]]).unwrap();
        let m = mark_no_certificate(&g, &l, &dfs_treedepth(&g)).unwrap();
        assert_eq!(m.to_vec(), vec![1]);

        for q in 2..=4u32 {
            let star = Graph::star(q as usize);
            let mut sets = vec![ColorSet::full(q)];
            sets.extend((1..=q).map(ColorSet::single));
            let l = ListAssignment::new(q, sets).unwrap();
            let m = mark_no_certificate(&star, &l, &dfs_treedepth(&star)).unwrap();
            assert_eq!(m.len() as u64, marking_bound(q, 2));
            assert_eq!(m.len(), q as usize + 1);
        }
        assert_eq!(marking_bound(3, 3), 13);
        assert_eq!(marking_bound(1, 4), 4);
    }
}
