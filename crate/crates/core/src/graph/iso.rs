use std::ops::ControlFlow;

use super::{Graph, VertexSet};

/// Largest order `canonical_code` supports (`11 * 10 / 2 = 55` bits fit a `u64`).
pub const MAX_CANONICAL_ORDER: usize = 11;

/// Minimum adjacency bitstring over all vertex orderings.
///
/// Bits are read column by column over the upper triangle, so pair `(i, j)`
/// with `i < j` sits at index `j(j-1)/2 + i`, and the first bit is the most
/// significant. Two graphs of the same order are isomorphic iff their codes
/// are equal; codes of graphs with different orders are not comparable.
pub fn canonical_code(g: &Graph) -> u64 {
    let n = g.vertex_count();
    assert!(
        n <= MAX_CANONICAL_ORDER,
        "canonical codes are limited to {MAX_CANONICAL_ORDER} vertices"
    );
    if n < 2 {
        return 0;
    }
    let total = n * (n - 1) / 2;
    let masks: Vec<u64> = (0..n).map(|v| g.neighbor_mask(v)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (g.degree(v), v));
    let mut search = CanonSearch {
        masks: &masks,
        order: &order,
        n,
        total,
        placed: Vec::with_capacity(n),
        used: 0,
        best: u64::MAX,
    };
    search.extend(0, 0);
    search.best
}

struct CanonSearch<'a> {
    masks: &'a [u64],
    order: &'a [usize],
    n: usize,
    total: usize,
    placed: Vec<usize>,
    used: u64,
    best: u64,
}

impl CanonSearch<'_> {
    fn extend(&mut self, prefix: u64, prefix_len: usize) {
        let pos = self.placed.len();
        if pos == self.n {
            self.best = self.best.min(prefix);
            return;
        }
        let mut tried: Vec<usize> = Vec::new();
        for &v in self.order {
            if self.used >> v & 1 == 1 {
                continue;
            }
            // Swapping two twins among the unplaced vertices is an automorphism
            // that fixes the placed prefix, so one representative suffices.
            if tried.iter().any(|&u| {
                self.masks[u] & !(1 << v) == self.masks[v] & !(1 << u)
            }) {
                continue;
            }
            tried.push(v);
            let mut col = 0u64;
            for &p in &self.placed {
                col = (col << 1) | (self.masks[v] >> p & 1);
            }
            let next = (prefix << pos) | col;
            let next_len = prefix_len + pos;
            if self.best != u64::MAX {
                let best_prefix = self.best >> (self.total - next_len);
                if next > best_prefix {
                    continue;
                }
            }
            self.placed.push(v);
            self.used |= 1 << v;
            self.extend(next, next_len);
            self.used &= !(1 << v);
            self.placed.pop();
        }
    }
}

/// Canonical form of a vertex-labelled graph: the lexicographically smallest
/// `(labels in position order, adjacency bits)` over all orderings. Intended
/// for the handful of vertices in a certificate.
pub fn canonical_labeled_code(g: &Graph, labels: &[u64]) -> Vec<u64> {
    let n = g.vertex_count();
    assert_eq!(labels.len(), n);
    assert!(n <= MAX_CANONICAL_ORDER);
    let mut best: Option<Vec<u64>> = None;
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |p| {
        let mut key: Vec<u64> = p.iter().map(|&v| labels[v]).collect();
        let mut bits = 0u64;
        for j in 1..n {
            for i in 0..j {
                bits = (bits << 1) | u64::from(g.has_edge(p[i], p[j]));
            }
        }
        key.push(bits);
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
    });
    let mut key = best.unwrap_or_default();
    key.insert(0, n as u64);
    key
}

fn permute(p: &mut [usize], k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

/// An induced embedding: `image[i]` is the pattern vertex that host vertex
/// `domain[i]` maps to. `domain` is sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedMap {
    pub domain: Vec<usize>,
    pub image: Vec<usize>,
}

impl InducedMap {
    /// Edge-by-edge check that the map preserves adjacency and
    /// non-adjacency.
    pub fn is_valid(&self, pattern: &Graph, host: &Graph) -> bool {
        let h = pattern.vertex_count();
        if self.domain.len() != h || self.image.len() != h {
            return false;
        }
        let mut seen = vec![false; h];
        for &y in &self.image {
            if y >= h || std::mem::replace(&mut seen[y], true) {
                return false;
            }
        }
        (0..h).all(|i| {
            (i + 1..h).all(|j| {
                host.has_edge(self.domain[i], self.domain[j])
                    == pattern.has_edge(self.image[i], self.image[j])
            })
        })
    }
}

/// Visits every induced embedding of `pattern` into `host[candidates]`, in
/// lexicographic order of the host subset and then of the image tuple.
pub fn induced_isomorphisms<B>(
    pattern: &Graph,
    host: &Graph,
    candidates: &VertexSet,
    mut visit: impl FnMut(&InducedMap) -> ControlFlow<B>,
) -> Option<B> {
    let h = pattern.vertex_count();
    let pool: Vec<usize> = candidates.iter().filter(|&v| v < host.vertex_count()).collect();
    if h > pool.len() {
        return None;
    }
    let mut chosen: Vec<usize> = Vec::with_capacity(h);
    let mut out = None;
    let _ = for_each_combination(&pool, h, 0, &mut chosen, &mut |subset| {
        let edges = subset
            .iter()
            .enumerate()
            .map(|(i, &u)| subset[i + 1..].iter().filter(|&&v| host.has_edge(u, v)).count())
            .sum::<usize>();
        if edges != pattern.edge_count() {
            return ControlFlow::Continue(());
        }
        let mut map = InducedMap {
            domain: subset.to_vec(),
            image: Vec::with_capacity(h),
        };
        let mut used = vec![false; h];
        match assign_images(pattern, host, &mut map, &mut used, &mut visit) {
            ControlFlow::Break(b) => {
                out = Some(b);
                ControlFlow::Break(())
            }
            ControlFlow::Continue(()) => ControlFlow::Continue(()),
        }
    });
    out
}

fn for_each_combination(
    pool: &[usize],
    k: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    if chosen.len() == k {
        return f(chosen);
    }
    let need = k - chosen.len();
    for i in start..=pool.len() - need {
        chosen.push(pool[i]);
        let flow = for_each_combination(pool, k, i + 1, chosen, f);
        chosen.pop();
        flow?;
    }
    ControlFlow::Continue(())
}

fn assign_images<B>(
    pattern: &Graph,
    host: &Graph,
    map: &mut InducedMap,
    used: &mut [bool],
    visit: &mut impl FnMut(&InducedMap) -> ControlFlow<B>,
) -> ControlFlow<B> {
    let i = map.image.len();
    if i == map.domain.len() {
        return visit(map);
    }
    let x = map.domain[i];
    for y in 0..pattern.vertex_count() {
        if used[y] {
            continue;
        }
        let consistent = (0..i).all(|j| {
            host.has_edge(map.domain[j], x) == pattern.has_edge(map.image[j], y)
        });
        if !consistent {
            continue;
        }
        used[y] = true;
        map.image.push(y);
        let flow = assign_images(pattern, host, map, used, visit);
        map.image.pop();
        used[y] = false;
        flow?;
    }
    ControlFlow::Continue(())
}

/// First induced embedding of `pattern` into `host[candidates]`, in the
/// order of [`induced_isomorphisms`].
pub fn find_induced_isomorphism(
    pattern: &Graph,
    host: &Graph,
    candidates: &VertexSet,
) -> Option<InducedMap> {
    induced_isomorphisms(pattern, host, candidates, |m| ControlFlow::Break(m.clone()))
}
