use std::collections::BTreeSet;

use super::{canonical_code, is_member, ClassTag, Graph};
use crate::error::{Error, Result};

/// Largest order enumerated without an explicit cap.
pub const DEFAULT_ENUMERATION_CAP: usize = 7;
/// Hard ceiling regardless of the requested cap.
pub const MAX_ENUMERATION_CAP: usize = 9;

/// One representative per isomorphism class of graphs in `tag` on
/// `1..=n_max` vertices, ordered by vertex count and then canonical code.
pub fn enumerate_graphs_up_to(n_max: usize, tag: ClassTag) -> Result<Vec<Graph>> {
    enumerate_graphs_with_cap(n_max, tag, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_graphs_with_cap(n_max: usize, tag: ClassTag, cap: usize) -> Result<Vec<Graph>> {
    enumerate(n_max, Some(tag), cap)
}

/// One representative per isomorphism class of all graphs on `1..=n_max`
/// vertices, in the same order.
pub fn enumerate_all_graphs_up_to(n_max: usize) -> Result<Vec<Graph>> {
    enumerate(n_max, None, DEFAULT_ENUMERATION_CAP)
}

fn enumerate(n_max: usize, tag: Option<ClassTag>, cap: usize) -> Result<Vec<Graph>> {
    let cap = cap.min(MAX_ENUMERATION_CAP);
    if n_max > cap {
        return Err(Error::limit(format!(
            "graph enumeration up to {n_max} vertices exceeds the cap of {cap}"
        )));
    }
    let mut out = Vec::new();
    let mut layer: BTreeSet<u64> = BTreeSet::new();
    for n in 1..=n_max {
        layer = if n == 1 {
            BTreeSet::from([0])
        } else {
            grow(&layer, n - 1)
        };
        out.extend(
            layer
                .iter()
                .map(|&code| from_code(n, code))
                .filter(|g| tag.is_none_or(|t| is_member(g, t))),
        );
    }
    Ok(out)
}

/// Every graph on `n + 1` vertices is some graph on `n` vertices plus one
/// vertex, so adding each possible neighbourhood to each representative
/// reaches every class.
fn grow(prev: &BTreeSet<u64>, n: usize) -> BTreeSet<u64> {
    let mut next = BTreeSet::new();
    for &code in prev {
        let base = from_code(n, code);
        let edges: Vec<(usize, usize)> = base.edges().collect();
        for nbhd in 0u32..1 << n {
            let extra = (0..n).filter(|&v| nbhd >> v & 1 == 1).map(|v| (v, n));
            let g = Graph::from_edges(n + 1, edges.iter().copied().chain(extra))
                .expect("grown edges are valid");
            next.insert(canonical_code(&g));
        }
    }
    next
}

/// Rebuilds the graph whose column-major upper-triangle bitstring is `code`.
pub(crate) fn from_code(n: usize, code: u64) -> Graph {
    let total = n * n.saturating_sub(1) / 2;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if code >> (total - 1 - k) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, edges).expect("decoded edges are valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_known_sequence() {
        // unlabelled graphs on n = 1..7 vertices (OEIS A000088)
        let mut layer = BTreeSet::from([0u64]);
        let mut counts = vec![1];
        for n in 1..7 {
            layer = grow(&layer, n);
            counts.push(layer.len());
        }
        assert_eq!(counts, vec![1, 2, 4, 11, 34, 156, 1044]);
    }

    #[test]
    fn small_class_examples() {
        let ind = enumerate_graphs_up_to(2, ClassTag::Independent).unwrap();
        assert_eq!(ind, vec![Graph::empty(1), Graph::empty(2)]);
        let paths = enumerate_graphs_up_to(3, ClassTag::Path).unwrap();
        assert_eq!(paths.len(), 3);
        for (i, p) in paths.iter().enumerate() {
            assert_eq!(p.vertex_count(), i + 1);
            assert!(is_member(p, ClassTag::Path));
        }
    }

    #[test]
    fn cographs_up_to_four() {
        let co = enumerate_graphs_up_to(4, ClassTag::Cograph).unwrap();
        assert_eq!(co.len(), 17);
        assert_eq!(co.iter().filter(|g| g.vertex_count() == 4).count(), 10);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            enumerate_graphs_up_to(8, ClassTag::Forest),
            Err(Error::ResourceLimit(_))
        ));
        assert!(enumerate_graphs_with_cap(10, ClassTag::Forest, 20).is_err());
    }

    #[test]
    fn code_round_trip() {
        let g = Graph::petersen().induced_on(&[0, 1, 2, 5, 7]);
        let code = canonical_code(&g);
        assert_eq!(canonical_code(&from_code(5, code)), code);
    }
}
