use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracle::{is_list_colorable, Color, ColorSet, ListAssignment};

/// A path `v_0 .. v_{6m+1}` whose lists admit a coloring avoiding color `d_i`
/// on distinguished vertex `π_i` for all `i` exactly when `d ≠ c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClausePathGadget {
    pub path: Graph,
    pub lists: ListAssignment,
    /// Path positions of `π_1 .. π_m`.
    pub distinguished: Vec<usize>,
    pub c: Vec<Color>,
}

/// Default list of interior path vertex `i` (`1 ≤ i ≤ 6m`).
pub fn default_list(i: usize) -> ColorSet {
    [(i % 3) as Color + 1, ((i + 1) % 3) as Color + 1]
        .into_iter()
        .collect()
}

pub fn build_clause_path(c: &[Color], q: u32) -> Result<ClausePathGadget> {
    if q < 3 {
        return Err(Error::invalid(format!("clause paths need q >= 3, got {q}")));
    }
    if c.is_empty() {
        return Err(Error::invalid("clause paths need at least one color"));
    }
    if let Some(&bad) = c.iter().find(|&&x| x == 0 || x > q) {
        return Err(Error::invalid(format!("color {bad} outside 1..={q}")));
    }
    let m = c.len();
    let len = 6 * m + 2;
    let mut sets = vec![ColorSet::single(2); len];
    for (i, set) in sets.iter_mut().enumerate().take(6 * m + 1).skip(1) {
        *set = default_list(i);
    }
    let mut distinguished = Vec::with_capacity(m);
    for (i, &ci) in c.iter().enumerate() {
        // interior of group i: the middle four of v_{6i+1} .. v_{6i+6}
        let pi = (6 * i + 2..=6 * i + 5)
            .find(|&v| !default_list(v).contains(ci))
            .expect("no color is on all four interior default lists");
        sets[pi].insert(ci);
        distinguished.push(pi);
    }
    Ok(ClausePathGadget {
        path: Graph::path(len),
        lists: ListAssignment::new(q, sets)?,
        distinguished,
        c: c.to_vec(),
    })
}

impl ClausePathGadget {
    pub fn m(&self) -> usize {
        self.c.len()
    }

    /// Whether some coloring gives each `π_i` a color other than `d_i`.
    pub fn avoids(&self, d: &[Color]) -> Result<bool> {
        if d.len() != self.m() {
            return Err(Error::invalid(format!(
                "avoidance vector has {} entries, gadget has {}",
                d.len(),
                self.m()
            )));
        }
        let mut lists = self.lists.clone();
        for (&pi, &di) in self.distinguished.iter().zip(d) {
            lists.remove_color(pi, di);
        }
        is_list_colorable(&self.path, &lists)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_group_example() {
        let gadget = build_clause_path(&[1], 3).unwrap();
        assert_eq!(gadget.path.vertex_count(), 8);
        let defaults: Vec<Vec<Color>> = (1..=6).map(|i| default_list(i).iter().collect()).collect();
        assert_eq!(
            defaults,
            vec![vec![2, 3], vec![1, 3], vec![1, 2], vec![2, 3], vec![1, 3], vec![1, 2]]
        );
        assert_eq!(gadget.distinguished, vec![4]);
        assert_eq!(gadget.lists.list(4).iter().collect::<Vec<_>>(), vec![1, 2, 3]);
        assert_eq!(gadget.lists.list(0), ColorSet::single(2));
        assert_eq!(gadget.lists.list(7), ColorSet::single(2));
        for d in 1..=3 {
            assert_eq!(gadget.avoids(&[d]).unwrap(), d != 1);
        }
    }

    #[test]
    fn default_lists_alone_are_uncolorable() {
        let gadget = build_clause_path(&[2, 3], 3).unwrap();
        let mut lists = gadget.lists.clone();
        for &pi in &gadget.distinguished {
            lists.set(pi, default_list(pi));
        }
        assert!(!is_list_colorable(&gadget.path, &lists).unwrap());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(build_clause_path(&[1], 2).is_err());
        assert!(build_clause_path(&[4], 3).is_err());
        assert!(build_clause_path(&[], 3).is_err());
    }
}
