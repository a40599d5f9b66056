use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest palette a [`ListAssignment`] can carry (one bit per color).
pub const MAX_PALETTE: u32 = 64;

/// A color is an integer in `1..=q`.
pub type Color = u32;

/// A set of colors, bit `c - 1` standing for color `c`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ColorSet(pub u64);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    pub fn full(q: u32) -> Self {
        if q >= 64 {
            ColorSet(u64::MAX)
        } else {
            ColorSet((1u64 << q) - 1)
        }
    }

    pub fn single(c: Color) -> Self {
        ColorSet(1 << (c - 1))
    }

    pub fn contains(self, c: Color) -> bool {
        (1..=64).contains(&c) && self.0 >> (c - 1) & 1 == 1
    }

    pub fn insert(&mut self, c: Color) {
        self.0 |= 1 << (c - 1);
    }

    pub fn remove(&mut self, c: Color) {
        if (1..=64).contains(&c) {
            self.0 &= !(1 << (c - 1));
        }
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: ColorSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn difference(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 & !other.0)
    }

    /// Colors in ascending order.
    pub fn iter(self) -> impl Iterator<Item = Color> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let b = rest.trailing_zeros();
            rest &= rest - 1;
            Some(b + 1)
        })
    }

    pub fn min(self) -> Option<Color> {
        self.iter().next()
    }
}

impl FromIterator<Color> for ColorSet {
    fn from_iter<I: IntoIterator<Item = Color>>(iter: I) -> Self {
        let mut s = ColorSet::EMPTY;
        for c in iter {
            s.insert(c);
        }
        s
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Per-vertex color lists over the palette `1..=q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ListAssignment {
    q: u32,
    lists: Vec<ColorSet>,
}

impl ListAssignment {
    pub fn new(q: u32, lists: Vec<ColorSet>) -> Result<Self> {
        check_palette(q)?;
        let full = ColorSet::full(q);
        if let Some(v) = lists.iter().position(|l| !l.is_subset(full)) {
            return Err(Error::invalid(format!(
                "list of vertex {v} uses a color outside 1..={q}"
            )));
        }
        Ok(ListAssignment { q, lists })
    }

    pub fn from_colors(q: u32, lists: &[&[Color]]) -> Result<Self> {
        check_palette(q)?;
        let mut sets = Vec::with_capacity(lists.len());
        for (v, list) in lists.iter().enumerate() {
            if let Some(&c) = list.iter().find(|&&c| c == 0 || c > q) {
                return Err(Error::invalid(format!(
                    "vertex {v}: color {c} outside 1..={q}"
                )));
            }
            sets.push(list.iter().copied().collect());
        }
        Ok(ListAssignment { q, lists: sets })
    }

    /// Every vertex may use every color: plain `q`-coloring.
    pub fn full(n: usize, q: u32) -> Self {
        check_palette(q).expect("palette size within range");
        ListAssignment {
            q,
            lists: vec![ColorSet::full(q); n],
        }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn list(&self, v: usize) -> ColorSet {
        self.lists[v]
    }

    pub fn lists(&self) -> &[ColorSet] {
        &self.lists
    }

    pub fn set(&mut self, v: usize, list: ColorSet) {
        assert!(list.is_subset(ColorSet::full(self.q)));
        self.lists[v] = list;
    }

    pub fn remove_color(&mut self, v: usize, c: Color) {
        self.lists[v].remove(c);
    }

    /// Lists of the given vertices, in the given order.
    pub fn restrict(&self, vertices: &[usize]) -> ListAssignment {
        ListAssignment {
            q: self.q,
            lists: vertices.iter().map(|&v| self.lists[v]).collect(),
        }
    }

    pub(crate) fn check_graph(&self, g: &Graph) -> Result<()> {
        if self.lists.len() != g.vertex_count() {
            return Err(Error::invalid(format!(
                "{} lists given for a graph on {} vertices",
                self.lists.len(),
                g.vertex_count()
            )));
        }
        Ok(())
    }
}

fn check_palette(q: u32) -> Result<()> {
    if q > MAX_PALETTE {
        return Err(Error::invalid(format!(
            "palette size {q} exceeds the supported maximum of {MAX_PALETTE}"
        )));
    }
    Ok(())
}

/// A color per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coloring(pub Vec<Color>);

impl Coloring {
    pub fn color(&self, v: usize) -> Color {
        self.0[v]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn colors(&self) -> &[Color] {
        &self.0
    }
}

/// The first constraint a coloring breaks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColoringViolation {
    Length { expected: usize, found: usize },
    NotInList { vertex: usize, color: Color },
    Conflict { u: usize, v: usize, color: Color },
}

impl fmt::Display for ColoringViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // user-facing messages use 1-indexed vertices like the file formats
        match *self {
            ColoringViolation::Length { expected, found } => {
                write!(f, "coloring has {found} entries, graph has {expected} vertices")
            }
            ColoringViolation::NotInList { vertex, color } => {
                write!(f, "vertex {} has color {color}, which is not on its list", vertex + 1)
            }
            ColoringViolation::Conflict { u, v, color } => {
                write!(f, "edge {{{}, {}}} has both endpoints colored {color}", u + 1, v + 1)
            }
        }
    }
}

/// Checks that `coloring` is proper on `g` and respects `lists`.
pub fn check_coloring(
    g: &Graph,
    lists: &ListAssignment,
    coloring: &Coloring,
) -> std::result::Result<(), ColoringViolation> {
    let n = g.vertex_count();
    if coloring.len() != n || lists.len() != n {
        return Err(ColoringViolation::Length {
            expected: n,
            found: coloring.len(),
        });
    }
    for v in 0..n {
        let c = coloring.color(v);
        if !lists.list(v).contains(c) {
            return Err(ColoringViolation::NotInList { vertex: v, color: c });
        }
    }
    for (u, v) in g.edges() {
        if coloring.color(u) == coloring.color(v) {
            return Err(ColoringViolation::Conflict {
                u,
                v,
                color: coloring.color(u),
            });
        }
    }
    Ok(())
}

pub fn is_proper_list_coloring(g: &Graph, lists: &ListAssignment, coloring: &Coloring) -> bool {
    check_coloring(g, lists, coloring).is_ok()
}
