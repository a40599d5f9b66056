use serde::{Deserialize, Serialize};

/// Counters for a branching run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchStats {
    /// Recursive calls made, the root included.
    pub nodes_expanded: u64,
    /// Candidate branching sets tried.
    pub subsets_enumerated: u64,
    /// Deepest recursion level reached; the root is level 1.
    pub depth: u64,
}

impl BranchStats {
    /// Combines counters of independent runs: counts add, depth takes the max.
    pub fn merge(self, other: BranchStats) -> BranchStats {
        BranchStats {
            nodes_expanded: self.nodes_expanded + other.nodes_expanded,
            subsets_enumerated: self.subsets_enumerated + other.subsets_enumerated,
            depth: self.depth.max(other.depth),
        }
    }

    pub(crate) fn enter(&mut self, level: u64) {
        self.nodes_expanded += 1;
        self.depth = self.depth.max(level);
    }
}
