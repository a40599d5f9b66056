//! Exact parameterized q-(list-)coloring.
//!
//! Modulator-based solvers (vertex cover and No-certificate branching),
//! treedepth certificates, SAT-to-coloring reductions and brute-force
//! oracles to check all of them against.

pub mod bench;
pub mod cli;
pub mod error;
pub mod gen;
pub mod graph;
pub mod io;
pub mod nocert;
pub mod oracle;
pub mod reductions;
pub mod stats;
pub mod treedepth;
pub mod vc;

pub use error::{Error, Result};
pub use graph::{ClassTag, Graph, Modulator, VertexSet};
pub use oracle::{Color, ColorSet, Coloring, ListAssignment};
