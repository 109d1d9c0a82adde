//! Single-conflict colorings of multigraphs.
//!
//! Every edge of a multigraph forbids one ordered pair of endpoint colors.
//! The crate finds colorings avoiding all forbidden pairs with a randomized
//! inventory-and-prune procedure driven by Moser–Tardos resampling, and ships
//! exact oracles, reductions from classical coloring problems, bound
//! calculators and a line-oriented instance format.

pub mod analytics;
pub mod bounds;
pub mod conflict;
pub mod error;
pub mod exec;
pub mod format;
pub mod generate;
pub mod multigraph;
pub mod oracle;
pub mod reductions;
pub mod solver;

pub type Vertex = usize;
pub type EdgeId = usize;
pub type Color = usize;

pub use conflict::{Arc, ColorSet, Coloring, ConflictInstance, Restrictiveness};
pub use error::{Error, Result};
pub use exec::Execution;
pub use multigraph::{degeneracy_order, orient, DegeneracyOrder, MultiGraph, Orientation};
pub use solver::{moser_tardos_solve, Outcome, SolverConfig, SolverReport, Variant};
