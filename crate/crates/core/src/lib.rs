//! Minimum temporal path covers and temporally disjoint path covers of
//! temporal digraphs.
//!
//! Polynomial solvers cover temporal oriented trees (plain covers) and
//! oriented lines and rooted directed trees (both kinds). A dynamic program
//! over nice tree decompositions handles small treewidth and few time
//! labels, and exhaustive oracles give ground truth on small inputs.

pub mod cli;
pub mod connectivity;
pub mod digraph;
pub mod error;
pub mod gen;
pub mod io;
pub mod oracle;
pub mod path;
pub mod treesolve;
pub mod twdp;
pub mod weakchord;

pub use digraph::{GraphClass, TemporalDigraph, Time, Vertex};
pub use error::{Error, Result};
pub use path::{CoverMode, PathCover, Step, TemporalPath};
