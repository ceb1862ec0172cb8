//! Exact covers by dynamic programming over a nice tree decomposition of the
//! underlying graph. Exponential in width and lifetime only.

mod decomposition;
mod solver;
pub mod state;

pub use decomposition::{
    build_nice_decomposition, exact_elimination_order, min_fill_order, nice_from_graph, nice_from_order,
    NiceTreeDecomposition, Node, NodeKind, EXACT_LIMIT,
};
pub use solver::{tdpc_dp, tdpc_dp_with, tpc_dp, tpc_dp_with, DpConfig, DpSolution};

use serde::Serialize;

use crate::digraph::{TemporalDigraph, Time, Vertex};

/// Arc of a multi-digraph carrying exactly one label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SingleArc {
    pub tail: Vertex,
    pub head: Vertex,
    pub time: Time,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiDigraph {
    pub n: usize,
    pub arcs: Vec<SingleArc>,
}

impl MultiDigraph {
    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }
}

/// Splits every arc into one parallel copy per label.
pub fn expand_multiarcs(d: &TemporalDigraph) -> MultiDigraph {
    let mut arcs: Vec<SingleArc> = d
        .arcs()
        .iter()
        .flat_map(|a| a.labels.iter().map(move |&time| SingleArc { tail: a.tail, head: a.head, time }))
        .collect();
    arcs.sort();
    MultiDigraph { n: d.n(), arcs }
}
