//! Temporal reachability and the connectivity graph.

use rayon::prelude::*;
use serde::Serialize;

use crate::digraph::{TemporalDigraph, Time, Vertex};
use crate::error::Result;
use crate::path::{Step, TemporalPath};
use crate::weakchord::{max_independent_set_exact, max_independent_set_wc, StaticGraph};

/// Earliest arrival times from one source, with predecessor steps.
#[derive(Clone, Debug)]
pub struct EarliestArrival {
    source: Vertex,
    arrival: Vec<Option<Time>>,
    pred: Vec<Option<(Vertex, Time)>>,
}

impl EarliestArrival {
    /// One sweep over the time-sorted arc events. The source may depart at
    /// any time; an event `x -> y @ t` is usable once `x` was reached before `t`.
    pub fn compute(d: &TemporalDigraph, source: Vertex) -> Self {
        Self::from_events(d.n(), &d.events(), source)
    }

    fn from_events(n: usize, events: &[(Vertex, Vertex, Time)], source: Vertex) -> Self {
        let mut arrival = vec![None; n];
        let mut pred = vec![None; n];
        arrival[source] = Some(0);
        for &(x, y, t) in events {
            if arrival[y].is_none() && arrival[x].is_some_and(|a| a < t) {
                arrival[y] = Some(t);
                pred[y] = Some((x, t));
            }
        }
        Self { source, arrival, pred }
    }

    pub fn source(&self) -> Vertex {
        self.source
    }

    pub fn arrival(&self, v: Vertex) -> Option<Time> {
        self.arrival[v]
    }

    pub fn reaches(&self, v: Vertex) -> bool {
        v != self.source && self.arrival[v].is_some()
    }

    /// An earliest-arrival temporal path from the source to `v`.
    pub fn path_to(&self, v: Vertex) -> Option<TemporalPath> {
        if v == self.source {
            return Some(TemporalPath::single(v));
        }
        self.arrival[v]?;
        let mut steps = Vec::new();
        let mut cur = v;
        while let Some((x, t)) = self.pred[cur] {
            steps.push(Step { from: x, to: cur, time: t });
            cur = x;
        }
        steps.reverse();
        Some(TemporalPath::from_steps(steps).expect("predecessor chain is linked"))
    }
}

/// Vertices other than `u` reachable from `u`, sorted.
pub fn reach_set(d: &TemporalDigraph, u: Vertex) -> Vec<Vertex> {
    let ea = EarliestArrival::compute(d, u);
    (0..d.n()).filter(|&v| ea.reaches(v)).collect()
}

/// Which way a connectivity edge goes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// The smaller id reaches the larger one.
    Forward,
    Backward,
    Both,
}

#[derive(Clone, Debug)]
pub struct ConnectivityGraph {
    graph: StaticGraph,
    reach: Vec<Vec<bool>>,
}

impl ConnectivityGraph {
    pub fn graph(&self) -> &StaticGraph {
        &self.graph
    }

    pub fn into_graph(self) -> StaticGraph {
        self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// `u` reaches `v` by a temporal path.
    pub fn reaches(&self, u: Vertex, v: Vertex) -> bool {
        self.reach[u][v]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.graph.has_edge(u, v)
    }

    pub fn direction(&self, u: Vertex, v: Vertex) -> Option<Direction> {
        let (a, b) = (u.min(v), u.max(v));
        match (self.reach[a][b], self.reach[b][a]) {
            (true, true) => Some(Direction::Both),
            (true, false) => Some(Direction::Forward),
            (false, true) => Some(Direction::Backward),
            (false, false) => None,
        }
    }

    pub fn to_dimacs(&self) -> String {
        self.graph.to_dimacs()
    }

    /// DOT with arrowheads showing the reachability direction.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph connectivity {\n");
        for v in 0..self.n() {
            s.push_str(&format!("  {v};\n"));
        }
        for (u, v) in self.graph.edges() {
            let dir = match self.direction(u, v) {
                Some(Direction::Forward) => "forward",
                Some(Direction::Backward) => "back",
                _ => "both",
            };
            s.push_str(&format!("  {u} -- {v} [dir={dir}];\n"));
        }
        s.push_str("}\n");
        s
    }
}

/// Reachability from every vertex, one sweep per source in parallel.
pub fn connectivity_graph(d: &TemporalDigraph) -> ConnectivityGraph {
    let n = d.n();
    let events = d.events();
    let reach: Vec<Vec<bool>> = (0..n)
        .into_par_iter()
        .map(|u| {
            let ea = EarliestArrival::from_events(n, &events, u);
            (0..n).map(|v| ea.reaches(v)).collect()
        })
        .collect();
    let mut graph = StaticGraph::new(n);
    for (u, v) in (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))) {
        if reach[u][v] || reach[v][u] {
            graph.add_edge(u, v);
        }
    }
    ConnectivityGraph { graph, reach }
}

/// A largest set of pairwise temporally unconnected vertices, sorted.
///
/// Oriented trees go through the weakly chordal engine; anything else uses
/// exact branch and bound, limited to 128 vertices.
pub fn max_temporal_antichain(d: &TemporalDigraph) -> Result<Vec<Vertex>> {
    let g = connectivity_graph(d).into_graph();
    if d.is_oriented_tree() {
        max_independent_set_wc(&g)
    } else {
        max_independent_set_exact(&g)
    }
}

/// Whether `vs` is pairwise temporally unconnected.
pub fn is_temporal_antichain(cg: &ConnectivityGraph, vs: &[Vertex]) -> bool {
    cg.graph().is_independent(vs)
}
