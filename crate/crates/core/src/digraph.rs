//! Temporal digraph model and shape classification.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type Time = u32;

/// One arc record: all time labels of the ordered pair `tail -> head`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arc {
    #[serde(rename = "u")]
    pub tail: Vertex,
    #[serde(rename = "v")]
    pub head: Vertex,
    /// Sorted, deduplicated, nonempty, every label >= 1.
    pub labels: Vec<Time>,
}

/// A temporal digraph `(D, λ)` with vertices `0..n`.
///
/// Immutable once built. Parallel labels of the same ordered pair are merged
/// into a single arc record, so `arc(u, v)` is unique.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemporalDigraph {
    n: usize,
    arcs: Vec<Arc>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
    t_max: Time,
}

impl TemporalDigraph {
    /// Builds a digraph from `(tail, head, labels)` triples. Records for the
    /// same ordered pair are merged.
    pub fn from_arcs<I, L>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex, L)>,
        L: IntoIterator<Item = Time>,
    {
        if n == 0 {
            return Err(Error::Malformed("a temporal digraph needs at least one vertex".into()));
        }
        let mut merged: BTreeMap<(Vertex, Vertex), Vec<Time>> = BTreeMap::new();
        for (u, v, labels) in arcs {
            if u >= n || v >= n {
                return Err(Error::Malformed(format!("arc {u}->{v} out of range for n = {n}")));
            }
            if u == v {
                return Err(Error::Malformed(format!("self-loop on vertex {u}")));
            }
            let entry = merged.entry((u, v)).or_default();
            let before = entry.len();
            for t in labels {
                if t == 0 {
                    return Err(Error::Malformed(format!("arc {u}->{v} carries label 0")));
                }
                entry.push(t);
            }
            if entry.len() == before && before == 0 {
                return Err(Error::Malformed(format!("arc {u}->{v} has no labels")));
            }
        }
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        let mut list = Vec::with_capacity(merged.len());
        let mut t_max = 0;
        for ((u, v), mut labels) in merged {
            labels.sort_unstable();
            labels.dedup();
            t_max = t_max.max(*labels.last().unwrap());
            out_adj[u].push(list.len());
            in_adj[v].push(list.len());
            list.push(Arc { tail: u, head: v, labels });
        }
        Ok(Self { n, arcs: list, out_adj, in_adj, t_max })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Largest label present, 0 when there are no arcs.
    pub fn t_max(&self) -> Time {
        self.t_max
    }

    /// ℓ: the maximum number of labels on a single arc.
    pub fn max_labels_per_arc(&self) -> usize {
        self.arcs.iter().map(|a| a.labels.len()).max().unwrap_or(0)
    }

    pub fn out_arcs(&self, u: Vertex) -> impl Iterator<Item = &Arc> + '_ {
        self.out_adj[u].iter().map(move |&i| &self.arcs[i])
    }

    pub fn in_arcs(&self, v: Vertex) -> impl Iterator<Item = &Arc> + '_ {
        self.in_adj[v].iter().map(move |&i| &self.arcs[i])
    }

    pub fn out_degree(&self, u: Vertex) -> usize {
        self.out_adj[u].len()
    }

    pub fn in_degree(&self, v: Vertex) -> usize {
        self.in_adj[v].len()
    }

    pub fn labels(&self, u: Vertex, v: Vertex) -> Option<&[Time]> {
        if u >= self.n {
            return None;
        }
        self.out_adj[u]
            .iter()
            .map(|&i| &self.arcs[i])
            .find(|a| a.head == v)
            .map(|a| a.labels.as_slice())
    }

    pub fn has_label(&self, u: Vertex, v: Vertex, t: Time) -> bool {
        self.labels(u, v).is_some_and(|ls| ls.binary_search(&t).is_ok())
    }

    /// Every `(tail, head, time)` event sorted by time, then by arc.
    pub fn events(&self) -> Vec<(Vertex, Vertex, Time)> {
        let mut ev: Vec<_> = self
            .arcs
            .iter()
            .flat_map(|a| a.labels.iter().map(move |&t| (a.tail, a.head, t)))
            .collect();
        ev.sort_by_key(|&(u, v, t)| (t, u, v));
        ev
    }

    /// Sorted, deduplicated neighbours in the underlying undirected graph.
    pub fn undirected_neighbors(&self, u: Vertex) -> Vec<Vertex> {
        let mut nb: Vec<Vertex> = self
            .out_arcs(u)
            .map(|a| a.head)
            .chain(self.in_arcs(u).map(|a| a.tail))
            .collect();
        nb.sort_unstable();
        nb.dedup();
        nb
    }

    /// Edges `{u, v}` (with `u < v`) of the underlying undirected graph.
    pub fn undirected_edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut e: Vec<_> = self
            .arcs
            .iter()
            .map(|a| (a.tail.min(a.head), a.tail.max(a.head)))
            .collect();
        e.sort_unstable();
        e.dedup();
        e
    }

    /// Copy of this digraph without the given arc records (by `(tail, head)`).
    pub fn without_arcs(&self, drop: &[(Vertex, Vertex)]) -> Self {
        let kept = self
            .arcs
            .iter()
            .filter(|a| !drop.contains(&(a.tail, a.head)))
            .map(|a| (a.tail, a.head, a.labels.clone()));
        Self::from_arcs(self.n, kept).expect("subgraph of a valid digraph is valid")
    }

    /// A topological order of the underlying digraph, or `None` if it has a
    /// directed cycle.
    pub fn topological_order(&self) -> Option<Vec<Vertex>> {
        let mut indeg: Vec<usize> = (0..self.n).map(|v| self.in_degree(v)).collect();
        let mut queue: VecDeque<Vertex> = (0..self.n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for a in self.out_arcs(u) {
                indeg[a.head] -= 1;
                if indeg[a.head] == 0 {
                    queue.push_back(a.head);
                }
            }
        }
        (order.len() == self.n).then_some(order)
    }

    pub fn is_dag(&self) -> bool {
        self.topological_order().is_some()
    }

    /// True when the underlying undirected graph is a tree and no pair of
    /// vertices carries arcs in both directions.
    pub fn is_oriented_tree(&self) -> bool {
        let edges = self.undirected_edges();
        if edges.len() != self.arcs.len() || edges.len() + 1 != self.n {
            return false;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for w in self.undirected_neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Oriented tree with exactly one vertex of in-degree zero.
    pub fn is_rooted_tree(&self) -> bool {
        self.is_oriented_tree() && self.sources().len() == 1
    }

    /// Vertices of in-degree zero.
    pub fn sources(&self) -> Vec<Vertex> {
        (0..self.n).filter(|&v| self.in_degree(v) == 0).collect()
    }

    /// Vertices of out-degree zero.
    pub fn sinks(&self) -> Vec<Vertex> {
        (0..self.n).filter(|&v| self.out_degree(v) == 0).collect()
    }

    pub fn classify(&self) -> GraphClass {
        if !self.is_dag() {
            return GraphClass::General;
        }
        if !self.is_oriented_tree() {
            return GraphClass::Dag;
        }
        if (0..self.n).all(|v| self.undirected_neighbors(v).len() <= 2) {
            return GraphClass::OrientedLine;
        }
        if self.sources().len() == 1 {
            return GraphClass::RootedDirectedTree;
        }
        GraphClass::OrientedTree
    }
}

/// Shape of the underlying digraph, from least to most specific.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphClass {
    General,
    Dag,
    OrientedTree,
    RootedDirectedTree,
    OrientedLine,
}

impl GraphClass {
    pub fn is_dag(self) -> bool {
        self != GraphClass::General
    }

    pub fn is_oriented_tree(self) -> bool {
        matches!(
            self,
            GraphClass::OrientedTree | GraphClass::RootedDirectedTree | GraphClass::OrientedLine
        )
    }

    /// Position in the refinement order `general < dag < oriented_tree <
    /// {rooted_directed_tree, oriented_line}`.
    pub fn rank(self) -> u8 {
        match self {
            GraphClass::General => 0,
            GraphClass::Dag => 1,
            GraphClass::OrientedTree => 2,
            GraphClass::RootedDirectedTree | GraphClass::OrientedLine => 3,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            GraphClass::General => "general",
            GraphClass::Dag => "dag",
            GraphClass::OrientedTree => "oriented_tree",
            GraphClass::RootedDirectedTree => "rooted_directed_tree",
            GraphClass::OrientedLine => "oriented_line",
        }
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for GraphClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "general" => GraphClass::General,
            "dag" => GraphClass::Dag,
            "oriented_tree" | "tree" => GraphClass::OrientedTree,
            "rooted_directed_tree" | "rooted_tree" | "rooted" => GraphClass::RootedDirectedTree,
            "oriented_line" | "line" => GraphClass::OrientedLine,
            other => return Err(Error::Malformed(format!("unknown graph class `{other}`"))),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(labels: &[Time]) -> TemporalDigraph {
        TemporalDigraph::from_arcs(
            labels.len() + 1,
            labels.iter().enumerate().map(|(i, &t)| (i, i + 1, vec![t])),
        )
        .unwrap()
    }

    #[test]
    fn merges_parallel_labels() {
        let d = TemporalDigraph::from_arcs(2, [(0, 1, vec![3]), (0, 1, vec![1, 3])]).unwrap();
        assert_eq!(d.arc_count(), 1);
        assert_eq!(d.labels(0, 1), Some(&[1, 3][..]));
        assert_eq!(d.t_max(), 3);
        assert_eq!(d.max_labels_per_arc(), 2);
    }

    #[test]
    fn rejects_bad_arcs() {
        assert!(TemporalDigraph::from_arcs(2, [(0, 0, vec![1])]).is_err());
        assert!(TemporalDigraph::from_arcs(2, [(0, 2, vec![1])]).is_err());
        assert!(TemporalDigraph::from_arcs(2, [(0, 1, vec![0])]).is_err());
        assert!(TemporalDigraph::from_arcs(2, [(0, 1, Vec::<Time>::new())]).is_err());
        assert!(TemporalDigraph::from_arcs(0, Vec::<(Vertex, Vertex, Vec<Time>)>::new()).is_err());
    }

    #[test]
    fn classifies_shapes() {
        assert_eq!(line(&[1, 2]).classify(), GraphClass::OrientedLine);
        let cyc = TemporalDigraph::from_arcs(2, [(0, 1, vec![1]), (1, 0, vec![2])]).unwrap();
        assert_eq!(cyc.classify(), GraphClass::General);
        let tri =
            TemporalDigraph::from_arcs(3, [(0, 1, vec![1]), (1, 2, vec![2]), (0, 2, vec![1])])
                .unwrap();
        assert_eq!(tri.classify(), GraphClass::Dag);
        // out-star rooted at 0
        let rooted = TemporalDigraph::from_arcs(
            4,
            [(0, 1, vec![1]), (0, 2, vec![1]), (0, 3, vec![1])],
        )
        .unwrap();
        assert_eq!(rooted.classify(), GraphClass::RootedDirectedTree);
        let in_star = TemporalDigraph::from_arcs(
            4,
            [(1, 0, vec![1]), (2, 0, vec![1]), (3, 0, vec![1])],
        )
        .unwrap();
        assert_eq!(in_star.classify(), GraphClass::OrientedTree);
        let single = TemporalDigraph::from_arcs(1, Vec::<(Vertex, Vertex, Vec<Time>)>::new()).unwrap();
        assert_eq!(single.classify(), GraphClass::OrientedLine);
        let forest = TemporalDigraph::from_arcs(3, [(0, 1, vec![1])]).unwrap();
        assert_eq!(forest.classify(), GraphClass::Dag);
    }

    #[test]
    fn events_are_time_sorted() {
        let d = TemporalDigraph::from_arcs(3, [(0, 1, vec![3, 1]), (1, 2, vec![2])]).unwrap();
        assert_eq!(d.events(), vec![(0, 1, 1), (1, 2, 2), (0, 1, 3)]);
    }
}
