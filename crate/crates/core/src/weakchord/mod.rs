//! Undirected graphs, with hole/antihole search and optimal clique covers for
//! weakly chordal graphs.

mod cover;
mod holes;

use std::fmt::Write as _;

use fixedbitset::FixedBitSet;

use crate::digraph::TemporalDigraph;
use crate::error::{Error, Result};

pub use cover::{max_independent_set_wc, min_clique_cover_wc, CliqueCover};
pub use holes::{find_antihole, find_hole, is_weakly_chordal};

/// Simple undirected graph on `0..n` with a bitset adjacency matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StaticGraph {
    adj: Vec<FixedBitSet>,
}

impl StaticGraph {
    pub fn new(n: usize) -> Self {
        Self { adj: vec![FixedBitSet::with_capacity(n); n] }
    }

    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Self> {
        let mut g = Self::new(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Malformed(format!("edge {u}-{v} out of range for n = {n}")));
            }
            if u == v {
                return Err(Error::Malformed(format!("self-loop on vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Panics on a self-loop or out-of-range vertex.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert_ne!(u, v, "self-loop");
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u].set(v, false);
        self.adj[v].set(u, false);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].ones()
    }

    pub fn neighbor_set(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones(..)
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .flat_map(|u| self.adj[u].ones().filter(move |&v| v > u).map(move |v| (u, v)))
            .collect()
    }

    pub fn complement(&self) -> Self {
        let n = self.n();
        let mut g = Self::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter().enumerate().all(|(i, &u)| vs[i + 1..].iter().all(|&v| u != v && self.has_edge(u, v)))
    }

    pub fn is_independent(&self, vs: &[usize]) -> bool {
        vs.iter().enumerate().all(|(i, &u)| vs[i + 1..].iter().all(|&v| u != v && !self.has_edge(u, v)))
    }

    /// `p edge n m` followed by `e u v` lines, 1-based.
    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p edge {} {}\n", self.n(), self.edge_count());
        for (u, v) in self.edges() {
            let _ = writeln!(s, "e {} {}", u + 1, v + 1);
        }
        s
    }

    pub fn parse_dimacs(text: &str) -> Result<Self> {
        let mut g: Option<Self> = None;
        for (idx, line) in text.lines().enumerate() {
            let f: Vec<&str> = line.split_whitespace().collect();
            let err = |msg: &str| Error::Parse { line: idx + 1, msg: msg.to_string() };
            match f.first().copied() {
                None | Some("c") => {}
                Some("p") => {
                    let n = f.get(2).and_then(|x| x.parse().ok()).ok_or_else(|| err("bad problem line"))?;
                    g = Some(Self::new(n));
                }
                Some("e") => {
                    let g = g.as_mut().ok_or_else(|| err("edge before problem line"))?;
                    let u: usize = f.get(1).and_then(|x| x.parse().ok()).ok_or_else(|| err("bad edge"))?;
                    let v: usize = f.get(2).and_then(|x| x.parse().ok()).ok_or_else(|| err("bad edge"))?;
                    if u == 0 || v == 0 || u > g.n() || v > g.n() || u == v {
                        return Err(err("edge endpoint out of range"));
                    }
                    g.add_edge(u - 1, v - 1);
                }
                Some(_) => return Err(err("unknown line")),
            }
        }
        g.ok_or(Error::Parse { line: 0, msg: "missing problem line".into() })
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph connectivity {\n");
        for v in 0..self.n() {
            let _ = writeln!(s, "  {v};");
        }
        for (u, v) in self.edges() {
            let _ = writeln!(s, "  {u} -- {v};");
        }
        s.push_str("}\n");
        s
    }

    /// Underlying undirected graph of a temporal digraph.
    pub fn underlying(d: &TemporalDigraph) -> Self {
        Self::from_edges(d.n(), d.undirected_edges()).expect("digraph edges are valid")
    }

    pub fn is_bipartite(&self) -> bool {
        let mut side: Vec<Option<bool>> = vec![None; self.n()];
        for s in 0..self.n() {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                let su = side[u].unwrap();
                for w in self.neighbors(u) {
                    match side[w] {
                        None => {
                            side[w] = Some(!su);
                            stack.push(w);
                        }
                        Some(sw) if sw == su => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let n = self.n();
        let mut best: Option<usize> = None;
        for s in 0..n {
            let mut dist = vec![usize::MAX; n];
            let mut parent = vec![usize::MAX; n];
            dist[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for w in self.neighbors(u) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Adjacency rows as `u128` masks; `None` above 128 vertices.
    pub fn masks(&self) -> Option<Vec<u128>> {
        (self.n() <= 128).then(|| {
            self.adj
                .iter()
                .map(|row| row.ones().fold(0u128, |m, v| m | (1 << v)))
                .collect()
        })
    }
}

/// Maximum independent set by branch and bound, for any graph with at most
/// 128 vertices. Lowest ids win ties.
pub fn max_independent_set_exact(g: &StaticGraph) -> Result<Vec<usize>> {
    let adj = g
        .masks()
        .ok_or_else(|| Error::Resource(format!("exact independent set limited to 128 vertices, got {}", g.n())))?;
    let all: u128 = if g.n() == 128 { u128::MAX } else { (1u128 << g.n()) - 1 };
    let mut best = 0u128;
    mis_branch(&adj, all, 0, &mut best);
    Ok(bits(best))
}

fn mis_branch(adj: &[u128], cand: u128, cur: u128, best: &mut u128) {
    if cand == 0 {
        if cur.count_ones() > best.count_ones() {
            *best = cur;
        }
        return;
    }
    if cur.count_ones() + cand.count_ones() <= best.count_ones() {
        return;
    }
    // A maximum independent set meets the closed neighbourhood of any vertex;
    // branching on the sparsest one keeps the fan-out small.
    let v = bits(cand).into_iter().min_by_key(|&v| (adj[v] & cand).count_ones()).unwrap();
    let closed = (adj[v] & cand) | (1 << v);
    for w in bits(closed) {
        mis_branch(adj, cand & !adj[w] & !(1u128 << w), cur | (1 << w), best);
    }
}

pub(crate) fn bits(mut m: u128) -> Vec<usize> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

/// Minimum clique cover by subset DP. Exponential; meant for checking.
pub fn exhaustive_clique_cover(g: &StaticGraph) -> Vec<Vec<usize>> {
    let n = g.n();
    assert!(n <= 16, "exhaustive clique cover is limited to 16 vertices");
    let adj: Vec<u32> = (0..n).map(|v| g.neighbors(v).fold(0, |m, w| m | (1 << w))).collect();
    let full = (1u32 << n) - 1;
    let mut is_clique = vec![false; 1 << n];
    is_clique[0] = true;
    for m in 1..=full {
        let v = m.trailing_zeros() as usize;
        let rest = m & (m - 1);
        is_clique[m as usize] = is_clique[rest as usize] && rest & !adj[v] == 0;
    }
    let mut cost = vec![u32::MAX; 1 << n];
    let mut choice = vec![0u32; 1 << n];
    cost[0] = 0;
    for m in 1..=full {
        // the lowest vertex must be covered by some clique inside m
        let low = m & m.wrapping_neg();
        let rest = m ^ low;
        let mut sub = rest;
        loop {
            let c = sub | low;
            if is_clique[c as usize] && cost[(m ^ c) as usize] + 1 < cost[m as usize] {
                cost[m as usize] = cost[(m ^ c) as usize] + 1;
                choice[m as usize] = c;
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    let mut out = Vec::new();
    let mut m = full;
    while m != 0 {
        let c = choice[m as usize];
        out.push(bits(c as u128));
        m ^= c;
    }
    out
}

/// Maximum independent set by enumerating all subsets. Meant for checking.
pub fn exhaustive_independent_set(g: &StaticGraph) -> Vec<usize> {
    let n = g.n();
    assert!(n <= 20, "exhaustive independent set is limited to 20 vertices");
    let adj: Vec<u32> = (0..n).map(|v| g.neighbors(v).fold(0, |m, w| m | (1 << w))).collect();
    let mut best = 0u32;
    for m in 0u32..(1 << n) {
        if m.count_ones() > best.count_ones() && bits(m as u128).iter().all(|&v| adj[v] & m == 0) {
            best = m;
        }
    }
    bits(best as u128)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub fn cycle(n: usize) -> StaticGraph {
        StaticGraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub fn complete(n: usize) -> StaticGraph {
        StaticGraph::new(n).complement()
    }

    #[test]
    fn complement_and_edges() {
        let c4 = cycle(4);
        assert_eq!(c4.edge_count(), 4);
        assert_eq!(c4.complement().edges(), vec![(0, 2), (1, 3)]);
    }

    #[test]
    fn bipartite_and_girth() {
        assert!(cycle(6).is_bipartite());
        assert!(!cycle(5).is_bipartite());
        assert_eq!(cycle(7).girth(), Some(7));
        assert_eq!(StaticGraph::from_edges(3, [(0, 1), (1, 2)]).unwrap().girth(), None);
        let mut g = cycle(8);
        g.add_edge(0, 4);
        assert_eq!(g.girth(), Some(5));
    }

    #[test]
    fn dimacs_roundtrip() {
        let g = cycle(5);
        let text = g.to_dimacs();
        assert!(text.starts_with("p edge 5 5\n"));
        assert_eq!(StaticGraph::parse_dimacs(&text).unwrap(), g);
    }

    #[test]
    fn exact_mis_matches_exhaustive() {
        for n in 3..9 {
            let g = cycle(n);
            assert_eq!(max_independent_set_exact(&g).unwrap().len(), n / 2);
            assert_eq!(exhaustive_independent_set(&g).len(), n / 2);
        }
        assert_eq!(max_independent_set_exact(&complete(6)).unwrap().len(), 1);
        assert_eq!(max_independent_set_exact(&StaticGraph::new(7)).unwrap().len(), 7);
    }

    #[test]
    fn exhaustive_cover_of_small_graphs() {
        assert_eq!(exhaustive_clique_cover(&cycle(4)).len(), 2);
        assert_eq!(exhaustive_clique_cover(&cycle(5)).len(), 3);
        assert_eq!(exhaustive_clique_cover(&complete(5)).len(), 1);
        assert_eq!(exhaustive_clique_cover(&StaticGraph::new(4)).len(), 4);
    }
}
