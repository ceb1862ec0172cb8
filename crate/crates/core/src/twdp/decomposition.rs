use std::collections::HashMap;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;

use crate::digraph::{TemporalDigraph, Vertex};
use crate::error::{Error, Result};
use crate::weakchord::StaticGraph;

/// Largest graph for which the width is minimised exactly.
pub const EXACT_LIMIT: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Leaf,
    Introduce(Vertex),
    Forget(Vertex),
    Join,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub kind: NodeKind,
    /// Sorted.
    pub bag: Vec<Vertex>,
    pub children: Vec<usize>,
}

/// Rooted nice tree decomposition. Leaves and the root have empty bags,
/// introduce and forget nodes change the bag of their only child by one
/// vertex, and join nodes have two children with the same bag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceTreeDecomposition {
    nodes: Vec<Node>,
    root: usize,
    n: usize,
}

impl NiceTreeDecomposition {
    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn node(&self, i: usize) -> &Node {
        &self.nodes[i]
    }

    /// Largest bag size minus one; 0 for a decomposition of isolated vertices.
    pub fn width(&self) -> usize {
        self.nodes.iter().map(|n| n.bag.len()).max().unwrap_or(1).max(1) - 1
    }

    /// Node ids with every child before its parent.
    pub fn post_order(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![(self.root, false)];
        while let Some((v, expanded)) = stack.pop() {
            if expanded {
                out.push(v);
            } else {
                stack.push((v, true));
                for &c in self.nodes[v].children.iter().rev() {
                    stack.push((c, false));
                }
            }
        }
        out
    }

    /// Checks the tree decomposition axioms against `g` and the shape rules
    /// of a nice decomposition. Returns the first violation found.
    pub fn validate(&self, g: &StaticGraph) -> std::result::Result<(), String> {
        let n = g.n();
        if n != self.n {
            return Err(format!("decomposition is for {} vertices, graph has {n}", self.n));
        }
        let order = self.post_order();
        if order.len() != self.nodes.len() {
            return Err("nodes unreachable from the root".into());
        }
        let mut seen = vec![false; n];
        for node in &self.nodes {
            for &v in &node.bag {
                seen[v] = true;
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(format!("vertex {v} is in no bag"));
        }
        for (u, v) in g.edges() {
            if !self.nodes.iter().any(|nd| nd.bag.contains(&u) && nd.bag.contains(&v)) {
                return Err(format!("edge {u}-{v} is in no bag"));
            }
        }
        // bags holding v are connected: exactly one of them has a parent
        // without v (or is the root)
        let mut parent = vec![None; self.nodes.len()];
        for (i, node) in self.nodes.iter().enumerate() {
            for &c in &node.children {
                parent[c] = Some(i);
            }
        }
        for v in 0..n {
            let tops = (0..self.nodes.len())
                .filter(|&i| self.nodes[i].bag.contains(&v))
                .filter(|&i| parent[i].is_none_or(|p| !self.nodes[p].bag.contains(&v)))
                .count();
            if tops != 1 {
                return Err(format!("bags containing {v} are not connected"));
            }
        }
        if !self.nodes[self.root].bag.is_empty() {
            return Err("root bag is not empty".into());
        }
        for (i, node) in self.nodes.iter().enumerate() {
            let child_bag = |k: usize| &self.nodes[node.children[k]].bag;
            let ok = match node.kind {
                NodeKind::Leaf => node.children.is_empty() && node.bag.is_empty(),
                NodeKind::Introduce(v) => {
                    node.children.len() == 1
                        && !child_bag(0).contains(&v)
                        && with(child_bag(0), v) == node.bag
                }
                NodeKind::Forget(v) => {
                    node.children.len() == 1 && node.bag.binary_search(&v).is_err() && with(&node.bag, v) == *child_bag(0)
                }
                NodeKind::Join => {
                    node.children.len() == 2 && *child_bag(0) == node.bag && *child_bag(1) == node.bag
                }
            };
            if !ok {
                return Err(format!("node {i} violates the {:?} rule", node.kind));
            }
        }
        Ok(())
    }

    /// PACE `.td` text: `s td <bags> <max bag size> <n>`, `b <id> <vertices>`
    /// lines and tree edges, all 1-based.
    pub fn to_pace(&self) -> String {
        let max_bag = self.nodes.iter().map(|n| n.bag.len()).max().unwrap_or(0);
        let mut s = format!("s td {} {} {}\n", self.nodes.len(), max_bag, self.n);
        for (i, node) in self.nodes.iter().enumerate() {
            let _ = write!(s, "b {}", i + 1);
            for v in &node.bag {
                let _ = write!(s, " {}", v + 1);
            }
            s.push('\n');
        }
        for (i, node) in self.nodes.iter().enumerate() {
            for &c in &node.children {
                let _ = writeln!(s, "{} {}", i + 1, c + 1);
            }
        }
        s
    }
}

fn with(bag: &[Vertex], v: Vertex) -> Vec<Vertex> {
    let mut b = bag.to_vec();
    b.push(v);
    b.sort_unstable();
    b
}

/// Exact treewidth by dynamic programming over vertex subsets, returning an
/// optimal elimination order. For `n <= EXACT_LIMIT`.
pub fn exact_elimination_order(g: &StaticGraph) -> Result<(usize, Vec<Vertex>)> {
    let n = g.n();
    if n > EXACT_LIMIT {
        return Err(Error::Resource(format!("exact treewidth limited to {EXACT_LIMIT} vertices")));
    }
    if n == 0 {
        return Ok((0, Vec::new()));
    }
    let adj: Vec<u32> = (0..n).map(|v| g.neighbors(v).fold(0, |m, w| m | 1 << w)).collect();
    // q(s, v): vertices outside s + v reachable from v through s
    let q = |s: u32, v: usize| -> u32 {
        let mut seen = 1u32 << v;
        let mut frontier = 1u32 << v;
        let mut out = 0u32;
        while frontier != 0 {
            let u = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let nb = adj[u] & !seen;
            seen |= nb;
            out |= nb & !s;
            frontier |= nb & s;
        }
        out
    };
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut tw = vec![u32::MAX; 1 << n];
    let mut last = vec![0u8; 1 << n];
    tw[0] = 0;
    for s in 1..=full {
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let prev = s & !(1 << v);
            let cand = tw[prev as usize].max(q(prev, v).count_ones());
            if cand < tw[s as usize] {
                tw[s as usize] = cand;
                last[s as usize] = v as u8;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let v = last[s as usize] as usize;
        order.push(v);
        s &= !(1 << v);
    }
    order.reverse();
    Ok((tw[full as usize] as usize, order))
}

/// Greedy min-fill elimination order, lowest id on ties.
pub fn min_fill_order(g: &StaticGraph) -> Vec<Vertex> {
    let n = g.n();
    let mut adj: Vec<FixedBitSet> = (0..n).map(|v| g.neighbor_set(v).clone()).collect();
    let mut alive = FixedBitSet::with_capacity(n);
    alive.insert_range(..);
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let fill = |v: usize| {
            let nb: Vec<usize> = adj[v].ones().collect();
            let mut f = 0;
            for (i, &a) in nb.iter().enumerate() {
                f += nb[i + 1..].iter().filter(|&&b| !adj[a].contains(b)).count();
            }
            f
        };
        let v = alive.ones().min_by_key(|&v| (fill(v), v)).unwrap();
        let nb: Vec<usize> = adj[v].ones().collect();
        for &a in &nb {
            for &b in &nb {
                if a != b {
                    adj[a].insert(b);
                }
            }
            adj[a].set(v, false);
        }
        adj[v].clear();
        alive.set(v, false);
        order.push(v);
    }
    order
}

/// Bags from an elimination order: `{v} + later neighbours in the filled
/// graph`, attached to the bag of the earliest later neighbour.
fn decomposition_from_order(g: &StaticGraph, order: &[Vertex]) -> (Vec<Vec<Vertex>>, Vec<Option<usize>>) {
    let n = g.n();
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut adj: Vec<FixedBitSet> = (0..n).map(|v| g.neighbor_set(v).clone()).collect();
    let mut bags = Vec::with_capacity(n);
    let mut parent = vec![None; n];
    for (i, &v) in order.iter().enumerate() {
        let later: Vec<usize> = adj[v].ones().filter(|&w| pos[w] > i).collect();
        for &a in &later {
            for &b in &later {
                if a != b {
                    adj[a].insert(b);
                }
            }
        }
        parent[i] = later.iter().map(|&w| pos[w]).min();
        let mut bag = later;
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
    }
    (bags, parent)
}

struct Builder {
    nodes: Vec<Node>,
}

impl Builder {
    fn push(&mut self, kind: NodeKind, bag: Vec<Vertex>, children: Vec<usize>) -> usize {
        self.nodes.push(Node { kind, bag, children });
        self.nodes.len() - 1
    }

    /// Chain of forgets then introduces turning `from`'s bag into `bag`.
    fn morph(&mut self, mut node: usize, bag: &[Vertex]) -> usize {
        let current = self.nodes[node].bag.clone();
        let mut cur = current.clone();
        for &v in current.iter().filter(|v| !bag.contains(v)) {
            cur.retain(|&w| w != v);
            node = self.push(NodeKind::Forget(v), cur.clone(), vec![node]);
        }
        for &v in bag.iter().filter(|v| !current.contains(v)) {
            cur.push(v);
            cur.sort_unstable();
            node = self.push(NodeKind::Introduce(v), cur.clone(), vec![node]);
        }
        node
    }
}

/// Nice tree decomposition of the underlying undirected graph. The width is
/// exact up to `EXACT_LIMIT` vertices and from min-fill beyond.
pub fn build_nice_decomposition(d: &TemporalDigraph) -> NiceTreeDecomposition {
    nice_from_graph(&StaticGraph::underlying(d))
}

pub fn nice_from_graph(g: &StaticGraph) -> NiceTreeDecomposition {
    let order = match exact_elimination_order(g) {
        Ok((_, order)) => order,
        Err(_) => min_fill_order(g),
    };
    nice_from_order(g, &order)
}

pub fn nice_from_order(g: &StaticGraph, order: &[Vertex]) -> NiceTreeDecomposition {
    let n = g.n();
    let (bags, parent) = decomposition_from_order(g, order);
    let mut children: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut roots = Vec::new();
    for (i, p) in parent.iter().enumerate() {
        match p {
            Some(p) => children.entry(*p).or_default().push(i),
            None => roots.push(i),
        }
    }
    let mut b = Builder { nodes: Vec::new() };
    // process bags in elimination order: children always come first
    let mut built: Vec<usize> = vec![usize::MAX; bags.len()];
    for i in 0..bags.len() {
        let kids: Vec<usize> = children.get(&i).cloned().unwrap_or_default();
        let mut subs: Vec<usize> = kids.iter().map(|&c| b.morph(built[c], &bags[i])).collect();
        if subs.is_empty() {
            let leaf = b.push(NodeKind::Leaf, Vec::new(), Vec::new());
            subs.push(b.morph(leaf, &bags[i]));
        }
        let mut node = subs[0];
        for &other in &subs[1..] {
            node = b.push(NodeKind::Join, bags[i].clone(), vec![node, other]);
        }
        built[i] = node;
    }
    // close each component and join the components under an empty root
    let mut tops: Vec<usize> = roots.iter().map(|&r| b.morph(built[r], &[])).collect();
    if tops.is_empty() {
        tops.push(b.push(NodeKind::Leaf, Vec::new(), Vec::new()));
    }
    let mut root = tops[0];
    for &t in &tops[1..] {
        root = b.push(NodeKind::Join, Vec::new(), vec![root, t]);
    }
    NiceTreeDecomposition { nodes: b.nodes, root, n }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weakchord::tests::{complete, cycle};

    fn path(n: usize) -> StaticGraph {
        StaticGraph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn exact_widths() {
        assert_eq!(exact_elimination_order(&path(6)).unwrap().0, 1);
        assert_eq!(exact_elimination_order(&cycle(4)).unwrap().0, 2);
        assert_eq!(exact_elimination_order(&cycle(9)).unwrap().0, 2);
        assert_eq!(exact_elimination_order(&complete(5)).unwrap().0, 4);
        assert_eq!(exact_elimination_order(&StaticGraph::new(3)).unwrap().0, 0);
    }

    #[test]
    fn nice_decompositions_validate() {
        for g in [path(5), cycle(4), cycle(7), complete(4), StaticGraph::new(3)] {
            let td = nice_from_graph(&g);
            td.validate(&g).unwrap();
        }
        assert_eq!(nice_from_graph(&path(5)).width(), 1);
        assert_eq!(nice_from_graph(&cycle(4)).width(), 2);
    }

    #[test]
    fn min_fill_is_valid_beyond_exact_range() {
        let g = cycle(20);
        let td = nice_from_order(&g, &min_fill_order(&g));
        td.validate(&g).unwrap();
        assert_eq!(td.width(), 2);
    }

    #[test]
    fn validation_catches_missing_edge() {
        let td = nice_from_graph(&path(3));
        let mut g = path(3);
        g.add_edge(0, 2);
        assert!(td.validate(&g).is_err());
    }

    #[test]
    fn pace_header() {
        let td = nice_from_graph(&cycle(4));
        let text = td.to_pace();
        assert!(text.starts_with(&format!("s td {} 3 4\n", td.nodes().len())));
        assert_eq!(text.lines().filter(|l| l.starts_with('b')).count(), td.nodes().len());
    }
}
