//! Polynomial solvers on temporal oriented trees, lines and rooted trees.

use std::collections::VecDeque;

use crate::connectivity::{connectivity_graph, ConnectivityGraph, EarliestArrival};
use crate::digraph::{TemporalDigraph, Time, Vertex};
use crate::error::{Error, Result};
use crate::path::{CoverMode, PathCover, Step, TemporalPath};
use crate::weakchord::min_clique_cover_wc;

fn require(d: &TemporalDigraph, ok: bool, expected: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Class { found: d.classify(), expected: expected.to_string() })
    }
}

/// A temporal path through every vertex of `set`, which must be a clique of
/// the connectivity graph of the oriented tree `t`.
pub fn realize_clique_as_path(t: &TemporalDigraph, set: &[Vertex]) -> Result<TemporalPath> {
    require(t, t.is_oriented_tree(), "an oriented tree")?;
    realize_with(t, &connectivity_graph(t), set)
}

fn realize_with(t: &TemporalDigraph, cg: &ConnectivityGraph, set: &[Vertex]) -> Result<TemporalPath> {
    if let Some(&v) = set.iter().find(|&&v| v >= t.n()) {
        return Err(Error::Malformed(format!("vertex {v} out of range")));
    }
    if !cg.graph().is_clique(set) {
        return Err(Error::Domain(format!("{set:?} is not a clique of the connectivity graph")));
    }
    // In a clique of a tree's connectivity graph reachability is a strict
    // total order; count how many members each one reaches.
    let reached = |u: Vertex| set.iter().filter(|&&v| cg.reaches(u, v)).count();
    let first = *set.iter().max_by_key(|&&u| (reached(u), std::cmp::Reverse(u))).ok_or_else(|| {
        Error::Domain("cannot realize an empty vertex set".into())
    })?;
    let last = *set.iter().min_by_key(|&&u| (reached(u), u)).unwrap();
    let path = EarliestArrival::compute(t, first)
        .path_to(last)
        .ok_or_else(|| Error::Domain(format!("{first} does not reach {last}")))?;
    debug_assert!(set.iter().all(|&v| path.contains(v)));
    Ok(path)
}

/// Minimum temporal path cover of an oriented tree: one path per clique of
/// a minimum clique cover of the connectivity graph.
pub fn tpc_oriented_tree(t: &TemporalDigraph) -> Result<PathCover> {
    require(t, t.is_oriented_tree(), "an oriented tree")?;
    let cg = connectivity_graph(t);
    let cover = min_clique_cover_wc(cg.graph())?;
    let paths = cover
        .cliques
        .iter()
        .map(|c| realize_with(t, &cg, c))
        .collect::<Result<Vec<_>>>()?;
    Ok(PathCover::new(CoverMode::Plain, paths))
}

/// Vertices of an oriented line from one end to the other, starting at the
/// lower-id end.
fn line_order(l: &TemporalDigraph) -> Vec<Vertex> {
    if l.n() == 1 {
        return vec![0];
    }
    let start = (0..l.n()).find(|&v| l.undirected_neighbors(v).len() == 1).unwrap();
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&next) = l.undirected_neighbors(cur).iter().find(|&&w| w != prev) {
        order.push(next);
        prev = cur;
        cur = next;
    }
    order
}

/// Minimum cover of an oriented line by vertex-disjoint paths; simultaneously
/// a minimum temporal path cover and a minimum temporally disjoint one.
///
/// Repeatedly takes the first remaining vertex, which is an end of the
/// remaining line, and grows the longest temporal path from it along the
/// direction its arc points: backwards with the largest usable labels, or
/// forwards with the smallest.
pub fn solve_oriented_line(l: &TemporalDigraph) -> Result<PathCover> {
    require(l, l.classify() == crate::digraph::GraphClass::OrientedLine, "an oriented line")?;
    let order = line_order(l);
    let mut paths = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        let mut j = i;
        let path = if let Some(labels) = order.get(i + 1).and_then(|&u| l.labels(u, v)) {
            // in-arc at v: extend towards predecessors
            let mut bound = Time::MAX;
            let mut steps = Vec::new();
            let mut labels = labels;
            while let Some(&t) = labels.iter().rev().find(|&&t| t < bound) {
                steps.push(Step { from: order[j + 1], to: order[j], time: t });
                bound = t;
                j += 1;
                match order.get(j + 1).and_then(|&u| l.labels(u, order[j])) {
                    Some(ls) => labels = ls,
                    None => break,
                }
            }
            steps.reverse();
            TemporalPath::from_steps(steps)?
        } else if let Some(labels) = order.get(i + 1).and_then(|&u| l.labels(v, u)) {
            let mut bound = 0;
            let mut steps = Vec::new();
            let mut labels = labels;
            while let Some(&t) = labels.iter().find(|&&t| t > bound) {
                steps.push(Step { from: order[j], to: order[j + 1], time: t });
                bound = t;
                j += 1;
                match order.get(j + 1).and_then(|&u| l.labels(order[j], u)) {
                    Some(ls) => labels = ls,
                    None => break,
                }
            }
            TemporalPath::from_steps(steps)?
        } else {
            TemporalPath::single(v)
        };
        paths.push(path);
        i = j + 1;
    }
    Ok(PathCover::new(CoverMode::TemporallyDisjoint, paths))
}

struct RootedTree {
    parent: Vec<Option<Vertex>>,
    depth: Vec<usize>,
}

fn rooted_structure(t: &TemporalDigraph) -> RootedTree {
    let root = t.sources()[0];
    let mut parent = vec![None; t.n()];
    let mut depth = vec![0; t.n()];
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for a in t.out_arcs(u) {
            parent[a.head] = Some(u);
            depth[a.head] = depth[u] + 1;
            queue.push_back(a.head);
        }
    }
    RootedTree { parent, depth }
}

/// First phase on a rooted directed tree: deepest uncovered vertex first,
/// grow a longest temporal path ending there, using the largest label that
/// is still smaller than the one below it.
pub fn rooted_tree_phase_one(t: &TemporalDigraph) -> Result<Vec<TemporalPath>> {
    require(t, t.is_rooted_tree(), "a rooted directed tree")?;
    let rt = rooted_structure(t);
    let mut order: Vec<Vertex> = (0..t.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(rt.depth[v]), v));
    let mut covered = vec![false; t.n()];
    let mut paths = Vec::new();
    for v in order {
        if covered[v] {
            continue;
        }
        let mut steps = Vec::new();
        let mut cur = v;
        let mut bound = Time::MAX;
        while let Some(p) = rt.parent[cur] {
            let labels = t.labels(p, cur).expect("parent arc exists");
            let Some(&l) = labels.iter().rev().find(|&&l| l < bound) else { break };
            steps.push(Step { from: p, to: cur, time: l });
            bound = l;
            cur = p;
        }
        steps.reverse();
        let path = if steps.is_empty() { TemporalPath::single(v) } else { TemporalPath::from_steps(steps)? };
        for w in path.vertices() {
            covered[w] = true;
        }
        paths.push(path);
    }
    Ok(paths)
}

/// Minimum temporally disjoint path cover of a rooted directed tree, with
/// pairwise vertex-disjoint paths. Its size is also the minimum temporal
/// path cover size and the maximum antichain size.
///
/// After the first phase, shared vertices are settled top-down: a vertex
/// stays with the path that also keeps its parent, or else with the earliest
/// path through it, and every other path through it loses it from its top.
pub fn solve_rooted_tree(t: &TemporalDigraph) -> Result<PathCover> {
    let mut paths: Vec<Vec<Step>> = Vec::new();
    let mut singles: Vec<Vertex> = Vec::new();
    let phase_one = rooted_tree_phase_one(t)?;
    for p in &phase_one {
        paths.push(p.steps().to_vec());
        singles.push(p.source());
    }
    let rt = rooted_structure(t);
    let mut by_depth: Vec<Vertex> = (0..t.n()).collect();
    by_depth.sort_by_key(|&v| (rt.depth[v], v));

    // top vertex of path i is steps[0].from, or singles[i] when it has no steps
    let top = |steps: &Vec<Step>, single: Vertex| steps.first().map_or(single, |s| s.from);
    let holds = |steps: &Vec<Step>, single: Vertex, x: Vertex| {
        if steps.is_empty() {
            single == x
        } else {
            steps[0].from == x || steps.iter().any(|s| s.to == x)
        }
    };
    for x in by_depth {
        let through: Vec<usize> = (0..paths.len()).filter(|&i| holds(&paths[i], singles[i], x)).collect();
        if through.len() <= 1 {
            continue;
        }
        let owner = rt
            .parent[x]
            .and_then(|p| through.iter().copied().find(|&i| holds(&paths[i], singles[i], p)))
            .unwrap_or(through[0]);
        for i in through {
            if i == owner {
                continue;
            }
            debug_assert_eq!(top(&paths[i], singles[i]), x);
            let first = paths[i].remove(0);
            singles[i] = first.to;
        }
    }
    let cover = paths
        .into_iter()
        .zip(singles)
        .map(|(steps, single)| {
            if steps.is_empty() {
                Ok(TemporalPath::single(single))
            } else {
                TemporalPath::from_steps(steps)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PathCover::new(CoverMode::TemporallyDisjoint, cover))
}
