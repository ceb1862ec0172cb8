use std::collections::VecDeque;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::{find_antihole, find_hole, StaticGraph};
use crate::error::{Error, Result};

/// Cliques covering every vertex; serialized as a list of id arrays.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CliqueCover {
    pub cliques: Vec<Vec<usize>>,
}

impl CliqueCover {
    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    pub fn is_valid_for(&self, g: &StaticGraph) -> bool {
        let mut covered = vec![false; g.n()];
        for c in &self.cliques {
            if !g.is_clique(c) {
                return false;
            }
            for &v in c {
                covered[v] = true;
            }
        }
        covered.into_iter().all(|c| c)
    }
}

/// Minimum clique cover. Cliques are sorted internally and listed by their
/// smallest vertex.
pub fn min_clique_cover_wc(g: &StaticGraph) -> Result<CliqueCover> {
    Ok(solve(g)?.0)
}

/// Maximum independent set, sorted.
pub fn max_independent_set_wc(g: &StaticGraph) -> Result<Vec<usize>> {
    Ok(solve(g)?.1)
}

struct Contraction {
    kept: usize,
    merged: usize,
    kept_nbrs: FixedBitSet,
    merged_nbrs: FixedBitSet,
}

/// Colours the complement by repeatedly merging two-pairs until it is a
/// clique. Each merge keeps both the clique number and the chromatic number,
/// so the colour classes are a minimum clique cover of `g`, and unwinding the
/// merges turns the final clique into a maximum independent set of `g`.
pub(crate) fn solve(g: &StaticGraph) -> Result<(CliqueCover, Vec<usize>)> {
    let n = g.n();
    let comp = g.complement();
    let mut h: Vec<FixedBitSet> = (0..n).map(|v| comp.neighbor_set(v).clone()).collect();
    let mut active = FixedBitSet::with_capacity(n);
    active.insert_range(..);
    let mut groups: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut history = Vec::new();

    while let Some((x, y)) = next_pair(&h, &active) {
        history.push(Contraction {
            kept: x,
            merged: y,
            kept_nbrs: h[x].clone(),
            merged_nbrs: h[y].clone(),
        });
        let ny = h[y].clone();
        for z in ny.ones() {
            h[z].set(y, false);
            h[z].insert(x);
        }
        h[x].union_with(&ny);
        h[x].set(x, false);
        h[y].clear();
        active.set(y, false);
        let moved = std::mem::take(&mut groups[y]);
        groups[x].extend(moved);
    }

    let reps: Vec<usize> = active.ones().collect();
    let is_clique = reps.iter().all(|&u| reps.iter().all(|&v| u == v || h[u].contains(v)));
    if !is_clique {
        let witness = find_hole(g)
            .map(|c| format!("hole {c:?}"))
            .or_else(|| find_antihole(g).map(|c| format!("antihole {c:?}")))
            .unwrap_or_else(|| "no two-pair left".to_string());
        return Err(Error::Domain(format!("graph is not weakly chordal: {witness}")));
    }

    let mut clique: Vec<usize> = reps.clone();
    for step in history.iter().rev() {
        let Some(pos) = clique.iter().position(|&v| v == step.kept) else { continue };
        let others = clique.iter().copied().filter(|&v| v != step.kept);
        if others.clone().all(|v| step.kept_nbrs.contains(v)) {
            continue;
        }
        debug_assert!(others.clone().all(|v| step.merged_nbrs.contains(v)));
        clique[pos] = step.merged;
    }
    clique.sort_unstable();

    let mut cliques: Vec<Vec<usize>> = reps
        .into_iter()
        .map(|r| {
            let mut c = groups[r].clone();
            c.sort_unstable();
            c
        })
        .collect();
    cliques.sort();
    if cliques.len() != clique.len() {
        return Err(Error::Domain(format!(
            "cover of size {} and independent set of size {} disagree",
            cliques.len(),
            clique.len()
        )));
    }
    Ok((CliqueCover { cliques }, clique))
}

/// First two-pair `(x, y)` with `x < y` among active vertices, in
/// lexicographic order.
fn next_pair(h: &[FixedBitSet], active: &FixedBitSet) -> Option<(usize, usize)> {
    active.ones().find_map(|x| {
        active
            .ones()
            .filter(|&y| y > x && !h[x].contains(y))
            .find(|&y| two_pair(h, active, x, y))
            .map(|y| (x, y))
    })
}

/// `x` and `y` are non-adjacent and every chordless path between them has
/// length two, i.e. they are separated once their common neighbours go.
fn two_pair(h: &[FixedBitSet], active: &FixedBitSet, x: usize, y: usize) -> bool {
    if h[x].contains(y) {
        return false;
    }
    let mut allowed = active.clone();
    let mut common = h[x].clone();
    common.intersect_with(&h[y]);
    allowed.difference_with(&common);
    let mut seen = FixedBitSet::with_capacity(h.len());
    seen.insert(x);
    let mut queue = VecDeque::from([x]);
    while let Some(u) = queue.pop_front() {
        for w in h[u].ones() {
            if allowed.contains(w) && !seen.contains(w) {
                if w == y {
                    return false;
                }
                seen.insert(w);
                queue.push_back(w);
            }
        }
    }
    true
}
