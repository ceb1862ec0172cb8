//! Instance families: gap witnesses, reduction gadgets and seeded random
//! instances.

use rand::seq::{index::sample, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::digraph::{GraphClass, TemporalDigraph, Time, Vertex};
use crate::error::{Error, Result};

type ArcList = Vec<(Vertex, Vertex, Vec<Time>)>;

/// Transitive tournament on `u_0..u_{n-1}` with `u_i -> u_j @ n - j` for
/// `i < j`. Every pair is temporally connected but no temporal path has more
/// than two vertices.
pub fn transitive_tournament(n: usize) -> Result<TemporalDigraph> {
    if n < 2 {
        return Err(Error::Domain(format!("tournament needs n >= 2, got {n}")));
    }
    let arcs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j, vec![(n - j) as Time])));
    TemporalDigraph::from_arcs(n, arcs)
}

/// `k` sources `0..k` into a centre `k` at time 1, and the centre into `k`
/// sinks `k+1..=2k` at time 2.
pub fn star(k: usize) -> Result<TemporalDigraph> {
    if k == 0 {
        return Err(Error::Domain("star needs k >= 1".into()));
    }
    let c = k;
    let arcs = (0..k).flat_map(|i| [(i, c, vec![1]), (c, k + 1 + i, vec![2])]);
    TemporalDigraph::from_arcs(2 * k + 1, arcs)
}

/// Layout of the matching gadget.
pub mod dm {
    /// Element vertices: `x_e = e`, `y_e = q + e`, `z_e = 2q + e`.
    pub fn element(q: usize, coord: usize, e: usize) -> usize {
        coord * q + e
    }

    /// Vertex `a_level^r` (both 1-based) of triple `i`.
    pub fn triple_vertex(q: usize, i: usize, r: usize, level: usize) -> usize {
        3 * q + 9 * i + 3 * (r - 1) + (level - 1)
    }
}

/// The reduction graph of a 3-dimensional matching instance with elements
/// `0..q` in each coordinate. Has `9p + 3q` vertices and only labels 1 and 2.
pub fn gadget_3dm(triples: &[(usize, usize, usize)], q: usize) -> Result<TemporalDigraph> {
    if q == 0 {
        return Err(Error::Domain("q must be positive".into()));
    }
    for (i, t) in triples.iter().enumerate() {
        if t.0 >= q || t.1 >= q || t.2 >= q {
            return Err(Error::Malformed(format!("triple {t:?} has a coordinate outside 0..{q}")));
        }
        if triples[..i].contains(t) {
            return Err(Error::Malformed(format!("triple {t:?} listed twice")));
        }
    }
    let mut arcs: ArcList = Vec::new();
    for (i, &(x, y, z)) in triples.iter().enumerate() {
        let a = |r, level| dm::triple_vertex(q, i, r, level);
        for r in 1..=3 {
            arcs.push((a(r, 1), a(r, 2), vec![1]));
            arcs.push((a(r, 2), a(r, 3), vec![2]));
        }
        arcs.push((a(1, 3), a(2, 3), vec![1]));
        arcs.push((a(2, 3), a(3, 3), vec![2]));
        arcs.push((a(1, 2), dm::element(q, 0, x), vec![2]));
        arcs.push((a(2, 2), dm::element(q, 1, y), vec![2]));
        arcs.push((a(3, 2), dm::element(q, 2, z), vec![2]));
    }
    TemporalDigraph::from_arcs(9 * triples.len() + 3 * q, arcs)
}

/// Vertex ids of the bin-packing tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinPackingLayout {
    pub centre: Vertex,
    /// Per bin: `(s, t, r leaves, u leaves)`.
    pub bins: Vec<(Vertex, Vertex, Vec<Vertex>, Vec<Vertex>)>,
    /// Per item: `(v, w)` leaf pairs.
    pub items: Vec<Vec<(Vertex, Vertex)>>,
    pub n: usize,
}

impl BinPackingLayout {
    pub fn new(sizes: &[u32], bins: u32, capacity: u32) -> Self {
        let mut next = 1;
        let mut take = || {
            next += 1;
            next - 1
        };
        let bins = (0..bins)
            .map(|_| {
                let s = take();
                let t = take();
                let r = (0..capacity).map(|_| take()).collect();
                let u = (0..capacity).map(|_| take()).collect();
                (s, t, r, u)
            })
            .collect::<Vec<_>>();
        let per_item = |x: u32| (x as usize - 1) * (bins.len() - 1);
        let items = sizes
            .iter()
            .map(|&x| (0..per_item(x)).map(|_| (take(), take())).collect())
            .collect();
        Self { centre: 0, bins, items, n: next }
    }
}

/// Labels `from, from + 2, ..., to`.
fn every_other(from: Time, to: Time) -> impl Iterator<Item = Time> {
    (from..=to).step_by(2)
}

/// Layered oriented tree for unary bin packing with item sizes `sizes`,
/// `bins` bins of capacity `capacity`. It has a temporally disjoint path
/// cover with `bins * (bins * capacity - n) + n` paths iff the items pack.
pub fn gadget_binpacking(sizes: &[u32], bins: u32, capacity: u32) -> Result<TemporalDigraph> {
    if sizes.is_empty() || bins == 0 || capacity == 0 || sizes.contains(&0) {
        return Err(Error::Domain("sizes, bin count and capacity must be positive".into()));
    }
    let total: u64 = sizes.iter().map(|&x| x as u64).sum();
    if total != bins as u64 * capacity as u64 {
        return Err(Error::Domain(format!(
            "item sizes sum to {total}, expected bins * capacity = {}",
            bins as u64 * capacity as u64
        )));
    }
    let layout = BinPackingLayout::new(sizes, bins, capacity);
    let c = layout.centre;
    let b = bins as Time;
    let mut arcs: ArcList = Vec::new();
    let mut offset: Time = 0;
    for (i, &x) in sizes.iter().enumerate() {
        let x = x as Time;
        let mut first_out = Vec::new();
        let mut last_in = Vec::new();
        for (j, (s, t, rs, us)) in layout.bins.iter().enumerate() {
            let j = j as Time + 1;
            let base = 2 * (j - 1) * x + offset;
            let r_s: Vec<Time> = every_other(base + 1, base + 2 * x - 1).collect();
            let s_c: Vec<Time> = every_other(base + 2, base + 2 * x).collect();
            let c_t: Vec<Time> = every_other(base + 3, base + 2 * x + 1).collect();
            let t_u: Vec<Time> = every_other(base + 4, base + 2 * x + 2).collect();
            for &r in rs {
                arcs.push((r, *s, r_s.clone()));
            }
            for &u in us {
                arcs.push((*t, u, t_u.clone()));
            }
            first_out.extend(c_t.iter().take(x as usize - 1));
            last_in.extend(s_c.iter().rev().take(x as usize - 1));
            arcs.push((*s, c, s_c));
            arcs.push((c, *t, c_t));
        }
        for &(v, w) in &layout.items[i] {
            arcs.push((v, c, first_out.clone()));
            arcs.push((c, w, last_in.clone()));
        }
        offset += 2 * b * x + 4;
    }
    TemporalDigraph::from_arcs(layout.n, arcs)
}

fn random_labels(rng: &mut ChaCha8Rng, max_per_arc: usize, t_max: Time) -> Vec<Time> {
    let count = rng.gen_range(1..=max_per_arc.min(t_max as usize));
    let mut ls: Vec<Time> = sample(rng, t_max as usize, count).into_iter().map(|i| i as Time + 1).collect();
    ls.sort_unstable();
    ls
}

/// Uniform labelled tree on `0..n` from a random Prüfer sequence.
fn random_tree_edges(rng: &mut ChaCha8Rng, n: usize) -> Vec<(Vertex, Vertex)> {
    if n < 2 {
        return Vec::new();
    }
    if n == 2 {
        return vec![(0, 1)];
    }
    let seq: Vec<Vertex> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &v in &seq {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &v in &seq {
        let leaf = (0..n).find(|&u| degree[u] == 1).unwrap();
        edges.push((leaf, v));
        degree[leaf] -= 1;
        degree[v] -= 1;
    }
    let rest: Vec<Vertex> = (0..n).filter(|&u| degree[u] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

fn check_params(n: usize, max_per_arc: usize, t_max: Time) -> Result<()> {
    if n == 0 || max_per_arc == 0 || t_max == 0 {
        return Err(Error::Domain("n, labels per arc and t_max must be positive".into()));
    }
    Ok(())
}

/// Seeded random instance of the requested class, with at most
/// `max_per_arc` distinct labels per arc drawn from `1..=t_max`.
///
/// Trees come from Prüfer sequences. Rooted trees are oriented away from a
/// random root, lines and general trees get random orientations. DAGs orient
/// a random graph along a random order; general digraphs add a few reversed
/// arcs on top so that directed cycles appear.
pub fn random_instance(
    class: GraphClass,
    n: usize,
    max_per_arc: usize,
    t_max: Time,
    seed: u64,
) -> Result<TemporalDigraph> {
    check_params(n, max_per_arc, t_max)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<(Vertex, Vertex)> = match class {
        GraphClass::OrientedTree => random_tree_edges(&mut rng, n)
            .into_iter()
            .map(|(a, b)| if rng.gen_bool(0.5) { (a, b) } else { (b, a) })
            .collect(),
        GraphClass::RootedDirectedTree => {
            let tree = random_tree_edges(&mut rng, n);
            let root = rng.gen_range(0..n);
            orient_from_root(n, &tree, root)
        }
        GraphClass::OrientedLine => {
            let mut order: Vec<Vertex> = (0..n).collect();
            order.shuffle(&mut rng);
            order
                .windows(2)
                .map(|w| if rng.gen_bool(0.5) { (w[0], w[1]) } else { (w[1], w[0]) })
                .collect()
        }
        GraphClass::Dag | GraphClass::General => {
            let mut order: Vec<Vertex> = (0..n).collect();
            order.shuffle(&mut rng);
            let p = (2.5 / n as f64).min(0.6);
            let mut e = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if rng.gen_bool(p) {
                        e.push((order[i], order[j]));
                    }
                }
            }
            if class == GraphClass::General {
                let extra: Vec<_> = e.iter().filter(|_| rng.gen_bool(0.3)).map(|&(a, b)| (b, a)).collect();
                e.extend(extra);
            }
            e
        }
    };
    let arcs: ArcList = edges
        .into_iter()
        .map(|(a, b)| (a, b, random_labels(&mut rng, max_per_arc, t_max)))
        .collect();
    TemporalDigraph::from_arcs(n, arcs)
}

fn orient_from_root(n: usize, tree: &[(Vertex, Vertex)], root: Vertex) -> Vec<(Vertex, Vertex)> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in tree {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; n];
    seen[root] = true;
    let mut stack = vec![root];
    let mut out = Vec::with_capacity(tree.len());
    while let Some(u) = stack.pop() {
        for &w in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                out.push((u, w));
                stack.push(w);
            }
        }
    }
    out
}

/// Seeded random digraph whose underlying graph is a partial `width`-tree,
/// so its treewidth is at most `width`. Each edge of a random `width`-tree
/// survives with probability `keep`, gets a random direction, and with
/// probability `both` also the opposite arc.
pub fn random_partial_ktree(
    n: usize,
    width: usize,
    max_per_arc: usize,
    t_max: Time,
    seed: u64,
    keep: f64,
    both: f64,
) -> Result<TemporalDigraph> {
    check_params(n, max_per_arc, t_max)?;
    if width == 0 {
        return Err(Error::Domain("width must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<Vertex> = (0..n).collect();
    perm.shuffle(&mut rng);
    let mut edges = Vec::new();
    let mut cliques: Vec<Vec<Vertex>> = Vec::new();
    let head = width.min(n);
    for i in 0..head {
        for j in 0..i {
            edges.push((perm[j], perm[i]));
        }
    }
    if n > width {
        cliques.push(perm[..width].to_vec());
    }
    for &v in perm.iter().skip(head) {
        let base = cliques[rng.gen_range(0..cliques.len())].clone();
        for &u in &base {
            edges.push((u, v));
        }
        for drop in 0..base.len() {
            let mut c = base.clone();
            c[drop] = v;
            cliques.push(c);
        }
    }
    let mut arcs: ArcList = Vec::new();
    for (a, b) in edges {
        if !rng.gen_bool(keep) {
            continue;
        }
        let (a, b) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
        arcs.push((a, b, random_labels(&mut rng, max_per_arc, t_max)));
        if rng.gen_bool(both) {
            arcs.push((b, a, random_labels(&mut rng, max_per_arc, t_max)));
        }
    }
    TemporalDigraph::from_arcs(n, arcs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tournament_four_labels() {
        let t = transitive_tournament(4).unwrap();
        assert_eq!(t.labels(0, 1), Some(&[3][..]));
        assert_eq!(t.labels(1, 2), Some(&[2][..]));
        assert_eq!(t.labels(2, 3), Some(&[1][..]));
        assert_eq!(t.labels(0, 2), Some(&[2][..]));
        assert_eq!(t.labels(0, 3), Some(&[1][..]));
        assert_eq!(t.labels(1, 3), Some(&[1][..]));
        assert_eq!(t.classify(), GraphClass::Dag);
        assert!(transitive_tournament(1).is_err());
    }

    #[test]
    fn star_shape() {
        let s = star(3).unwrap();
        assert_eq!(s.n(), 7);
        assert_eq!(s.classify(), GraphClass::OrientedTree);
        assert_eq!(star(1).unwrap().classify(), GraphClass::OrientedLine);
    }

    #[test]
    fn dm_counts() {
        let g = gadget_3dm(&[(0, 0, 0), (1, 1, 1)], 2).unwrap();
        assert_eq!(g.n(), 9 * 2 + 3 * 2);
        assert_eq!(g.arc_count(), 2 * 11);
        assert_eq!(g.t_max(), 2);
        assert!(gadget_3dm(&[(0, 2, 0)], 2).is_err());
        assert!(gadget_3dm(&[(0, 0, 0), (0, 0, 0)], 1).is_err());
    }

    #[test]
    fn binpacking_layer_matches_figure() {
        let g = gadget_binpacking(&[3, 3, 3, 3], 3, 4).unwrap();
        let lay = BinPackingLayout::new(&[3, 3, 3, 3], 3, 4);
        let c = lay.centre;
        let (s1, t1, r1, u1) = &lay.bins[0];
        let (s2, t2, _, _) = &lay.bins[1];
        let (s3, t3, _, _) = &lay.bins[2];
        let first = |ls: &[Time]| ls.iter().copied().filter(|&t| t <= 22).collect::<Vec<_>>();
        assert_eq!(first(g.labels(*s1, c).unwrap()), vec![2, 4, 6]);
        assert_eq!(first(g.labels(*s2, c).unwrap()), vec![8, 10, 12]);
        assert_eq!(first(g.labels(*s3, c).unwrap()), vec![14, 16, 18]);
        assert_eq!(first(g.labels(c, *t1).unwrap()), vec![3, 5, 7]);
        assert_eq!(first(g.labels(c, *t2).unwrap()), vec![9, 11, 13]);
        assert_eq!(first(g.labels(c, *t3).unwrap()), vec![15, 17, 19]);
        assert_eq!(first(g.labels(r1[0], *s1).unwrap()), vec![1, 3, 5]);
        assert_eq!(first(g.labels(*t1, u1[0]).unwrap()), vec![4, 6, 8]);
        let (v, w) = lay.items[0][0];
        assert_eq!(g.labels(v, c).unwrap(), &[3, 5, 9, 11, 15, 17]);
        assert_eq!(g.labels(c, w).unwrap(), &[4, 6, 10, 12, 16, 18]);
        // second layer starts after 2*b*x + 4 = 22
        assert_eq!(g.labels(*s1, c).unwrap()[3], 24);
        assert_eq!(g.n(), 2 * 3 * (12 - 4 + 1) + 2 * 4 + 1);
        assert!(g.is_oriented_tree());
    }

    #[test]
    fn binpacking_rejects_bad_sums() {
        assert!(gadget_binpacking(&[3], 3, 4).is_err());
        assert!(gadget_binpacking(&[1, 0, 1], 2, 1).is_err());
    }

    #[test]
    fn random_classes_and_determinism() {
        for seed in 0..40 {
            let t = random_instance(GraphClass::OrientedTree, 8, 2, 4, seed).unwrap();
            assert!(t.classify().is_oriented_tree());
            let r = random_instance(GraphClass::RootedDirectedTree, 9, 3, 5, seed).unwrap();
            assert!(r.is_rooted_tree());
            let l = random_instance(GraphClass::OrientedLine, 7, 3, 5, seed).unwrap();
            assert_eq!(l.classify(), GraphClass::OrientedLine);
            let d = random_instance(GraphClass::Dag, 8, 2, 3, seed).unwrap();
            assert!(d.is_dag());
            assert!(t.arcs().iter().all(|a| a.labels.len() <= 2 && a.labels.iter().all(|&x| x <= 4)));
        }
        assert_eq!(
            random_instance(GraphClass::OrientedTree, 8, 2, 4, 7).unwrap(),
            random_instance(GraphClass::OrientedTree, 8, 2, 4, 7).unwrap()
        );
        assert!(random_instance(GraphClass::Dag, 0, 1, 1, 0).is_err());
    }
}
