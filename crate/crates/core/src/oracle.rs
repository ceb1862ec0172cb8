//! Exact exponential baselines: path enumeration, minimum covers in both
//! modes, and maximum antichains.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::connectivity::connectivity_graph;
use crate::digraph::{TemporalDigraph, Time, Vertex};
use crate::error::{Error, Result};
use crate::path::{CoverMode, PathCover, Step, TemporalPath};
use crate::weakchord::{max_independent_set_exact, StaticGraph};

pub const MAX_N_ENV: &str = "TEMPOCOVER_ORACLE_MAX_N";

/// Hard ceiling imposed by the 64-bit vertex masks.
pub const HARD_MAX_N: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest vertex count accepted.
    pub max_n: usize,
    /// Largest number of enumerated temporal paths.
    pub max_paths: usize,
    /// Search nodes before giving up.
    pub node_budget: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { max_n: 12, max_paths: 200_000, node_budget: 500_000_000 }
    }
}

impl OracleConfig {
    /// Default settings, with `max_n` taken from `TEMPOCOVER_ORACLE_MAX_N`
    /// when it is set.
    pub fn from_env() -> Self {
        let mut c = Self::default();
        if let Some(n) = std::env::var(MAX_N_ENV).ok().and_then(|s| s.trim().parse().ok()) {
            c.max_n = n;
        }
        c
    }

    pub fn with_max_n(mut self, max_n: usize) -> Self {
        self.max_n = max_n;
        self
    }

    fn check(&self, d: &TemporalDigraph) -> Result<()> {
        let limit = self.max_n.min(HARD_MAX_N);
        if d.n() > limit {
            return Err(Error::Resource(format!(
                "oracle accepts at most {limit} vertices, instance has {}",
                d.n()
            )));
        }
        Ok(())
    }
}

/// Every strict temporal path of `d`, one per choice of labels, including
/// the single-vertex ones.
pub fn all_temporal_paths(d: &TemporalDigraph, cfg: &OracleConfig) -> Result<Vec<TemporalPath>> {
    cfg.check(d)?;
    let mut out = Vec::new();
    let mut steps = Vec::new();
    for v in 0..d.n() {
        out.push(TemporalPath::single(v));
        extend_all(d, v, 1u64 << v, 0, &mut steps, &mut out, cfg.max_paths)?;
    }
    Ok(out)
}

fn extend_all(
    d: &TemporalDigraph,
    at: Vertex,
    visited: u64,
    after: Time,
    steps: &mut Vec<Step>,
    out: &mut Vec<TemporalPath>,
    cap: usize,
) -> Result<()> {
    for a in d.out_arcs(at) {
        if visited >> a.head & 1 == 1 {
            continue;
        }
        for &t in a.labels.iter().filter(|&&t| t > after) {
            steps.push(Step { from: at, to: a.head, time: t });
            out.push(TemporalPath::from_steps(steps.clone()).expect("linked by construction"));
            if out.len() > cap {
                return Err(Error::Resource(format!("more than {cap} temporal paths")));
            }
            extend_all(d, a.head, visited | 1 << a.head, t, steps, out, cap)?;
            steps.pop();
        }
    }
    Ok(())
}

/// Temporal paths that cannot be extended at either end, plus every
/// single-vertex path.
pub fn enumerate_temporal_paths(d: &TemporalDigraph, cfg: &OracleConfig) -> Result<Vec<TemporalPath>> {
    let all = all_temporal_paths(d, cfg)?;
    let mut out: Vec<TemporalPath> = all
        .into_iter()
        .filter(|p| p.is_empty() || !extendable(d, p))
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

fn extendable(d: &TemporalDigraph, p: &TemporalPath) -> bool {
    let first = p.steps().first().map(|s| s.time);
    let last = p.steps().last().map(|s| s.time);
    let front = d.in_arcs(p.source()).any(|a| {
        !p.contains(a.tail) && a.labels.iter().any(|&t| first.is_none_or(|f| t < f))
    });
    let back = d.out_arcs(p.sink()).any(|a| {
        !p.contains(a.head) && a.labels.iter().any(|&t| last.is_none_or(|l| t > l))
    });
    front || back
}

fn vertex_mask(p: &TemporalPath) -> u64 {
    p.vertices().into_iter().fold(0, |m, v| m | 1 << v)
}

/// Leaves that are interchangeable: same single neighbour, same direction,
/// same labels. Each vertex maps to the bitmask of its class, or 0.
fn twin_classes(d: &TemporalDigraph) -> Vec<u64> {
    let n = d.n();
    let mut key: HashMap<(bool, Vertex, Vec<Time>), u64> = HashMap::new();
    for v in 0..n {
        let k = match (d.in_degree(v), d.out_degree(v)) {
            (1, 0) => {
                let a = d.in_arcs(v).next().unwrap();
                (true, a.tail, a.labels.clone())
            }
            (0, 1) => {
                let a = d.out_arcs(v).next().unwrap();
                (false, a.head, a.labels.clone())
            }
            _ => continue,
        };
        *key.entry(k).or_default() |= 1 << v;
    }
    let mut class = vec![0u64; n];
    for m in key.into_values() {
        for v in bits(m) {
            class[v] = m;
        }
    }
    class
}

fn bits(mut m: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

/// Shared pruning data for both modes.
struct Bounds {
    full: u64,
    sources: u64,
    sinks: u64,
    adj: Vec<u64>,
    twins: Vec<u64>,
}

impl Bounds {
    fn new(d: &TemporalDigraph) -> Self {
        let n = d.n();
        let cg = connectivity_graph(d);
        let adj = (0..n).map(|v| cg.graph().neighbors(v).fold(0u64, |m, w| m | 1 << w)).collect();
        let mask = |vs: Vec<Vertex>| vs.into_iter().fold(0u64, |m, v| m | 1 << v);
        Self {
            full: if n == 64 { u64::MAX } else { (1u64 << n) - 1 },
            sources: mask(d.sources()),
            sinks: mask(d.sinks()),
            adj,
            twins: twin_classes(d),
        }
    }

    /// Paths still needed to cover `uncovered`, given the longest path has
    /// `max_len` vertices.
    fn lower(&self, uncovered: u64, max_len: u32) -> u32 {
        let mut best = uncovered.count_ones().div_ceil(max_len.max(1));
        best = best.max((uncovered & self.sources).count_ones());
        best = best.max((uncovered & self.sinks).count_ones());
        // greedy antichain among uncovered vertices, sparsest first
        let mut rest = uncovered;
        let mut count = 0;
        while rest != 0 {
            let v = bits(rest).into_iter().min_by_key(|&v| (self.adj[v] & rest).count_ones()).unwrap();
            count += 1;
            rest &= !(self.adj[v] | 1 << v);
        }
        best.max(count)
    }

    /// A path covering `mask` respects the twin order: it never takes a twin
    /// while a smaller member of the same class is still uncovered and not
    /// on the path.
    fn twin_ok(&self, mask: u64, uncovered: u64) -> bool {
        bits(mask & uncovered).into_iter().all(|v| {
            let class = self.twins[v];
            let below = class & ((1u64 << v) - 1) & uncovered & !mask;
            below == 0
        })
    }
}

struct Budget {
    left: u64,
}

impl Budget {
    fn tick(&mut self) -> Result<()> {
        if self.left == 0 {
            return Err(Error::Resource("oracle search budget exhausted".into()));
        }
        self.left -= 1;
        Ok(())
    }
}

/// Minimum temporal path cover by set cover over inclusion-maximal paths.
pub fn exact_tpc(d: &TemporalDigraph, cfg: &OracleConfig) -> Result<PathCover> {
    cfg.check(d)?;
    let all = all_temporal_paths(d, cfg)?;
    let mut by_mask: HashMap<u64, TemporalPath> = HashMap::new();
    for p in all {
        by_mask.entry(vertex_mask(&p)).or_insert(p);
    }
    let masks: Vec<u64> = by_mask.keys().copied().collect();
    let mut cands: Vec<(u64, TemporalPath)> = by_mask
        .into_iter()
        .filter(|(m, _)| !masks.iter().any(|&o| o != *m && o & m == *m))
        .collect();
    cands.sort_by(|a, b| b.0.count_ones().cmp(&a.0.count_ones()).then(a.0.cmp(&b.0)));

    let bounds = Bounds::new(d);
    let max_len = cands.iter().map(|c| c.0.count_ones()).max().unwrap_or(1);
    let containing: Vec<Vec<usize>> = (0..d.n())
        .map(|v| (0..cands.len()).filter(|&i| cands[i].0 >> v & 1 == 1).collect())
        .collect();

    struct Search<'a> {
        cands: &'a [(u64, TemporalPath)],
        containing: &'a [Vec<usize>],
        bounds: &'a Bounds,
        max_len: u32,
        failed: HashMap<u64, u32>,
        budget: Budget,
        chosen: Vec<usize>,
    }

    impl Search<'_> {
        fn feasible(&mut self, covered: u64, k: u32) -> Result<bool> {
            let uncovered = self.bounds.full & !covered;
            if uncovered == 0 {
                return Ok(true);
            }
            if k == 0 || self.failed.get(&covered).is_some_and(|&f| f >= k) {
                return Ok(false);
            }
            self.budget.tick()?;
            if self.bounds.lower(uncovered, self.max_len) > k {
                self.failed.insert(covered, k);
                return Ok(false);
            }
            let x = bits(uncovered)
                .into_iter()
                .min_by_key(|&v| (self.containing[v].len(), v))
                .unwrap();
            for idx in 0..self.containing[x].len() {
                let c = self.containing[x][idx];
                let m = self.cands[c].0;
                if !self.bounds.twin_ok(m, uncovered) {
                    continue;
                }
                self.chosen.push(c);
                if self.feasible(covered | m, k - 1)? {
                    return Ok(true);
                }
                self.chosen.pop();
            }
            let e = self.failed.entry(covered).or_insert(0);
            *e = (*e).max(k);
            Ok(false)
        }
    }

    let mut s = Search {
        cands: &cands,
        containing: &containing,
        bounds: &bounds,
        max_len,
        failed: HashMap::new(),
        budget: Budget { left: cfg.node_budget },
        chosen: Vec::new(),
    };
    let mut k = bounds.lower(bounds.full, max_len);
    loop {
        if s.feasible(0, k)? {
            break;
        }
        k += 1;
    }
    let paths = s.chosen.iter().map(|&i| cands[i].1.clone()).collect();
    Ok(PathCover::new(CoverMode::Plain, paths))
}

/// Half-open encoding of an occupation interval: `lo` 0 is minus infinity,
/// `hi` `u32::MAX` is plus infinity.
fn occupation_spans(p: &TemporalPath) -> Vec<(Vertex, u32, u32)> {
    let vs = p.vertices();
    let ts = p.times();
    vs.iter()
        .enumerate()
        .map(|(i, &v)| {
            let lo = if i == 0 { 0 } else { ts[i - 1] };
            let hi = ts.get(i).copied().unwrap_or(u32::MAX);
            (v, lo, hi)
        })
        .collect()
}

/// Minimum temporally disjoint path cover. Every path, with every label
/// choice, is a candidate, since dropping an end of a path can create new
/// conflicts at its new end.
pub fn exact_tdpc(d: &TemporalDigraph, cfg: &OracleConfig) -> Result<PathCover> {
    cfg.check(d)?;
    let mut cands = all_temporal_paths(d, cfg)?;
    cands.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    let p = cands.len();
    let masks: Vec<u64> = cands.iter().map(vertex_mask).collect();
    let spans: Vec<Vec<(Vertex, u32, u32)>> = cands.iter().map(occupation_spans).collect();
    let mut compat = vec![FixedBitSet::with_capacity(p); p];
    for i in 0..p {
        for j in i + 1..p {
            let ok = masks[i] & masks[j] == 0
                || spans[i].iter().all(|&(v, lo, hi)| {
                    spans[j].iter().all(|&(w, lo2, hi2)| v != w || hi < lo2 || hi2 < lo)
                });
            if ok {
                compat[i].insert(j);
                compat[j].insert(i);
            }
        }
    }
    let containing: Vec<FixedBitSet> = (0..d.n())
        .map(|v| {
            let mut b = FixedBitSet::with_capacity(p);
            for i in (0..p).filter(|&i| masks[i] >> v & 1 == 1) {
                b.insert(i);
            }
            b
        })
        .collect();
    let bounds = Bounds::new(d);
    let max_len = masks.iter().map(|m| m.count_ones()).max().unwrap_or(1);

    struct Search<'a> {
        masks: &'a [u64],
        compat: &'a [FixedBitSet],
        containing: &'a [FixedBitSet],
        bounds: &'a Bounds,
        max_len: u32,
        budget: Budget,
        chosen: Vec<usize>,
        // the same set of chosen paths is reached in many orders
        failed: HashMap<(u64, FixedBitSet), u32>,
    }

    impl Search<'_> {
        fn feasible(&mut self, covered: u64, allowed: &FixedBitSet, k: u32) -> Result<bool> {
            let uncovered = self.bounds.full & !covered;
            if uncovered == 0 {
                return Ok(true);
            }
            if k == 0 {
                return Ok(false);
            }
            self.budget.tick()?;
            if self.bounds.lower(uncovered, self.max_len) > k {
                return Ok(false);
            }
            let key = (covered, allowed.clone());
            if self.failed.get(&key).is_some_and(|&f| f >= k) {
                return Ok(false);
            }
            let mut pick: Option<(usize, FixedBitSet)> = None;
            for v in bits(uncovered) {
                let mut opts = allowed.clone();
                opts.intersect_with(&self.containing[v]);
                let c = opts.count_ones(..);
                if c == 0 {
                    return Ok(false);
                }
                if pick.as_ref().is_none_or(|(_, o)| c < o.count_ones(..)) {
                    pick = Some((v, opts));
                }
            }
            let (_, opts) = pick.unwrap();
            for c in opts.ones() {
                let m = self.masks[c];
                if !self.bounds.twin_ok(m, uncovered) {
                    continue;
                }
                let mut next = allowed.clone();
                next.intersect_with(&self.compat[c]);
                self.chosen.push(c);
                if self.feasible(covered | m, &next, k - 1)? {
                    return Ok(true);
                }
                self.chosen.pop();
            }
            let e = self.failed.entry(key).or_insert(0);
            *e = (*e).max(k);
            Ok(false)
        }
    }

    let mut s = Search {
        masks: &masks,
        compat: &compat,
        containing: &containing,
        bounds: &bounds,
        max_len,
        budget: Budget { left: cfg.node_budget },
        chosen: Vec::new(),
        failed: HashMap::new(),
    };
    let mut all = FixedBitSet::with_capacity(p);
    all.insert_range(..);
    let mut k = bounds.lower(bounds.full, max_len);
    while !s.feasible(0, &all, k)? {
        k += 1;
    }
    let paths = s.chosen.iter().map(|&i| cands[i].clone()).collect();
    Ok(PathCover::new(CoverMode::TemporallyDisjoint, paths))
}

/// Maximum temporal antichain by exact independent set search on the
/// connectivity graph.
pub fn exact_antichain(d: &TemporalDigraph, cfg: &OracleConfig) -> Result<Vec<Vertex>> {
    cfg.check(d)?;
    let g: StaticGraph = connectivity_graph(d).into_graph();
    max_independent_set_exact(&g)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DilworthReport {
    pub tpc: usize,
    pub tdpc: usize,
    pub antichain: usize,
    pub dilworth_holds: bool,
    pub td_dilworth_holds: bool,
}

pub fn dilworth_report(d: &TemporalDigraph, cfg: &OracleConfig) -> Result<DilworthReport> {
    let tpc = exact_tpc(d, cfg)?.len();
    let tdpc = exact_tdpc(d, cfg)?.len();
    let antichain = exact_antichain(d, cfg)?.len();
    Ok(DilworthReport {
        tpc,
        tdpc,
        antichain,
        dilworth_holds: tpc == antichain,
        td_dilworth_holds: tdpc == antichain,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path::verify_cover;

    fn d(n: usize, arcs: &[(Vertex, Vertex, &[Time])]) -> TemporalDigraph {
        TemporalDigraph::from_arcs(n, arcs.iter().map(|&(u, v, l)| (u, v, l.to_vec()))).unwrap()
    }

    fn star(k: usize) -> TemporalDigraph {
        let c = k;
        let arcs: Vec<_> = (0..k)
            .flat_map(|i| [(i, c, vec![1]), (c, k + 1 + i, vec![2])])
            .collect();
        TemporalDigraph::from_arcs(2 * k + 1, arcs).unwrap()
    }

    #[test]
    fn single_arc_paths() {
        let g = d(2, &[(0, 1, &[1])]);
        let cfg = OracleConfig::default();
        let ps = enumerate_temporal_paths(&g, &cfg).unwrap();
        assert_eq!(ps.len(), 3);
        assert_eq!(all_temporal_paths(&g, &cfg).unwrap().len(), 3);
    }

    #[test]
    fn stars() {
        let cfg = OracleConfig::default();
        for k in 1..=4 {
            let s = star(k);
            let tpc = exact_tpc(&s, &cfg).unwrap();
            let tdpc = exact_tdpc(&s, &cfg).unwrap();
            assert!(verify_cover(&s, &tpc));
            assert!(verify_cover(&s, &tdpc));
            assert_eq!(tpc.len(), k);
            assert_eq!(tdpc.len(), 2 * k - 1);
            assert_eq!(exact_antichain(&s, &cfg).unwrap().len(), k);
        }
    }

    #[test]
    fn bound_is_enforced() {
        let cfg = OracleConfig::default().with_max_n(4);
        assert!(matches!(exact_tpc(&star(2), &cfg), Err(Error::Resource(_))));
    }

    #[test]
    fn twins_found() {
        let classes = twin_classes(&star(3));
        assert_eq!(classes[0], 0b111);
        assert_eq!(classes[4], 0b111_0000);
        assert_eq!(classes[3], 0);
    }
}
