use std::collections::{BTreeMap, HashMap};

use super::decomposition::{build_nice_decomposition, NiceTreeDecomposition, NodeKind};
use super::state::{gap_ok, spans_meet, DpState, End, Record, Visit};
use crate::digraph::{TemporalDigraph, Time, Vertex};
use crate::error::{Error, Result};
use crate::path::{CoverMode, PathCover, TemporalPath};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DpConfig {
    /// Table entries allowed at a single node.
    pub max_states: usize,
}

impl Default for DpConfig {
    fn default() -> Self {
        Self { max_states: 1_000_000 }
    }
}

#[derive(Clone, Debug)]
pub struct DpSolution {
    pub size: usize,
    pub cover: PathCover,
    /// Width of the decomposition used.
    pub width: usize,
    /// Largest table seen, over all rounds.
    pub max_table: usize,
}

enum Back {
    Leaf,
    Introduce { child: usize, map: Vec<Option<usize>> },
    Forget { child: usize, map: Vec<usize> },
    Join { left: usize, right: usize, map: Vec<(usize, usize)> },
}

struct Entry {
    state: DpState,
    cost: u32,
    back: Back,
}

#[derive(Default)]
struct Table {
    index: HashMap<DpState, usize>,
    entries: Vec<Entry>,
}

impl Table {
    fn offer(&mut self, state: DpState, cost: u32, back: Back) {
        match self.index.get(&state) {
            Some(&i) => {
                if cost < self.entries[i].cost {
                    self.entries[i].cost = cost;
                    self.entries[i].back = back;
                }
            }
            None => {
                self.index.insert(state.clone(), self.entries.len());
                self.entries.push(Entry { state, cost, back });
            }
        }
    }
}

/// Sorts records and permutes the origin tags alongside.
fn canonical<T: Clone>(mut tagged: Vec<(Record, T)>) -> (DpState, Vec<T>) {
    tagged.sort_by(|a, b| a.0.cmp(&b.0));
    tagged.into_iter().unzip()
}

struct Params<'a> {
    d: &'a TemporalDigraph,
    disjoint: bool,
    /// Largest total cost explored in this round.
    budget: u32,
    /// Largest number of records in a state.
    max_records: usize,
    max_states: usize,
    in_labels: Vec<Vec<Time>>,
    out_labels: Vec<Vec<Time>>,
}

impl Params<'_> {
    fn visit_types(&self, x: Vertex) -> Vec<Visit> {
        let ins = std::iter::once(None).chain(self.in_labels[x].iter().map(|&t| Some(End::pending(t))));
        let mut out = Vec::new();
        for i in ins {
            for o in std::iter::once(None).chain(self.out_labels[x].iter().map(|&t| Some(End::pending(t)))) {
                if let (Some(a), Some(b)) = (i, o) {
                    if a.time >= b.time {
                        continue;
                    }
                }
                out.push(Visit { v: x, inn: i, out: o });
            }
        }
        out
    }

    fn resource(&self, bag: usize) -> Error {
        let pairs = bag * bag.saturating_sub(1) / 2;
        Error::Resource(format!(
            "more than {} states at one node (bag size {bag}, p = C({bag},2)*t_max = {})",
            self.max_states,
            pairs * self.d.t_max() as usize
        ))
    }
}

fn introduce(p: &Params, x: Vertex, child: &Table, bag: usize) -> Result<Table> {
    let types = p.visit_types(x);
    let mut out = Table::default();
    for (ci, e) in child.entries.iter().enumerate() {
        // options per existing record: stay out, or take a visit at a position
        let options: Vec<Vec<(usize, Visit)>> = e
            .state
            .iter()
            .map(|r| {
                let mut opts = Vec::new();
                for pos in 0..=r.len() {
                    for &vx in &types {
                        let before = pos == 0 || gap_ok(p.d, &r[pos - 1], &vx);
                        let after = pos == r.len() || gap_ok(p.d, &vx, &r[pos]);
                        if before && after {
                            opts.push((pos, vx));
                        }
                    }
                }
                opts
            })
            .collect();
        let mut chosen: Vec<Option<(usize, Visit)>> = Vec::with_capacity(options.len());
        let mut visits: Vec<Visit> = Vec::new();
        extend_existing(p, e, ci, &options, &types, &mut chosen, &mut visits, &mut out)?;
        if out.entries.len() > p.max_states {
            return Err(p.resource(bag));
        }
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn extend_existing(
    p: &Params,
    e: &Entry,
    ci: usize,
    options: &[Vec<(usize, Visit)>],
    types: &[Visit],
    chosen: &mut Vec<Option<(usize, Visit)>>,
    visits: &mut Vec<Visit>,
    out: &mut Table,
) -> Result<()> {
    let i = chosen.len();
    if i == options.len() {
        let mut fresh = Vec::new();
        add_fresh(p, e, ci, types, 0, chosen, visits, &mut fresh, out);
        return Ok(());
    }
    chosen.push(None);
    extend_existing(p, e, ci, options, types, chosen, visits, out)?;
    chosen.pop();
    for &(pos, vx) in &options[i] {
        if p.disjoint && visits.iter().any(|w| spans_meet(w.span(), vx.span())) {
            continue;
        }
        visits.push(vx);
        chosen.push(Some((pos, vx)));
        extend_existing(p, e, ci, options, types, chosen, visits, out)?;
        chosen.pop();
        visits.pop();
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn add_fresh(
    p: &Params,
    e: &Entry,
    ci: usize,
    types: &[Visit],
    from: usize,
    chosen: &[Option<(usize, Visit)>],
    visits: &mut Vec<Visit>,
    fresh: &mut Vec<Visit>,
    out: &mut Table,
) {
    finish_introduce(p.disjoint, e, ci, chosen, visits, fresh, out);
    if e.cost + fresh.len() as u32 + 1 > p.budget || e.state.len() + fresh.len() + 1 > p.max_records {
        return;
    }
    for (k, &vx) in types.iter().enumerate().skip(from) {
        if p.disjoint && visits.iter().any(|w| spans_meet(w.span(), vx.span())) {
            continue;
        }
        visits.push(vx);
        fresh.push(vx);
        add_fresh(p, e, ci, types, k, chosen, visits, fresh, out);
        fresh.pop();
        visits.pop();
    }
}

fn finish_introduce(
    disjoint: bool,
    e: &Entry,
    ci: usize,
    chosen: &[Option<(usize, Visit)>],
    visits: &[Visit],
    fresh: &[Visit],
    out: &mut Table,
) {
    if visits.is_empty() {
        return;
    }
    // Without disjointness a path that ends at x while another path also
    // covers x can drop x, so shared vertices are interior to every path
    // through them. This also keeps the all-time visit of a lone vertex
    // exclusive. Disjoint mode gets the latter from the span check.
    if !disjoint && visits.len() > 1 && visits.iter().any(|v| v.inn.is_none() || v.out.is_none()) {
        return;
    }
    let mut tagged: Vec<(Record, Option<usize>)> = Vec::with_capacity(e.state.len() + fresh.len());
    for (j, r) in e.state.iter().enumerate() {
        let mut r = r.clone();
        if let Some((pos, vx)) = chosen[j] {
            r.insert(pos, vx);
        }
        tagged.push((r, Some(j)));
    }
    for &vx in fresh {
        tagged.push((vec![vx], None));
    }
    let (state, map) = canonical(tagged);
    out.offer(state, e.cost + fresh.len() as u32, Back::Introduce { child: ci, map });
}

fn forget(x: Vertex, child: &Table) -> Table {
    let mut out = Table::default();
    'entries: for (ci, e) in child.entries.iter().enumerate() {
        let mut tagged: Vec<(Record, usize)> = Vec::with_capacity(e.state.len());
        for (j, r) in e.state.iter().enumerate() {
            let mut r = r.clone();
            if let Some(pos) = r.iter().position(|v| v.v == x) {
                let vx = r[pos];
                if let Some(inn) = vx.inn.filter(|e| !e.done) {
                    match pos.checked_sub(1).map(|q| &mut r[q]) {
                        Some(prev) if prev.out == Some(inn) => prev.out = Some(End { time: inn.time, done: true }),
                        _ => continue 'entries,
                    }
                }
                if let Some(o) = vx.out.filter(|e| !e.done) {
                    match r.get_mut(pos + 1) {
                        Some(next) if next.inn == Some(o) => next.inn = Some(End { time: o.time, done: true }),
                        _ => continue 'entries,
                    }
                }
                r.remove(pos);
            }
            if !r.is_empty() {
                tagged.push((r, j));
            }
        }
        let (state, map) = canonical(tagged);
        out.offer(state, e.cost, Back::Forget { child: ci, map });
    }
    out
}

type Skeleton = Vec<(Vertex, Option<Time>, Option<Time>)>;

fn skeleton(r: &Record) -> Skeleton {
    r.iter().map(|v| (v.v, v.inn.map(|e| e.time), v.out.map(|e| e.time))).collect()
}

fn merge_ends(a: Option<End>, b: Option<End>) -> Option<Option<End>> {
    match (a, b) {
        (None, None) => Some(None),
        (Some(x), Some(y)) if x.time == y.time => {
            if x.done && y.done {
                None
            } else {
                Some(Some(End { time: x.time, done: x.done || y.done }))
            }
        }
        _ => None,
    }
}

fn merge_records(d: &TemporalDigraph, a: &Record, b: &Record) -> Option<Record> {
    let mut r = Vec::with_capacity(a.len());
    for (x, y) in a.iter().zip(b) {
        r.push(Visit { v: x.v, inn: merge_ends(x.inn, y.inn)?, out: merge_ends(x.out, y.out)? });
    }
    r.windows(2).all(|w| gap_ok(d, &w[0], &w[1])).then_some(r)
}

fn join(p: &Params, left: &Table, right: &Table, bag: usize) -> Result<Table> {
    let mut out = Table::default();
    let mut by_shape: HashMap<Vec<Skeleton>, Vec<usize>> = HashMap::new();
    for (ri, e) in right.entries.iter().enumerate() {
        let mut shape: Vec<Skeleton> = e.state.iter().map(skeleton).collect();
        shape.sort();
        by_shape.entry(shape).or_default().push(ri);
    }
    for (li, le) in left.entries.iter().enumerate() {
        let mut shape: Vec<Skeleton> = le.state.iter().map(skeleton).collect();
        shape.sort();
        let Some(partners) = by_shape.get(&shape) else { continue };
        for &ri in partners {
            let re = &right.entries[ri];
            let cost = le.cost + re.cost - le.state.len() as u32;
            if cost > p.budget {
                continue;
            }
            let mut used = vec![false; re.state.len()];
            let mut pairs = Vec::with_capacity(le.state.len());
            match_records(p.d, &le.state, &re.state, &mut used, &mut pairs, &mut |pairs| {
                let tagged: Vec<(Record, (usize, usize))> =
                    pairs.iter().map(|(r, a, b)| (r.clone(), (*a, *b))).collect();
                let (state, map) = canonical(tagged);
                out.offer(state, cost, Back::Join { left: li, right: ri, map });
            });
            if out.entries.len() > p.max_states {
                return Err(p.resource(bag));
            }
        }
    }
    Ok(out)
}

/// A merged record with the left and right record indices it came from.
type Matched = (Record, usize, usize);

/// Pairs every left record with an unused right record of the same
/// skeleton, trying each distinct right record once per position.
fn match_records(
    d: &TemporalDigraph,
    left: &DpState,
    right: &DpState,
    used: &mut [bool],
    pairs: &mut Vec<Matched>,
    emit: &mut dyn FnMut(&[Matched]),
) {
    let i = pairs.len();
    if i == left.len() {
        emit(pairs);
        return;
    }
    let shape = skeleton(&left[i]);
    let mut tried: Vec<&Record> = Vec::new();
    for j in 0..right.len() {
        if used[j] || tried.contains(&&right[j]) || skeleton(&right[j]) != shape {
            continue;
        }
        tried.push(&right[j]);
        if let Some(m) = merge_records(d, &left[i], &right[j]) {
            used[j] = true;
            pairs.push((m, i, j));
            match_records(d, left, right, used, pairs, emit);
            pairs.pop();
            used[j] = false;
        }
    }
}

fn leaf() -> Table {
    let mut t = Table::default();
    t.offer(Vec::new(), 0, Back::Leaf);
    t
}

/// Runs the DP once with a cost ceiling; returns the tables when the root
/// is reachable.
fn run(p: &Params, td: &NiceTreeDecomposition, max_table: &mut usize) -> Result<Option<Vec<Table>>> {
    let mut tables: Vec<Option<Table>> = (0..td.nodes().len()).map(|_| None).collect();
    for i in td.post_order() {
        let node = td.node(i);
        let bag = node.bag.len();
        let t = match node.kind {
            NodeKind::Leaf => leaf(),
            NodeKind::Introduce(x) => introduce(p, x, tables[node.children[0]].as_ref().unwrap(), bag)?,
            NodeKind::Forget(x) => forget(x, tables[node.children[0]].as_ref().unwrap()),
            NodeKind::Join => join(
                p,
                tables[node.children[0]].as_ref().unwrap(),
                tables[node.children[1]].as_ref().unwrap(),
                bag,
            )?,
        };
        *max_table = (*max_table).max(t.entries.len());
        if t.entries.is_empty() {
            return Ok(None);
        }
        tables[i] = Some(t);
    }
    Ok(Some(tables.into_iter().map(|t| t.unwrap_or_default()).collect()))
}

fn reconstruct(d: &TemporalDigraph, td: &NiceTreeDecomposition, tables: &[Table]) -> Result<Vec<TemporalPath>> {
    let root_table = &tables[td.root()];
    let root_entry = root_table.index[&Vec::new()];
    let mut next_id = 0usize;
    let mut visits: Vec<BTreeMap<Vertex, Visit>> = Vec::new();
    let mut stack: Vec<(usize, usize, Vec<usize>)> = vec![(td.root(), root_entry, Vec::new())];
    while let Some((node, ei, ids)) = stack.pop() {
        let n = td.node(node);
        let entry = &tables[node].entries[ei];
        match (&n.kind, &entry.back) {
            (NodeKind::Leaf, Back::Leaf) => {}
            (NodeKind::Introduce(x), Back::Introduce { child, map }) => {
                let child_len = tables[n.children[0]].entries[*child].state.len();
                let mut child_ids = vec![usize::MAX; child_len];
                for (j, r) in entry.state.iter().enumerate() {
                    if let Some(c) = map[j] {
                        child_ids[c] = ids[j];
                    }
                    if let Some(vx) = r.iter().find(|v| v.v == *x) {
                        visits[ids[j]].insert(*x, *vx);
                    }
                }
                stack.push((n.children[0], *child, child_ids));
            }
            (NodeKind::Forget(_), Back::Forget { child, map }) => {
                let child_len = tables[n.children[0]].entries[*child].state.len();
                let mut child_ids = vec![usize::MAX; child_len];
                for (j, &c) in map.iter().enumerate() {
                    child_ids[c] = ids[j];
                }
                for id in child_ids.iter_mut().filter(|id| **id == usize::MAX) {
                    *id = next_id;
                    next_id += 1;
                    visits.push(BTreeMap::new());
                }
                stack.push((n.children[0], *child, child_ids));
            }
            (NodeKind::Join, Back::Join { left, right, map }) => {
                let mut l = vec![usize::MAX; map.len()];
                let mut r = vec![usize::MAX; map.len()];
                for (j, &(a, b)) in map.iter().enumerate() {
                    l[a] = ids[j];
                    r[b] = ids[j];
                }
                stack.push((n.children[0], *left, l));
                stack.push((n.children[1], *right, r));
            }
            _ => unreachable!("back pointer does not match node kind"),
        }
    }
    visits
        .into_iter()
        .map(|vs| {
            let mut vs: Vec<Visit> = vs.into_values().collect();
            vs.sort_by_key(|v| v.key());
            let vertices: Vec<Vertex> = vs.iter().map(|v| v.v).collect();
            let times: Vec<Time> = vs[..vs.len() - 1].iter().map(|v| v.out.expect("inner visit leaves").time).collect();
            let path = TemporalPath::from_sequence(&vertices, &times)?;
            debug_assert!(crate::path::validate_path(d, &path).unwrap_or(false));
            Ok(path)
        })
        .collect()
}

fn solve(d: &TemporalDigraph, disjoint: bool, max_records: usize, cfg: &DpConfig) -> Result<DpSolution> {
    let td = build_nice_decomposition(d);
    let mut in_labels = vec![Vec::new(); d.n()];
    let mut out_labels = vec![Vec::new(); d.n()];
    for a in d.arcs() {
        out_labels[a.tail].extend(&a.labels);
        in_labels[a.head].extend(&a.labels);
    }
    for ls in in_labels.iter_mut().chain(out_labels.iter_mut()) {
        ls.sort_unstable();
        ls.dedup();
    }
    let mut params = Params {
        d,
        disjoint,
        budget: 1,
        max_records,
        max_states: cfg.max_states,
        in_labels,
        out_labels,
    };
    let mut max_table = 0;
    // every source starts a path and every sink ends one
    let lower = (0..d.n())
        .filter(|&v| d.in_degree(v) == 0)
        .count()
        .max((0..d.n()).filter(|&v| d.out_degree(v) == 0).count())
        .max(1);
    for budget in lower as u32..=d.n() as u32 {
        params.budget = budget;
        if let Some(tables) = run(&params, &td, &mut max_table)? {
            let root = &tables[td.root()];
            if let Some(&i) = root.index.get(&Vec::new()) {
                let size = root.entries[i].cost as usize;
                let paths = reconstruct(d, &td, &tables)?;
                debug_assert_eq!(paths.len(), size);
                let mode = if disjoint { CoverMode::TemporallyDisjoint } else { CoverMode::Plain };
                return Ok(DpSolution { size, cover: PathCover::new(mode, paths), width: td.width(), max_table });
            }
        }
    }
    Err(Error::Domain(format!("no cover with at most {max_records} paths per bag state")))
}

/// Minimum temporally disjoint path cover by dynamic programming over a
/// nice tree decomposition.
pub fn tdpc_dp(d: &TemporalDigraph) -> Result<DpSolution> {
    tdpc_dp_with(d, &DpConfig::default())
}

pub fn tdpc_dp_with(d: &TemporalDigraph, cfg: &DpConfig) -> Result<DpSolution> {
    solve(d, true, usize::MAX, cfg)
}

/// Minimum temporal path cover; at most `k_bound` paths may meet any bag.
pub fn tpc_dp(d: &TemporalDigraph, k_bound: usize) -> Result<DpSolution> {
    tpc_dp_with(d, k_bound, &DpConfig::default())
}

pub fn tpc_dp_with(d: &TemporalDigraph, k_bound: usize, cfg: &DpConfig) -> Result<DpSolution> {
    if k_bound == 0 || k_bound > d.n() {
        return Err(Error::Domain(format!("k_bound must lie in 1..={}, got {k_bound}", d.n())));
    }
    solve(d, false, k_bound, cfg)
}
