//! Table entries of the decomposition DP.
//!
//! A state lists, for every solution path that meets the current bag, the
//! bag vertices it visits in path order. Each visit records the times of the
//! arcs by which the path enters and leaves that vertex. An arc end is
//! `done` once the vertex on the other side has been forgotten and the link
//! checked; otherwise it is pending and the other side is either the next
//! visit in the same record (when the times agree) or a vertex not yet
//! introduced.

use crate::digraph::{TemporalDigraph, Time, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct End {
    pub time: Time,
    pub done: bool,
}

impl End {
    pub fn pending(time: Time) -> Self {
        Self { time, done: false }
    }
}

/// One visit of a path to a bag vertex. `inn` is `None` when the vertex
/// starts the path, `out` is `None` when it ends it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Visit {
    pub v: Vertex,
    pub inn: Option<End>,
    pub out: Option<End>,
}

impl Visit {
    /// Sort key along the path.
    pub fn key(&self) -> Time {
        self.inn.map_or(0, |e| e.time)
    }

    /// Occupation as a closed interval with 0 and `Time::MAX` standing for
    /// the unbounded ends.
    pub fn span(&self) -> (Time, Time) {
        (self.inn.map_or(0, |e| e.time), self.out.map_or(Time::MAX, |e| e.time))
    }

    pub fn same_shape(&self, other: &Visit) -> bool {
        self.v == other.v
            && self.inn.map(|e| e.time) == other.inn.map(|e| e.time)
            && self.out.map(|e| e.time) == other.out.map(|e| e.time)
    }
}

pub type Record = Vec<Visit>;

/// Sorted list of records; identical records may repeat.
pub type DpState = Vec<Record>;

/// Spans overlap.
pub fn spans_meet(a: (Time, Time), b: (Time, Time)) -> bool {
    !(a.1 < b.0 || b.1 < a.0)
}

/// The gap between consecutive visits `a` and `b` is sound: both ends
/// exist, times do not decrease, both ends are done (the stretch between
/// them is forgotten) or both pending (a direct arc when the times agree,
/// vertices still to come otherwise).
pub fn gap_ok(d: &TemporalDigraph, a: &Visit, b: &Visit) -> bool {
    let (Some(out), Some(inn)) = (a.out, b.inn) else { return false };
    match (out.done, inn.done) {
        (true, true) => out.time < inn.time,
        (false, false) => {
            out.time < inn.time || (out.time == inn.time && d.has_label(a.v, b.v, out.time))
        }
        _ => false,
    }
}

/// A record can still grow into a strict temporal path fragment: visits
/// distinct, times strictly increasing inside each visit, and every gap
/// sound. Direct links must use an existing arc label.
pub fn record_consistent(d: &TemporalDigraph, r: &Record) -> bool {
    if r.is_empty() {
        return false;
    }
    for (i, v) in r.iter().enumerate() {
        if r[..i].iter().any(|w| w.v == v.v) {
            return false;
        }
        if let (Some(a), Some(b)) = (v.inn, v.out) {
            if a.time >= b.time {
                return false;
            }
        }
        if v.inn.is_some_and(|e| e.time == 0) || v.out.is_some_and(|e| e.time == 0) {
            return false;
        }
    }
    r.windows(2).all(|w| gap_ok(d, &w[0], &w[1]))
}

/// Every record consistent and, in disjoint mode, no two visits of one
/// vertex overlap in time.
pub fn state_consistent(d: &TemporalDigraph, s: &DpState, disjoint: bool) -> bool {
    if !s.iter().all(|r| record_consistent(d, r)) {
        return false;
    }
    if disjoint {
        let visits: Vec<&Visit> = s.iter().flatten().collect();
        for (i, a) in visits.iter().enumerate() {
            for b in &visits[i + 1..] {
                if a.v == b.v && spans_meet(a.span(), b.span()) {
                    return false;
                }
            }
        }
    }
    true
}
