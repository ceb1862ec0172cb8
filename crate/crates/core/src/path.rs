//! Strict temporal paths, occupation intervals, and path covers.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::digraph::{TemporalDigraph, Time, Vertex};
use crate::error::{Error, Result};

/// One traversal `from -> to` at `time`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step {
    pub from: Vertex,
    pub to: Vertex,
    pub time: Time,
}

/// A walk given by its steps, or a single vertex.
///
/// Construction only guarantees that consecutive steps are linked; whether
/// the walk is a strict temporal path of some digraph is answered by
/// [`validate_path`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TemporalPath {
    start: Vertex,
    steps: Vec<Step>,
}

impl TemporalPath {
    pub fn single(v: Vertex) -> Self {
        Self { start: v, steps: Vec::new() }
    }

    pub fn from_steps(steps: Vec<Step>) -> Result<Self> {
        let first = steps
            .first()
            .ok_or_else(|| Error::Malformed("a path needs at least one step or a vertex".into()))?;
        for w in steps.windows(2) {
            if w[0].to != w[1].from {
                return Err(Error::Malformed(format!(
                    "steps ({},{},{}) and ({},{},{}) are not linked",
                    w[0].from, w[0].to, w[0].time, w[1].from, w[1].to, w[1].time
                )));
            }
        }
        Ok(Self { start: first.from, steps })
    }

    /// Builds from `(from, to, time)` triples.
    pub fn from_triples<I: IntoIterator<Item = (Vertex, Vertex, Time)>>(triples: I) -> Result<Self> {
        Self::from_steps(triples.into_iter().map(|(from, to, time)| Step { from, to, time }).collect())
    }

    /// Builds from a vertex sequence and the times of the arcs between them.
    pub fn from_sequence(vertices: &[Vertex], times: &[Time]) -> Result<Self> {
        match vertices {
            [] => Err(Error::Malformed("empty vertex sequence".into())),
            [v] if times.is_empty() => Ok(Self::single(*v)),
            _ if times.len() + 1 != vertices.len() => Err(Error::Malformed(
                "a path with k vertices needs k-1 times".into(),
            )),
            _ => Self::from_steps(
                vertices
                    .windows(2)
                    .zip(times)
                    .map(|(w, &time)| Step { from: w[0], to: w[1], time })
                    .collect(),
            ),
        }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Number of arcs.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn source(&self) -> Vertex {
        self.start
    }

    pub fn sink(&self) -> Vertex {
        self.steps.last().map_or(self.start, |s| s.to)
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        std::iter::once(self.start).chain(self.steps.iter().map(|s| s.to)).collect()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.start == v || self.steps.iter().any(|s| s.to == v)
    }

    pub fn times(&self) -> Vec<Time> {
        self.steps.iter().map(|s| s.time).collect()
    }

    /// Distinct vertices and strictly increasing times, ignoring any digraph.
    pub fn is_well_formed(&self) -> bool {
        let vs = self.vertices();
        let distinct = vs.iter().collect::<HashSet<_>>().len() == vs.len();
        distinct && self.steps.windows(2).all(|w| w[0].time < w[1].time)
    }

    /// The sub-path between vertex positions `from..=to`.
    pub fn slice(&self, from: usize, to: usize) -> Self {
        assert!(from <= to && to <= self.steps.len());
        if from == to {
            return Self::single(self.vertices()[from]);
        }
        Self::from_steps(self.steps[from..to].to_vec()).expect("sub-walk is linked")
    }
}

impl fmt::Display for TemporalPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.start)?;
        for s in &self.steps {
            write!(f, " -{}-> {}", s.time, s.to)?;
        }
        Ok(())
    }
}

/// Serialized as `[[u,v,t], ...]`, or `[[v]]` for a single vertex.
impl Serialize for TemporalPath {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        if self.steps.is_empty() {
            let mut seq = ser.serialize_seq(Some(1))?;
            seq.serialize_element(&[self.start])?;
            return seq.end();
        }
        let mut seq = ser.serialize_seq(Some(self.steps.len()))?;
        for s in &self.steps {
            seq.serialize_element(&(s.from, s.to, s.time))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for TemporalPath {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw: Vec<Vec<u64>> = Vec::deserialize(de)?;
        let vertex = |x: u64| usize::try_from(x).map_err(D::Error::custom);
        let time = |x: u64| Time::try_from(x).map_err(D::Error::custom);
        match raw.as_slice() {
            [single] if single.len() == 1 => Ok(TemporalPath::single(vertex(single[0])?)),
            _ => {
                let mut steps = Vec::with_capacity(raw.len());
                for s in &raw {
                    if s.len() != 3 {
                        return Err(D::Error::custom("a step must be [u, v, t]"));
                    }
                    steps.push(Step { from: vertex(s[0])?, to: vertex(s[1])?, time: time(s[2])? });
                }
                TemporalPath::from_steps(steps).map_err(D::Error::custom)
            }
        }
    }
}

/// True iff every step uses an existing arc label, vertices are distinct and
/// times strictly increase.
pub fn validate_path(d: &TemporalDigraph, p: &TemporalPath) -> Result<bool> {
    if let Some(v) = p.vertices().into_iter().find(|&v| v >= d.n()) {
        return Err(Error::Malformed(format!("vertex {v} out of range for n = {}", d.n())));
    }
    Ok(p.is_well_formed() && p.steps.iter().all(|s| d.has_label(s.from, s.to, s.time)))
}

/// Closed integer interval with optional unbounded ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    /// `None` is minus infinity.
    pub lo: Option<Time>,
    /// `None` is plus infinity.
    pub hi: Option<Time>,
}

impl Interval {
    pub const ALL: Interval = Interval { lo: None, hi: None };

    pub fn overlaps(&self, other: &Interval) -> bool {
        let below = |hi: Option<Time>, lo: Option<Time>| matches!((hi, lo), (Some(h), Some(l)) if h < l);
        !(below(self.hi, other.lo) || below(other.hi, self.lo))
    }

    pub fn contains(&self, t: Time) -> bool {
        self.lo.is_none_or(|l| l <= t) && self.hi.is_none_or(|h| t <= h)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.lo {
            Some(l) => write!(f, "[{l}, ")?,
            None => write!(f, "(-inf, ")?,
        }
        match self.hi {
            Some(h) => write!(f, "{h}]"),
            None => write!(f, "+inf)"),
        }
    }
}

/// When each vertex of `p` is occupied, in path order.
///
/// Interior vertices hold between their arrival and departure times, the
/// source from minus infinity until its departure, the sink from its arrival
/// onwards, and a single-vertex path holds its vertex forever.
pub fn occupation(p: &TemporalPath) -> Result<Vec<(Vertex, Interval)>> {
    if !p.is_well_formed() {
        return Err(Error::Malformed(format!("not a temporal path: {p}")));
    }
    Ok(raw_occupation(p))
}

fn raw_occupation(p: &TemporalPath) -> Vec<(Vertex, Interval)> {
    let vs = p.vertices();
    let ts = p.times();
    vs.iter()
        .enumerate()
        .map(|(i, &v)| {
            let lo = if i == 0 { None } else { Some(ts[i - 1]) };
            let hi = ts.get(i).copied();
            (v, Interval { lo, hi })
        })
        .collect()
}

/// No shared vertex is occupied by both paths at a common time.
pub fn are_temporally_disjoint(p1: &TemporalPath, p2: &TemporalPath) -> bool {
    let o2 = raw_occupation(p2);
    raw_occupation(p1).iter().all(|(v, i1)| {
        o2.iter().filter(|(w, _)| w == v).all(|(_, i2)| !i1.overlaps(i2))
    })
}

/// Arc-level disjointness: whenever the paths share a vertex, no arc of one
/// path at that vertex carries the same time as an arc of the other path at
/// that vertex, and a path that merely rests at the vertex conflicts with
/// everything there.
///
/// This is implied by [`are_temporally_disjoint`] but is strictly weaker: a
/// path ending at `b` at time 1 and another leaving `b` at time 3 pass here.
pub fn arcs_temporally_disjoint(p1: &TemporalPath, p2: &TemporalPath) -> bool {
    let incident = |p: &TemporalPath, v: Vertex| -> Vec<Time> {
        p.steps.iter().filter(|s| s.from == v || s.to == v).map(|s| s.time).collect()
    };
    p1.vertices().into_iter().filter(|&v| p2.contains(v)).all(|v| {
        let a = incident(p1, v);
        let b = incident(p2, v);
        !a.is_empty() && !b.is_empty() && a.iter().all(|t| !b.contains(t))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverMode {
    Plain,
    TemporallyDisjoint,
}

impl CoverMode {
    pub fn as_str(self) -> &'static str {
        match self {
            CoverMode::Plain => "plain",
            CoverMode::TemporallyDisjoint => "temporally_disjoint",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathCover {
    pub mode: CoverMode,
    pub paths: Vec<TemporalPath>,
}

impl PathCover {
    pub fn new(mode: CoverMode, paths: Vec<TemporalPath>) -> Self {
        Self { mode, paths }
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Same paths, different mode flag.
    pub fn with_mode(mut self, mode: CoverMode) -> Self {
        self.mode = mode;
        self
    }

    /// Every pair of paths shares no vertex.
    pub fn is_vertex_disjoint(&self) -> bool {
        let mut seen = HashSet::new();
        self.paths.iter().flat_map(|p| p.vertices()).all(|v| seen.insert(v))
    }
}

/// All paths valid, every vertex covered, and pairwise disjoint in
/// temporally disjoint mode.
pub fn verify_cover(d: &TemporalDigraph, c: &PathCover) -> bool {
    let mut covered = vec![false; d.n()];
    for p in &c.paths {
        if !matches!(validate_path(d, p), Ok(true)) {
            return false;
        }
        for v in p.vertices() {
            covered[v] = true;
        }
    }
    if !covered.iter().all(|&c| c) {
        return false;
    }
    match c.mode {
        CoverMode::Plain => true,
        CoverMode::TemporallyDisjoint => c.paths.iter().enumerate().all(|(i, p)| {
            c.paths[i + 1..].iter().all(|q| are_temporally_disjoint(p, q))
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(tr: &[(Vertex, Vertex, Time)]) -> TemporalPath {
        TemporalPath::from_triples(tr.iter().copied()).unwrap()
    }

    #[test]
    fn validates_paths() {
        let d = TemporalDigraph::from_arcs(3, [(0, 1, vec![1]), (1, 2, vec![2])]).unwrap();
        assert!(validate_path(&d, &p(&[(0, 1, 1), (1, 2, 2)])).unwrap());
        let d2 = TemporalDigraph::from_arcs(3, [(0, 1, vec![2]), (1, 2, vec![1])]).unwrap();
        assert!(!validate_path(&d2, &p(&[(0, 1, 2), (1, 2, 1)])).unwrap());
        assert!(validate_path(&d, &TemporalPath::single(7)).is_err());
        assert!(!validate_path(&d, &p(&[(0, 1, 2)])).unwrap());
    }

    #[test]
    fn unlinked_steps_rejected() {
        assert!(TemporalPath::from_triples([(0, 1, 1), (2, 3, 2)]).is_err());
        assert!(TemporalPath::from_triples([]).is_err());
    }

    #[test]
    fn occupation_intervals() {
        let occ = occupation(&p(&[(0, 1, 1), (1, 2, 3)])).unwrap();
        assert_eq!(occ[1], (1, Interval { lo: Some(1), hi: Some(3) }));
        assert_eq!(occupation(&TemporalPath::single(4)).unwrap(), vec![(4, Interval::ALL)]);
        let occ = occupation(&p(&[(0, 1, 2)])).unwrap();
        assert_eq!(occ, vec![(0, Interval { lo: None, hi: Some(2) }), (1, Interval { lo: Some(2), hi: None })]);
        assert!(occupation(&p(&[(0, 1, 2), (1, 2, 2)])).is_err());
    }

    #[test]
    fn disjointness_examples() {
        // star: s1=0, s2=1, c=2, t1=3
        let p1 = p(&[(0, 2, 1), (2, 3, 2)]);
        let p2 = p(&[(1, 2, 1)]);
        assert!(!are_temporally_disjoint(&p1, &p2));
        assert!(are_temporally_disjoint(&p(&[(0, 1, 1)]), &p(&[(2, 3, 1)])));
        let a = p(&[(0, 1, 1)]);
        let b = p(&[(1, 2, 3)]);
        assert!(!are_temporally_disjoint(&a, &b));
        // the arc-level predicate accepts this pair
        assert!(arcs_temporally_disjoint(&a, &b));
        // passing through at different times is fine
        let through1 = p(&[(0, 1, 1), (1, 2, 2)]);
        let through2 = p(&[(3, 1, 3), (1, 4, 4)]);
        assert!(are_temporally_disjoint(&through1, &through2));
    }

    #[test]
    fn json_shape() {
        let c = PathCover::new(CoverMode::Plain, vec![p(&[(0, 1, 3)]), TemporalPath::single(2)]);
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"{"mode":"plain","paths":[[[0,1,3]],[[2]]]}"#);
        let back: PathCover = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn verifies_covers() {
        let d = TemporalDigraph::from_arcs(3, [(0, 1, vec![1]), (1, 2, vec![2])]).unwrap();
        assert!(!verify_cover(&d, &PathCover::new(CoverMode::Plain, vec![])));
        let full = PathCover::new(CoverMode::TemporallyDisjoint, vec![p(&[(0, 1, 1), (1, 2, 2)])]);
        assert!(verify_cover(&d, &full));
        let overlapping = PathCover::new(
            CoverMode::TemporallyDisjoint,
            vec![p(&[(0, 1, 1)]), p(&[(1, 2, 2)])],
        );
        assert!(!verify_cover(&d, &overlapping));
        assert!(verify_cover(&d, &overlapping.with_mode(CoverMode::Plain)));
    }
}
