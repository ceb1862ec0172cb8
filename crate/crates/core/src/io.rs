//! Reading and writing instances and covers.
//!
//! `.tg` text: a header `tg <n> <arc_count>`, then one `u v t1,t2,...` line
//! per arc. `#` starts a comment. The JSON mirror is
//! `{"n": .., "arcs": [{"u": .., "v": .., "labels": [..]}]}`.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::digraph::{Arc, TemporalDigraph, Time, Vertex};
use crate::error::{Error, Result};
use crate::path::PathCover;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Tg,
    Json,
    Dot,
    Td,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tg" => Ok(Format::Tg),
            "json" => Ok(Format::Json),
            "dot" => Ok(Format::Dot),
            "td" => Ok(Format::Td),
            other => Err(Error::Malformed(format!("unknown format `{other}`"))),
        }
    }
}

pub fn parse_tg(text: &str) -> Result<TemporalDigraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut arcs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let fields: Vec<&str> = line.split_whitespace().collect();
        match header {
            None => {
                if fields.len() != 3 || fields[0] != "tg" {
                    return Err(err(format!("expected `tg <n> <arc_count>`, found `{line}`")));
                }
                let n = fields[1].parse().map_err(|e| err(format!("bad vertex count: {e}")))?;
                let m = fields[2].parse().map_err(|e| err(format!("bad arc count: {e}")))?;
                header = Some((n, m));
            }
            Some(_) => {
                if fields.len() != 3 {
                    return Err(err(format!("expected `u v t1,t2,...`, found `{line}`")));
                }
                let u: Vertex = fields[0].parse().map_err(|e| err(format!("bad tail: {e}")))?;
                let v: Vertex = fields[1].parse().map_err(|e| err(format!("bad head: {e}")))?;
                let labels = fields[2]
                    .split(',')
                    .map(|t| t.trim().parse::<Time>().map_err(|e| err(format!("bad label `{t}`: {e}"))))
                    .collect::<Result<Vec<_>>>()?;
                arcs.push((line_no, u, v, labels));
            }
        }
    }
    let (n, m) = header.ok_or(Error::Parse { line: 0, msg: "missing `tg` header".into() })?;
    if arcs.len() != m {
        return Err(Error::Parse {
            line: 0,
            msg: format!("header announces {m} arcs, found {}", arcs.len()),
        });
    }
    for (line, u, v, _) in &arcs {
        if *u >= n || *v >= n || u == v {
            return Err(Error::Parse { line: *line, msg: format!("invalid arc {u} -> {v} for n = {n}") });
        }
    }
    TemporalDigraph::from_arcs(n, arcs.into_iter().map(|(_, u, v, l)| (u, v, l)))
}

pub fn write_tg(d: &TemporalDigraph) -> String {
    let mut s = format!("tg {} {}\n", d.n(), d.arc_count());
    for a in d.arcs() {
        let labels: Vec<String> = a.labels.iter().map(|t| t.to_string()).collect();
        let _ = writeln!(s, "{} {} {}", a.tail, a.head, labels.join(","));
    }
    s
}

#[derive(Serialize, Deserialize)]
struct JsonInstance {
    n: usize,
    arcs: Vec<Arc>,
}

pub fn parse_json(text: &str) -> Result<TemporalDigraph> {
    let raw: JsonInstance = serde_json::from_str(text)?;
    TemporalDigraph::from_arcs(raw.n, raw.arcs.into_iter().map(|a| (a.tail, a.head, a.labels)))
}

pub fn write_json(d: &TemporalDigraph) -> String {
    let raw = JsonInstance { n: d.n(), arcs: d.arcs().to_vec() };
    serde_json::to_string_pretty(&raw).expect("instance serializes")
}

pub fn write_dot(d: &TemporalDigraph) -> String {
    let mut s = String::from("digraph temporal {\n");
    for v in 0..d.n() {
        let _ = writeln!(s, "  {v};");
    }
    for a in d.arcs() {
        let labels: Vec<String> = a.labels.iter().map(|t| t.to_string()).collect();
        let _ = writeln!(s, "  {} -> {} [label=\"{}\"];", a.tail, a.head, labels.join(","));
    }
    s.push_str("}\n");
    s
}

/// Guesses the format from the first non-blank character.
pub fn parse_instance(text: &str) -> Result<TemporalDigraph> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_tg(text)
    }
}

pub fn read_instance(path: &Path) -> Result<TemporalDigraph> {
    parse_instance(&std::fs::read_to_string(path)?)
}

pub fn parse_cover(text: &str) -> Result<PathCover> {
    Ok(serde_json::from_str(text)?)
}

pub fn write_cover(c: &PathCover) -> String {
    serde_json::to_string(c).expect("cover serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "# a small line\ntg 3 2\n0 1 1,3\n1 2 2 # trailing\n";

    #[test]
    fn tg_roundtrip() {
        let d = parse_tg(SAMPLE).unwrap();
        assert_eq!(d.n(), 3);
        assert_eq!(d.labels(0, 1), Some(&[1, 3][..]));
        assert_eq!(parse_tg(&write_tg(&d)).unwrap(), d);
    }

    #[test]
    fn json_roundtrip() {
        let d = parse_tg(SAMPLE).unwrap();
        let js = write_json(&d);
        assert!(js.contains("\"labels\""));
        assert_eq!(parse_instance(&js).unwrap(), d);
    }

    #[test]
    fn tg_errors_carry_lines() {
        match parse_tg("tg 2 1\n0 1 x\n") {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_tg("tg 2 2\n0 1 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_tg("0 1 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_tg("tg 2 1\n0 5 1\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn dot_lists_every_arc() {
        let d = parse_tg(SAMPLE).unwrap();
        let dot = write_dot(&d);
        assert_eq!(dot.matches("->").count(), 2);
        assert!(dot.contains("label=\"1,3\""));
    }
}
