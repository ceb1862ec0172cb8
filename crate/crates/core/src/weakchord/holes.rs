use super::StaticGraph;

/// An induced cycle on at least five vertices, shortest first.
///
/// The cycle starts at its smallest vertex; among holes of the same length
/// the lexicographically first extension order wins.
pub fn find_hole(g: &StaticGraph) -> Option<Vec<usize>> {
    let n = g.n();
    for len in 5..=n {
        for start in 0..n {
            let mut path = vec![start];
            if extend(g, len, &mut path) {
                return Some(path);
            }
        }
    }
    None
}

/// A hole of the complement, reported as its vertex cycle.
pub fn find_antihole(g: &StaticGraph) -> Option<Vec<usize>> {
    find_hole(&g.complement())
}

pub fn is_weakly_chordal(g: &StaticGraph) -> bool {
    find_hole(g).is_none() && find_antihole(g).is_none()
}

/// Grows the chordless path `path` (all vertices above `path[0]`) to a hole
/// of exactly `len` vertices.
fn extend(g: &StaticGraph, len: usize, path: &mut Vec<usize>) -> bool {
    let start = path[0];
    let last = *path.last().unwrap();
    let k = path.len();
    for w in g.neighbors(last) {
        if w <= start || path.contains(&w) {
            continue;
        }
        // w may touch only `last` among the interior, and `start` only when it closes
        if path.iter().skip(1).take(k.saturating_sub(2)).any(|&p| g.has_edge(p, w)) {
            continue;
        }
        let closes = k >= 2 && g.has_edge(start, w);
        if closes {
            if k + 1 == len {
                path.push(w);
                return true;
            }
            continue;
        }
        if k + 1 < len {
            path.push(w);
            if extend(g, len, path) {
                return true;
            }
            path.pop();
        }
    }
    false
}
