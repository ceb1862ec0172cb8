//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero when any criterion fails. Run with
//! `cargo test -p tempocover --test acceptance`.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use tempocover::connectivity::connectivity_graph;
use tempocover::gen::{
    gadget_3dm, gadget_binpacking, random_instance, random_partial_ktree, star, transitive_tournament,
};
use tempocover::io::{parse_cover, read_instance};
use tempocover::oracle::{exact_antichain, exact_tdpc, exact_tpc, OracleConfig};
use tempocover::path::verify_cover;
use tempocover::treesolve::{solve_oriented_line, solve_rooted_tree, tpc_oriented_tree};
use tempocover::twdp::{build_nice_decomposition, tdpc_dp, tpc_dp};
use tempocover::weakchord::{
    exhaustive_clique_cover, exhaustive_independent_set, is_weakly_chordal, max_independent_set_wc,
    min_clique_cover_wc, StaticGraph,
};
use tempocover::{GraphClass, TemporalDigraph};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Wall-clock limit for the tournament family.
const TOURNAMENT_LIMIT: Duration = Duration::from_secs(5);
/// Wall-clock limit for the decomposition DP sweep.
const DP_LIMIT: Duration = Duration::from_secs(60);
/// Seeded instances per randomized criterion.
const TREE_COUNT: u64 = 500;
const DP_COUNT: u64 = 200;
const WC_COUNT: u64 = 200;
/// Oracle vertex bound; the largest reduction gadget has 35 vertices.
const ORACLE_MAX_N: usize = 40;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn oracle() -> OracleConfig {
    OracleConfig::default().with_max_n(ORACLE_MAX_N)
}

fn triple(d: &TemporalDigraph, cfg: &OracleConfig) -> (usize, usize, usize) {
    (
        exact_antichain(d, cfg).unwrap().len(),
        exact_tpc(d, cfg).unwrap().len(),
        exact_tdpc(d, cfg).unwrap().len(),
    )
}

fn tournaments() -> Verdict {
    let start = Instant::now();
    let mut bad = Vec::new();
    for n in 2..=10 {
        let d = transitive_tournament(n).unwrap();
        let (a, t, td) = triple(&d, &oracle());
        let want = n.div_ceil(2);
        if (a, t, td) != (1, want, want) {
            bad.push(format!("n={n}: antichain {a}, tpc {t}, tdpc {td}, expected 1/{want}/{want}"));
        }
    }
    let took = start.elapsed();
    let pass = bad.is_empty() && took < TOURNAMENT_LIMIT;
    verdict(pass, format!("n=2..10 in {took:.2?} (limit {TOURNAMENT_LIMIT:?}) {}", bad.join("; ")))
}

fn stars() -> Verdict {
    let mut bad = Vec::new();
    for k in 1..=6 {
        let d = star(k).unwrap();
        let (a, t, td) = triple(&d, &oracle());
        let want = 2 * k - 1;
        if (a, t, td) != (k, want, want) {
            bad.push(format!("k={k}: antichain {a}, tpc {t}, tdpc {td}, expected {k}/{want}/{want}"));
        }
    }
    verdict(bad.is_empty(), format!("k=1..6 {}", bad.join("; ")))
}

/// `n` in 2..=12, labels per arc in 1..=3 (at most the lifetime) and
/// lifetime in 1..=5, all from the seed.
fn tree_params(seed: u64) -> (usize, usize, u32) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let (n, l, t) = (rng.gen_range(2..=12), rng.gen_range(1..=3usize), rng.gen_range(1..=5u32));
    (n, l.min(t as usize), t)
}

fn dilworth_trees() -> Verdict {
    let cfg = oracle();
    let mut bad = Vec::new();
    for seed in 0..TREE_COUNT {
        let (n, l, t) = tree_params(seed);
        let d = random_instance(GraphClass::OrientedTree, n, l, t, seed).unwrap();
        let ours = tpc_oriented_tree(&d).unwrap();
        let tpc = exact_tpc(&d, &cfg).unwrap().len();
        let anti = exact_antichain(&d, &cfg).unwrap().len();
        let chordal = is_weakly_chordal(connectivity_graph(&d).graph());
        if ours.len() != tpc || tpc != anti || !chordal || !verify_cover(&d, &ours) {
            bad.push(format!("seed {seed}: tree {} tpc {tpc} antichain {anti} weakly chordal {chordal}", ours.len()));
        }
    }
    verdict(bad.is_empty(), format!("{TREE_COUNT} oriented trees, {} mismatches {}", bad.len(), bad.join("; ")))
}

fn td_dilworth() -> Verdict {
    let cfg = oracle();
    let mut bad = Vec::new();
    for (class, salt) in [(GraphClass::RootedDirectedTree, 0u64), (GraphClass::OrientedLine, 1 << 32)] {
        for seed in 0..TREE_COUNT {
            let (n, l, t) = tree_params(seed + salt);
            let d = random_instance(class, n, l, t, seed + salt).unwrap();
            let ours = match class {
                GraphClass::OrientedLine => solve_oriented_line(&d).unwrap(),
                _ => solve_rooted_tree(&d).unwrap(),
            };
            let td = exact_tdpc(&d, &cfg).unwrap().len();
            let tpc = exact_tpc(&d, &cfg).unwrap().len();
            let anti = exact_antichain(&d, &cfg).unwrap().len();
            let ok = ours.len() == td && td == tpc && tpc == anti && ours.is_vertex_disjoint() && verify_cover(&d, &ours);
            if !ok {
                bad.push(format!("{class} seed {}: ours {} tdpc {td} tpc {tpc} antichain {anti}", seed + salt, ours.len()));
            }
        }
    }
    verdict(
        bad.is_empty(),
        format!("{TREE_COUNT} rooted trees + {TREE_COUNT} lines, {} mismatches {}", bad.len(), bad.join("; ")),
    )
}

fn treewidth_dp() -> Verdict {
    let cfg = oracle();
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut max_width = 0;
    for seed in 0..DP_COUNT {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xd9);
        let n = rng.gen_range(3..=9);
        let t_max = rng.gen_range(1..=3);
        let labels = rng.gen_range(1..=t_max as usize);
        let d = random_partial_ktree(n, 2, labels, t_max, seed, 0.85, 0.2).unwrap();
        max_width = max_width.max(build_nice_decomposition(&d).width());
        let td = tdpc_dp(&d).unwrap();
        let tpc = tpc_dp(&d, d.n()).unwrap();
        let want_td = exact_tdpc(&d, &cfg).unwrap().len();
        let want_tpc = exact_tpc(&d, &cfg).unwrap().len();
        if td.size != want_td || tpc.size != want_tpc || !verify_cover(&d, &td.cover) || !verify_cover(&d, &tpc.cover) {
            bad.push(format!("seed {seed}: dp {}/{} oracle {want_td}/{want_tpc}", td.size, tpc.size));
        }
    }
    let took = start.elapsed();
    let pass = bad.is_empty() && took < DP_LIMIT && max_width <= 2;
    verdict(
        pass,
        format!(
            "{DP_COUNT} instances, width <= {max_width}, {took:.2?} (limit {DP_LIMIT:?}), {} mismatches {}",
            bad.len(),
            bad.join("; ")
        ),
    )
}

fn has_perfect_matching(triples: &[(usize, usize, usize)], q: usize) -> bool {
    fn go(triples: &[(usize, usize, usize)], used: [u8; 3], picked: usize, q: usize, from: usize) -> bool {
        if picked == q {
            return true;
        }
        (from..triples.len()).any(|i| {
            let (a, b, c) = triples[i];
            let bits = [1u8 << a, 1 << b, 1 << c];
            (0..3).all(|k| used[k] & bits[k] == 0)
                && go(triples, [used[0] | bits[0], used[1] | bits[1], used[2] | bits[2]], picked + 1, q, i + 1)
        })
    }
    go(triples, [0; 3], 0, q, 0)
}

fn subsets<T: Clone>(items: &[T], max: usize) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    for mask in 1u32..1 << items.len() {
        if mask.count_ones() as usize <= max {
            out.push((0..items.len()).filter(|&i| mask >> i & 1 == 1).map(|i| items[i].clone()).collect());
        }
    }
    out
}

fn matching_gadget() -> Verdict {
    let cfg = oracle();
    let mut bad = Vec::new();
    let mut count = 0;
    let mut min_girth: Option<usize> = None;
    for q in 1..=2usize {
        let all: Vec<(usize, usize, usize)> =
            (0..q).flat_map(|a| (0..q).flat_map(move |b| (0..q).map(move |c| (a, b, c)))).collect();
        for triples in subsets(&all, 3) {
            count += 1;
            let p = triples.len();
            let d = gadget_3dm(&triples, q).unwrap();
            let g = StaticGraph::underlying(&d);
            let girth = g.girth();
            if let Some(c) = girth {
                min_girth = Some(min_girth.map_or(c, |m: usize| m.min(c)));
            }
            let shape_ok = g.is_bipartite() && girth.is_none_or(|c| c >= 10);
            let tpc = exact_tpc(&d, &cfg).unwrap().len();
            let matched = has_perfect_matching(&triples, q);
            if (tpc == 3 * p + q) != matched || !shape_ok {
                bad.push(format!("q={q} {triples:?}: tpc {tpc}, 3p+q {}, matching {matched}, girth {girth:?}", 3 * p + q));
            }
        }
    }
    let pass = bad.is_empty() && min_girth == Some(10);
    verdict(pass, format!("{count} instances, shortest cycle {min_girth:?} {}", bad.join("; ")))
}

fn partitions(total: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if total == 0 {
        out.push(cur.clone());
        return;
    }
    for x in (1..=max.min(total)).rev() {
        cur.push(x);
        partitions(total - x, x, cur, out);
        cur.pop();
    }
}

fn packable(sizes: &[u32], room: &mut [u32]) -> bool {
    let Some((&x, rest)) = sizes.split_first() else { return room.iter().all(|&r| r == 0) };
    for j in 0..room.len() {
        if room[j] >= x {
            room[j] -= x;
            let ok = packable(rest, room);
            room[j] += x;
            if ok {
                return true;
            }
        }
    }
    false
}

fn binpacking_gadget() -> Verdict {
    let cfg = oracle();
    let mut bad = Vec::new();
    let mut count = 0;
    for bins in 1..=4u32 {
        for cap in 1..=4 / bins {
            let mut all = Vec::new();
            partitions(bins * cap, bins * cap, &mut Vec::new(), &mut all);
            for sizes in all {
                count += 1;
                let d = gadget_binpacking(&sizes, bins, cap).unwrap();
                let n = sizes.len() as u32;
                let target = (bins * (bins * cap - n) + n) as usize;
                let tdpc = exact_tdpc(&d, &cfg).unwrap().len();
                let ok = packable(&sizes, &mut vec![cap; bins as usize]);
                if (tdpc == target) != ok || !d.is_oriented_tree() {
                    bad.push(format!("b={bins} B={cap} x={sizes:?}: tdpc {tdpc}, target {target}, packable {ok}"));
                }
            }
        }
    }
    verdict(bad.is_empty(), format!("{count} instances, {} mismatches {}", bad.len(), bad.join("; ")))
}

fn weak_duality() -> Verdict {
    let cfg = oracle();
    let mut instances: Vec<(String, TemporalDigraph)> = Vec::new();
    let classes = [
        GraphClass::General,
        GraphClass::Dag,
        GraphClass::OrientedTree,
        GraphClass::RootedDirectedTree,
        GraphClass::OrientedLine,
    ];
    for class in classes {
        for seed in 0..60 {
            let (n, l, t) = tree_params(seed);
            let n = n.min(10);
            instances.push((format!("{class} seed {seed}"), random_instance(class, n, l, t, seed).unwrap()));
        }
    }
    for seed in 0..60 {
        instances.push((format!("ktree seed {seed}"), random_partial_ktree(8, 2, 2, 3, seed, 0.8, 0.2).unwrap()));
    }
    for n in 2..=8 {
        instances.push((format!("tournament {n}"), transitive_tournament(n).unwrap()));
    }
    for k in 1..=4 {
        instances.push((format!("star {k}"), star(k).unwrap()));
    }
    instances.push(("3dm".into(), gadget_3dm(&[(0, 0, 0), (1, 1, 1), (0, 1, 0)], 2).unwrap()));
    instances.push(("binpacking".into(), gadget_binpacking(&[2, 1, 1], 2, 2).unwrap()));
    let mut bad = Vec::new();
    for (name, d) in &instances {
        let (a, t, td) = triple(d, &cfg);
        if !(a <= t && t <= td) {
            bad.push(format!("{name}: antichain {a}, tpc {t}, tdpc {td}"));
        }
    }
    verdict(bad.is_empty(), format!("{} instances {}", instances.len(), bad.join("; ")))
}

/// Random graph made weakly chordal by adding random non-edges until no
/// hole or antihole remains.
fn random_weakly_chordal(seed: u64) -> StaticGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=12);
    let density = rng.gen_range(0.1..0.6);
    let mut g = StaticGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                g.add_edge(u, v);
            }
        }
    }
    while !is_weakly_chordal(&g) {
        let missing: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| !g.has_edge(u, v)).collect();
        let (u, v) = missing[rng.gen_range(0..missing.len())];
        g.add_edge(u, v);
    }
    g
}

fn weakly_chordal_engine() -> Verdict {
    let mut bad = Vec::new();
    for seed in 0..WC_COUNT {
        let g = random_weakly_chordal(seed);
        let cover = min_clique_cover_wc(&g).unwrap();
        let mis = max_independent_set_wc(&g).unwrap();
        let best_cover = exhaustive_clique_cover(&g).len();
        let best_mis = exhaustive_independent_set(&g).len();
        let valid = cover.is_valid_for(&g) && g.is_independent(&mis);
        if !valid || cover.len() != mis.len() || cover.len() != best_cover || mis.len() != best_mis {
            bad.push(format!(
                "seed {seed}: cover {} mis {} exhaustive {best_cover}/{best_mis} valid {valid}",
                cover.len(),
                mis.len()
            ));
        }
    }
    verdict(bad.is_empty(), format!("{WC_COUNT} graphs, {} mismatches {}", bad.len(), bad.join("; ")))
}

fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn golden_fixtures() -> Verdict {
    let dir = fixtures_dir();
    let expected: BTreeMap<String, BTreeMap<String, usize>> =
        serde_json::from_str(&std::fs::read_to_string(dir.join("expected.json")).unwrap()).unwrap();
    let mut bad = Vec::new();
    for (name, want) in &expected {
        let d = read_instance(&dir.join(format!("{name}.tg"))).unwrap();
        let (a, t, td) = triple(&d, &oracle());
        if (a, t, td) != (want["antichain"], want["tpc"], want["tdpc"]) {
            bad.push(format!("{name}: got {a}/{t}/{td}, expected {want:?}"));
        }
    }
    let single = solve_rooted_tree(&read_instance(&dir.join("rooted_single_label.tg")).unwrap()).unwrap();
    if single.len() != 3 || !single.is_vertex_disjoint() {
        bad.push(format!("rooted_single_label: tree solver gave {} paths", single.len()));
    }
    let multi = solve_rooted_tree(&read_instance(&dir.join("rooted_multi_label.tg")).unwrap()).unwrap();
    let singletons = multi.paths.iter().filter(|p| p.is_empty()).count();
    if multi.len() != 3 || singletons != 2 {
        bad.push(format!("rooted_multi_label: {} paths, {singletons} singletons", multi.len()));
    }
    let t4 = read_instance(&dir.join("tournament4.tg")).unwrap();
    let shown = parse_cover(&std::fs::read_to_string(dir.join("tournament4_cover.json")).unwrap()).unwrap();
    if !verify_cover(&t4, &shown) || shown.len() != 2 {
        bad.push("tournament4_cover.json does not verify".into());
    }
    verdict(bad.is_empty(), format!("{} fixtures {}", expected.len(), bad.join("; ")))
}

type Criterion = (&'static str, fn() -> Verdict);

fn main() {
    let criteria: [Criterion; 10] = [
        ("tournament family", tournaments),
        ("star family", stars),
        ("Dilworth on oriented trees", dilworth_trees),
        ("TD-Dilworth on rooted trees and lines", td_dilworth),
        ("treewidth DP vs oracle", treewidth_dp),
        ("3DM gadget", matching_gadget),
        ("bin-packing gadget", binpacking_gadget),
        ("weak duality", weak_duality),
        ("weakly chordal engine", weakly_chordal_engine),
        ("golden fixtures", golden_fixtures),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = run();
        let tag = if v.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {tag} {name} [{:.1?}]: {}", i + 1, start.elapsed(), v.detail.trim());
        if !v.pass {
            failed.push(i + 1);
        }
    }
    if failed.is_empty() {
        println!("all criteria pass");
    } else {
        println!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
}
