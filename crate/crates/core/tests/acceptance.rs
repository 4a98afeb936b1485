//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
//!
//! Every expected value is exact. Time limits are the only tolerances.

use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use nodequery::bounds::{certify_all, erdos_rado_sunflower, erdos_rado_threshold, verify_bound, Verdict};
use nodequery::constructions::{build_star_local_con, build_upper_bound_graph, run_algorithm1};
use nodequery::graph::{all_graphs, parse_graph6_lines, write_graph6};
use nodequery::property::compute_dp;
use nodequery::solver::{block_sensitivity_of, sensitivity_of};
use nodequery::sweep::{min_cost, SweepConfig};
use nodequery::{exact_cost, BooleanFunction, Graph, PropertySpec, VertexSet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Eval = fn(&Graph, VertexSet) -> bool;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion { id: 1, name: "oracle equivalence", limit: Duration::from_secs(60), run: oracle_equivalence },
        Criterion { id: 2, name: "symmetry-breaking drop", limit: Duration::from_secs(300), run: symmetry_breaking },
        Criterion { id: 3, name: "transitive graphs are evasive", limit: Duration::from_secs(600), run: transitive_evasive },
        Criterion { id: 4, name: "chain and monotone equalities", limit: Duration::from_secs(600), run: chain_equalities },
        Criterion { id: 5, name: "certifier soundness", limit: Duration::from_secs(1800), run: certifier_soundness },
        Criterion { id: 6, name: "sunflower recursion above threshold", limit: Duration::from_secs(60), run: sunflower_recursion },
        Criterion { id: 7, name: "clique-and-petals algorithm on every input", limit: Duration::from_secs(120), run: algorithm1 },
        Criterion { id: 8, name: "exponent metadata", limit: Duration::from_secs(1), run: exponents },
        Criterion { id: 9, name: "connectivity endpoints", limit: Duration::from_secs(300), run: connectivity },
        Criterion { id: 10, name: "graph6 round-trip", limit: Duration::from_secs(1), run: graph6_round_trip },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > c.limit => Err(format!("{detail}; over the time limit")),
            other => other,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        if outcome.is_err() {
            failed += 1;
        }
        println!(
            "{tag} {:>2} {}: {detail} [{:.2}s / {}s]",
            c.id,
            c.name,
            elapsed.as_secs_f64(),
            c.limit.as_secs()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn name(p: &str) -> PropertySpec {
    PropertySpec::from_name(p).unwrap()
}

// independent evaluators, driven only by the adjacency matrix

fn no_edge(g: &Graph, s: VertexSet) -> bool {
    s.iter().all(|u| g.neighbors(u).intersection(s).is_empty())
}

fn no_triangle(g: &Graph, s: VertexSet) -> bool {
    let v: Vec<usize> = s.iter().collect();
    !v.iter().enumerate().any(|(i, &a)| {
        v[i + 1..].iter().enumerate().any(|(j, &b)| {
            g.has_edge(a, b) && v[i + 1 + j + 1..].iter().any(|&c| g.has_edge(a, c) && g.has_edge(b, c))
        })
    })
}

fn is_forest(g: &Graph, s: VertexSet) -> bool {
    let mut parent: Vec<usize> = (0..g.n()).collect();
    fn root(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    for (u, v) in g.edges() {
        if s.contains(u) && s.contains(v) {
            let (a, b) = (root(&mut parent, u), root(&mut parent, v));
            if a == b {
                return false;
            }
            parent[a] = b;
        }
    }
    true
}

fn truth_table(g: &Graph, eval: Eval) -> Vec<bool> {
    (0..1u64 << g.n()).map(|b| eval(g, VertexSet::from_bits(b))).collect()
}

/// Minimum decision-tree depth over all trees, for functions on at most 4 variables.
struct TreeOracle {
    n: usize,
    memo: HashMap<u16, u8>,
}

impl TreeOracle {
    fn new(n: usize) -> Self {
        TreeOracle { n, memo: HashMap::new() }
    }

    fn restrict(&self, table: u16, i: usize, b: bool) -> u16 {
        let mut out = 0u16;
        for x in 0..1usize << self.n {
            let y = if b { x | 1 << i } else { x & !(1 << i) };
            if table >> y & 1 == 1 {
                out |= 1 << x;
            }
        }
        out
    }

    fn depth(&mut self, table: u16) -> u8 {
        let full: u16 = if self.n == 4 { u16::MAX } else { (1u16 << (1 << self.n)) - 1 };
        if table == 0 || table == full {
            return 0;
        }
        if let Some(&d) = self.memo.get(&table) {
            return d;
        }
        let mut best = u8::MAX;
        for i in 0..self.n {
            let lo = self.restrict(table, i, false);
            let hi = self.restrict(table, i, true);
            if lo == table {
                // the function ignores x_i
                continue;
            }
            best = best.min(1 + self.depth(lo).max(self.depth(hi)));
        }
        self.memo.insert(table, best);
        best
    }
}

fn labeled_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0..1u64 << pairs.len())
        .map(|mask| {
            let edges: Vec<(usize, usize)> =
                pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            Graph::from_edges(n, &edges).unwrap()
        })
        .collect()
}

fn oracle_equivalence() -> Outcome {
    let props: [(&str, Eval); 3] =
        [("emptiness", no_edge), ("triangle-free", no_triangle), ("acyclic", is_forest)];
    let mut pairs = 0;
    for n in 1..=4 {
        let mut oracle = TreeOracle::new(n);
        for g in labeled_graphs(n) {
            for (p, eval) in props {
                let table = truth_table(&g, eval);
                let packed = table.iter().enumerate().fold(0u16, |acc, (i, &t)| acc | (u16::from(t) << i));
                let expected = oracle.depth(packed) as usize;
                let got = exact_cost(&name(p), &g).map_err(|e| e.to_string())?.cost;
                check(got == expected, || format!("{p} on {}: solver {got}, oracle {expected}", write_graph6(&g)))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} (graph, property) pairs on labeled graphs n <= 4 match"))
}

/// Vertex-transitivity by trying every permutation.
fn transitive_by_permutations(g: &Graph) -> bool {
    let n = g.n();
    let mut reach = VertexSet::EMPTY;
    let mut perm: Vec<usize> = (0..n).collect();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut visit = |p: &[usize]| {
        if edges.iter().all(|&(u, v)| g.has_edge(p[u], p[v])) {
            reach.insert(p[0]);
        }
    };
    // Heap's algorithm
    let mut c = vec![0usize; n];
    visit(&perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            visit(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    reach == g.vertices()
}

fn relevant(f: &BooleanFunction) -> bool {
    (0..f.n()).all(|v| (0..1u64 << f.n()).any(|b| {
        let s = VertexSet::from_bits(b);
        f.eval(s) != f.eval(s.symmetric_difference(VertexSet::singleton(v)))
    }))
}

fn symmetry_breaking() -> Outcome {
    let p = PropertySpec::emptiness();
    let inst = build_upper_bound_graph(&p, 6).map_err(|e| e.to_string())?;
    let constructed = exact_cost(&p, &inst.graph).map_err(|e| e.to_string())?.cost;
    check(constructed <= 4, || format!("constructed instance costs {constructed}"))?;
    let f = BooleanFunction::from_table(6, truth_table(&inst.graph, no_edge));
    check(relevant(&f), || "constructed instance has an irrelevant vertex".into())?;

    let unrestricted = min_cost(&p, &SweepConfig::all(6)).map_err(|e| e.to_string())?;
    let unrestricted = unrestricted.min_cost.ok_or("no relevant graph")?;
    check(unrestricted <= 4, || format!("min-cost {unrestricted}"))?;

    let mut transitive = Vec::new();
    for g in all_graphs(6).map_err(|e| e.to_string())? {
        let f = BooleanFunction::from_table(6, truth_table(&g, no_edge));
        if relevant(&f) && transitive_by_permutations(&g) {
            transitive.push(exact_cost(&p, &g).map_err(|e| e.to_string())?.cost);
        }
    }
    let gt = *transitive.iter().min().ok_or("no transitive relevant graph")?;
    check(gt == 6, || format!("G_T min-cost {gt}"))?;
    let mut sweep = SweepConfig::all(6);
    sweep.transitive_only = true;
    let swept = min_cost(&p, &sweep).map_err(|e| e.to_string())?;
    check(swept.min_cost == Some(6) && swept.relevant_graphs == transitive.len(), || {
        format!("sweep reports {:?} over {} graphs", swept.min_cost, swept.relevant_graphs)
    })?;
    Ok(format!(
        "min-cost {unrestricted} (construction {constructed}) vs G_T min-cost {gt} over {} transitive graphs",
        transitive.len()
    ))
}

fn transitive_evasive() -> Outcome {
    let props: [(&str, Eval); 3] =
        [("emptiness", no_edge), ("triangle-free", no_triangle), ("acyclic", is_forest)];
    let mut checked = 0;
    let mut exceptions = Vec::new();
    for n in 1..=6 {
        for g in all_graphs(n).map_err(|e| e.to_string())? {
            if !transitive_by_permutations(&g) {
                continue;
            }
            for (p, eval) in props {
                let f = BooleanFunction::from_table(n, truth_table(&g, eval));
                if !relevant(&f) {
                    continue;
                }
                let cost = exact_cost(&name(p), &g).map_err(|e| e.to_string())?.cost;
                checked += 1;
                if cost != n {
                    exceptions.push(format!("{p} on {} costs {cost} < {n}", write_graph6(&g)));
                }
            }
        }
    }
    if !exceptions.is_empty() {
        return Err(format!("EXCEPTIONS TO EVASIVENESS: {}", exceptions.join("; ")));
    }
    Ok(format!("{checked} (graph, property) pairs, zero exceptions"))
}

const HEREDITARY: &[&str] = &[
    "emptiness",
    "triangle-free",
    "acyclic",
    "bipartite",
    "planar",
    "K4-free",
    "C4-free",
    "P3-free",
    "3-colorable",
    "bounded-degree(1)",
    "bounded-degree(2)",
];

fn chain_equalities() -> Outcome {
    let mut checked = 0;
    for n in 1..=5 {
        for g in all_graphs(n).map_err(|e| e.to_string())? {
            for &p in HEREDITARY {
                let spec = name(p);
                let f = BooleanFunction::new(&spec, &g).map_err(|e| e.to_string())?;
                if !relevant(&f) {
                    continue;
                }
                // sensitivity straight from the truth table
                let s_oracle = (0..1u64 << n)
                    .map(|b| {
                        let x = VertexSet::from_bits(b);
                        (0..n).filter(|&v| f.eval(x) != f.eval(x.symmetric_difference(VertexSet::singleton(v)))).count()
                    })
                    .max()
                    .unwrap();
                let s = sensitivity_of(&f).map_err(|e| e.to_string())?.value;
                let bs = block_sensitivity_of(&f).map_err(|e| e.to_string())?.value;
                let d = exact_cost(&spec, &g).map_err(|e| e.to_string())?.cost;
                check(s == s_oracle && d >= bs && bs == s, || {
                    format!("{p} on {}: D={d} bs={bs} s={s} (oracle s={s_oracle})", write_graph6(&g))
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("D >= bs = s on {checked} (graph, property) pairs"))
}

const CERTIFIED: &[&str] = &[
    "emptiness",
    "triangle-free",
    "acyclic",
    "bipartite",
    "planar",
    "3-colorable",
    "bounded-degree(2)",
    "K4-free",
    "C4-free",
    "local(emptiness)",
    "local(triangle-free,2)",
    "connected",
];

fn certifier_soundness() -> Outcome {
    let mut bounds = 0;
    let mut pairs = 0;
    for n in 1..=6 {
        for g in all_graphs(n).map_err(|e| e.to_string())? {
            for &p in CERTIFIED {
                let spec = name(p);
                let f = BooleanFunction::new(&spec, &g).map_err(|e| e.to_string())?;
                if !relevant(&f) {
                    continue;
                }
                pairs += 1;
                let cost = exact_cost(&spec, &g).map_err(|e| e.to_string())?.cost;
                for (certifier, outcome) in certify_all(&spec, &g) {
                    let Ok(b) = outcome else { continue };
                    if b.asymptotic_only {
                        continue;
                    }
                    let v = verify_bound(&b, &spec, &g).map_err(|e| e.to_string())?;
                    check(b.value <= cost && v.verdict == Verdict::Pass, || {
                        format!(
                            "{certifier} for {p} on {}: value {} vs cost {cost}, {:?} {}",
                            write_graph6(&g),
                            b.value,
                            v.verdict,
                            v.reason.clone().unwrap_or_default()
                        )
                    })?;
                    check(v.replay_queries.is_some_and(|q| q >= b.value), || {
                        format!("{certifier} for {p} on {}: replay {:?}", write_graph6(&g), v.replay_queries)
                    })?;
                    bounds += 1;
                }
            }
        }
    }
    Ok(format!("{bounds} certified bounds over {pairs} relevant (graph, property) pairs, zero violations"))
}

fn sunflower_recursion() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut families = 0;
    for k in 1..=3usize {
        for p in 1..=4usize {
            let size = erdos_rado_threshold(k, p) as usize + 1;
            let binom = |u: usize| (0..k).fold(1usize, |acc, i| acc * (u - i) / (i + 1));
            let smallest = (k..).find(|&u| binom(u) >= size).unwrap();
            for _ in 0..500 {
                let universe = rng.gen_range(smallest..=smallest.max(20));
                let points: Vec<usize> = (0..universe).collect();
                let mut family: Vec<VertexSet> = Vec::with_capacity(size);
                while family.len() < size {
                    let set: VertexSet = points.choose_multiple(&mut rng, k).copied().collect();
                    if !family.contains(&set) {
                        family.push(set);
                    }
                }
                let s = erdos_rado_sunflower(&family, p)
                    .map_err(|e| e.to_string())?
                    .ok_or_else(|| format!("no sunflower for k={k} p={p} in {family:?}"))?;
                let members = s.petals.iter().all(|x| family.contains(x));
                check(s.is_valid() && s.p() == p && members, || format!("invalid sunflower {s:?}"))?;
                families += 1;
            }
        }
    }
    Ok(format!("{families} random families above k!(p-1)^k, 100% success"))
}

fn algorithm1() -> Outcome {
    let cases: [(PropertySpec, usize, Eval); 2] =
        [(PropertySpec::emptiness(), 6, no_edge), (PropertySpec::triangle_free(), 12, no_triangle)];
    let mut summary = Vec::new();
    for (p, n, eval) in cases {
        let inst = build_upper_bound_graph(&p, n).map_err(|e| e.to_string())?;
        let c = inst.c_p - 1;
        let binom = (0..inst.d_p).fold(1usize, |acc, i| acc * (c - i) / (i + 1));
        let budget = inst.k * (1 + binom);
        check(inst.budget() == budget, || format!("budget {} vs {budget}", inst.budget()))?;
        let mut worst = 0;
        for b in 0..1u64 << n {
            let truth = VertexSet::from_bits(b);
            let run = run_algorithm1(&inst, truth).map_err(|e| e.to_string())?;
            check(run.output == eval(&inst.graph, truth), || format!("{p} wrong on {truth:?}"))?;
            check(run.queries <= budget, || format!("{p}: {} queries on {truth:?}", run.queries))?;
            worst = worst.max(run.queries);
        }
        summary.push(format!("{p} n={n}: 2^{n} truths, worst {worst} <= {budget}"));
    }
    Ok(summary.join("; "))
}

fn exponents() -> Outcome {
    let mut cases = vec![("emptiness".to_string(), 2), ("triangle-free".to_string(), 3)];
    for t in 3..=6 {
        cases.push((format!("K{t}-free"), t));
    }
    for (p, denominator) in &cases {
        let d = compute_dp(&name(p)).map_err(|e| e.to_string())?;
        check(d + 1 == *denominator, || format!("{p}: d_P = {d}, exponent 1/{}", d + 1))?;
    }
    Ok(cases.iter().map(|(p, t)| format!("{p} 1/{t}")).collect::<Vec<_>>().join(", "))
}

/// Largest matching in the complement, by brute force over edge subsets.
fn complement_matching(g: &Graph) -> usize {
    let n = g.n();
    let non_edges: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| !g.has_edge(u, v)).collect();
    (0..1u64 << non_edges.len())
        .filter_map(|mask| {
            let mut used = VertexSet::EMPTY;
            for (i, &(u, v)) in non_edges.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    if used.contains(u) || used.contains(v) {
                        return None;
                    }
                    used = used.with(u).with(v);
                }
            }
            Some(mask.count_ones() as usize)
        })
        .max()
        .unwrap_or(0)
}

fn connectivity() -> Outcome {
    for n in [3, 5, 7] {
        let star = build_star_local_con(n, 1, 2).map_err(|e| e.to_string())?;
        let cost = exact_cost(&star.property, &star.graph).map_err(|e| e.to_string())?.cost;
        check(cost == 3, || format!("st-connectivity on K_1,{} costs {cost}", n - 1))?;
    }
    let p = PropertySpec::connected();
    let mut rows = Vec::new();
    for n in 2..=5 {
        let mut cfg = SweepConfig::all(n);
        cfg.with_bounds = true;
        let r = min_cost(&p, &cfg).map_err(|e| e.to_string())?;
        let (Some(min), Some(code)) = (r.min_cost, r.argmin) else {
            return Err(format!("no relevant graph for connectivity on {n} vertices"));
        };
        let g = parse_graph6_lines(&code).map_err(|e| e.to_string())?.remove(0);
        let matching = complement_matching(&g);
        check(min >= matching, || format!("n={n}: min-cost {min} < complement matching {matching}"))?;
        let cert = r.bounds.iter().find(|b| b.certifier == "connectivity").and_then(|b| b.value);
        check(cert.is_some_and(|v| v >= matching && v <= min), || format!("n={n}: certificate {cert:?}"))?;
        rows.push(format!("n={n} {min}>={matching}"));
    }
    Ok(format!("st stars cost 3 for n in {{3,5,7}}; connected: {}", rows.join(", ")))
}

fn graph6_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut graphs = Vec::new();
    for i in 0..1000 {
        let n = match i % 10 {
            0 => rng.gen_range(0..=2),
            1 => rng.gen_range(60..=64),
            _ => rng.gen_range(3..=30),
        };
        let density: f64 = rng.gen();
        let mut g = Graph::empty(n).unwrap();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(density) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        graphs.push(g);
    }
    let corpus: String = graphs.iter().map(|g| write_graph6(g) + "\n").collect();
    let parsed = parse_graph6_lines(&corpus).map_err(|e| e.to_string())?;
    check(parsed == graphs, || "parsed graphs differ".into())?;
    let again: String = parsed.iter().map(|g| write_graph6(g) + "\n").collect();
    check(again.as_bytes() == corpus.as_bytes(), || "re-encoding differs".into())?;
    Ok(format!("{} graphs, {} bytes, byte-identical", graphs.len(), corpus.len()))
}
