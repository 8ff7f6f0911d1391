//! One PASS/FAIL line per acceptance criterion. Criteria 1 to 7 run once with a
//! single worker and once with several; criterion 8 compares the transcripts.

mod common;

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use mincw::bits::full_mask;
use mincw::code::verify_all_minimal;
use mincw::formulas::{partitions, verify_specs, verification_specs};
use mincw::search::{attach_disconnected_max, search_table, SearchConfig};
use mincw::{
    formula_M, formula_m, lower_bounds, parse_graph6, run_search, BoundKind, CountOptions, FamilySpec, Graph,
    GraphStream, SystematicGraphCode, Verdict,
};
use rand::Rng;

const TABLE_M: [u64; 7] = [1, 2, 4, 6, 9, 12, 16];
const TABLE_MC: [u64; 7] = [1, 2, 7, 14, 26, 47, 99];
const TABLE_TIME_LIMIT: Duration = Duration::from_secs(600);
const RANDOM_ORACLE_GRAPHS: usize = 500;
const RANDOM_DISCONNECTED_GRAPHS: usize = 200;

struct Outcome {
    id: u32,
    pass: bool,
    detail: String,
}

struct Run {
    threads: usize,
    outcomes: Vec<Outcome>,
    /// Everything the criteria computed, serialized; compared across thread counts.
    transcript: String,
}

impl Run {
    fn record(&mut self, id: u32, pass: bool, detail: String) {
        self.outcomes.push(Outcome { id, pass, detail });
    }

    fn log<T: serde::Serialize>(&mut self, tag: &str, value: &T) {
        writeln!(self.transcript, "{tag} {}", serde_json::to_string(value).unwrap()).unwrap();
    }

    fn count(&self, g: &Graph) -> u64 {
        let opts = CountOptions { threads: self.threads, ..Default::default() };
        SystematicGraphCode::new(g.clone()).count_minimal(opts).unwrap().m_count
    }
}

fn labeled(n: usize, connected_only: bool) -> Vec<Graph> {
    GraphStream::labeled(n, connected_only).unwrap().collect_graphs().unwrap()
}

fn table_reproduction(run: &mut Run) {
    let config = SearchConfig { threads: run.threads, ..SearchConfig::default() };
    let start = Instant::now();
    let rows = search_table(7, &config).unwrap();
    let elapsed = start.elapsed();
    let m: Vec<u64> = rows.iter().map(|r| r.m_connected).collect();
    let mc: Vec<u64> = rows.iter().map(|r| r.M_connected).collect();
    let table_ok = m == TABLE_M && mc == TABLE_MC && elapsed < TABLE_TIME_LIMIT;
    run.log("table", &rows);

    let mut r8 = run_search(&GraphStream::graph6_file(common::data_file("graphs8.g6")), &config).unwrap();
    attach_disconnected_max(&mut r8, &mc).unwrap();
    run.log("n8", &r8);
    let n8_ok = r8.graphs == 11117 && r8.m_connected == 20 && r8.M_connected == 190 && r8.M_any == Some(190);
    run.record(
        1,
        table_ok && n8_ok,
        format!(
            "table n=1..7 m={m:?} M={mc:?} in {:.1}s; graph6 n=8 ({} graphs) m={} M={}",
            elapsed.as_secs_f64(),
            r8.graphs,
            r8.m_connected,
            r8.M_connected
        ),
    );
}

fn acceptance_specs() -> Vec<FamilySpec> {
    let mut specs: Vec<FamilySpec> = (3..=11).map(FamilySpec::Complete).collect();
    for a in 1..=10 {
        for b in 1..=11 - a {
            specs.push(FamilySpec::CompleteBipartite(a, b));
        }
    }
    for m in 3..=10 {
        specs.extend(partitions(m, 3).into_iter().map(FamilySpec::CompleteMultipartite));
    }
    specs.extend((1..=14).map(FamilySpec::Path));
    specs.extend((3..=14).map(FamilySpec::Cycle));
    for a in 1..=8 {
        for b in 1..=9 - a {
            specs.push(FamilySpec::DoubleStar(a, b));
        }
    }
    specs
}

fn formula_equality(run: &mut Run) {
    let specs = acceptance_specs();
    let rows = verify_specs(&specs, run.threads, formula_M).unwrap();
    let bad = rows.iter().filter(|r| !r.matches).count();
    run.log("formulas", &rows);
    run.record(2, bad == 0, format!("{} family members, {bad} mismatches", rows.len()));
}

fn oracle_disagreements(g: &Graph) -> u64 {
    let code = SystematicGraphCode::new(g.clone());
    (1..=full_mask(g.order()))
        .filter(|&s| code.is_minimal_rank(s).unwrap() != code.is_minimal_oracle(s).unwrap())
        .count() as u64
}

fn oracle_equivalence(run: &mut Run) {
    let families: Vec<Graph> = verification_specs(8).iter().map(|s| s.build().unwrap()).collect();
    let family_bad: u64 = families.iter().map(oracle_disagreements).sum();
    let mut rng = common::rng(2024);
    let mut random_bad = 0;
    for _ in 0..RANDOM_ORACLE_GRAPHS {
        let n = rng.gen_range(1..=8);
        let p = rng.gen_range(0.0..0.8);
        random_bad += oracle_disagreements(&common::random_connected(&mut rng, n, p));
    }
    run.log("oracle", &(families.len(), family_bad, random_bad));
    run.record(
        3,
        family_bad == 0 && random_bad == 0,
        format!(
            "{} family graphs: {family_bad} disagreements; {RANDOM_ORACLE_GRAPHS} random connected graphs: {random_bad} disagreements",
            families.len()
        ),
    );
}

fn bound_soundness(run: &mut Run) {
    let mut checked = 0;
    let mut unsound = 0;
    for n in 1..=6 {
        for g in labeled(n, true) {
            let mut report = lower_bounds(&g);
            report.enumerated = Some(run.count(&g));
            checked += 1;
            unsound += !report.is_sound() as u64;
        }
    }
    let tight = |g: &Graph, kind: BoundKind| {
        let mut report = lower_bounds(g);
        report.enumerated = Some(run.count(g));
        report.slack(kind) == Some(0)
    };
    let mut loose = Vec::new();
    for n in 3..=8 {
        let spec = FamilySpec::CompleteBipartite(1, n - 1);
        if !tight(&spec.build().unwrap(), BoundKind::Diameter2) {
            loose.push(format!("diameter2 on {spec}"));
        }
    }
    for a in 1..=8 {
        for b in 1..=9 - a {
            let spec = FamilySpec::CompleteBipartite(a, b);
            if !tight(&spec.build().unwrap(), BoundKind::SpanningTree) {
                loose.push(format!("spanning_tree on {spec}"));
            }
        }
    }
    for a in 1..=7 {
        for b in 1..=7 - a {
            let spec = FamilySpec::DoubleStar(a, b);
            if !tight(&spec.build().unwrap(), BoundKind::SpanningTree) {
                loose.push(format!("spanning_tree on {spec}"));
            }
        }
    }
    run.log("bounds", &(checked, unsound, &loose));
    run.record(
        4,
        unsound == 0 && loose.is_empty(),
        format!("{checked} connected labelled graphs n<=6, {unsound} unsound; equality cases not tight: {loose:?}"),
    );
}

/// Structural checks on one graph; returns the number of violations.
fn lemma_violations(g: &Graph, threads: usize) -> u64 {
    let code = SystematicGraphCode::new(g.clone());
    let n = g.order();
    let opts = CountOptions { list: true, threads, ..Default::default() };
    let minimal = code.count_minimal(opts).unwrap().minimal_supports.unwrap();
    let is_min = |s: u64| minimal.binary_search(&s).is_ok();
    let mut bad = 0;
    for s in 1..=full_mask(n) {
        bad += (code.filter_zero_sum(s) == Verdict::NonMinimal && is_min(s)) as u64;
    }
    let pairs: Vec<u64> = minimal.iter().copied().filter(|s| s.count_ones() == 2).collect();
    bad += (pairs != code.minimal_pairs()) as u64;
    for &s in &minimal {
        bad += (s.count_ones() as usize > n + 1) as u64;
        bad += (code.info_bits(s) != 0 && s.count_ones() as usize > n) as u64;
    }
    for u in 0..n {
        for v in u + 1..n {
            if let Some(p) = g.shortest_even_path(u, v).unwrap() {
                bad += !is_min(common::even_positions(&p)) as u64;
            }
        }
    }
    for c in g.induced_odd_cycles().unwrap() {
        bad += !is_min(c) as u64;
    }
    bad
}

fn lemma_suites(run: &mut Run) {
    let mut graphs: Vec<Graph> = (1..=5).flat_map(|n| labeled(n, false)).collect();
    let small = graphs.len();
    graphs.extend(GraphStream::graph6_file(common::data_file("graphs8.g6")).collect_graphs().unwrap());
    let lemma_bad: u64 = graphs.iter().map(|g| lemma_violations(g, run.threads)).sum();

    let mut rng = common::rng(77);
    let mut additivity_bad = 0;
    for _ in 0..RANDOM_DISCONNECTED_GRAPHS {
        let na = rng.gen_range(1..=4);
        let nb = rng.gen_range(1..=8 - na);
        let a = common::random_graph(&mut rng, na, 0.5);
        let b = common::random_graph(&mut rng, nb, 0.5);
        let perm = common::random_permutation(&mut rng, na + nb);
        let g = a.disjoint_union(&b).unwrap().permute(&perm).unwrap();
        additivity_bad += (run.count(&g) != run.count(&a) + run.count(&b)) as u64;
    }
    run.log("lemmas", &(graphs.len(), lemma_bad, additivity_bad));
    run.record(
        5,
        lemma_bad == 0 && additivity_bad == 0,
        format!(
            "{small} labelled graphs n<=5 and {} graphs n=8: {lemma_bad} violations; {RANDOM_DISCONNECTED_GRAPHS} disjoint unions: {additivity_bad} additivity failures",
            graphs.len() - small
        ),
    );
}

fn all_minimal_classification(run: &mut Run) {
    let mut hits = Vec::new();
    for n in 1..=6 {
        for g in labeled(n, false) {
            if verify_all_minimal(&g).unwrap() {
                hits.push((n, g.edge_count()));
            }
        }
    }
    run.log("all_minimal", &hits);
    run.record(6, hits == vec![(1, 0), (3, 3)], format!("graphs n<=6 with M = 2^n - 1: (n, edges) = {hits:?}"));
}

fn is_path_degree_sequence(g: &Graph) -> bool {
    let n = g.order();
    let expected: Vec<usize> = match n {
        1 => vec![0],
        _ => (0..n).map(|i| if i < 2 { 1 } else { 2 }).collect(),
    };
    g.degree_sequence() == expected
}

fn minimum_theorem(run: &mut Run) {
    let config = SearchConfig { threads: run.threads, witness_cap: usize::MAX, ..SearchConfig::default() };
    let mut failures = Vec::new();
    for n in 1..=7 {
        let r = run_search(&GraphStream::labeled(n, true).unwrap(), &config).unwrap();
        let witnesses: Vec<Graph> = r.min_witnesses.iter().map(|w| parse_graph6(&w.graph6).unwrap()).collect();
        let complete_list = witnesses.len() as u64 == r.min_attained;
        if r.m_connected != formula_m(n as u64)
            || !complete_list
            || !witnesses.iter().any(is_path_degree_sequence)
            || !witnesses.iter().all(Graph::is_bipartite)
        {
            failures.push(n);
        }
        run.log("minimum", &(n, r.m_connected, r.min_attained, &r.min_witnesses));
    }
    run.record(
        7,
        failures.is_empty(),
        format!("m(n) = floor((n+1)^2/4) with a path witness and all witnesses bipartite for n=1..7; failing orders {failures:?}"),
    );
}

fn run_all(threads: usize) -> Run {
    let mut run = Run { threads, outcomes: Vec::new(), transcript: String::new() };
    table_reproduction(&mut run);
    formula_equality(&mut run);
    oracle_equivalence(&mut run);
    bound_soundness(&mut run);
    lemma_suites(&mut run);
    all_minimal_classification(&mut run);
    minimum_theorem(&mut run);
    run
}

fn main() {
    let many = std::thread::available_parallelism().map_or(1, |p| p.get()).max(4);
    let single = run_all(1);
    let multi = run_all(many);

    let mut all_pass = true;
    for (a, b) in single.outcomes.iter().zip(&multi.outcomes) {
        let pass = a.pass && b.pass;
        all_pass &= pass;
        println!("{} criterion {}: {}", if pass { "PASS" } else { "FAIL" }, a.id, a.detail);
    }
    let identical = single.transcript == multi.transcript;
    all_pass &= identical;
    println!(
        "{} criterion 8: transcripts of 1 and {many} workers are {} ({} bytes)",
        if identical { "PASS" } else { "FAIL" },
        if identical { "byte-identical" } else { "different" },
        single.transcript.len()
    );
    if !all_pass {
        std::process::exit(1);
    }
}
