//! Exhaustive search for the extremal counts over all graphs of a given order.
//!
//! A stream of graphs (every labelled graph on `n ≤ 7` vertices, or a graph6
//! file such as the output of `geng -c n`) is folded into the minimum and
//! maximum count together with witness graphs. The stream is split into
//! contiguous ranges, one per worker; partial folds are merged in range order,
//! so the result does not depend on the number of workers.

use std::collections::HashSet;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::thread;

use serde::{Deserialize, Serialize};

use crate::code::{CountOptions, SystematicGraphCode};
use crate::error::{check_cap, Error, Result};
use crate::graph::Graph;
use crate::graph6::{parse_graph6, to_graph6};

/// Largest order for the built-in labelled enumeration (`2^21` graphs at 7).
pub const LABELED_LIMIT: usize = 7;

pub const DEFAULT_WITNESS_CAP: usize = 100;

/// Graphs per checkpoint record when reading graph6 files.
pub const CHECKPOINT_INTERVAL: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphSource {
    /// Every labelled graph on `n` vertices, in ascending edge-mask order.
    Labeled(usize),
    /// One graph6 string per line, in file order.
    Graph6File(PathBuf),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphStream {
    pub source: GraphSource,
    pub connected_only: bool,
}

impl GraphStream {
    pub fn labeled(n: usize, connected_only: bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parameter("order must be at least 1".into()));
        }
        if n > LABELED_LIMIT {
            return Err(Error::Capability { what: "labelled enumeration (use a graph6 file)", limit: LABELED_LIMIT, n });
        }
        Ok(GraphStream { source: GraphSource::Labeled(n), connected_only })
    }

    pub fn graph6_file(path: impl Into<PathBuf>) -> Self {
        GraphStream { source: GraphSource::Graph6File(path.into()), connected_only: true }
    }

    /// Materializes the stream; meant for small orders and tests.
    pub fn collect_graphs(&self) -> Result<Vec<Graph>> {
        match &self.source {
            GraphSource::Labeled(n) => Ok((0..1u64 << (n * (n - 1) / 2))
                .map(|m| Graph::from_edge_mask(*n, m).expect("mask within range"))
                .filter(|g| !self.connected_only || g.is_connected())
                .collect()),
            GraphSource::Graph6File(path) => {
                let reader = BufReader::new(File::open(path)?);
                let mut out = Vec::new();
                for item in crate::graph6::read_graph6(reader) {
                    let (_, g) = item?;
                    if !self.connected_only || g.is_connected() {
                        out.push(g);
                    }
                }
                Ok(out)
            }
        }
    }
}

/// All labelled connected graphs on `n ≤ 7` vertices.
pub fn enumerate_labeled_connected(n: usize) -> Result<GraphStream> {
    GraphStream::labeled(n, true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub threads: usize,
    /// Witnesses kept per extreme.
    pub witness_cap: usize,
    /// Sidecar file receiving one JSON line per checkpoint (graph6 files only).
    pub checkpoint: Option<PathBuf>,
    /// Continue from the last record of `checkpoint`.
    pub resume: bool,
    pub checkpoint_interval: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            threads: 1,
            witness_cap: DEFAULT_WITNESS_CAP,
            checkpoint: None,
            resume: false,
            checkpoint_interval: CHECKPOINT_INTERVAL,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub graph6: String,
    pub edges: usize,
    pub min_degree: usize,
    pub max_degree: usize,
}

impl Witness {
    fn of(g: &Graph) -> Self {
        let s = g.stats();
        Witness {
            graph6: to_graph6(g).expect("search orders fit graph6"),
            edges: s.edges,
            min_degree: s.min_degree,
            max_degree: s.max_degree,
        }
    }
}

/// Running extreme: value, number of graphs attaining it, distinct witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extreme {
    pub value: u64,
    pub attained: u64,
    pub witnesses: Vec<Witness>,
}

impl Extreme {
    fn push(&mut self, g: &Graph, cap: usize) {
        self.attained += 1;
        if self.witnesses.len() < cap {
            let w = Witness::of(g);
            if !self.witnesses.iter().any(|x| x.graph6 == w.graph6) {
                self.witnesses.push(w);
            }
        }
    }

    fn absorb(&mut self, later: Extreme, cap: usize) {
        self.attained += later.attained;
        let mut seen: HashSet<String> = self.witnesses.iter().map(|w| w.graph6.clone()).collect();
        for w in later.witnesses {
            if self.witnesses.len() >= cap {
                break;
            }
            if seen.insert(w.graph6.clone()) {
                self.witnesses.push(w);
            }
        }
    }
}

/// Partial search state; merging two folds in stream order is associative.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fold {
    pub order: Option<usize>,
    pub graphs: u64,
    pub min: Option<Extreme>,
    pub max: Option<Extreme>,
}

impl Fold {
    fn observe(&mut self, g: &Graph, value: u64, cap: usize) {
        self.order.get_or_insert(g.order());
        self.graphs += 1;
        match &mut self.min {
            Some(e) if value > e.value => {}
            Some(e) if value == e.value => e.push(g, cap),
            slot => {
                let mut e = Extreme { value, attained: 0, witnesses: Vec::new() };
                e.push(g, cap);
                *slot = Some(e);
            }
        }
        match &mut self.max {
            Some(e) if value < e.value => {}
            Some(e) if value == e.value => e.push(g, cap),
            slot => {
                let mut e = Extreme { value, attained: 0, witnesses: Vec::new() };
                e.push(g, cap);
                *slot = Some(e);
            }
        }
    }

    fn merge(&mut self, later: Fold, cap: usize) {
        if self.order.is_none() {
            self.order = later.order;
        }
        self.graphs += later.graphs;
        if let Some(b) = later.min {
            match &mut self.min {
                Some(a) if a.value < b.value => {}
                Some(a) if a.value == b.value => a.absorb(b, cap),
                slot => *slot = Some(b),
            }
        }
        if let Some(b) = later.max {
            match &mut self.max {
                Some(a) if a.value > b.value => {}
                Some(a) if a.value == b.value => a.absorb(b, cap),
                slot => *slot = Some(b),
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct SearchResult {
    pub n: usize,
    pub graphs: u64,
    pub m_connected: u64,
    pub M_connected: u64,
    /// Maximum over all graphs of order `n`, connected or not; needs the
    /// connected maxima of every smaller order.
    pub M_any: Option<u64>,
    pub min_attained: u64,
    pub max_attained: u64,
    pub min_witnesses: Vec<Witness>,
    pub max_witnesses: Vec<Witness>,
}

impl SearchResult {
    fn from_fold(fold: Fold, cap: usize) -> Result<Self> {
        let (Some(n), Some(min), Some(max)) = (fold.order, fold.min, fold.max) else {
            return Err(Error::Parameter("the graph stream is empty".into()));
        };
        let mut min_w = min.witnesses;
        let mut max_w = max.witnesses;
        min_w.truncate(cap);
        max_w.truncate(cap);
        Ok(SearchResult {
            n,
            graphs: fold.graphs,
            m_connected: min.value,
            M_connected: max.value,
            M_any: (n == 1).then_some(max.value),
            min_attained: min.attained,
            max_attained: max.attained,
            min_witnesses: min_w,
            max_witnesses: max_w,
        })
    }

    /// CSV row `n,m,M_connected,M_any` (`M_any` empty when unknown).
    pub fn csv_row(&self) -> String {
        let any = self.M_any.map(|v| v.to_string()).unwrap_or_default();
        format!("{},{},{},{}", self.n, self.m_connected, self.M_connected, any)
    }
}

pub const CSV_HEADER: &str = "n,m,M_connected,M_any";

fn count_of(g: &Graph) -> u64 {
    SystematicGraphCode::new(g.clone())
        .count_minimal(CountOptions { use_filters: true, ..Default::default() })
        .expect("search orders are within the enumeration limit")
        .m_count
}

fn fold_graphs<'a, I: Iterator<Item = &'a Graph>>(graphs: I, cap: usize) -> Fold {
    let mut fold = Fold::default();
    for g in graphs {
        fold.observe(g, count_of(g), cap);
    }
    fold
}

/// Runs `work(w)` for each worker index and merges the folds in index order.
fn parallel_fold<F>(workers: usize, cap: usize, work: F) -> Fold
where
    F: Fn(usize) -> Fold + Sync,
{
    // A witness among the first `cap` distinct ones of the whole stream is
    // also among the first `cap` distinct ones of its own range.
    let parts: Vec<Fold> = if workers <= 1 {
        vec![work(0)]
    } else {
        thread::scope(|scope| {
            let handles: Vec<_> = (0..workers).map(|w| {
                let work = &work;
                scope.spawn(move || work(w))
            }).collect();
            handles.into_iter().map(|h| h.join().expect("search worker panicked")).collect()
        })
    };
    let mut total = Fold::default();
    for p in parts {
        total.merge(p, cap);
    }
    total
}

fn split(len: u64, workers: usize, w: usize) -> (u64, u64) {
    let k = workers as u64;
    (len * w as u64 / k, len * (w as u64 + 1) / k)
}

/// Computes the extremal counts over a stream.
pub fn run_search(stream: &GraphStream, config: &SearchConfig) -> Result<SearchResult> {
    let workers = config.threads.max(1);
    let cap = config.witness_cap;
    let fold = match &stream.source {
        GraphSource::Labeled(n) => {
            let n = *n;
            check_cap("labelled enumeration (use a graph6 file)", LABELED_LIMIT, n)?;
            let masks = 1u64 << (n * (n - 1) / 2);
            parallel_fold(workers, cap, |w| {
                let (lo, hi) = split(masks, workers, w);
                let mut fold = Fold::default();
                for m in lo..hi {
                    let g = Graph::from_edge_mask(n, m).expect("mask within range");
                    if !stream.connected_only || g.is_connected() {
                        fold.observe(&g, count_of(&g), cap);
                    }
                }
                fold
            })
        }
        GraphSource::Graph6File(path) => search_file(path, stream.connected_only, config)?,
    };
    SearchResult::from_fold(fold, cap)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct Checkpoint {
    /// Last input line covered by `state`.
    pub line: usize,
    pub m: Option<u64>,
    pub M: Option<u64>,
    pub state: Fold,
}

/// Last record of a checkpoint sidecar, if any.
pub fn read_checkpoint(path: &Path) -> Result<Option<Checkpoint>> {
    if !path.exists() {
        return Ok(None);
    }
    let reader = BufReader::new(File::open(path)?);
    let mut last = None;
    for (k, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let cp: Checkpoint = serde_json::from_str(&line)
            .map_err(|e| Error::Parse { offset: 0, message: format!("checkpoint line {}: {e}", k + 1) })?;
        last = Some(cp);
    }
    Ok(last)
}

fn search_file(path: &Path, connected_only: bool, config: &SearchConfig) -> Result<Fold> {
    let workers = config.threads.max(1);
    let cap = config.witness_cap;
    let interval = config.checkpoint_interval.max(1);
    let (mut total, skip) = match (&config.checkpoint, config.resume) {
        (Some(cp), true) => match read_checkpoint(cp)? {
            Some(c) => (c.state, c.line),
            None => (Fold::default(), 0),
        },
        _ => (Fold::default(), 0),
    };
    let mut sidecar = match &config.checkpoint {
        Some(p) => Some(OpenOptions::new().create(true).append(true).open(p)?),
        None => None,
    };
    let mut order = total.order;
    let reader = BufReader::new(File::open(path)?);
    let mut lines = reader.lines().enumerate();
    let mut done = false;
    while !done {
        let mut chunk: Vec<Graph> = Vec::new();
        let mut last_line = skip;
        while chunk.len() < interval {
            let Some((idx, line)) = lines.next() else {
                done = true;
                break;
            };
            let line_no = idx + 1;
            if line_no <= skip {
                continue;
            }
            last_line = line_no;
            let line = line?;
            let text = line.trim_end_matches('\r');
            if text.trim().is_empty() {
                continue;
            }
            let g = parse_graph6(text).map_err(|e| match e {
                Error::Parse { offset, message } => Error::Parse { offset, message: format!("line {line_no}: {message}") },
                other => other,
            })?;
            check_cap("count_minimal", crate::code::ENUMERATION_LIMIT, g.order())?;
            match order {
                None => order = Some(g.order()),
                Some(n) if n != g.order() => {
                    return Err(Error::MixedOrder { line: line_no, expected: n, found: g.order() })
                }
                _ => {}
            }
            if !connected_only || g.is_connected() {
                chunk.push(g);
            }
        }
        let chunk_ref = &chunk;
        let part = parallel_fold(workers, cap, |w| {
            let (lo, hi) = split(chunk_ref.len() as u64, workers, w);
            fold_graphs(chunk_ref[lo as usize..hi as usize].iter(), cap)
        });
        total.merge(part, cap);
        if let Some(f) = sidecar.as_mut() {
            if last_line > skip && (!done || !chunk.is_empty()) {
                let cp = Checkpoint {
                    line: last_line,
                    m: total.min.as_ref().map(|e| e.value),
                    M: total.max.as_ref().map(|e| e.value),
                    state: total.clone(),
                };
                let json = serde_json::to_string(&cp).map_err(|e| Error::Io(e.to_string()))?;
                writeln!(f, "{json}")?;
                f.flush()?;
            }
        }
    }
    Ok(total)
}

/// Maximum over all graphs of order `n` from the connected maxima
/// `connected_max[j - 1]` of orders `j = 1..=n`, using additivity over components.
pub fn compose_disconnected_max(connected_max: &[u64], n: usize) -> Result<u64> {
    if n == 0 || connected_max.len() < n {
        return Err(Error::Parameter(format!(
            "need connected maxima for orders 1..={n}, got {}",
            connected_max.len()
        )));
    }
    let mut any = vec![0u64; n + 1];
    for k in 1..=n {
        let mut best = connected_max[k - 1];
        for j in 1..k {
            best = best.max(connected_max[j - 1] + any[k - j]);
        }
        any[k] = best;
    }
    Ok(any[n])
}

/// Labelled searches for every order `1..=max_n`, with `M_any` filled in.
pub fn search_table(max_n: usize, config: &SearchConfig) -> Result<Vec<SearchResult>> {
    check_cap("labelled enumeration (use a graph6 file)", LABELED_LIMIT, max_n)?;
    let mut rows: Vec<SearchResult> = Vec::with_capacity(max_n);
    for n in 1..=max_n {
        let mut r = run_search(&enumerate_labeled_connected(n)?, config)?;
        let mut mc: Vec<u64> = rows.iter().map(|r| r.M_connected).collect();
        mc.push(r.M_connected);
        r.M_any = Some(compose_disconnected_max(&mc, n)?);
        rows.push(r);
    }
    Ok(rows)
}

/// Fills in `M_any` from the connected maxima of the smaller orders.
pub fn attach_disconnected_max(result: &mut SearchResult, smaller: &[u64]) -> Result<()> {
    let mut mc = smaller.to_vec();
    mc.truncate(result.n - 1);
    mc.push(result.M_connected);
    result.M_any = Some(compose_disconnected_max(&mc, result.n)?);
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremeSummary {
    pub value: u64,
    pub attained: u64,
    pub listed: usize,
    pub edges: (usize, usize),
    pub min_degree: (usize, usize),
    pub max_degree: (usize, usize),
    pub graph6: Vec<String>,
}

impl ExtremeSummary {
    fn of(value: u64, attained: u64, ws: &[Witness]) -> Self {
        let range = |f: fn(&Witness) -> usize| {
            (ws.iter().map(f).min().unwrap_or(0), ws.iter().map(f).max().unwrap_or(0))
        };
        ExtremeSummary {
            value,
            attained,
            listed: ws.len(),
            edges: range(|w| w.edges),
            min_degree: range(|w| w.min_degree),
            max_degree: range(|w| w.max_degree),
            graph6: ws.iter().map(|w| w.graph6.clone()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub n: usize,
    pub min: ExtremeSummary,
    pub max: ExtremeSummary,
}

pub fn witness_report(result: &SearchResult) -> WitnessReport {
    WitnessReport {
        n: result.n,
        min: ExtremeSummary::of(result.m_connected, result.min_attained, &result.min_witnesses),
        max: ExtremeSummary::of(result.M_connected, result.max_attained, &result.max_witnesses),
    }
}

impl std::fmt::Display for WitnessReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "n = {}", self.n)?;
        for (name, e) in [("min", &self.min), ("max", &self.max)] {
            writeln!(
                f,
                "{name}: M = {} attained by {} graph(s), {} listed; edges {}..{}, min degree {}..{}, max degree {}..{}",
                e.value, e.attained, e.listed, e.edges.0, e.edges.1, e.min_degree.0, e.min_degree.1,
                e.max_degree.0, e.max_degree.1
            )?;
            for g in &e.graph6 {
                writeln!(f, "  {g}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labeled_connected_counts() {
        let counts: Vec<usize> =
            (1..=4).map(|n| enumerate_labeled_connected(n).unwrap().collect_graphs().unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 4, 38]);
        assert!(matches!(enumerate_labeled_connected(8), Err(Error::Capability { .. })));
        assert_eq!(GraphStream::labeled(3, false).unwrap().collect_graphs().unwrap().len(), 8);
    }

    #[test]
    fn small_searches() {
        let r = run_search(&enumerate_labeled_connected(3).unwrap(), &SearchConfig::default()).unwrap();
        assert_eq!((r.m_connected, r.M_connected), (4, 7));
        assert_eq!(r.max_witnesses.len(), 1);
        assert_eq!(r.max_witnesses[0].graph6, "Bw");
        assert_eq!(r.min_attained, 3);
        let r = run_search(&enumerate_labeled_connected(5).unwrap(), &SearchConfig::default()).unwrap();
        assert_eq!((r.m_connected, r.M_connected), (9, 26));
        assert!(r.max_witnesses.iter().any(|w| w.edges == 10));
    }

    #[test]
    fn composition_examples() {
        assert_eq!(compose_disconnected_max(&[1, 2, 7, 14], 4).unwrap(), 14);
        assert_eq!(compose_disconnected_max(&[1, 2], 2).unwrap(), 2);
        assert_eq!(compose_disconnected_max(&[1, 2, 7, 14, 26, 47], 6).unwrap(), 47);
        // A weak connected value is beaten by a split.
        assert_eq!(compose_disconnected_max(&[1, 2, 7, 6], 4).unwrap(), 8);
        assert!(compose_disconnected_max(&[1], 2).is_err());
    }

    #[test]
    fn witness_cap_and_threads() {
        let stream = enumerate_labeled_connected(4).unwrap();
        let cfg = SearchConfig { witness_cap: 3, ..Default::default() };
        let one = run_search(&stream, &cfg).unwrap();
        assert_eq!(one.min_witnesses.len(), 3);
        for threads in [2, 5] {
            let many = run_search(&stream, &SearchConfig { threads, ..cfg.clone() }).unwrap();
            assert_eq!(many, one);
        }
    }

    #[test]
    fn fold_merge_keeps_stream_order() {
        let gs = GraphStream::labeled(4, true).unwrap().collect_graphs().unwrap();
        let whole = fold_graphs(gs.iter(), 5);
        let mut left = fold_graphs(gs[..17].iter(), 5);
        left.merge(fold_graphs(gs[17..].iter(), 5), 5);
        assert_eq!(left, whole);
    }
}
