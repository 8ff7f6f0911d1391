//! The binary code generated by `[I_n | A(G)]` and its minimal codewords.
//!
//! Every nonzero codeword is `c^S`, the sum of the generator rows indexed by a
//! nonempty vertex set `S`. Its systematic half is the indicator of `S`; its
//! information half has bit `v` equal to the parity of `|N(v) ∩ S|`.
//!
//! Over F2 every equivalence class of codewords under scalar multiples is a
//! singleton, so the number of minimal codewords is the number of nonempty
//! `S` for which `c^S` is minimal.
//!
//! # Rank criterion
//!
//! The codewords vanishing outside `supp(c^S)` are the `c^T` with `T ⊆ S`
//! whose information half stays inside that of `c^S`. They form a subspace of
//! dimension `|S| - rank{ A_v & !c^S_I : v ∈ S }`, and `c^S` is minimal iff the
//! dimension is 1. Since those masked rows always sum to zero, this is the
//! same as the rows of `S` minus any single vertex being linearly independent.

use std::thread;

use serde::{Deserialize, Serialize};

use crate::bits::{full_mask, iter_bits};
use crate::error::{check_cap, Error, Result};
use crate::graph::Graph;

/// Largest order for full enumeration of the `2^n - 1` nonempty sets.
pub const ENUMERATION_LIMIT: usize = 32;

/// Largest order for the brute-force minimality oracle.
pub const ORACLE_LIMIT: usize = 20;

/// Zero-information sets are enumerated exhaustively only up to this kernel
/// dimension; above it only a kernel basis is cached.
const ZERO_SUM_FULL_DIM: u32 = 8;

/// A codeword `c^S`: the set `S` and the information half `c^S_I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Codeword {
    pub order: usize,
    pub s_mask: u64,
    pub i_mask: u64,
}

impl Codeword {
    /// Full support over the `2n` coordinates: systematic positions `0..n`,
    /// information positions `n..2n`.
    pub fn support(&self) -> u128 {
        self.s_mask as u128 | (self.i_mask as u128) << self.order
    }

    pub fn weight(&self) -> usize {
        (self.s_mask.count_ones() + self.i_mask.count_ones()) as usize
    }

    /// `2n` characters of `0`/`1`, systematic coordinates first.
    pub fn support_string(&self) -> String {
        let sup = self.support();
        (0..2 * self.order).map(|k| if sup >> k & 1 == 1 { '1' } else { '0' }).collect()
    }
}

/// Export form of a codeword: `s` uses 1-based vertex labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodewordRecord {
    pub s: Vec<usize>,
    pub support: String,
    pub weight: usize,
}

impl From<&Codeword> for CodewordRecord {
    fn from(c: &Codeword) -> Self {
        CodewordRecord {
            s: iter_bits(c.s_mask).map(|v| v + 1).collect(),
            support: c.support_string(),
            weight: c.weight(),
        }
    }
}

impl CodewordRecord {
    /// One text line: `[1,3] 101000`.
    pub fn to_line(&self) -> String {
        let s: Vec<String> = self.s.iter().map(|v| v.to_string()).collect();
        format!("[{}] {}", s.join(","), self.support)
    }
}

/// Outcome of a cheap sufficient test for non-minimality.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    NonMinimal,
    Unknown,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountOptions {
    /// Return every minimal `S` in ascending mask order.
    pub list: bool,
    /// Decide singletons, pairs, component splits and zero-sum subsets
    /// without the rank test.
    pub use_filters: bool,
    /// Re-run the rank test on every filter decision and count disagreements.
    pub cross_check: bool,
    /// Worker threads; 0 or 1 means single-threaded.
    pub threads: usize,
}

/// How the enumerated sets were decided.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterStats {
    pub accepted_singleton: u64,
    pub accepted_common_neighbor: u64,
    pub rejected_no_common_neighbor: u64,
    pub rejected_component_split: u64,
    pub rejected_zero_sum: u64,
    pub rank_tests: u64,
    pub rejected_rank: u64,
    /// Filter decisions contradicted by the rank test (cross-check mode only).
    pub disagreements: u64,
}

impl FilterStats {
    fn merge(&mut self, o: &FilterStats) {
        self.accepted_singleton += o.accepted_singleton;
        self.accepted_common_neighbor += o.accepted_common_neighbor;
        self.rejected_no_common_neighbor += o.rejected_no_common_neighbor;
        self.rejected_component_split += o.rejected_component_split;
        self.rejected_zero_sum += o.rejected_zero_sum;
        self.rank_tests += o.rank_tests;
        self.rejected_rank += o.rejected_rank;
        self.disagreements += o.disagreements;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub order: usize,
    /// Number of minimal codewords.
    pub m_count: u64,
    pub minimal_supports: Option<Vec<u64>>,
    pub filter_stats: FilterStats,
}

impl CountReport {
    /// Export records for the listed supports, if they were requested.
    pub fn records(&self, code: &SystematicGraphCode) -> Option<Vec<CodewordRecord>> {
        let supports = self.minimal_supports.as_ref()?;
        Some(
            supports
                .iter()
                .map(|&s| CodewordRecord::from(&Codeword { order: self.order, s_mask: s, i_mask: code.info_bits(s) }))
                .collect(),
        )
    }
}

/// The code `C(G)` with generator `[I_n | A(G)]`, held through the graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystematicGraphCode {
    graph: Graph,
    /// Component mask of each vertex.
    component_of: Vec<u64>,
    zero_sets: Vec<u64>,
}

impl SystematicGraphCode {
    pub fn new(graph: Graph) -> Self {
        let mut component_of = vec![0; graph.order()];
        for comp in graph.components() {
            for v in iter_bits(comp) {
                component_of[v] = comp;
            }
        }
        let zero_sets = zero_information_sets(&graph);
        SystematicGraphCode { graph, component_of, zero_sets }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// `k = n`.
    pub fn dimension(&self) -> usize {
        self.graph.order()
    }

    /// `t = n` information coordinates.
    pub fn redundancy(&self) -> usize {
        self.graph.order()
    }

    pub fn length(&self) -> usize {
        2 * self.graph.order()
    }

    pub fn generator_row(&self, i: usize) -> Codeword {
        Codeword { order: self.graph.order(), s_mask: 1 << i, i_mask: self.graph.row(i) }
    }

    /// `c^S_I`: XOR of the adjacency rows indexed by `S`.
    #[inline]
    pub fn info_bits(&self, s: u64) -> u64 {
        iter_bits(s).fold(0, |acc, v| acc ^ self.graph.row(v))
    }

    fn check_set(&self, s: u64) -> Result<()> {
        if s == 0 {
            return Err(Error::Parameter("S must be nonempty; the zero codeword is never minimal".into()));
        }
        if s & !self.graph.vertex_mask() != 0 {
            return Err(Error::Parameter(format!("S = {s:#x} contains vertices beyond n = {}", self.graph.order())));
        }
        Ok(())
    }

    pub fn codeword(&self, s: u64) -> Result<Codeword> {
        self.check_set(s)?;
        Ok(Codeword { order: self.graph.order(), s_mask: s, i_mask: self.info_bits(s) })
    }

    /// Minimality via the rank criterion.
    pub fn is_minimal_rank(&self, s: u64) -> Result<bool> {
        self.check_set(s)?;
        Ok(self.minimal_with_info(s, self.info_bits(s)))
    }

    #[inline]
    fn minimal_with_info(&self, s: u64, info: u64) -> bool {
        let keep = !info;
        // All rows but the highest vertex must be independent once masked.
        let rest = s & !(1u64 << (63 - s.leading_zeros()));
        let mut pivots = [0u64; 64];
        for v in iter_bits(rest) {
            let mut x = self.graph.row(v) & keep;
            loop {
                if x == 0 {
                    return false;
                }
                let h = 63 - x.leading_zeros() as usize;
                if pivots[h] == 0 {
                    pivots[h] = x;
                    break;
                }
                x ^= pivots[h];
            }
        }
        true
    }

    /// Rank over F2 of the generator columns outside `supp(c^S)`; `c^S` is
    /// minimal iff this equals `n - 1`.
    pub fn rank_outside_support(&self, s: u64) -> Result<usize> {
        let c = self.codeword(s)?;
        let n = self.graph.order();
        let mut columns = Vec::with_capacity(2 * n);
        for j in 0..n {
            if c.s_mask >> j & 1 == 0 {
                columns.push(1u64 << j);
            }
            if c.i_mask >> j & 1 == 0 {
                // Column j of A, read over the generator rows.
                columns.push((0..n).filter(|&i| self.graph.has_edge(i, j)).fold(0, |m, i| m | 1 << i));
            }
        }
        Ok(gf2_rank(columns))
    }

    /// Minimality straight from the definition: no nonzero codeword has a
    /// support strictly inside `supp(c^S)`. Enumerates all `2^n - 1` codewords.
    pub fn is_minimal_oracle(&self, s: u64) -> Result<bool> {
        let n = self.graph.order();
        check_cap("is_minimal_oracle", ORACLE_LIMIT, n)?;
        self.check_set(s)?;
        // Generator rows as 2n-bit vectors, built independently of `info_bits`.
        let rows: Vec<u128> = (0..n)
            .map(|i| {
                let info = (0..n).filter(|&j| self.graph.has_edge(i, j)).fold(0u128, |m, j| m | 1 << j);
                1u128 << i | info << n
            })
            .collect();
        let support = |t: u64| iter_bits(t).fold(0u128, |acc, i| acc ^ rows[i]);
        let target = support(s);
        for t in 1..=full_mask(n) {
            if t == s {
                continue;
            }
            let sup = support(t);
            if sup != target && sup & !target == 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Nonempty vertex sets whose rows XOR to zero, i.e. `c^T_I = 0`.
    /// Complete when the kernel of `A` is small, otherwise a kernel basis.
    pub fn zero_information_sets(&self) -> &[u64] {
        &self.zero_sets
    }

    /// Sound test: `NonMinimal` if a cached nonempty `T ⊊ S` has `c^T_I = 0`.
    pub fn filter_zero_sum(&self, s: u64) -> Verdict {
        if self.zero_sets.iter().any(|&t| t != s && t & !s == 0) {
            Verdict::NonMinimal
        } else {
            Verdict::Unknown
        }
    }

    /// Sound test: `NonMinimal` if `S` meets more than one component, since the
    /// part of `S` inside one component gives a strictly smaller support.
    pub fn filter_component_split(&self, s: u64) -> Verdict {
        let first = s.trailing_zeros() as usize;
        if s & !self.component_of[first] != 0 {
            Verdict::NonMinimal
        } else {
            Verdict::Unknown
        }
    }

    /// All 2-sets `{u, v}` with a common neighbour, ascending. These are exactly
    /// the minimal codewords with `|S| = 2`.
    pub fn minimal_pairs(&self) -> Vec<u64> {
        let n = self.graph.order();
        let mut out = Vec::new();
        for v in 1..n {
            for u in 0..v {
                if self.graph.row(u) & self.graph.row(v) != 0 {
                    out.push(1 << u | 1 << v);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Counts the minimal codewords by enumerating all nonempty `S`.
    ///
    /// `S` is stepped in Gray-code order so that `c^S_I` costs one XOR per
    /// step; listed supports are returned in ascending mask order.
    pub fn count_minimal(&self, opts: CountOptions) -> Result<CountReport> {
        let n = self.graph.order();
        check_cap("count_minimal", ENUMERATION_LIMIT, n)?;
        let total: u64 = 1 << n;
        let workers = opts.threads.max(1).min(total as usize);
        let mut parts: Vec<Partial> = if workers == 1 {
            vec![self.count_range(1, total, &opts)]
        } else {
            let bounds: Vec<u64> = (0..=workers as u64).map(|w| 1 + (total - 1) * w / workers as u64).collect();
            thread::scope(|scope| {
                let handles: Vec<_> = (0..workers)
                    .map(|w| {
                        let (lo, hi) = (bounds[w], bounds[w + 1]);
                        let opts = &opts;
                        scope.spawn(move || self.count_range(lo, hi, opts))
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().expect("counting worker panicked")).collect()
            })
        };
        let mut report = CountReport {
            order: n,
            m_count: 0,
            minimal_supports: opts.list.then(Vec::new),
            filter_stats: FilterStats::default(),
        };
        for p in parts.iter_mut() {
            report.m_count += p.count;
            report.filter_stats.merge(&p.stats);
            if let Some(list) = report.minimal_supports.as_mut() {
                list.append(&mut p.list);
            }
        }
        if let Some(list) = report.minimal_supports.as_mut() {
            list.sort_unstable();
        }
        Ok(report)
    }

    /// Gray-code indices `lo..hi`.
    fn count_range(&self, lo: u64, hi: u64, opts: &CountOptions) -> Partial {
        let mut part = Partial::default();
        if lo >= hi {
            return part;
        }
        let mut s = lo ^ (lo >> 1);
        let mut info = self.info_bits(s);
        let mut k = lo;
        loop {
            if self.decide(s, info, opts, &mut part.stats) {
                part.count += 1;
                if opts.list {
                    part.list.push(s);
                }
            }
            k += 1;
            if k >= hi {
                break;
            }
            let flip = k.trailing_zeros() as usize;
            s ^= 1 << flip;
            info ^= self.graph.row(flip);
        }
        part
    }

    fn decide(&self, s: u64, info: u64, opts: &CountOptions, stats: &mut FilterStats) -> bool {
        if opts.use_filters {
            if let Some(verdict) = self.filtered(s, stats) {
                if opts.cross_check && verdict != self.minimal_with_info(s, info) {
                    stats.disagreements += 1;
                }
                return verdict;
            }
        }
        stats.rank_tests += 1;
        let minimal = self.minimal_with_info(s, info);
        if !minimal {
            stats.rejected_rank += 1;
        }
        minimal
    }

    fn filtered(&self, s: u64, stats: &mut FilterStats) -> Option<bool> {
        match s.count_ones() {
            1 => {
                stats.accepted_singleton += 1;
                Some(true)
            }
            2 => {
                let u = s.trailing_zeros() as usize;
                let v = 63 - s.leading_zeros() as usize;
                if self.graph.row(u) & self.graph.row(v) != 0 {
                    stats.accepted_common_neighbor += 1;
                    Some(true)
                } else {
                    stats.rejected_no_common_neighbor += 1;
                    Some(false)
                }
            }
            _ => {
                if self.filter_component_split(s) == Verdict::NonMinimal {
                    stats.rejected_component_split += 1;
                    Some(false)
                } else if self.filter_zero_sum(s) == Verdict::NonMinimal {
                    stats.rejected_zero_sum += 1;
                    Some(false)
                } else {
                    None
                }
            }
        }
    }
}

#[derive(Default)]
struct Partial {
    count: u64,
    list: Vec<u64>,
    stats: FilterStats,
}

fn gf2_rank(vectors: Vec<u64>) -> usize {
    let mut pivots = [0u64; 64];
    let mut rank = 0;
    for mut x in vectors {
        while x != 0 {
            let h = 63 - x.leading_zeros() as usize;
            if pivots[h] == 0 {
                pivots[h] = x;
                rank += 1;
                break;
            }
            x ^= pivots[h];
        }
    }
    rank
}

/// Left kernel of `A` as vertex sets.
fn zero_information_sets(g: &Graph) -> Vec<u64> {
    let mut pivots: [(u64, u64); 64] = [(0, 0); 64];
    let mut basis = Vec::new();
    for v in 0..g.order() {
        let (mut x, mut tag) = (g.row(v), 1u64 << v);
        loop {
            if x == 0 {
                basis.push(tag);
                break;
            }
            let h = 63 - x.leading_zeros() as usize;
            if pivots[h].0 == 0 {
                pivots[h] = (x, tag);
                break;
            }
            x ^= pivots[h].0;
            tag ^= pivots[h].1;
        }
    }
    if basis.len() as u32 > ZERO_SUM_FULL_DIM {
        return basis;
    }
    let mut all = Vec::with_capacity((1 << basis.len()) - 1);
    for combo in 1u64..1 << basis.len() {
        all.push(iter_bits(combo).fold(0, |acc, i| acc ^ basis[i]));
    }
    all.sort_unstable();
    all
}

/// Whether every nonzero codeword of `C(G)` is minimal.
pub fn verify_all_minimal(g: &Graph) -> Result<bool> {
    check_cap("verify_all_minimal", ORACLE_LIMIT, g.order())?;
    let code = SystematicGraphCode::new(g.clone());
    let report = code.count_minimal(CountOptions::default())?;
    Ok(report.m_count == (1u64 << g.order()) - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::mask_of;
    use crate::graph::FamilySpec;

    fn code(s: &str) -> SystematicGraphCode {
        SystematicGraphCode::new(s.parse::<FamilySpec>().unwrap().build().unwrap())
    }

    fn count(s: &str) -> u64 {
        code(s).count_minimal(CountOptions::default()).unwrap().m_count
    }

    #[test]
    fn codeword_examples() {
        let k3 = code("complete:3");
        let c = k3.codeword(0b001).unwrap();
        assert_eq!((c.s_mask, c.i_mask), (0b001, 0b110));
        assert_eq!(c.support_string(), "100011");
        assert_eq!(c.weight(), 3);
        assert_eq!(k3.generator_row(0), c);
        let p3 = code("path:3");
        assert_eq!(p3.codeword(0b101).unwrap().i_mask, 0);
        let k6 = code("complete:6");
        for s in [0b000011u64, 0b110110, 0b111111] {
            assert_eq!(k6.codeword(s).unwrap().i_mask, s);
        }
        assert!(k3.codeword(0).is_err());
        assert!(k3.codeword(0b1000).is_err());
        assert_eq!((k3.dimension(), k3.redundancy(), k3.length()), (3, 3, 6));
    }

    #[test]
    fn rank_examples() {
        let k4 = code("complete:4");
        for v in 0..4 {
            assert!(k4.is_minimal_rank(1 << v).unwrap());
        }
        assert!(!k4.is_minimal_rank(0b1111).unwrap());
        assert!(code("complete:3").is_minimal_rank(0b111).unwrap());
        assert!(k4.is_minimal_rank(0).is_err());
    }

    #[test]
    fn literal_rank_criterion_agrees() {
        for fam in ["complete:4", "cycle:5", "doublestar:2,1", "bipartite:2,3", "path:6"] {
            let c = code(fam);
            let n = c.dimension();
            for s in 1..1u64 << n {
                let literal = c.rank_outside_support(s).unwrap() == n - 1;
                assert_eq!(literal, c.is_minimal_rank(s).unwrap(), "{fam} S={s:#b}");
            }
        }
    }

    #[test]
    fn oracle_examples() {
        let p3 = code("path:3");
        assert!(p3.is_minimal_oracle(0b101).unwrap());
        assert!(!p3.is_minimal_oracle(0b011).unwrap());
        let star = code("star:3");
        assert!(star.is_minimal_oracle(0b110).unwrap());
        let big = SystematicGraphCode::new(Graph::empty(21).unwrap());
        assert!(matches!(big.is_minimal_oracle(1), Err(Error::Capability { .. })));
    }

    #[test]
    fn count_examples() {
        assert_eq!(count("complete:3"), 7);
        assert_eq!(count("path:3"), 4);
        assert_eq!(count("cycle:5"), 21);
        let big = SystematicGraphCode::new(Graph::empty(33).unwrap());
        assert!(matches!(big.count_minimal(CountOptions::default()), Err(Error::Capability { .. })));
    }

    #[test]
    fn listing_is_ascending_and_threads_agree() {
        let c = code("cycle:7");
        let one = c.count_minimal(CountOptions { list: true, ..Default::default() }).unwrap();
        let list = one.minimal_supports.clone().unwrap();
        assert_eq!(list.len() as u64, one.m_count);
        assert!(list.windows(2).all(|w| w[0] < w[1]));
        for threads in [2, 3, 8] {
            let many = c.count_minimal(CountOptions { list: true, threads, ..Default::default() }).unwrap();
            assert_eq!(many, one);
        }
    }

    #[test]
    fn filters_agree_with_rank() {
        for fam in ["cycle:4", "complete:5", "doublestar:2,2", "multipartite:2,2,1", "edgeless:4"] {
            let c = code(fam);
            let plain = c.count_minimal(CountOptions { list: true, ..Default::default() }).unwrap();
            let filt = c
                .count_minimal(CountOptions { list: true, use_filters: true, cross_check: true, threads: 2 })
                .unwrap();
            assert_eq!(plain.minimal_supports, filt.minimal_supports, "{fam}");
            assert_eq!(filt.filter_stats.disagreements, 0);
        }
        let g = FamilySpec::Path(3).build().unwrap().disjoint_union(&FamilySpec::Path(2).build().unwrap()).unwrap();
        let c = SystematicGraphCode::new(g);
        let r = c.count_minimal(CountOptions { use_filters: true, ..Default::default() }).unwrap();
        assert_eq!(r.m_count, 6);
        assert!(r.filter_stats.rejected_component_split > 0);
    }

    #[test]
    fn zero_sum_examples() {
        let c4 = code("cycle:4");
        assert!(c4.zero_information_sets().contains(&0b0101));
        assert_eq!(c4.filter_zero_sum(0b1111), Verdict::NonMinimal);
        assert_eq!(c4.filter_zero_sum(0b0001), Verdict::Unknown);
        assert_eq!(code("complete:3").filter_zero_sum(0b111), Verdict::Unknown);
    }

    #[test]
    fn pair_examples() {
        assert_eq!(code("bipartite:2,3").minimal_pairs().len(), 4);
        assert_eq!(code("path:4").minimal_pairs(), vec![mask_of(&[0, 2]), mask_of(&[1, 3])]);
        assert!(code("complete:2").minimal_pairs().is_empty());
    }

    #[test]
    fn all_minimal_examples() {
        for (fam, expect) in [("complete:1", true), ("complete:3", true), ("path:3", false), ("complete:2", false)] {
            let g = fam.parse::<FamilySpec>().unwrap().build().unwrap();
            assert_eq!(verify_all_minimal(&g).unwrap(), expect, "{fam}");
        }
    }

    #[test]
    fn records_use_one_based_labels() {
        let c = code("path:3");
        let r = c.count_minimal(CountOptions { list: true, ..Default::default() }).unwrap();
        let recs = r.records(&c).unwrap();
        let lines: Vec<String> = recs.iter().map(|r| r.to_line()).collect();
        assert_eq!(lines, vec!["[1] 100010", "[2] 010101", "[3] 001010", "[1,3] 101000"]);
    }
}
