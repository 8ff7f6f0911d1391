//! Closed-form counts for the named families and lower bounds from graph invariants.

use serde::{Deserialize, Serialize};

use crate::bits::{binom, iter_bits};
use crate::code::{CountOptions, SystematicGraphCode};
use crate::error::{check_cap, Error, Result};
use crate::graph::{FamilySpec, Graph};

/// Direct enumeration of odd class subsets is limited to this many classes.
pub const MULTIPARTITE_CLASS_LIMIT: usize = 24;

/// Largest order accepted by [`verify_formulas`].
pub const VERIFY_LIMIT: usize = 14;

/// Minimum number of minimal codewords over connected graphs of order `n`:
/// `floor((n + 1)^2 / 4)`, attained by the path.
pub fn formula_m(n: u64) -> u64 {
    (n + 1) * (n + 1) / 4
}

/// Number of minimal codewords of a family member, from its closed form.
///
/// A multipartite spec with two classes is evaluated by the bipartite formula
/// and one with a single class by the edgeless one.
#[allow(non_snake_case)]
pub fn formula_M(spec: &FamilySpec) -> Result<u64> {
    spec.validate()?;
    let c2 = |x: usize| binom(x as u64, 2);
    Ok(match spec {
        FamilySpec::Complete(1) => 1,
        FamilySpec::Complete(2) => 2,
        FamilySpec::Complete(n) => (1u64 << (n - 1)) + c2(*n),
        FamilySpec::CompleteBipartite(a, b) => (a + b) as u64 + c2(*a) + c2(*b),
        FamilySpec::CompleteMultipartite(parts) => match parts.len() {
            1 => parts[0] as u64,
            2 => formula_M(&FamilySpec::CompleteBipartite(parts[0], parts[1]))?,
            r => {
                check_cap("multipartite formula (classes)", MULTIPARTITE_CLASS_LIMIT, r)?;
                let n: usize = parts.iter().sum();
                let mut odd_products = 0u64;
                for u in 1u64..1 << r {
                    let k = u.count_ones();
                    if k >= 3 && k % 2 == 1 {
                        odd_products += iter_bits(u).map(|i| parts[i] as u64).product::<u64>();
                    }
                }
                n as u64 + c2(n) + odd_products
            }
        },
        FamilySpec::Path(n) => formula_m(*n as u64),
        FamilySpec::Cycle(n) => {
            let n = *n as u64;
            // Odd: the full cycle plus n(n - 1) shorter chains.
            if n.is_multiple_of(2) {
                (n * n - 2 * n + 4) / 2
            } else {
                n * n - n + 1
            }
        }
        FamilySpec::DoubleStar(a, b) => 2 + (a + b) as u64 + c2(a + 1) + c2(b + 1),
        FamilySpec::Edgeless(n) => *n as u64,
    })
}

/// Count of a graph from the counts of its connected components.
#[allow(non_snake_case)]
pub fn additive_M(component_counts: &[u64]) -> Result<u64> {
    if component_counts.is_empty() {
        return Err(Error::Parameter("need at least one component count".into()));
    }
    Ok(component_counts.iter().sum())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    /// `n`: every generator row is minimal.
    Trivial,
    /// `C(n+1, 2) - |E|` for diameter-2 graphs: singletons plus non-adjacent pairs.
    Diameter2,
    /// `a + b + C(a,2) + C(b,2)` from the colour classes of a spanning tree.
    SpanningTree,
    /// `n + C(Δ, 2) + t` from the maximum degree and the triangle count.
    DegreeTriangle,
}

impl BoundKind {
    pub const ALL: [BoundKind; 4] =
        [BoundKind::Trivial, BoundKind::Diameter2, BoundKind::SpanningTree, BoundKind::DegreeTriangle];

    pub fn name(self) -> &'static str {
        match self {
            BoundKind::Trivial => "trivial",
            BoundKind::Diameter2 => "diameter2",
            BoundKind::SpanningTree => "spanning_tree",
            BoundKind::DegreeTriangle => "degree_triangle",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Omitted {
    pub bound: BoundKind,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    /// graph6 string or family spec, when known.
    pub graph_id: Option<String>,
    pub order: usize,
    pub bounds: Vec<(BoundKind, u64)>,
    pub omitted: Vec<Omitted>,
    pub enumerated: Option<u64>,
}

impl BoundReport {
    pub fn get(&self, kind: BoundKind) -> Option<u64> {
        self.bounds.iter().find(|(k, _)| *k == kind).map(|&(_, v)| v)
    }

    /// `enumerated - bound`, when both are known.
    pub fn slack(&self, kind: BoundKind) -> Option<i64> {
        Some(self.enumerated? as i64 - self.get(kind)? as i64)
    }

    /// Every present bound is at most the enumerated count.
    pub fn is_sound(&self) -> bool {
        match self.enumerated {
            Some(m) => self.bounds.iter().all(|&(_, b)| b <= m),
            None => true,
        }
    }

    pub fn best(&self) -> u64 {
        self.bounds.iter().map(|&(_, b)| b).max().unwrap_or(0)
    }
}

/// Every applicable lower bound for `g`. Bounds that need a connected graph or
/// diameter 2 are omitted with a reason otherwise.
pub fn lower_bounds(g: &Graph) -> BoundReport {
    let stats = g.stats();
    let n = g.order() as u64;
    let mut bounds = vec![(BoundKind::Trivial, n)];
    let mut omitted = Vec::new();
    match stats.diameter {
        Some(2) => bounds.push((BoundKind::Diameter2, binom(n + 1, 2) - stats.edges as u64)),
        Some(d) => omitted.push(Omitted { bound: BoundKind::Diameter2, reason: format!("diameter is {d}, not 2") }),
        None => omitted.push(Omitted { bound: BoundKind::Diameter2, reason: "graph is disconnected".into() }),
    }
    match g.spanning_tree_bipartition() {
        Ok(bip) => {
            let (a, b) = (bip.a() as u64, bip.b() as u64);
            bounds.push((BoundKind::SpanningTree, a + b + binom(a, 2) + binom(b, 2)));
        }
        Err(_) => omitted.push(Omitted {
            bound: BoundKind::SpanningTree,
            reason: "graph is disconnected; apply per component".into(),
        }),
    }
    bounds.push((BoundKind::DegreeTriangle, n + binom(stats.max_degree as u64, 2) + stats.triangles));
    BoundReport { graph_id: None, order: g.order(), bounds, omitted, enumerated: None }
}

/// [`lower_bounds`] together with the enumerated count.
pub fn lower_bounds_checked(g: &Graph) -> Result<BoundReport> {
    let mut report = lower_bounds(g);
    let code = SystematicGraphCode::new(g.clone());
    report.enumerated = Some(code.count_minimal(CountOptions::default())?.m_count);
    Ok(report)
}

/// One formula-versus-enumeration comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRow {
    pub family: String,
    pub parameters: String,
    pub formula: u64,
    pub enumerated: u64,
    pub matches: bool,
}

impl VerifyRow {
    pub fn new(spec: &FamilySpec, formula: u64, enumerated: u64) -> Self {
        let text = spec.to_string();
        let (family, parameters) = text.split_once(':').expect("spec strings contain ':'");
        VerifyRow {
            family: family.to_string(),
            parameters: parameters.to_string(),
            formula,
            enumerated,
            matches: formula == enumerated,
        }
    }
}

/// Non-increasing partitions of `m` into at least `min_parts` parts.
pub fn partitions(m: usize, min_parts: usize) -> Vec<Vec<usize>> {
    fn go(left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=max.min(left)).rev() {
            cur.push(p);
            go(left - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, m, &mut Vec::new(), &mut out);
    out.retain(|p| p.len() >= min_parts);
    out
}

/// Every family member of order at most `max_n` covered by a closed form.
pub fn verification_specs(max_n: usize) -> Vec<FamilySpec> {
    let mut specs = Vec::new();
    for n in 1..=max_n {
        specs.push(FamilySpec::Complete(n));
    }
    for a in 1..max_n {
        for b in 1..=max_n - a {
            specs.push(FamilySpec::CompleteBipartite(a, b));
        }
    }
    for m in 3..=max_n {
        for p in partitions(m, 3) {
            specs.push(FamilySpec::CompleteMultipartite(p));
        }
    }
    for n in 1..=max_n {
        specs.push(FamilySpec::Path(n));
    }
    for n in 3..=max_n {
        specs.push(FamilySpec::Cycle(n));
    }
    for a in 1..max_n.saturating_sub(2) {
        for b in 1..=max_n - 2 - a {
            specs.push(FamilySpec::DoubleStar(a, b));
        }
    }
    for n in 1..=max_n {
        specs.push(FamilySpec::Edgeless(n));
    }
    specs
}

/// Compares `formula` against enumeration for each spec.
pub fn verify_specs<F>(specs: &[FamilySpec], threads: usize, formula: F) -> Result<Vec<VerifyRow>>
where
    F: Fn(&FamilySpec) -> Result<u64>,
{
    specs
        .iter()
        .map(|spec| {
            let code = SystematicGraphCode::new(spec.build()?);
            let enumerated = code.count_minimal(CountOptions { threads, ..Default::default() })?.m_count;
            Ok(VerifyRow::new(spec, formula(spec)?, enumerated))
        })
        .collect()
}

/// Formula-versus-enumeration rows for all families up to order `max_n`.
pub fn verify_formulas(max_n: usize, threads: usize) -> Result<Vec<VerifyRow>> {
    check_cap("verify", VERIFY_LIMIT, max_n)?;
    verify_specs(&verification_specs(max_n), threads, formula_M)
}
