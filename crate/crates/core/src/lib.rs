//! Minimal codewords of the binary code generated by `[I_n | A(G)]`, where
//! `A(G)` is the adjacency matrix of a simple graph `G` on `n` vertices.
//!
//! ```
//! use mincw::{CountOptions, FamilySpec, SystematicGraphCode};
//!
//! let c5 = FamilySpec::Cycle(5).build()?;
//! let code = SystematicGraphCode::new(c5);
//! let report = code.count_minimal(CountOptions::default())?;
//! assert_eq!(report.m_count, 21);
//! # Ok::<(), mincw::Error>(())
//! ```
//!
//! The modules follow the layers of the problem:
//!
//! * [`graph`] and [`graph6`]: graphs as adjacency bit rows, named families,
//!   and the graph routines the bounds need.
//! * [`code`]: codewords `c^S`, minimality by rank and by brute force, counting.
//! * [`formulas`]: closed forms for the families and lower bounds.
//! * [`search`]: extremal values over all graphs of small order.

pub mod bits;
pub mod code;
pub mod error;
pub mod formulas;
pub mod graph;
pub mod graph6;
pub mod search;

pub use code::{CountOptions, CountReport, Codeword, CodewordRecord, FilterStats, SystematicGraphCode, Verdict};
pub use error::{Error, Result};
pub use formulas::{additive_M, formula_M, formula_m, lower_bounds, BoundKind, BoundReport};
pub use graph::{build_family, Bipartition, FamilySpec, Graph, GraphStats};
pub use graph6::{parse_graph6, to_graph6};
pub use search::{
    compose_disconnected_max, enumerate_labeled_connected, run_search, witness_report, GraphStream, SearchConfig,
    SearchResult,
};

// The guide's code listings run as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/codewords.md")]
    mod codewords {}
    #[doc = include_str!("../../../book/src/families.md")]
    mod families {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/search.md")]
    mod search {}
    #[doc = include_str!("../../../book/src/graph6.md")]
    mod graph6 {}
}
