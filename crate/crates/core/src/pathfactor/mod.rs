//! Proper path-factors: the complement decomposition and P-graph used by the
//! coloring, the Eulerian P3 half-factors, the P7 construction from a
//! (2,4)-biregular subgraph, and exact searches.

mod eulerian;
pub(crate) mod pgraph;
mod search;

pub use eulerian::{
    find_y_cover, is_half_factor, p3_half_factor, p3_half_factor_classes, p7_factor_via_24,
    HalfFactor,
};
pub use pgraph::{
    build_pgraph, build_q, pgraph_violation, two_color_pgraph, PEdge, PEdgeKind, PGraph,
    QDecomposition, Tone, TwoColoring,
};
pub use search::{search_full_3regular, search_proper_path_factor, SearchConfig, DEFAULT_MAX_NODES};

use serde::Serialize;

/// Result of a bounded exact search. `Unknown` is never a negative answer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "certificate", rename_all = "lowercase")]
pub enum SearchOutcome<T> {
    Found(T),
    None,
    Unknown,
}

impl<T> SearchOutcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }

    pub fn is_none(&self) -> bool {
        matches!(self, SearchOutcome::None)
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, SearchOutcome::Unknown)
    }

    pub fn label(&self) -> &'static str {
        match self {
            SearchOutcome::Found(_) => "found",
            SearchOutcome::None => "none",
            SearchOutcome::Unknown => "unknown",
        }
    }
}

/// Outcome plus the number of search nodes expanded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport<T> {
    pub outcome: SearchOutcome<T>,
    pub nodes: u64,
}
