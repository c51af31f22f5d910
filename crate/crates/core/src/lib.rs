//! Interval 6-colorings of (3,4)-biregular bipartite multigraphs through
//! proper path-factors.
//!
//! A proper path-factor is a spanning set of vertex-disjoint paths with both
//! ends on the degree-3 side and lengths 2, 4, 6 or 8. Every graph that has
//! one gets an interval 6-coloring from [`coloring::color_from_factor`].
//! Factors come from exact search, from an exact cover of X by Y-neighborhoods
//! ([`pathfactor::p7_factor_via_24`]), or from a mixed transversal of the
//! triple system left by a full 3-regular subgraph ([`transversal`]).

pub mod bigraph;
pub mod checker;
pub mod coloring;
pub mod error;
pub mod export;
pub mod generators;
pub mod hunt;
pub mod oracle;
pub mod pathfactor;
pub mod transversal;

pub use bigraph::{BipartiteMultigraph, EdgeId, Part, VertexId};
pub use checker::{EdgeColoring, GraphPath, PathFactor, SubgraphCertificate};
pub use error::{Error, Result};
pub use pathfactor::{SearchConfig, SearchOutcome};
