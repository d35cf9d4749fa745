//! Optimal temporal out- and in-branchings on temporal graphs.

pub mod branching;
pub mod distances;
pub mod expansion;
pub mod fixtures;
pub mod format;
pub mod graph;
pub mod hardness;
pub mod kind;
pub mod oracle;
pub mod par;
pub mod random;
pub mod walk;

pub use distances::{single_source, single_source_ead, Distance, DistanceVector, EadVector};
pub use format::{parse_tg, TgDocument};
pub use graph::{ArcId, TemporalArc, TemporalGraph, Time, VertexId};
pub use kind::DistanceKind;
pub use walk::{walk_metrics, TemporalWalk, WalkMetrics};
