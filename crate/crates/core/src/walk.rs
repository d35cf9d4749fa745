//! Temporal walks and their metrics.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{ArcId, TemporalGraph, Time, VertexId};
use crate::kind::DistanceKind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WalkError {
    #[error("origin vertex {0} does not exist")]
    UnknownOrigin(VertexId),
    #[error("arc id {0} does not exist")]
    UnknownArc(ArcId),
    #[error("arc at position {position} does not start where the walk currently is")]
    NotChained { position: usize },
    #[error("arc at position {position} departs before the previous arc arrives")]
    NotTemporal { position: usize },
}

/// A walk given by its origin and arc sequence. The empty sequence is the
/// trivial walk at `origin`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TemporalWalk {
    pub origin: VertexId,
    pub arcs: Vec<ArcId>,
}

/// Metrics of a temporal walk; all zero for the trivial walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct WalkMetrics {
    pub t_start: Time,
    pub t_arrive: Time,
    pub duration: Time,
    pub wait: Time,
    pub travelling_time: Time,
    pub length: usize,
}

impl WalkMetrics {
    /// The value this walk attains for `kind`. LD of a trivial walk is `τ+1`.
    pub fn value(&self, kind: DistanceKind, lifetime: Time) -> u64 {
        match kind {
            DistanceKind::EA => self.t_arrive as u64,
            DistanceKind::FT => self.duration as u64,
            DistanceKind::LD => {
                if self.length == 0 {
                    lifetime as u64 + 1
                } else {
                    self.t_start as u64
                }
            }
            DistanceKind::MT => self.length as u64,
            DistanceKind::MW => self.wait as u64,
            DistanceKind::ST => self.travelling_time as u64,
        }
    }
}

impl TemporalWalk {
    pub fn new(origin: VertexId, arcs: Vec<ArcId>) -> Self {
        TemporalWalk { origin, arcs }
    }

    pub fn trivial(origin: VertexId) -> Self {
        TemporalWalk {
            origin,
            arcs: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// Checks chaining and temporality against `graph`.
    pub fn validate(&self, graph: &TemporalGraph) -> Result<(), WalkError> {
        if self.origin >= graph.vertex_count() {
            return Err(WalkError::UnknownOrigin(self.origin));
        }
        let mut at = self.origin;
        let mut ready: Time = 0;
        for (position, &id) in self.arcs.iter().enumerate() {
            if id >= graph.arc_count() {
                return Err(WalkError::UnknownArc(id));
            }
            let a = graph.arc(id);
            if a.tail != at {
                return Err(WalkError::NotChained { position });
            }
            if a.t_start < ready {
                return Err(WalkError::NotTemporal { position });
            }
            at = a.head;
            ready = a.t_arrive;
        }
        Ok(())
    }

    /// Final vertex. Assumes the walk is valid for `graph`.
    pub fn end(&self, graph: &TemporalGraph) -> VertexId {
        self.arcs
            .last()
            .map_or(self.origin, |&id| graph.arc(id).head)
    }

    /// `origin` followed by the head of every arc.
    pub fn vertices(&self, graph: &TemporalGraph) -> Vec<VertexId> {
        std::iter::once(self.origin)
            .chain(self.arcs.iter().map(|&id| graph.arc(id).head))
            .collect()
    }

    /// `true` when no vertex repeats.
    pub fn is_path(&self, graph: &TemporalGraph) -> bool {
        let vs = self.vertices(graph);
        let mut seen = vec![false; graph.vertex_count()];
        vs.into_iter()
            .all(|v| !std::mem::replace(&mut seen[v], true))
    }

    /// The prefix made of the first `h` arcs.
    pub fn prefix(&self, h: usize) -> TemporalWalk {
        TemporalWalk::new(self.origin, self.arcs[..h].to_vec())
    }

    /// The suffix after the first `h` arcs.
    pub fn suffix(&self, graph: &TemporalGraph, h: usize) -> TemporalWalk {
        let origin = if h == 0 {
            self.origin
        } else {
            graph.arc(self.arcs[h - 1]).head
        };
        TemporalWalk::new(origin, self.arcs[h..].to_vec())
    }

    /// Concatenation; the caller ensures `other` starts where `self` ends.
    pub fn concat(&self, other: &TemporalWalk) -> TemporalWalk {
        let mut arcs = self.arcs.clone();
        arcs.extend_from_slice(&other.arcs);
        TemporalWalk::new(self.origin, arcs)
    }

    /// The arcwise reversal, read as a walk in `graph.reverse()` (arc ids are
    /// shared between a graph and its reverse).
    pub fn reversed(&self, graph: &TemporalGraph) -> TemporalWalk {
        let mut arcs = self.arcs.clone();
        arcs.reverse();
        TemporalWalk::new(self.end(graph), arcs)
    }

    /// Drops every cycle, producing a temporal path with the same endpoints.
    pub fn extract_path(&self, graph: &TemporalGraph) -> TemporalWalk {
        let mut position = vec![usize::MAX; graph.vertex_count()];
        let mut stack: Vec<VertexId> = vec![self.origin];
        let mut arcs: Vec<ArcId> = Vec::new();
        position[self.origin] = 0;
        for &id in &self.arcs {
            let head = graph.arc(id).head;
            let seen_at = position[head];
            if seen_at != usize::MAX {
                for v in stack.drain(seen_at + 1..) {
                    position[v] = usize::MAX;
                }
                arcs.truncate(seen_at);
            } else {
                position[head] = stack.len();
                stack.push(head);
                arcs.push(id);
            }
        }
        TemporalWalk::new(self.origin, arcs)
    }
}

/// Computes the walk metrics, rejecting non-chaining or non-temporal walks.
pub fn walk_metrics(graph: &TemporalGraph, walk: &TemporalWalk) -> Result<WalkMetrics, WalkError> {
    walk.validate(graph)?;
    Ok(metrics_unchecked(graph, &walk.arcs))
}

/// Metrics of an arc sequence already known to be a temporal walk.
pub(crate) fn metrics_unchecked(graph: &TemporalGraph, arcs: &[ArcId]) -> WalkMetrics {
    let (Some(&first), Some(&last)) = (arcs.first(), arcs.last()) else {
        return WalkMetrics::default();
    };
    let t_start = graph.arc(first).t_start;
    let t_arrive = graph.arc(last).t_arrive;
    let travelling_time = arcs.iter().map(|&id| graph.arc(id).elapsed()).sum();
    let wait = arcs
        .windows(2)
        .map(|w| graph.arc(w[1]).t_start - graph.arc(w[0]).t_arrive)
        .sum();
    WalkMetrics {
        t_start,
        t_arrive,
        duration: t_arrive - t_start,
        wait,
        travelling_time,
        length: arcs.len(),
    }
}
