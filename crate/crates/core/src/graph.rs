//! Temporal multidigraph model and the structural transforms on it.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Dense 0-based vertex index, assigned by first appearance.
pub type VertexId = usize;
/// Index of an arc in the graph's arc list.
pub type ArcId = usize;
/// A time step in `[1, lifetime]`. Zero is reserved for "no time".
pub type Time = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TemporalArc {
    pub tail: VertexId,
    pub head: VertexId,
    pub t_start: Time,
    pub t_arrive: Time,
}

impl TemporalArc {
    pub fn new(tail: VertexId, head: VertexId, t_start: Time, t_arrive: Time) -> Self {
        TemporalArc {
            tail,
            head,
            t_start,
            t_arrive,
        }
    }

    /// Elapsed time `t_arrive - t_start`.
    #[inline]
    pub fn elapsed(&self) -> Time {
        self.t_arrive - self.t_start
    }
}

/// The first invariant a graph breaks, with the offending arc where there is one.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("lifetime must be at least 1")]
    ZeroLifetime,
    #[error("duplicate vertex label `{0}`")]
    DuplicateLabel(String),
    #[error("arc {arc}: endpoint does not reference an existing vertex")]
    UnknownEndpoint { arc: ArcId },
    #[error("arc {arc}: self-loop")]
    SelfLoop { arc: ArcId },
    #[error("arc {arc}: start time {t_start} is after arrival time {t_arrive}")]
    StartAfterArrival {
        arc: ArcId,
        t_start: Time,
        t_arrive: Time,
    },
    #[error("arc {arc}: times ({t_start},{t_arrive}) outside [1, {lifetime}]")]
    TimeOutOfRange {
        arc: ArcId,
        t_start: Time,
        t_arrive: Time,
        lifetime: Time,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("invalid temporal graph: {0}")]
    Invalid(#[from] Violation),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("vertex id {0} out of range")]
    VertexOutOfRange(VertexId),
}

/// An immutable temporal multidigraph `(V, A, τ)`.
///
/// Arc order is the canonical tie-break order for every algorithm in the crate.
#[derive(Debug, Clone)]
pub struct TemporalGraph {
    labels: Vec<String>,
    index: HashMap<String, VertexId>,
    arcs: Vec<TemporalArc>,
    lifetime: Time,
    out_arcs: Vec<Vec<ArcId>>,
    in_arcs: Vec<Vec<ArcId>>,
}

impl PartialEq for TemporalGraph {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.arcs == other.arcs && self.lifetime == other.lifetime
    }
}

impl Eq for TemporalGraph {}

impl TemporalGraph {
    /// Builds and validates a graph.
    pub fn new(
        labels: Vec<String>,
        arcs: Vec<TemporalArc>,
        lifetime: Time,
    ) -> Result<Self, GraphError> {
        let graph = Self::from_parts_unchecked(labels, arcs, lifetime);
        graph.validate()?;
        Ok(graph)
    }

    /// Builds a graph without checking invariants; use [`TemporalGraph::validate`]
    /// to obtain the violation report. Arcs with out-of-range endpoints are kept
    /// in the arc list but left out of the adjacency lists.
    pub fn from_parts_unchecked(
        labels: Vec<String>,
        arcs: Vec<TemporalArc>,
        lifetime: Time,
    ) -> Self {
        let n = labels.len();
        let mut index = HashMap::with_capacity(n);
        for (v, label) in labels.iter().enumerate() {
            index.entry(label.clone()).or_insert(v);
        }
        let mut out_arcs = vec![Vec::new(); n];
        let mut in_arcs = vec![Vec::new(); n];
        for (id, arc) in arcs.iter().enumerate() {
            if arc.tail < n && arc.head < n {
                out_arcs[arc.tail].push(id);
                in_arcs[arc.head].push(id);
            }
        }
        TemporalGraph {
            labels,
            index,
            arcs,
            lifetime,
            out_arcs,
            in_arcs,
        }
    }

    /// Convenience constructor from labelled arcs; vertices are numbered by
    /// first appearance. `lifetime = None` means max arrival time.
    pub fn from_labeled_arcs<S: AsRef<str>>(
        arcs: &[(S, S, Time, Time)],
        lifetime: Option<Time>,
    ) -> Result<Self, GraphError> {
        let mut labels: Vec<String> = Vec::new();
        let mut index: HashMap<String, VertexId> = HashMap::new();
        let mut intern = |name: &str| -> VertexId {
            if let Some(&v) = index.get(name) {
                return v;
            }
            let v = labels.len();
            labels.push(name.to_string());
            index.insert(name.to_string(), v);
            v
        };
        let arcs: Vec<TemporalArc> = arcs
            .iter()
            .map(|(u, v, s, t)| TemporalArc::new(intern(u.as_ref()), intern(v.as_ref()), *s, *t))
            .collect();
        let lifetime =
            lifetime.unwrap_or_else(|| arcs.iter().map(|a| a.t_arrive).max().unwrap_or(1));
        Self::new(labels, arcs, lifetime)
    }

    /// Checks every graph and arc invariant, reporting the first failure.
    pub fn validate(&self) -> Result<(), Violation> {
        if self.lifetime == 0 {
            return Err(Violation::ZeroLifetime);
        }
        if self.index.len() != self.labels.len() {
            let mut seen = HashMap::new();
            for label in &self.labels {
                if seen.insert(label.as_str(), ()).is_some() {
                    return Err(Violation::DuplicateLabel(label.clone()));
                }
            }
        }
        let n = self.labels.len();
        for (id, a) in self.arcs.iter().enumerate() {
            if a.tail >= n || a.head >= n {
                return Err(Violation::UnknownEndpoint { arc: id });
            }
            if a.tail == a.head {
                return Err(Violation::SelfLoop { arc: id });
            }
            if a.t_start > a.t_arrive {
                return Err(Violation::StartAfterArrival {
                    arc: id,
                    t_start: a.t_start,
                    t_arrive: a.t_arrive,
                });
            }
            if a.t_start < 1 || a.t_arrive > self.lifetime {
                return Err(Violation::TimeOutOfRange {
                    arc: id,
                    t_start: a.t_start,
                    t_arrive: a.t_arrive,
                    lifetime: self.lifetime,
                });
            }
        }
        Ok(())
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    #[inline]
    pub fn lifetime(&self) -> Time {
        self.lifetime
    }

    #[inline]
    pub fn arcs(&self) -> &[TemporalArc] {
        &self.arcs
    }

    #[inline]
    pub fn arc(&self, id: ArcId) -> &TemporalArc {
        &self.arcs[id]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v]
    }

    pub fn vertex(&self, label: &str) -> Option<VertexId> {
        self.index.get(label).copied()
    }

    /// Looks up a vertex by label, failing with [`GraphError::UnknownVertex`].
    pub fn require_vertex(&self, label: &str) -> Result<VertexId, GraphError> {
        self.vertex(label)
            .ok_or_else(|| GraphError::UnknownVertex(label.to_string()))
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<(), GraphError> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange(v))
        }
    }

    /// Outgoing arc ids of `v`, in arc order.
    pub fn out_arcs(&self, v: VertexId) -> &[ArcId] {
        &self.out_arcs[v]
    }

    /// Incoming arc ids of `v`, in arc order.
    pub fn in_arcs(&self, v: VertexId) -> &[ArcId] {
        &self.in_arcs[v]
    }

    /// The reverse graph: every arc `(u,v,s,t)` becomes `(v,u,τ-t+1,τ-s+1)`,
    /// keeping its arc id.
    pub fn reverse(&self) -> TemporalGraph {
        let tau = self.lifetime;
        let arcs = self
            .arcs
            .iter()
            .map(|a| TemporalArc::new(a.head, a.tail, tau - a.t_arrive + 1, tau - a.t_start + 1))
            .collect();
        Self::from_parts_unchecked(self.labels.clone(), arcs, tau)
    }

    /// Subgraph induced by `vertices`: keeps the arcs with both endpoints in the
    /// set, in their original order. Vertices keep their relative order.
    pub fn induced_subgraph(&self, vertices: &[VertexId]) -> Result<TemporalGraph, GraphError> {
        let n = self.vertex_count();
        let mut new_id = vec![usize::MAX; n];
        for &v in vertices {
            self.check_vertex(v)?;
            new_id[v] = 0;
        }
        let mut labels = Vec::new();
        for v in 0..n {
            if new_id[v] != usize::MAX {
                new_id[v] = labels.len();
                labels.push(self.labels[v].clone());
            }
        }
        let arcs = self
            .arcs
            .iter()
            .filter(|a| new_id[a.tail] != usize::MAX && new_id[a.head] != usize::MAX)
            .map(|a| TemporalArc::new(new_id[a.tail], new_id[a.head], a.t_start, a.t_arrive))
            .collect();
        Ok(Self::from_parts_unchecked(labels, arcs, self.lifetime))
    }

    /// Same as [`TemporalGraph::induced_subgraph`] with vertices given by label.
    pub fn induced_subgraph_by_label<S: AsRef<str>>(
        &self,
        labels: &[S],
    ) -> Result<TemporalGraph, GraphError> {
        let ids = labels
            .iter()
            .map(|l| self.require_vertex(l.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        self.induced_subgraph(&ids)
    }

    /// `true` if every arc has elapsed time at least `min`.
    pub fn min_elapsed_at_least(&self, min: Time) -> bool {
        self.arcs.iter().all(|a| a.elapsed() >= min)
    }

    /// `true` if no ordered vertex pair carries more than one arc.
    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::with_capacity(self.arcs.len());
        self.arcs.iter().all(|a| seen.insert((a.tail, a.head)))
    }

    /// Formats an arc as `tail->head(s,t)` using vertex labels.
    pub fn describe_arc(&self, id: ArcId) -> String {
        let a = &self.arcs[id];
        format!(
            "{}->{}({},{})",
            self.labels[a.tail], self.labels[a.head], a.t_start, a.t_arrive
        )
    }
}

impl fmt::Display for TemporalGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::format::write_tg(self, f)
    }
}
