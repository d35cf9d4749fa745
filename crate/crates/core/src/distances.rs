//! Single-source temporal distances for all six criteria.
//!
//! One sweep over the arcs in nondecreasing start time handles every kind.
//! Each vertex carries a key (lower is better) summarising the walks that have
//! already arrived there; the value of leaving along an arc depends only on
//! that key and the arc. Arcs with zero elapsed time chain within a single time
//! step, so each step runs a small Dijkstra over them before scheduling the
//! arrivals of the slower arcs.
//!
//! | kind | key at a vertex        | score of an arc (lower is better) |
//! |------|------------------------|-----------------------------------|
//! | EA   | 0 if reached           | arrival                           |
//! | LD   | minus start            | key                               |
//! | FT   | minus start            | arrival + key                     |
//! | MT   | hops                   | key + 1                           |
//! | ST   | travelling time        | key + el                          |
//! | MW   | wait minus arrival     | key + start                       |

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::graph::{ArcId, GraphError, TemporalGraph, Time, VertexId};
use crate::kind::DistanceKind;
use crate::par;
use crate::walk::{metrics_unchecked, TemporalWalk, WalkError};

/// A distance or time value, or `+∞` for "unreachable".
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Distance(u64);

impl Distance {
    pub const INFINITY: Distance = Distance(u64::MAX);
    pub const ZERO: Distance = Distance(0);

    pub fn finite(value: u64) -> Self {
        assert!(
            value != u64::MAX,
            "value collides with the infinity sentinel"
        );
        Distance(value)
    }

    pub fn is_finite(self) -> bool {
        self != Self::INFINITY
    }

    pub fn value(self) -> Option<u64> {
        self.is_finite().then_some(self.0)
    }

    /// The finite value; panics on `+∞`.
    pub fn unwrap(self) -> u64 {
        self.value().expect("distance is infinite")
    }
}

impl From<u64> for Distance {
    fn from(value: u64) -> Self {
        Distance::finite(value)
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v}"),
            None => f.write_str("inf"),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.value().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Distance {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ok(Option::<u64>::deserialize(deserializer)?.map_or(Distance::INFINITY, Distance))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceVector {
    pub root: VertexId,
    pub kind: DistanceKind,
    pub values: Vec<Distance>,
}

impl DistanceVector {
    pub fn get(&self, v: VertexId) -> Distance {
        self.values[v]
    }

    pub fn reachable(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.values.len()).filter(|&v| self.values[v].is_finite())
    }
}

/// Earliest arrival among the walks realizing the distance; `0` at the root.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EadVector {
    pub root: VertexId,
    pub kind: DistanceKind,
    pub values: Vec<Distance>,
}

impl EadVector {
    pub fn get(&self, v: VertexId) -> Distance {
        self.values[v]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DistanceError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Walk(#[from] WalkError),
    #[error("walk starts at vertex {found}, expected the root {expected}")]
    WrongOrigin { expected: VertexId, found: VertexId },
}

/// Copies of the arcs grouped by start time for the sweep. Within a step,
/// zero-elapsed arcs are kept apart and grouped by tail, the rest stay in id
/// order. Reusable across roots and kinds.
#[derive(Debug, Clone)]
pub struct SweepOrder {
    steps: Vec<Step>,
}

#[derive(Debug, Clone, Default)]
struct Step {
    time: Time,
    zero: Vec<SweepArc>,
    rest: Vec<SweepArc>,
}

#[derive(Debug, Clone, Copy)]
struct SweepArc {
    tail: u32,
    head: u32,
    t_start: Time,
    t_arrive: Time,
}

impl SweepOrder {
    pub fn new(graph: &TemporalGraph) -> Self {
        assert!(
            graph.vertex_count() <= u32::MAX as usize,
            "too many vertices for the sweep"
        );
        let arcs = graph.arcs();
        let mut count = vec![0usize; graph.lifetime() as usize + 1];
        for a in arcs {
            count[a.t_start as usize] += usize::from(a.elapsed() > 0);
        }
        let mut steps: Vec<Step> = count
            .iter()
            .enumerate()
            .map(|(t, &c)| Step {
                time: t as Time,
                zero: Vec::new(),
                rest: Vec::with_capacity(c),
            })
            .collect();
        for a in arcs {
            let step = &mut steps[a.t_start as usize];
            let copy = SweepArc {
                tail: a.tail as u32,
                head: a.head as u32,
                t_start: a.t_start,
                t_arrive: a.t_arrive,
            };
            if a.elapsed() == 0 {
                step.zero.push(copy);
            } else {
                step.rest.push(copy);
            }
        }
        steps.retain(|s| !(s.zero.is_empty() && s.rest.is_empty()));
        for step in &mut steps {
            step.zero.sort_by_key(|a| a.tail);
        }
        SweepOrder { steps }
    }
}

const NONE: i64 = i64::MAX;

/// Distances and EAD values together, as computed by one sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingleSource {
    pub dist: DistanceVector,
    pub ead: EadVector,
}

/// Runs the sweep and returns both the distance and EAD vectors.
pub fn single_source_full(
    graph: &TemporalGraph,
    root: VertexId,
    kind: DistanceKind,
) -> Result<SingleSource, GraphError> {
    graph.check_vertex(root)?;
    Ok(sweep(graph, &SweepOrder::new(graph), root, kind))
}

pub fn single_source(
    graph: &TemporalGraph,
    root: VertexId,
    kind: DistanceKind,
) -> Result<DistanceVector, GraphError> {
    single_source_full(graph, root, kind).map(|s| s.dist)
}

pub fn single_source_ead(
    graph: &TemporalGraph,
    root: VertexId,
    kind: DistanceKind,
) -> Result<EadVector, GraphError> {
    single_source_full(graph, root, kind).map(|s| s.ead)
}

/// Sweep with a precomputed arc order. `root` must exist.
pub fn sweep(
    graph: &TemporalGraph,
    plan: &SweepOrder,
    root: VertexId,
    kind: DistanceKind,
) -> SingleSource {
    use DistanceKind::*;
    let n = graph.vertex_count();
    let mut key = vec![NONE; n];
    // best score per head and the earliest arrival among arcs attaining it
    let mut best: Vec<(i64, Time)> = vec![(NONE, 0); n];
    let mut stamp = vec![usize::MAX; n];
    let mut first = vec![0usize; n];
    let mut pending: BinaryHeap<Reverse<(Time, i64, VertexId)>> = BinaryHeap::new();
    let mut heap: BinaryHeap<Reverse<(i64, VertexId)>> = BinaryHeap::new();
    let step_cost = if kind == MT { 1 } else { 0 };

    if matches!(kind, EA | MT | ST) {
        key[root] = 0;
    }

    for (g, step) in plan.steps.iter().enumerate() {
        let (t, zero) = (step.time, &step.zero);
        while let Some(&Reverse((ta, k, v))) = pending.peek() {
            if ta > t {
                break;
            }
            pending.pop();
            if k < key[v] {
                key[v] = k;
            }
        }
        if matches!(kind, LD | FT | MW) {
            key[root] = -(t as i64);
        }

        for (i, a) in zero.iter().enumerate() {
            let tail = a.tail as VertexId;
            if stamp[tail] != g {
                stamp[tail] = g;
                first[tail] = i;
                if key[tail] != NONE {
                    heap.push(Reverse((key[tail], tail)));
                }
            }
        }
        while let Some(Reverse((k, v))) = heap.pop() {
            if k > key[v] || stamp[v] != g {
                continue;
            }
            let mut i = first[v];
            while i < zero.len() && zero[i].tail as VertexId == v {
                let head = zero[i].head as VertexId;
                let nk = k + step_cost;
                if nk < key[head] {
                    key[head] = nk;
                    heap.push(Reverse((nk, head)));
                }
                i += 1;
            }
        }

        for a in zero.iter().chain(&step.rest) {
            let (tail, head) = (a.tail as VertexId, a.head as VertexId);
            let k = key[tail];
            if k == NONE {
                continue;
            }
            let el = (a.t_arrive - a.t_start) as i64;
            let ta = a.t_arrive as i64;
            let (s, arrival_key) = match kind {
                EA => (ta, 0),
                LD => (k, k),
                FT => (ta + k, k),
                MT => (k + 1, k + 1),
                ST => (k + el, k + el),
                MW => (k + a.t_start as i64, k - el),
            };
            let b = &mut best[head];
            if s < b.0 || (s == b.0 && a.t_arrive < b.1) {
                *b = (s, a.t_arrive);
            }
            if el > 0 {
                pending.push(Reverse((a.t_arrive, arrival_key, head)));
            }
        }
    }

    let mut ead: Vec<Distance> = best
        .iter()
        .map(|&(b, t)| {
            if b == NONE {
                Distance::INFINITY
            } else {
                Distance(t as u64)
            }
        })
        .collect();
    let mut values: Vec<Distance> = best
        .iter()
        .map(|&(b, _)| match b {
            NONE => Distance::INFINITY,
            b if kind == LD => Distance((-b) as u64),
            b => Distance(b as u64),
        })
        .collect();
    values[root] = if kind == LD {
        Distance(graph.lifetime() as u64 + 1)
    } else {
        Distance::ZERO
    };
    ead[root] = Distance::ZERO;
    SingleSource {
        dist: DistanceVector { root, kind, values },
        ead: EadVector {
            root,
            kind,
            values: ead,
        },
    }
}

/// Earliest arrival among the prefix-optimal walks, for the kinds where
/// prefix optimality of an extension depends only on the endpoint distances
/// (EA, LD, MT, ST). `None` for FT and MW.
///
/// This can be later than the plain EAD value: a walk realizing the distance
/// to `v` may pass through a vertex it does not reach optimally.
pub fn prefix_optimal_ead(graph: &TemporalGraph, dist: &DistanceVector) -> Option<EadVector> {
    use DistanceKind::*;
    let kind = dist.kind;
    if matches!(kind, FT | MW) {
        return None;
    }
    let root = dist.root;
    let tight = |id: ArcId| {
        let a = graph.arc(id);
        let (du, dv) = (dist.get(a.tail), dist.get(a.head));
        let (Some(du), Some(dv)) = (du.value(), dv.value()) else {
            return false;
        };
        match kind {
            EA => a.t_arrive as u64 == dv,
            MT => du + 1 == dv,
            ST => du + a.elapsed() as u64 == dv,
            _ if a.tail == root => a.t_start as u64 == dv,
            _ => du == dv,
        }
    };
    let n = graph.vertex_count();
    let mut arrival = vec![Distance::INFINITY; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    arrival[root] = Distance::ZERO;
    heap.push(Reverse((0u64, root)));
    while let Some(Reverse((t, u))) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        for &id in graph.out_arcs(u) {
            let a = graph.arc(id);
            if (a.t_start as u64) < t || a.head == root || !tight(id) {
                continue;
            }
            let ta = Distance(a.t_arrive as u64);
            if ta < arrival[a.head] {
                arrival[a.head] = ta;
                heap.push(Reverse((ta.0, a.head)));
            }
        }
    }
    Some(EadVector {
        root,
        kind,
        values: arrival,
    })
}

/// Distances from every root, one vector per vertex in id order.
pub fn all_roots(graph: &TemporalGraph, kind: DistanceKind) -> Vec<DistanceVector> {
    let plan = SweepOrder::new(graph);
    par::map_range(graph.vertex_count(), |r| sweep(graph, &plan, r, kind).dist)
}

/// Sequential version of [`all_roots`].
pub fn all_roots_seq(graph: &TemporalGraph, kind: DistanceKind) -> Vec<DistanceVector> {
    let plan = SweepOrder::new(graph);
    (0..graph.vertex_count())
        .map(|r| sweep(graph, &plan, r, kind).dist)
        .collect()
}

fn check_walk(
    graph: &TemporalGraph,
    root: VertexId,
    walk: &TemporalWalk,
) -> Result<(), DistanceError> {
    graph.check_vertex(root)?;
    walk.validate(graph)?;
    if walk.origin != root {
        return Err(DistanceError::WrongOrigin {
            expected: root,
            found: walk.origin,
        });
    }
    Ok(())
}

/// Whether each prefix (including the trivial one) realizes the distance to
/// its endpoint, given precomputed `dist` and optionally `ead`.
pub fn prefixes_optimal_against(
    graph: &TemporalGraph,
    walk: &TemporalWalk,
    dist: &DistanceVector,
    ead: Option<&EadVector>,
) -> bool {
    let tau = graph.lifetime();
    let mut at = walk.origin;
    for h in 0..=walk.arcs.len() {
        if h > 0 {
            at = graph.arc(walk.arcs[h - 1]).head;
        }
        let m = metrics_unchecked(graph, &walk.arcs[..h]);
        if Distance(m.value(dist.kind, tau)) != dist.get(at) {
            return false;
        }
        if let Some(ead) = ead {
            if Distance(m.t_arrive as u64) != ead.get(at) {
                return false;
            }
        }
    }
    true
}

pub fn is_prefix_optimal(
    graph: &TemporalGraph,
    root: VertexId,
    walk: &TemporalWalk,
    kind: DistanceKind,
) -> Result<bool, DistanceError> {
    check_walk(graph, root, walk)?;
    let dist = single_source(graph, root, kind)?;
    Ok(prefixes_optimal_against(graph, walk, &dist, None))
}

pub fn is_ead_prefix_optimal(
    graph: &TemporalGraph,
    root: VertexId,
    walk: &TemporalWalk,
    kind: DistanceKind,
) -> Result<bool, DistanceError> {
    check_walk(graph, root, walk)?;
    let s = single_source_full(graph, root, kind)?;
    Ok(prefixes_optimal_against(graph, walk, &s.dist, Some(&s.ead)))
}
