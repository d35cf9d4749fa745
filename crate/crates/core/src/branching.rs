//! Temporal out- and in-branchings: construction and verification.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::distances::{
    prefix_optimal_ead, prefixes_optimal_against, single_source_full, sweep, Distance, SweepOrder,
};
use crate::graph::{ArcId, GraphError, TemporalGraph, Time, VertexId};
use crate::kind::DistanceKind;
use crate::oracle::{
    for_each_walk_from, oracle_single_source, OracleError, WalkShape, DEFAULT_PATH_CAP,
};
use crate::walk::{TemporalWalk, WalkMetrics};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Walks lead from the root to each member.
    Out,
    /// Walks lead from each member to the root.
    In,
}

/// A branching given by one parent arc per non-root member.
///
/// For an out-branching the parent arc of `v` enters `v`; for an in-branching
/// it leaves `v` towards the root. `dist[v]` is the realized distance of the
/// member's walk and `time[v]` its arrival at `v` (out) or departure from `v`
/// (in); both are `+∞` for non-members and `time[root]` is 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Branching {
    pub root: VertexId,
    pub direction: Direction,
    pub kind: Option<DistanceKind>,
    pub parent: Vec<Option<ArcId>>,
    pub in_tree: Vec<bool>,
    pub dist: Vec<Distance>,
    pub time: Vec<Distance>,
}

impl Branching {
    /// The branching made of the root alone.
    pub fn trivial(n: usize, root: VertexId, direction: Direction) -> Self {
        let mut in_tree = vec![false; n];
        in_tree[root] = true;
        let mut dist = vec![Distance::INFINITY; n];
        dist[root] = Distance::ZERO;
        let mut time = vec![Distance::INFINITY; n];
        time[root] = Distance::ZERO;
        Branching {
            root,
            direction,
            kind: None,
            parent: vec![None; n],
            in_tree,
            dist,
            time,
        }
    }

    pub fn members(&self) -> Vec<VertexId> {
        (0..self.in_tree.len())
            .filter(|&v| self.in_tree[v])
            .collect()
    }

    pub fn member_count(&self) -> usize {
        self.in_tree.iter().filter(|&&b| b).count()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.in_tree[v]
    }

    pub fn is_spanning(&self) -> bool {
        self.in_tree.iter().all(|&b| b)
    }

    /// Parent arcs in vertex order.
    pub fn arcs(&self) -> Vec<ArcId> {
        self.parent.iter().flatten().copied().collect()
    }

    /// The member's walk as a walk of the graph the branching points out of
    /// (the graph itself for out-branchings, its reverse for in-branchings).
    pub fn walk_to(&self, graph: &TemporalGraph, v: VertexId) -> Option<TemporalWalk> {
        if !self.in_tree[v] {
            return None;
        }
        let mut arcs = Vec::new();
        let mut at = v;
        while let Some(id) = self.parent[at] {
            arcs.push(id);
            at = match self.direction {
                Direction::Out => graph.arc(id).tail,
                Direction::In => graph.arc(id).head,
            };
            if arcs.len() > self.parent.len() {
                return None;
            }
        }
        arcs.reverse();
        Some(TemporalWalk::new(self.root, arcs))
    }

    /// Builds an out-branching from its parent arcs and fills in the realized
    /// distances and times.
    pub(crate) fn from_out_parents(
        graph: &TemporalGraph,
        root: VertexId,
        kind: DistanceKind,
        parent: Vec<Option<ArcId>>,
    ) -> Self {
        let metrics = tree_metrics(graph, root, &parent).expect("constructed parents form a tree");
        let tau = graph.lifetime();
        let n = graph.vertex_count();
        let mut b = Branching::trivial(n, root, Direction::Out);
        b.kind = Some(kind);
        for v in 0..n {
            if let Some(m) = metrics[v] {
                b.in_tree[v] = true;
                b.dist[v] = Distance::finite(m.value(kind, tau));
                b.time[v] = Distance::finite(m.t_arrive as u64);
            }
        }
        b.parent = parent;
        b
    }

    /// Reads an out-branching of `reverse(G)` as an in-branching of `G` for
    /// `kind` (the kind in `G`).
    pub(crate) fn into_in_branching(mut self, tau: Time, kind: DistanceKind) -> Self {
        self.direction = Direction::In;
        self.kind = Some(kind);
        let mirror = |d: Distance| Distance::finite(tau as u64 + 1 - d.unwrap());
        for v in 0..self.in_tree.len() {
            if !self.in_tree[v] {
                continue;
            }
            if matches!(kind, DistanceKind::EA | DistanceKind::LD) {
                self.dist[v] = mirror(self.dist[v]);
            }
            if v != self.root {
                self.time[v] = mirror(self.time[v]);
            }
        }
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TobViolation {
    #[error("arc id {arc} does not exist")]
    UnknownArc { arc: ArcId },
    #[error("root has incoming arc {arc}")]
    RootHasParent { arc: ArcId },
    #[error("vertex {vertex} has in-degree {count}, expected 1")]
    InDegree { vertex: VertexId, count: usize },
    #[error("arc {arc} is recorded as the parent of {vertex} but does not enter it")]
    WrongParent { vertex: VertexId, arc: ArcId },
    #[error("vertex {vertex} is not connected to the root")]
    NotConnected { vertex: VertexId },
    #[error("arc {arc} into vertex {vertex} departs before its tail is reached")]
    NotTemporal { vertex: VertexId, arc: ArcId },
    #[error("vertex count {found} does not match the graph ({expected})")]
    SizeMismatch { expected: usize, found: usize },
}

/// Metrics of each member's walk, or a structural violation.
fn tree_metrics(
    graph: &TemporalGraph,
    root: VertexId,
    parent: &[Option<ArcId>],
) -> Result<Vec<Option<WalkMetrics>>, TobViolation> {
    let n = graph.vertex_count();
    let mut children: Vec<Vec<ArcId>> = vec![Vec::new(); n];
    for (v, p) in parent.iter().enumerate() {
        if let Some(id) = *p {
            if id >= graph.arc_count() {
                return Err(TobViolation::UnknownArc { arc: id });
            }
            let a = graph.arc(id);
            if v == root {
                return Err(TobViolation::RootHasParent { arc: id });
            }
            if a.head != v {
                return Err(TobViolation::WrongParent { vertex: v, arc: id });
            }
            children[a.tail].push(id);
        }
    }
    let mut metrics: Vec<Option<WalkMetrics>> = vec![None; n];
    metrics[root] = Some(WalkMetrics::default());
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        let mu = metrics[u].expect("queued vertices have metrics");
        for &id in &children[u] {
            let a = graph.arc(id);
            if a.t_start < mu.t_arrive {
                return Err(TobViolation::NotTemporal {
                    vertex: a.head,
                    arc: id,
                });
            }
            let first = mu.length == 0;
            let t_start = if first { a.t_start } else { mu.t_start };
            metrics[a.head] = Some(WalkMetrics {
                t_start,
                t_arrive: a.t_arrive,
                duration: a.t_arrive - t_start,
                wait: if first {
                    0
                } else {
                    mu.wait + a.t_start - mu.t_arrive
                },
                travelling_time: mu.travelling_time + a.elapsed(),
                length: mu.length + 1,
            });
            queue.push_back(a.head);
        }
    }
    for (v, p) in parent.iter().enumerate() {
        if p.is_some() && metrics[v].is_none() {
            return Err(TobViolation::NotConnected { vertex: v });
        }
    }
    Ok(metrics)
}

fn out_view(graph: &TemporalGraph, direction: Direction) -> std::borrow::Cow<'_, TemporalGraph> {
    match direction {
        Direction::Out => std::borrow::Cow::Borrowed(graph),
        Direction::In => std::borrow::Cow::Owned(graph.reverse()),
    }
}

fn check_structure(
    graph: &TemporalGraph,
    b: &Branching,
) -> Result<Vec<Option<WalkMetrics>>, TobViolation> {
    let n = graph.vertex_count();
    if b.parent.len() != n || b.in_tree.len() != n || b.root >= n {
        return Err(TobViolation::SizeMismatch {
            expected: n,
            found: b.parent.len(),
        });
    }
    for v in 0..n {
        let want = usize::from(b.in_tree[v] && v != b.root);
        let got = usize::from(b.parent[v].is_some());
        if v == b.root {
            if let Some(arc) = b.parent[v] {
                return Err(TobViolation::RootHasParent { arc });
            }
        } else if want != got {
            return Err(TobViolation::InDegree {
                vertex: v,
                count: got,
            });
        }
    }
    if !b.in_tree[b.root] {
        return Err(TobViolation::InDegree {
            vertex: b.root,
            count: 0,
        });
    }
    tree_metrics(graph, b.root, &b.parent)
}

/// Checks that `b` is a temporal branching of `graph`: the root has no parent,
/// every other member exactly one, and each member's walk is temporal.
pub fn verify_tob(graph: &TemporalGraph, b: &Branching) -> Result<(), TobViolation> {
    let view = out_view(graph, b.direction);
    check_structure(&view, b).map(|_| ())
}

/// Builds an out-branching from a bare arc set, checking the in-degree
/// conditions on the subgraph it spans (the root plus all arc endpoints).
pub fn tob_from_arcs(
    graph: &TemporalGraph,
    root: VertexId,
    arcs: &[ArcId],
) -> Result<Branching, TobViolation> {
    let n = graph.vertex_count();
    let mut indeg = vec![0usize; n];
    let mut touched = vec![false; n];
    let mut parent = vec![None; n];
    touched[root] = true;
    for &id in arcs {
        if id >= graph.arc_count() {
            return Err(TobViolation::UnknownArc { arc: id });
        }
        let a = graph.arc(id);
        if a.head == root {
            return Err(TobViolation::RootHasParent { arc: id });
        }
        indeg[a.head] += 1;
        touched[a.head] = true;
        touched[a.tail] = true;
        parent[a.head] = Some(id);
    }
    for v in 0..n {
        if touched[v] && v != root && indeg[v] != 1 {
            return Err(TobViolation::InDegree {
                vertex: v,
                count: indeg[v],
            });
        }
    }
    let metrics = tree_metrics(graph, root, &parent)?;
    let mut b = Branching::trivial(n, root, Direction::Out);
    for v in 0..n {
        if let Some(m) = metrics[v] {
            b.in_tree[v] = true;
            b.time[v] = Distance::finite(m.t_arrive as u64);
        }
    }
    b.parent = parent;
    Ok(b)
}

/// Builds an in-branching towards `root` from a bare arc set, with the same
/// checks as [`tob_from_arcs`] applied to the reverse graph.
pub fn tib_from_arcs(
    graph: &TemporalGraph,
    root: VertexId,
    arcs: &[ArcId],
) -> Result<Branching, TobViolation> {
    let mut b = tob_from_arcs(&graph.reverse(), root, arcs)?;
    let tau = graph.lifetime() as u64;
    b.direction = Direction::In;
    for v in 0..b.in_tree.len() {
        if b.in_tree[v] && v != root {
            b.time[v] = Distance::finite(tau + 1 - b.time[v].unwrap());
        }
    }
    Ok(b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DTobReport {
    pub members: usize,
    pub spanning: bool,
    /// Every member's walk also arrives at the earliest time possible among
    /// the walks realizing the distance.
    pub ead: bool,
    /// Every member's walk arrives at the earliest time possible among the
    /// prefix-optimal walks. `None` for FT and MW.
    pub prefix_ead: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DTobViolation {
    #[error(transparent)]
    Structure(#[from] TobViolation),
    #[error("walk to vertex {vertex} has value {found}, but the distance is {expected}")]
    NotRealizing {
        vertex: VertexId,
        expected: Distance,
        found: u64,
    },
}

/// Checks that every member's walk realizes `kind` from the root, and reports
/// spanning and EAD status. In-branchings are checked on the reverse graph.
pub fn verify_d_tob(
    graph: &TemporalGraph,
    b: &Branching,
    kind: DistanceKind,
) -> Result<DTobReport, DTobViolation> {
    let view = out_view(graph, b.direction);
    let kind = match b.direction {
        Direction::Out => kind,
        Direction::In => kind.under_reversal(),
    };
    let metrics = check_structure(&view, b)?;
    let s = single_source_full(&view, b.root, kind).map_err(|_| TobViolation::SizeMismatch {
        expected: view.vertex_count(),
        found: b.root,
    })?;
    let tau = view.lifetime();
    let prefix = prefix_optimal_ead(&view, &s.dist);
    let mut ead = true;
    let mut prefix_ead = prefix.is_some();
    for (v, m) in metrics.iter().enumerate() {
        let Some(m) = m else { continue };
        let found = m.value(kind, tau);
        if Distance::finite(found) != s.dist.get(v) {
            return Err(DTobViolation::NotRealizing {
                vertex: v,
                expected: s.dist.get(v),
                found,
            });
        }
        let arrival = Distance::finite(m.t_arrive as u64);
        if arrival != s.ead.get(v) {
            ead = false;
        }
        if prefix.as_ref().is_some_and(|p| arrival != p.get(v)) {
            prefix_ead = false;
        }
    }
    Ok(DTobReport {
        members: b.member_count(),
        spanning: b.is_spanning(),
        ead,
        prefix_ead: prefix.map(|_| prefix_ead),
    })
}

/// An EA out-branching over every vertex reachable from `root`. Vertices are
/// settled in order of earliest arrival; a parent arc is replaced only by one
/// arriving strictly earlier, or equally early with a smaller id.
pub fn spanning_tob(graph: &TemporalGraph, root: VertexId) -> Result<Branching, GraphError> {
    graph.check_vertex(root)?;
    let n = graph.vertex_count();
    let mut ea: Vec<Option<Time>> = vec![None; n];
    let mut parent: Vec<Option<ArcId>> = vec![None; n];
    let mut settled = vec![false; n];
    let mut heap = BinaryHeap::new();
    ea[root] = Some(0);
    heap.push(Reverse((0, root)));
    while let Some(Reverse((t, u))) = heap.pop() {
        if settled[u] {
            continue;
        }
        settled[u] = true;
        for &id in graph.out_arcs(u) {
            let a = graph.arc(id);
            if a.t_start < t || settled[a.head] || a.head == root {
                continue;
            }
            let better = match (ea[a.head], parent[a.head]) {
                (None, _) => true,
                (Some(old), Some(p)) => a.t_arrive < old || (a.t_arrive == old && id < p),
                (Some(_), None) => false,
            };
            if better {
                ea[a.head] = Some(a.t_arrive);
                parent[a.head] = Some(id);
                heap.push(Reverse((a.t_arrive, a.head)));
            }
        }
    }
    Ok(Branching::from_out_parents(
        graph,
        root,
        DistanceKind::EA,
        parent,
    ))
}

/// Maximum MT out-branching, level by level: each vertex at hop distance `i`
/// takes the earliest-arriving arc from level `i - 1` that departs no earlier
/// than its tail is reached in the tree (ties by arc id).
pub fn max_mt_tob(graph: &TemporalGraph, root: VertexId) -> Result<Branching, GraphError> {
    graph.check_vertex(root)?;
    let d = single_source_full(graph, root, DistanceKind::MT)?.dist;
    Ok(max_mt_tob_with(graph, root, &d.values))
}

fn max_mt_tob_with(graph: &TemporalGraph, root: VertexId, d: &[Distance]) -> Branching {
    let n = graph.vertex_count();
    let mut levels: Vec<Vec<VertexId>> = Vec::new();
    for v in 0..n {
        if let Some(i) = d[v].value() {
            let i = i as usize;
            if levels.len() <= i {
                levels.resize(i + 1, Vec::new());
            }
            if v != root {
                levels[i].push(v);
            }
        }
    }
    let mut eamt: Vec<Option<Time>> = vec![None; n];
    eamt[root] = Some(0);
    let mut parent = vec![None; n];
    for (i, level) in levels.iter().enumerate().skip(1) {
        for &v in level {
            let mut best: Option<(Time, ArcId)> = None;
            for &id in graph.in_arcs(v) {
                let a = graph.arc(id);
                if d[a.tail] != Distance::finite(i as u64 - 1) {
                    continue;
                }
                let Some(ready) = eamt[a.tail] else { continue };
                if a.t_start < ready {
                    continue;
                }
                if best.is_none_or(|b| (a.t_arrive, id) < b) {
                    best = Some((a.t_arrive, id));
                }
            }
            if let Some((t, id)) = best {
                eamt[v] = Some(t);
                parent[v] = Some(id);
            }
        }
    }
    Branching::from_out_parents(graph, root, DistanceKind::MT, parent)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BranchingError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{kind} is not supported here: {reason}")]
    Unsupported {
        kind: DistanceKind,
        reason: &'static str,
    },
}

/// Maximum LD or ST out-branching. Vertices of each distance level are added in
/// order of arrival using a queue of arcs keyed by `(arrival, arc id)`.
pub fn max_ld_st_tob(
    graph: &TemporalGraph,
    root: VertexId,
    kind: DistanceKind,
) -> Result<Branching, BranchingError> {
    if !matches!(kind, DistanceKind::LD | DistanceKind::ST) {
        return Err(BranchingError::Unsupported {
            kind,
            reason: "this construction handles LD and ST only",
        });
    }
    graph.check_vertex(root)?;
    let d = sweep(graph, &SweepOrder::new(graph), root, kind).dist;
    Ok(max_ld_st_tob_with(graph, root, kind, &d.values))
}

fn max_ld_st_tob_with(
    graph: &TemporalGraph,
    root: VertexId,
    kind: DistanceKind,
    d: &[Distance],
) -> Branching {
    let n = graph.vertex_count();
    let is_st = kind == DistanceKind::ST;
    let mut values: Vec<u64> = (0..n)
        .filter(|&v| v != root)
        .filter_map(|v| d[v].value())
        .collect();
    values.sort_unstable();
    values.dedup();
    // level index per vertex; the root sits below every level
    let mut level = vec![usize::MAX; n];
    let mut members_of: Vec<Vec<VertexId>> = vec![Vec::new(); values.len()];
    for v in 0..n {
        if v == root {
            continue;
        }
        if let Some(x) = d[v].value() {
            let i = values.binary_search(&x).expect("value is listed");
            level[v] = i;
            members_of[i].push(v);
        }
    }
    let root_dist = |u: VertexId| -> u64 {
        if u == root {
            0
        } else {
            d[u].unwrap()
        }
    };

    let mut root_arcs: Vec<Vec<ArcId>> = vec![Vec::new(); values.len()];
    if !is_st {
        for &id in graph.out_arcs(root) {
            let a = graph.arc(id);
            let i = level[a.head];
            if i != usize::MAX && values[i] == a.t_start as u64 {
                root_arcs[i].push(id);
            }
        }
    }

    let mut ead: Vec<Option<Time>> = vec![None; n];
    ead[root] = Some(0);
    let mut parent = vec![None; n];
    let mut queue: BinaryHeap<Reverse<(Time, ArcId)>> = BinaryHeap::new();
    for (i, level_members) in members_of.iter().enumerate() {
        queue.clear();
        if is_st {
            for &v in level_members {
                for &id in graph.in_arcs(v) {
                    let tail = graph.arc(id).tail;
                    if tail == root || level[tail] < i {
                        queue.push(Reverse((graph.arc(id).t_arrive, id)));
                    }
                }
            }
        } else {
            for &id in &root_arcs[i] {
                queue.push(Reverse((graph.arc(id).t_arrive, id)));
            }
        }
        let di = values[i];
        while let Some(Reverse((t, id))) = queue.pop() {
            let a = graph.arc(id);
            let Some(ready) = ead[a.tail] else { continue };
            if a.t_start < ready || ead[a.head].is_some() {
                continue;
            }
            if is_st && a.elapsed() as u64 + root_dist(a.tail) != di {
                continue;
            }
            ead[a.head] = Some(t);
            parent[a.head] = Some(id);
            for &out in graph.out_arcs(a.head) {
                let b = graph.arc(out);
                if level[b.head] == i {
                    queue.push(Reverse((b.t_arrive, out)));
                }
            }
        }
    }
    Branching::from_out_parents(graph, root, kind, parent)
}

/// Maximum in-branching for `kind` towards `root`, computed as an
/// out-branching of the reverse graph. FT and MW are not handled here.
pub fn max_d_tib(
    graph: &TemporalGraph,
    root: VertexId,
    kind: DistanceKind,
) -> Result<Branching, BranchingError> {
    graph.check_vertex(root)?;
    let rev = graph.reverse();
    let out = match kind.under_reversal() {
        DistanceKind::EA => spanning_tob(&rev, root)?,
        DistanceKind::MT => max_mt_tob(&rev, root)?,
        k @ (DistanceKind::LD | DistanceKind::ST) => max_ld_st_tob(&rev, root, k)?,
        k => {
            return Err(BranchingError::Unsupported {
                kind: k,
                reason: "maximum FT and MW branchings are NP-hard; use the exhaustive oracle",
            })
        }
    };
    Ok(out.into_in_branching(graph.lifetime(), kind))
}

/// Exact vertex set of a maximum `kind` out-branching for LD, MT or ST: the
/// vertices reached by some prefix-optimal path, found by enumerating paths
/// and checking them against brute-force distances.
pub fn max_dtob_vertexset_oracle(
    graph: &TemporalGraph,
    root: VertexId,
    kind: DistanceKind,
) -> Result<Vec<VertexId>, OracleError> {
    let (dist, _) = oracle_single_source(graph, root, kind)?;
    let mut hit = vec![false; graph.vertex_count()];
    hit[root] = true;
    let mut walk = TemporalWalk::trivial(root);
    for_each_walk_from(
        graph,
        root,
        WalkShape::Path,
        DEFAULT_PATH_CAP,
        |arcs, end| {
            if hit[end] {
                return;
            }
            walk.arcs.clear();
            walk.arcs.extend_from_slice(arcs);
            if prefixes_optimal_against(graph, &walk, &dist, None) {
                hit[end] = true;
            }
        },
    )?;
    Ok((0..hit.len()).filter(|&v| hit[v]).collect())
}

/// Maximum FT or MW out-branching in the polynomial regimes: `τ = 1`, or
/// `τ ∈ {2, 3}` with every arc taking at least one step. `None` otherwise.
pub fn ft_mw_poly_cases(
    graph: &TemporalGraph,
    root: VertexId,
    kind: DistanceKind,
) -> Result<Option<Branching>, BranchingError> {
    if !matches!(kind, DistanceKind::FT | DistanceKind::MW) {
        return Err(BranchingError::Unsupported {
            kind,
            reason: "only FT and MW have these special cases",
        });
    }
    graph.check_vertex(root)?;
    let tau = graph.lifetime();
    let n = graph.vertex_count();
    let mut parent: Vec<Option<ArcId>> = vec![None; n];
    if tau == 1 {
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &id in graph.out_arcs(u) {
                let v = graph.arc(id).head;
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = Some(id);
                    queue.push_back(v);
                }
            }
        }
    } else if (tau == 2 || tau == 3) && graph.min_elapsed_at_least(1) {
        let mut taken = vec![false; n];
        taken[root] = true;
        let take_root_arcs = |s: Time,
                              t: Time,
                              taken: &mut Vec<bool>,
                              parent: &mut Vec<Option<ArcId>>| {
            let mut added = Vec::new();
            for &id in graph.out_arcs(root) {
                let a = graph.arc(id);
                if a.t_start == s && a.t_arrive == t && !taken[a.head] && parent[a.head].is_none() {
                    parent[a.head] = Some(id);
                    added.push(a.head);
                }
            }
            for &v in &added {
                taken[v] = true;
            }
            added
        };
        let first = take_root_arcs(1, 2, &mut taken, &mut parent);
        if tau == 3 {
            take_root_arcs(2, 3, &mut taken, &mut parent);
            take_root_arcs(1, 3, &mut taken, &mut parent);
            for &u in &first {
                for &id in graph.out_arcs(u) {
                    let a = graph.arc(id);
                    if a.t_start == 2 && a.t_arrive == 3 && !taken[a.head] {
                        let better = parent[a.head].is_none_or(|p| id < p);
                        if better {
                            parent[a.head] = Some(id);
                        }
                    }
                }
            }
        }
    } else {
        return Ok(None);
    }
    Ok(Some(Branching::from_out_parents(graph, root, kind, parent)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use DistanceKind::*;

    fn arc_id(g: &TemporalGraph, u: &str, v: &str, s: Time, t: Time) -> ArcId {
        let (u, v) = (g.vertex(u).unwrap(), g.vertex(v).unwrap());
        g.arcs()
            .iter()
            .position(|a| a.tail == u && a.head == v && a.t_start == s && a.t_arrive == t)
            .unwrap()
    }

    fn labels(g: &TemporalGraph, b: &Branching) -> Vec<String> {
        b.members()
            .iter()
            .map(|&v| g.label(v).to_string())
            .collect()
    }

    fn g1_ea_branching(g: &TemporalGraph) -> Vec<ArcId> {
        vec![
            arc_id(g, "1", "4", 1, 2),
            arc_id(g, "4", "5", 2, 4),
            arc_id(g, "5", "3", 4, 4),
            arc_id(g, "4", "2", 4, 5),
        ]
    }

    #[test]
    fn single_vertex_branching_is_valid() {
        let g = fixtures::g1();
        let b = Branching::trivial(5, 0, Direction::Out);
        assert_eq!(verify_tob(&g, &b), Ok(()));
    }

    #[test]
    fn g1_ea_branching_verifies_and_extra_arc_breaks_it() {
        let g = fixtures::g1();
        let root = g.vertex("1").unwrap();
        let b = tob_from_arcs(&g, root, &g1_ea_branching(&g)).unwrap();
        assert!(b.is_spanning());
        assert_eq!(verify_tob(&g, &b), Ok(()));
        let mut arcs = g1_ea_branching(&g);
        arcs.push(arc_id(&g, "2", "3", 9, 10));
        assert_eq!(
            tob_from_arcs(&g, root, &arcs),
            Err(TobViolation::InDegree {
                vertex: g.vertex("3").unwrap(),
                count: 2
            })
        );
    }

    #[test]
    fn mt_branching_checked_as_ld_fails_at_four() {
        let g = fixtures::g1();
        let root = g.vertex("1").unwrap();
        let arcs = [
            arc_id(&g, "1", "2", 6, 7),
            arc_id(&g, "1", "4", 1, 2),
            arc_id(&g, "1", "5", 5, 7),
            arc_id(&g, "5", "3", 8, 9),
        ];
        let b = tob_from_arcs(&g, root, &arcs).unwrap();
        assert!(verify_d_tob(&g, &b, MT).is_ok());
        let err = verify_d_tob(&g, &b, LD).unwrap_err();
        assert!(
            matches!(err, DTobViolation::NotRealizing { vertex, .. } if vertex == g.vertex("4").unwrap())
        );

        let alt = [arcs[0], arcs[1], arcs[2], arc_id(&g, "2", "3", 9, 10)];
        let b = tob_from_arcs(&g, root, &alt).unwrap();
        assert!(verify_d_tob(&g, &b, MT).is_ok());
    }

    #[test]
    fn spanning_tob_examples() {
        let g = fixtures::g1();
        let b = spanning_tob(&g, g.vertex("1").unwrap()).unwrap();
        assert!(b.is_spanning());
        let report = verify_d_tob(&g, &b, EA).unwrap();
        assert!(report.ead);

        let f = fixtures::no_ld_mt();
        assert!(spanning_tob(&f, f.vertex("r").unwrap())
            .unwrap()
            .is_spanning());

        let z = TemporalGraph::new(
            vec!["r".into(), "a".into(), "z".into()],
            vec![crate::graph::TemporalArc::new(0, 1, 1, 1)],
            1,
        )
        .unwrap();
        assert_eq!(spanning_tob(&z, 0).unwrap().members(), vec![0, 1]);
    }

    #[test]
    fn spanning_tob_handles_same_time_chains() {
        let g = TemporalGraph::from_labeled_arcs(
            &[
                ("b", "c", 2, 2),
                ("a", "b", 2, 2),
                ("c", "a", 2, 2),
                ("r", "a", 2, 2),
            ],
            None,
        )
        .unwrap();
        let b = spanning_tob(&g, g.vertex("r").unwrap()).unwrap();
        assert!(b.is_spanning());
        assert!(verify_d_tob(&g, &b, EA).is_ok());
    }

    #[test]
    fn max_mt_on_small_graphs() {
        let g = fixtures::g1();
        let root = g.vertex("1").unwrap();
        let b = max_mt_tob(&g, root).unwrap();
        assert!(b.is_spanning());
        let report = verify_d_tob(&g, &b, MT).unwrap();
        assert!(report.ead);
        let dist: Vec<u64> = ["2", "3", "4", "5"]
            .iter()
            .map(|v| b.dist[g.vertex(v).unwrap()].unwrap())
            .collect();
        assert_eq!(dist, vec![1, 2, 1, 1]);

        let f = fixtures::no_ld_mt();
        assert_eq!(
            labels(&f, &max_mt_tob(&f, f.vertex("r").unwrap()).unwrap()),
            ["r", "v", "x"]
        );

        let h = fixtures::mt_expansion();
        let b = max_mt_tob(&h, h.vertex("r").unwrap()).unwrap();
        assert!(b.is_spanning());
        assert!(b
            .arcs()
            .iter()
            .all(|&a| h.arc(a).t_start == 1 && h.arc(a).t_arrive == 1));
    }

    #[test]
    fn max_ld_st_on_small_graphs() {
        let g = fixtures::g1();
        let root = g.vertex("1").unwrap();
        for kind in [LD, ST] {
            let b = max_ld_st_tob(&g, root, kind).unwrap();
            assert!(b.is_spanning(), "{kind}");
            assert!(verify_d_tob(&g, &b, kind).unwrap().ead, "{kind}");
        }
        let c = fixtures::no_st();
        assert_eq!(
            labels(&c, &max_ld_st_tob(&c, c.vertex("r").unwrap(), ST).unwrap()),
            ["r", "v", "x"]
        );
        let f = fixtures::no_ld_mt();
        assert_eq!(
            labels(&f, &max_ld_st_tob(&f, f.vertex("r").unwrap(), LD).unwrap()),
            ["r", "v", "x"]
        );
        assert!(matches!(
            max_ld_st_tob(&g, root, MT),
            Err(BranchingError::Unsupported { .. })
        ));
    }

    #[test]
    fn vertexset_oracle_examples() {
        let f = fixtures::no_ld_mt();
        let r = f.vertex("r").unwrap();
        assert_eq!(max_dtob_vertexset_oracle(&f, r, MT).unwrap().len(), 3);
        let c = fixtures::no_st();
        assert_eq!(
            max_dtob_vertexset_oracle(&c, c.vertex("r").unwrap(), ST)
                .unwrap()
                .len(),
            3
        );
        let g = fixtures::g1();
        assert_eq!(
            max_dtob_vertexset_oracle(&g, g.vertex("1").unwrap(), LD)
                .unwrap()
                .len(),
            5
        );
    }

    #[test]
    fn tib_via_reverse() {
        let g = fixtures::g1();
        for kind in [EA, LD, MT, ST] {
            for root in 0..g.vertex_count() {
                let b = max_d_tib(&g, root, kind).unwrap();
                assert_eq!(b.direction, Direction::In);
                verify_d_tob(&g, &b, kind).unwrap();
            }
        }
        let mt = max_d_tib(&g, 2, MT).unwrap();
        assert_eq!(mt.members(), max_mt_tob(&g.reverse(), 2).unwrap().members());
        assert!(matches!(
            max_d_tib(&g, 0, FT),
            Err(BranchingError::Unsupported { .. })
        ));

        let single = TemporalGraph::new(vec!["a".into()], vec![], 1).unwrap();
        assert_eq!(max_d_tib(&single, 0, EA).unwrap().members(), vec![0]);
    }

    #[test]
    fn tib_values_are_in_graph_terms() {
        let g = fixtures::g1();
        let target = g.vertex("3").unwrap();
        let b = max_d_tib(&g, target, EA).unwrap();
        let one = g.vertex("1").unwrap();
        // EA(1,3) = 4
        if b.contains(one) {
            assert_eq!(b.dist[one], Distance::finite(4));
        }
        assert_eq!(b.dist[target], Distance::ZERO);
    }

    #[test]
    fn poly_cases() {
        let g =
            TemporalGraph::from_labeled_arcs(&[("r", "a", 1, 2), ("a", "b", 1, 2)], None).unwrap();
        let b = ft_mw_poly_cases(&g, 0, FT).unwrap().unwrap();
        assert_eq!(labels(&g, &b), ["r", "a"]);

        let g =
            TemporalGraph::from_labeled_arcs(&[("r", "a", 1, 1), ("a", "b", 1, 1)], None).unwrap();
        assert!(ft_mw_poly_cases(&g, 0, MW).unwrap().unwrap().is_spanning());

        let g = TemporalGraph::from_labeled_arcs(
            &[
                ("r", "a", 1, 2),
                ("r", "b", 2, 3),
                ("r", "c", 1, 3),
                ("a", "d", 2, 3),
                ("a", "b", 2, 3),
                ("r", "a", 2, 3),
            ],
            None,
        )
        .unwrap();
        for kind in [FT, MW] {
            let b = ft_mw_poly_cases(&g, 0, kind).unwrap().unwrap();
            assert!(b.is_spanning());
            verify_d_tob(&g, &b, kind).unwrap();
        }
        assert!(ft_mw_poly_cases(&fixtures::g1(), 0, FT).unwrap().is_none());
    }

    #[test]
    fn ld_walks_cannot_always_arrive_earliest() {
        // 1 is reached at 3 only through 2 at time 1, which is not 2's latest departure
        let g = TemporalGraph::from_labeled_arcs(
            &[
                ("r", "b", 2, 4),
                ("r", "b", 1, 1),
                ("b", "a", 2, 3),
                ("r", "a", 1, 4),
            ],
            Some(5),
        )
        .unwrap();
        let r = g.vertex("r").unwrap();
        let b = max_ld_st_tob(&g, r, LD).unwrap();
        let report = verify_d_tob(&g, &b, LD).unwrap();
        assert!(report.spanning);
        assert!(!report.ead);
        assert_eq!(report.prefix_ead, Some(true));
        assert_eq!(b.time[g.vertex("a").unwrap()], Distance::finite(4));
    }

    #[test]
    fn in_branchings_rebuild_from_their_arcs() {
        let g = fixtures::g1();
        for kind in [EA, LD, MT, ST] {
            let tib = max_d_tib(&g, 2, kind).unwrap();
            let again = tib_from_arcs(&g, 2, &tib.arcs()).unwrap();
            assert_eq!(again.direction, Direction::In);
            assert_eq!(again.members(), tib.members());
            assert_eq!(again.time, tib.time);
            assert!(verify_d_tob(&g, &again, kind).is_ok());
        }
    }
}
