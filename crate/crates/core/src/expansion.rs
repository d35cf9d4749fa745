//! Static expansion: one copy `(v, t)` of each vertex per time step, movement
//! arcs for temporal arcs and free waiting arcs between consecutive copies.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::distances::{Distance, DistanceVector};
use crate::graph::{ArcId, GraphError, TemporalGraph, Time, VertexId};
use crate::kind::DistanceKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpansionEdge {
    Move(ArcId),
    Wait,
}

#[derive(Debug, Clone)]
pub struct StaticExpansion {
    pub vertices: usize,
    pub lifetime: Time,
    /// `(from node, to node, arc id)`
    pub movement: Vec<(usize, usize, ArcId)>,
    pub waiting: Vec<(usize, usize)>,
}

impl StaticExpansion {
    pub fn node(&self, v: VertexId, t: Time) -> usize {
        v * self.lifetime as usize + (t as usize - 1)
    }

    pub fn node_count(&self) -> usize {
        self.vertices * self.lifetime as usize
    }

    /// `(vertex, time)` of a node index.
    pub fn copy_of(&self, node: usize) -> (VertexId, Time) {
        let tau = self.lifetime as usize;
        (node / tau, (node % tau) as Time + 1)
    }
}

pub fn static_expansion(graph: &TemporalGraph) -> StaticExpansion {
    let tau = graph.lifetime();
    let mut x = StaticExpansion {
        vertices: graph.vertex_count(),
        lifetime: tau,
        movement: Vec::with_capacity(graph.arc_count()),
        waiting: Vec::new(),
    };
    for (id, a) in graph.arcs().iter().enumerate() {
        x.movement
            .push((x.node(a.tail, a.t_start), x.node(a.head, a.t_arrive), id));
    }
    for v in 0..graph.vertex_count() {
        for t in 1..tau {
            x.waiting.push((x.node(v, t), x.node(v, t + 1)));
        }
    }
    x
}

/// Dijkstra result on the expansion from `(root, 1)`.
#[derive(Debug, Clone)]
pub struct ExpansionTree {
    pub dist: Vec<Option<u64>>,
    pub parent: Vec<Option<ExpansionEdge>>,
}

/// Shortest paths on the expansion with movement weight 1 (MT) or the
/// elapsed time (ST) and free waiting. Heap order is `(dist, node)`; a
/// parent changes only on strict improvement.
pub fn expansion_dijkstra(
    graph: &TemporalGraph,
    x: &StaticExpansion,
    root: VertexId,
    kind: DistanceKind,
) -> ExpansionTree {
    assert!(matches!(kind, DistanceKind::MT | DistanceKind::ST));
    let nodes = x.node_count();
    let mut adj: Vec<Vec<(usize, u64, ExpansionEdge)>> = vec![Vec::new(); nodes];
    for &(from, to, id) in &x.movement {
        let w = match kind {
            DistanceKind::MT => 1,
            _ => graph.arc(id).elapsed() as u64,
        };
        adj[from].push((to, w, ExpansionEdge::Move(id)));
    }
    for &(from, to) in &x.waiting {
        adj[from].push((to, 0, ExpansionEdge::Wait));
    }
    let mut dist = vec![None; nodes];
    let mut parent = vec![None; nodes];
    let mut heap = BinaryHeap::new();
    let src = x.node(root, 1);
    dist[src] = Some(0);
    heap.push(Reverse((0u64, src)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if dist[u] != Some(d) {
            continue;
        }
        for &(to, w, edge) in &adj[u] {
            let nd = d + w;
            if dist[to].is_none_or(|old| nd < old) {
                dist[to] = Some(nd);
                parent[to] = Some(edge);
                heap.push(Reverse((nd, to)));
            }
        }
    }
    ExpansionTree { dist, parent }
}

/// MT or ST distances read off the expansion: minimum over all copies.
pub fn expansion_distances(
    graph: &TemporalGraph,
    root: VertexId,
    kind: DistanceKind,
) -> Result<DistanceVector, GraphError> {
    graph.check_vertex(root)?;
    let x = static_expansion(graph);
    let tree = expansion_dijkstra(graph, &x, root, kind);
    let mut values = vec![Distance::INFINITY; graph.vertex_count()];
    for (node, d) in tree.dist.iter().enumerate() {
        if let Some(d) = *d {
            let (v, _) = x.copy_of(node);
            values[v] = values[v].min(Distance::finite(d));
        }
    }
    values[root] = Distance::ZERO;
    Ok(DistanceVector { root, kind, values })
}

/// Temporal arcs used as movement parents in the expansion tree.
pub fn collapse_tree(tree: &ExpansionTree) -> Vec<ArcId> {
    let mut arcs: Vec<ArcId> = tree
        .parent
        .iter()
        .filter_map(|p| match p {
            Some(ExpansionEdge::Move(id)) => Some(*id),
            _ => None,
        })
        .collect();
    arcs.sort_unstable();
    arcs.dedup();
    arcs
}
