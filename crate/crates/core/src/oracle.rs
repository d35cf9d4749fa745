//! Exhaustive enumeration of temporal paths, used as an independent oracle.

use thiserror::Error;

use crate::distances::{Distance, DistanceVector, EadVector};
use crate::graph::{ArcId, GraphError, TemporalGraph, Time, VertexId};
use crate::kind::DistanceKind;
use crate::walk::{metrics_unchecked, TemporalWalk};

pub const DEFAULT_PATH_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("enumeration exceeded the cap of {cap} walks")]
    Overflow { cap: usize },
}

/// Which walks the enumeration visits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WalkShape {
    /// No repeated vertex.
    Path,
    /// No repeated arc. Needed for MW, where dropping a cycle can add wait.
    Trail,
}

impl WalkShape {
    /// The shape whose optima coincide with walk optima for `kind`.
    pub fn for_kind(kind: DistanceKind) -> Self {
        if kind == DistanceKind::MW {
            WalkShape::Trail
        } else {
            WalkShape::Path
        }
    }
}

struct Dfs<'a, F> {
    graph: &'a TemporalGraph,
    shape: WalkShape,
    cap: usize,
    seen: usize,
    on_vertex: Vec<bool>,
    on_arc: Vec<bool>,
    arcs: Vec<ArcId>,
    visit: F,
}

impl<F: FnMut(&[ArcId], VertexId)> Dfs<'_, F> {
    fn go(&mut self, at: VertexId, ready: Time) -> Result<(), OracleError> {
        self.seen += 1;
        if self.seen > self.cap {
            return Err(OracleError::Overflow { cap: self.cap });
        }
        (self.visit)(&self.arcs, at);
        for &id in self.graph.out_arcs(at) {
            let a = *self.graph.arc(id);
            if a.t_start < ready {
                continue;
            }
            let blocked = match self.shape {
                WalkShape::Path => self.on_vertex[a.head],
                WalkShape::Trail => self.on_arc[id],
            };
            if blocked {
                continue;
            }
            self.on_vertex[a.head] = true;
            self.on_arc[id] = true;
            self.arcs.push(id);
            let r = self.go(a.head, a.t_arrive);
            self.arcs.pop();
            self.on_arc[id] = false;
            if self.shape == WalkShape::Path {
                self.on_vertex[a.head] = false;
            }
            r?;
        }
        Ok(())
    }
}

/// Calls `visit(arcs, end)` for every walk of the given shape starting at `u`,
/// the trivial one included. Fails once more than `cap` walks were seen.
pub fn for_each_walk_from(
    graph: &TemporalGraph,
    u: VertexId,
    shape: WalkShape,
    cap: usize,
    visit: impl FnMut(&[ArcId], VertexId),
) -> Result<(), OracleError> {
    graph.check_vertex(u)?;
    let mut dfs = Dfs {
        graph,
        shape,
        cap,
        seen: 0,
        on_vertex: vec![false; graph.vertex_count()],
        on_arc: vec![false; graph.arc_count()],
        arcs: Vec::new(),
        visit,
    };
    dfs.on_vertex[u] = true;
    dfs.go(u, 0)
}

fn collect(
    graph: &TemporalGraph,
    u: VertexId,
    v: VertexId,
    shape: WalkShape,
    cap: usize,
) -> Result<Vec<TemporalWalk>, OracleError> {
    graph.check_vertex(v)?;
    let mut out = Vec::new();
    for_each_walk_from(graph, u, shape, cap, |arcs, end| {
        if end == v {
            out.push(TemporalWalk::new(u, arcs.to_vec()));
        }
    })?;
    Ok(out)
}

/// Every temporal `(u, v)`-path, in depth-first arc-id order.
pub fn enumerate_temporal_paths(
    graph: &TemporalGraph,
    u: VertexId,
    v: VertexId,
) -> Result<Vec<TemporalWalk>, OracleError> {
    collect(graph, u, v, WalkShape::Path, DEFAULT_PATH_CAP)
}

pub fn enumerate_temporal_paths_capped(
    graph: &TemporalGraph,
    u: VertexId,
    v: VertexId,
    cap: usize,
) -> Result<Vec<TemporalWalk>, OracleError> {
    collect(graph, u, v, WalkShape::Path, cap)
}

/// Every temporal `(u, v)`-walk that repeats no arc.
pub fn enumerate_temporal_trails(
    graph: &TemporalGraph,
    u: VertexId,
    v: VertexId,
) -> Result<Vec<TemporalWalk>, OracleError> {
    collect(graph, u, v, WalkShape::Trail, DEFAULT_PATH_CAP)
}

/// Distances and EAD values from `root` by brute force over paths (trails for MW).
pub fn oracle_single_source(
    graph: &TemporalGraph,
    root: VertexId,
    kind: DistanceKind,
) -> Result<(DistanceVector, EadVector), OracleError> {
    oracle_single_source_capped(graph, root, kind, DEFAULT_PATH_CAP)
}

/// [`oracle_single_source`] with an explicit walk cap.
pub fn oracle_single_source_capped(
    graph: &TemporalGraph,
    root: VertexId,
    kind: DistanceKind,
    cap: usize,
) -> Result<(DistanceVector, EadVector), OracleError> {
    graph.check_vertex(root)?;
    let tau = graph.lifetime();
    let n = graph.vertex_count();
    // best (value, arrival) per vertex, compared as "better value, then earlier arrival"
    let mut best: Vec<Option<(u64, u64)>> = vec![None; n];
    for_each_walk_from(graph, root, WalkShape::for_kind(kind), cap, |arcs, end| {
        let m = metrics_unchecked(graph, arcs);
        let value = m.value(kind, tau);
        let arrival = m.t_arrive as u64;
        let better = match best[end] {
            None => true,
            Some((bv, ba)) => {
                let improves = if kind.maximizes() {
                    value > bv
                } else {
                    value < bv
                };
                improves || (value == bv && arrival < ba)
            }
        };
        if better {
            best[end] = Some((value, arrival));
        }
    })?;
    let dist = best
        .iter()
        .map(|b| b.map_or(Distance::INFINITY, |(v, _)| Distance::finite(v)))
        .collect();
    let ead = best
        .iter()
        .map(|b| b.map_or(Distance::INFINITY, |(_, a)| Distance::finite(a)))
        .collect();
    Ok((
        DistanceVector {
            root,
            kind,
            values: dist,
        },
        EadVector {
            root,
            kind,
            values: ead,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn same_endpoint_gives_only_the_trivial_path() {
        let g = fixtures::g1();
        let paths = enumerate_temporal_paths(&g, 0, 0).unwrap();
        assert_eq!(paths, vec![TemporalWalk::trivial(0)]);
    }

    #[test]
    fn no_ld_mt_has_a_unique_path_to_y() {
        let g = fixtures::no_ld_mt();
        let (r, y) = (g.vertex("r").unwrap(), g.vertex("y").unwrap());
        let paths = enumerate_temporal_paths(&g, r, y).unwrap();
        assert_eq!(paths.len(), 1);
        let labels: Vec<String> = paths[0].arcs.iter().map(|&a| g.describe_arc(a)).collect();
        assert_eq!(labels.len(), 3);
        assert!(paths[0].arcs.iter().all(|&a| g.arc(a).t_start == 1));
    }

    #[test]
    fn g1_paths_to_three_contain_the_highlighted_walks() {
        let g = fixtures::g1();
        let paths =
            enumerate_temporal_paths(&g, g.vertex("1").unwrap(), g.vertex("3").unwrap()).unwrap();
        let hops = |w: &TemporalWalk| -> Vec<(String, Time, Time)> {
            w.arcs
                .iter()
                .map(|&a| {
                    let arc = g.arc(a);
                    (g.label(arc.head).to_string(), arc.t_start, arc.t_arrive)
                })
                .collect()
        };
        let listed: Vec<_> = paths.iter().map(hops).collect();
        let s = |v: &str, a, b| (v.to_string(), a, b);
        let yellow = vec![s("4", 1, 2), s("5", 2, 4), s("3", 4, 4)];
        let red = vec![s("2", 6, 7), s("5", 7, 8), s("3", 8, 9)];
        let blue = vec![s("2", 6, 7), s("3", 9, 10)];
        let green = vec![s("5", 5, 7), s("3", 8, 9)];
        for w in [yellow, red, blue, green] {
            assert!(listed.contains(&w), "missing {w:?}");
        }
    }

    #[test]
    fn overflow_is_reported() {
        let g = fixtures::g1();
        assert_eq!(
            enumerate_temporal_paths_capped(&g, 0, 2, 3),
            Err(OracleError::Overflow { cap: 3 })
        );
    }

    #[test]
    fn trails_include_the_zero_wait_cycle() {
        let g = TemporalGraph::from_labeled_arcs(
            &[
                ("r", "a", 1, 2),
                ("a", "b", 2, 3),
                ("b", "a", 3, 4),
                ("a", "c", 4, 5),
            ],
            None,
        )
        .unwrap();
        assert_eq!(enumerate_temporal_paths(&g, 0, 3).unwrap().len(), 1);
        assert_eq!(enumerate_temporal_trails(&g, 0, 3).unwrap().len(), 2);
        let (mw, _) = oracle_single_source(&g, 0, DistanceKind::MW).unwrap();
        assert_eq!(mw.get(3), Distance::finite(0));
    }

    #[test]
    fn g1_derived_values() {
        let g = fixtures::g1();
        let root = g.vertex("1").unwrap();
        let v = |s: &str| g.vertex(s).unwrap();
        let get = |kind, x: &str| oracle_single_source(&g, root, kind).unwrap().0.get(v(x));
        assert_eq!(get(DistanceKind::LD, "3"), Distance::finite(6));
        assert_eq!(get(DistanceKind::MT, "3"), Distance::finite(2));
        assert_eq!(get(DistanceKind::ST, "3"), Distance::finite(2));
        assert_eq!(get(DistanceKind::ST, "5"), Distance::finite(2));
        assert_eq!(get(DistanceKind::LD, "4"), Distance::finite(6));
        let (_, ead) = oracle_single_source(&g, root, DistanceKind::MT).unwrap();
        assert_eq!(ead.get(v("3")), Distance::finite(9));
    }
}
