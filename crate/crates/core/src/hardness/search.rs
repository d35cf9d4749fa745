//! Exhaustive searches: maximum branchings for any distance and minimum
//! spanning subgraphs that keep a realizing walk to every vertex.
//!
//! Each search has a sequential `_seq` form. The default form splits the
//! first branching decision across workers and reduces with the sequential
//! tie-break, so both return the same answer.

use serde::Serialize;

use crate::branching::{spanning_tob, Branching};
use crate::distances::{single_source, DistanceVector};
use crate::graph::{ArcId, GraphError, TemporalGraph, VertexId};
use crate::kind::DistanceKind;
use crate::oracle::{for_each_walk_from, WalkShape};
use crate::par;
use crate::walk::{metrics_unchecked, TemporalWalk};

use super::{Guards, HardnessError};

// ---------------------------------------------------------------------------
// maximum branchings

struct TrieNode {
    vertex: VertexId,
    parent: usize,
    arc: Option<ArcId>,
}

/// All prefix-optimal paths from `root`, as a trie rooted at node 0.
fn prefix_optimal_trie(
    graph: &TemporalGraph,
    root: VertexId,
    dist: &DistanceVector,
    cap: usize,
) -> Result<Vec<TrieNode>, HardnessError> {
    struct Dfs<'a> {
        graph: &'a TemporalGraph,
        dist: &'a DistanceVector,
        cap: usize,
        nodes: Vec<TrieNode>,
        on_path: Vec<bool>,
        arcs: Vec<ArcId>,
    }

    impl Dfs<'_> {
        fn go(&mut self, node: usize) -> Result<(), HardnessError> {
            let u = self.nodes[node].vertex;
            let ready = self
                .arcs
                .last()
                .map_or(0, |&id| self.graph.arc(id).t_arrive);
            let tau = self.graph.lifetime();
            for &id in self.graph.out_arcs(u) {
                let a = *self.graph.arc(id);
                if a.t_start < ready || self.on_path[a.head] {
                    continue;
                }
                self.arcs.push(id);
                let value = metrics_unchecked(self.graph, &self.arcs).value(self.dist.kind, tau);
                if self.dist.get(a.head).value() == Some(value) {
                    if self.nodes.len() >= self.cap {
                        return Err(HardnessError::WalkCap { cap: self.cap });
                    }
                    self.nodes.push(TrieNode {
                        vertex: a.head,
                        parent: node,
                        arc: Some(id),
                    });
                    self.on_path[a.head] = true;
                    let child = self.nodes.len() - 1;
                    self.go(child)?;
                    self.on_path[a.head] = false;
                }
                self.arcs.pop();
            }
            Ok(())
        }
    }

    let mut dfs = Dfs {
        graph,
        dist,
        cap,
        nodes: vec![TrieNode {
            vertex: root,
            parent: 0,
            arc: None,
        }],
        on_path: vec![false; graph.vertex_count()],
        arcs: Vec::new(),
    };
    dfs.on_path[root] = true;
    dfs.go(0)?;
    Ok(dfs.nodes)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Choice {
    Unset,
    Skip,
    Node(usize),
}

struct TobSearch<'a> {
    nodes: &'a [TrieNode],
    by_vertex: Vec<Vec<usize>>,
    order: Vec<VertexId>,
}

struct Best {
    count: usize,
    choice: Vec<Choice>,
}

impl TobSearch<'_> {
    fn compatible(&self, choice: &[Choice], mut q: usize) -> bool {
        while q != 0 {
            match choice[self.nodes[q].vertex] {
                Choice::Node(x) if x == q => return true,
                Choice::Unset => q = self.nodes[q].parent,
                _ => return false,
            }
        }
        true
    }

    /// Fixes node `p` and its ancestors; returns the vertices newly fixed.
    fn assign(&self, choice: &mut [Choice], mut q: usize) -> Vec<VertexId> {
        let mut fixed = Vec::new();
        while q != 0 {
            let w = self.nodes[q].vertex;
            if choice[w] == Choice::Node(q) {
                break;
            }
            choice[w] = Choice::Node(q);
            fixed.push(w);
            q = self.nodes[q].parent;
        }
        fixed
    }

    /// Options for the vertex `v`: each compatible trie node, then skipping it.
    fn options(&self, choice: &[Choice], v: VertexId) -> Vec<Choice> {
        let mut out: Vec<Choice> = self.by_vertex[v]
            .iter()
            .filter(|&&p| self.compatible(choice, p))
            .map(|&p| Choice::Node(p))
            .collect();
        out.push(Choice::Skip);
        out
    }

    fn apply(&self, choice: &mut [Choice], v: VertexId, option: Choice) -> Vec<VertexId> {
        match option {
            Choice::Node(p) => self.assign(choice, p),
            _ => {
                choice[v] = Choice::Skip;
                vec![v]
            }
        }
    }

    fn go(&self, choice: &mut Vec<Choice>, count: usize, best: &mut Best) {
        let Some(&v) = self.order.iter().find(|&&v| choice[v] == Choice::Unset) else {
            if count > best.count {
                best.count = count;
                best.choice = choice.clone();
            }
            return;
        };
        let open = self
            .order
            .iter()
            .filter(|&&w| {
                choice[w] == Choice::Unset
                    && self.by_vertex[w]
                        .iter()
                        .any(|&p| self.compatible(choice, p))
            })
            .count();
        if count + open <= best.count {
            return;
        }
        for option in self.options(choice, v) {
            let fixed = self.apply(choice, v, option);
            let gained = match option {
                Choice::Node(_) => fixed.len(),
                _ => 0,
            };
            self.go(choice, count + gained, best);
            for w in fixed {
                choice[w] = Choice::Unset;
            }
        }
    }
}

fn max_dtob(
    graph: &TemporalGraph,
    root: VertexId,
    kind: DistanceKind,
    guards: &Guards,
    parallel: bool,
) -> Result<Branching, HardnessError> {
    graph.check_vertex(root)?;
    let n = graph.vertex_count();
    Guards::check("vertices", guards.tob_vertices, n)?;
    let dist = single_source(graph, root, kind)?;
    let nodes = prefix_optimal_trie(graph, root, &dist, guards.walk_cap)?;
    let mut by_vertex = vec![Vec::new(); n];
    for (i, node) in nodes.iter().enumerate().skip(1) {
        by_vertex[node.vertex].push(i);
    }
    let order: Vec<VertexId> = (0..n)
        .filter(|&v| v != root && !by_vertex[v].is_empty())
        .collect();
    let search = TobSearch {
        nodes: &nodes,
        by_vertex,
        order,
    };
    let mut start = vec![Choice::Skip; n];
    for &v in &search.order {
        start[v] = Choice::Unset;
    }
    start[root] = Choice::Node(0);

    let chosen = match search.order.first() {
        None => start,
        Some(&v0) => {
            let options = search.options(&start, v0);
            let run = |option: &Choice, best: &mut Best| {
                let mut choice = start.clone();
                let fixed = search.apply(&mut choice, v0, *option);
                let gained = if matches!(option, Choice::Node(_)) {
                    fixed.len()
                } else {
                    0
                };
                search.go(&mut choice, 1 + gained, best);
            };
            let empty = || Best {
                count: 0,
                choice: Vec::new(),
            };
            let best = if parallel {
                let results = par::map_slice(&options, |option| {
                    let mut best = empty();
                    run(option, &mut best);
                    best
                });
                // first option reaching the maximum, as in the sequential scan
                let mut best = empty();
                for r in results {
                    if r.count > best.count {
                        best = r;
                    }
                }
                best
            } else {
                let mut best = empty();
                for option in &options {
                    run(option, &mut best);
                }
                best
            };
            best.choice
        }
    };
    let parent = chosen
        .iter()
        .map(|c| match c {
            Choice::Node(p) => nodes[*p].arc,
            _ => None,
        })
        .collect();
    Ok(Branching::from_out_parents(graph, root, kind, parent))
}

/// A maximum `kind` out-branching by exhaustive search over prefix-optimal
/// paths. Works for every kind; exponential in general.
pub fn brute_max_dtob(
    graph: &TemporalGraph,
    root: VertexId,
    kind: DistanceKind,
) -> Result<Branching, HardnessError> {
    brute_max_dtob_with(graph, root, kind, &Guards::default())
}

pub fn brute_max_dtob_with(
    graph: &TemporalGraph,
    root: VertexId,
    kind: DistanceKind,
    guards: &Guards,
) -> Result<Branching, HardnessError> {
    max_dtob(graph, root, kind, guards, true)
}

pub fn brute_max_dtob_seq(
    graph: &TemporalGraph,
    root: VertexId,
    kind: DistanceKind,
    guards: &Guards,
) -> Result<Branching, HardnessError> {
    max_dtob(graph, root, kind, guards, false)
}

// ---------------------------------------------------------------------------
// minimum spanning subgraphs

/// Arc set of a spanning subgraph together with one realizing walk per
/// vertex (`walks[v]` ends at `v`; the root gets the trivial walk).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TossWitness {
    pub arcs: Vec<ArcId>,
    pub walks: Vec<TemporalWalk>,
}

impl TossWitness {
    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }
}

/// Checks that every walk starts at `root`, ends at its vertex, uses only
/// witness arcs and realizes the distance from `root` in `graph`.
pub fn verify_toss_witness(
    graph: &TemporalGraph,
    root: VertexId,
    kind: DistanceKind,
    w: &TossWitness,
) -> bool {
    let Ok(dist) = single_source(graph, root, kind) else {
        return false;
    };
    let n = graph.vertex_count();
    if w.walks.len() != n {
        return false;
    }
    let mut allowed = vec![false; graph.arc_count()];
    for &id in &w.arcs {
        match allowed.get_mut(id) {
            Some(slot) => *slot = true,
            None => return false,
        }
    }
    let tau = graph.lifetime();
    (0..n).all(|v| {
        let walk = &w.walks[v];
        walk.origin == root
            && walk.validate(graph).is_ok()
            && walk.end(graph) == v
            && walk.arcs.iter().all(|&id| allowed[id])
            && dist.get(v).value() == Some(metrics_unchecked(graph, &walk.arcs).value(kind, tau))
    })
}

struct Candidate {
    mask: u128,
    walk: Vec<ArcId>,
}

/// Realizing walks per vertex, deduplicated by arc set with supersets
/// dropped. `None` if some vertex has no realizing walk.
fn candidates(
    graph: &TemporalGraph,
    root: VertexId,
    kind: DistanceKind,
    cap: usize,
) -> Result<Option<Vec<Vec<Candidate>>>, HardnessError> {
    let dist = single_source(graph, root, kind)?;
    let tau = graph.lifetime();
    let n = graph.vertex_count();
    let mut found: Vec<Vec<Candidate>> = (0..n).map(|_| Vec::new()).collect();
    for_each_walk_from(graph, root, WalkShape::for_kind(kind), cap, |arcs, end| {
        if end == root
            || dist.get(end).value() != Some(metrics_unchecked(graph, arcs).value(kind, tau))
        {
            return;
        }
        let mask = arcs.iter().fold(0u128, |m, &id| m | 1 << id);
        found[end].push(Candidate {
            mask,
            walk: arcs.to_vec(),
        });
    })?;
    for (v, list) in found.iter_mut().enumerate() {
        if v == root {
            continue;
        }
        if list.is_empty() {
            return Ok(None);
        }
        list.sort_by_key(|c| (c.mask.count_ones(), c.mask.reverse_bits()));
        let mut kept: Vec<Candidate> = Vec::new();
        for c in list.drain(..) {
            if kept.iter().all(|k| k.mask & !c.mask != 0) {
                kept.push(c);
            }
        }
        *list = kept;
    }
    Ok(Some(found))
}

struct TossSearch<'a> {
    graph: &'a TemporalGraph,
    cands: &'a [Vec<Candidate>],
    order: Vec<VertexId>,
}

impl TossSearch<'_> {
    fn satisfied(&self, v: VertexId, union: u128) -> bool {
        self.cands[v].iter().any(|c| c.mask & !union == 0)
    }

    fn next_open(&self, union: u128) -> Option<VertexId> {
        self.order
            .iter()
            .copied()
            .find(|&v| !self.satisfied(v, union))
    }

    /// Candidate indices of `v` by number of new arcs, then index.
    fn options(&self, v: VertexId, union: u128) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.cands[v].len()).collect();
        idx.sort_by_key(|&i| ((self.cands[v][i].mask & !union).count_ones(), i));
        idx
    }

    fn lower_bound(&self, union: u128) -> u32 {
        let pending = self
            .order
            .iter()
            .filter(|&&v| {
                !self.satisfied(v, union)
                    && self
                        .graph
                        .in_arcs(v)
                        .iter()
                        .all(|&id| union & (1 << id) == 0)
            })
            .count() as u32;
        union.count_ones() + pending
    }

    fn go(&self, union: u128, best: &mut Option<u128>, limit: u32) {
        let bound = best.map_or(limit + 1, |b| b.count_ones());
        if self.lower_bound(union) >= bound {
            return;
        }
        let Some(v) = self.next_open(union) else {
            *best = Some(union);
            return;
        };
        for i in self.options(v, union) {
            self.go(union | self.cands[v][i].mask, best, limit);
        }
    }

    fn witness(&self, root: VertexId, union: u128) -> TossWitness {
        let arcs = (0..128).filter(|&id| union & (1 << id) != 0).collect();
        let walks = (0..self.cands.len())
            .map(|v| {
                if v == root {
                    return TemporalWalk::trivial(root);
                }
                let c = self.cands[v]
                    .iter()
                    .find(|c| c.mask & !union == 0)
                    .expect("vertex is covered");
                TemporalWalk::new(root, c.walk.clone())
            })
            .collect();
        TossWitness { arcs, walks }
    }
}

fn min_toss(
    graph: &TemporalGraph,
    root: VertexId,
    kind: DistanceKind,
    limit: usize,
    guards: &Guards,
    parallel: bool,
) -> Result<Option<TossWitness>, HardnessError> {
    graph.check_vertex(root)?;
    Guards::check("arcs", guards.toss_arcs.min(128), graph.arc_count())?;
    let Some(cands) = candidates(graph, root, kind, guards.walk_cap)? else {
        return Ok(None);
    };
    let n = graph.vertex_count();
    let mut order: Vec<VertexId> = (0..n).filter(|&v| v != root).collect();
    order.sort_by_key(|&v| (cands[v].len(), v));
    let search = TossSearch {
        graph,
        cands: &cands,
        order,
    };
    let limit = limit.min(graph.arc_count()) as u32;
    let best = match search.next_open(0) {
        None => Some(0),
        Some(v0) => {
            let options = search.options(v0, 0);
            if parallel {
                let results = par::map_slice(&options, |&i| {
                    let mut best = None;
                    search.go(cands[v0][i].mask, &mut best, limit);
                    best
                });
                results
                    .into_iter()
                    .flatten()
                    .fold(None, |acc: Option<u128>, u| match acc {
                        Some(a) if a.count_ones() <= u.count_ones() => Some(a),
                        _ => Some(u),
                    })
            } else {
                let mut best = None;
                for i in options {
                    search.go(cands[v0][i].mask, &mut best, limit);
                }
                best
            }
        }
    };
    Ok(best.map(|union| search.witness(root, union)))
}

/// A spanning subgraph with at most `k` arcs keeping a `kind`-realizing walk
/// from `root` to every vertex, of minimum size, or `None`.
pub fn brute_min_dtoss(
    graph: &TemporalGraph,
    root: VertexId,
    kind: DistanceKind,
    k: usize,
) -> Result<Option<TossWitness>, HardnessError> {
    min_toss(graph, root, kind, k, &Guards::default(), true)
}

pub fn brute_min_dtoss_with(
    graph: &TemporalGraph,
    root: VertexId,
    kind: DistanceKind,
    k: usize,
    guards: &Guards,
) -> Result<Option<TossWitness>, HardnessError> {
    min_toss(graph, root, kind, k, guards, true)
}

pub fn brute_min_dtoss_seq(
    graph: &TemporalGraph,
    root: VertexId,
    kind: DistanceKind,
    k: usize,
    guards: &Guards,
) -> Result<Option<TossWitness>, HardnessError> {
    min_toss(graph, root, kind, k, guards, false)
}

/// A minimum spanning subgraph without a budget.
pub fn min_dtoss(
    graph: &TemporalGraph,
    root: VertexId,
    kind: DistanceKind,
) -> Result<Option<TossWitness>, HardnessError> {
    min_toss(graph, root, kind, usize::MAX, &Guards::default(), true)
}

/// Plain subset enumeration: sizes `0..=k` in increasing order, arc-id sets in
/// lexicographic order within a size. Returns the first subset whose
/// distances from `root` equal those of `graph`.
pub fn brute_min_dtoss_subsets(
    graph: &TemporalGraph,
    root: VertexId,
    kind: DistanceKind,
    k: usize,
) -> Result<Option<Vec<ArcId>>, HardnessError> {
    brute_min_dtoss_subsets_with(graph, root, kind, k, &Guards::default())
}

pub fn brute_min_dtoss_subsets_with(
    graph: &TemporalGraph,
    root: VertexId,
    kind: DistanceKind,
    k: usize,
    guards: &Guards,
) -> Result<Option<Vec<ArcId>>, HardnessError> {
    graph.check_vertex(root)?;
    let m = graph.arc_count();
    Guards::check("arcs", guards.subset_arcs, m)?;
    let target = single_source(graph, root, kind)?;
    if target.values.iter().any(|d| !d.is_finite()) {
        return Ok(None);
    }
    let keeps = |subset: &[ArcId]| {
        let arcs = subset.iter().map(|&id| *graph.arc(id)).collect();
        let sub =
            TemporalGraph::from_parts_unchecked(graph.labels().to_vec(), arcs, graph.lifetime());
        single_source(&sub, root, kind).is_ok_and(|d| d.values == target.values)
    };
    for size in 0..=k.min(m) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            if keeps(&idx) {
                return Ok(Some(idx));
            }
            // next combination in lexicographic order
            let Some(i) = (0..size).rev().find(|&i| idx[i] < m - size + i) else {
                break;
            };
            idx[i] += 1;
            for j in i + 1..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    Ok(None)
}

/// The minimum EA spanning subgraph is a spanning EA out-branching, so it has
/// exactly `|V| - 1` arcs when every vertex is reachable.
pub fn ea_toss(graph: &TemporalGraph, root: VertexId) -> Result<Option<TossWitness>, GraphError> {
    let b = spanning_tob(graph, root)?;
    if !b.is_spanning() {
        return Ok(None);
    }
    let mut arcs = b.arcs();
    arcs.sort_unstable();
    let walks = (0..graph.vertex_count())
        .map(|v| b.walk_to(graph, v).expect("spanning"))
        .collect();
    Ok(Some(TossWitness { arcs, walks }))
}

/// Maximum in-branching towards `root` by exhaustive search on the reverse
/// graph. Intended for FT and MW.
pub fn brute_max_dtib(
    graph: &TemporalGraph,
    root: VertexId,
    kind: DistanceKind,
    guards: &Guards,
) -> Result<Branching, HardnessError> {
    graph.check_vertex(root)?;
    let rev = graph.reverse();
    let out = brute_max_dtob_with(&rev, root, kind.under_reversal(), guards)?;
    Ok(out.into_in_branching(graph.lifetime(), kind))
}

/// In-spanning subgraph towards `root` with at most `k` arcs: the out version
/// on the reverse graph with the kind mapped. Arc ids are those of `graph`.
pub fn brute_min_dtiss(
    graph: &TemporalGraph,
    root: VertexId,
    kind: DistanceKind,
    k: usize,
) -> Result<Option<Vec<ArcId>>, HardnessError> {
    graph.check_vertex(root)?;
    let rev = graph.reverse();
    Ok(brute_min_dtoss(&rev, root, kind.under_reversal(), k)?.map(|w| w.arcs))
}

/// Minimum LD in-spanning subgraph in polynomial time, via an EA spanning
/// out-branching of the reverse graph.
pub fn ld_tiss_poly(
    graph: &TemporalGraph,
    root: VertexId,
) -> Result<Option<Vec<ArcId>>, GraphError> {
    graph.check_vertex(root)?;
    Ok(ea_toss(&graph.reverse(), root)?.map(|w| w.arcs))
}
