//! Table, JSON and DOT rendering. JSON field order is fixed by the structs
//! below, so output is byte-stable for equal inputs.

use std::fmt::Write;

use serde::Serialize;
use temporal_branchings::branching::{Branching, DTobReport, Direction};
use temporal_branchings::hardness::TossWitness;
use temporal_branchings::{ArcId, Distance, DistanceKind, TemporalGraph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Json,
    Dot,
}

#[derive(Serialize)]
pub struct ArcOut<'a> {
    pub arc_id: ArcId,
    pub tail: &'a str,
    pub head: &'a str,
    pub t_start: u32,
    pub t_arrive: u32,
}

pub fn arc_out(g: &TemporalGraph, id: ArcId) -> ArcOut<'_> {
    let a = g.arc(id);
    ArcOut {
        arc_id: id,
        tail: g.label(a.tail),
        head: g.label(a.head),
        t_start: a.t_start,
        t_arrive: a.t_arrive,
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output types serialize");
    s.push('\n');
    s
}

fn escape(label: &str) -> String {
    label.replace('\\', "\\\\").replace('"', "\\\"")
}

fn quote(label: &str) -> String {
    format!("\"{}\"", escape(label))
}

/// Vertices sorted by label, numeric labels first and in numeric order.
pub fn display_order(g: &TemporalGraph) -> Vec<VertexId> {
    let mut order: Vec<VertexId> = (0..g.vertex_count()).collect();
    order.sort_by_key(|&v| {
        let label = g.label(v);
        (label.parse::<u64>().map_err(|_| ()), label.to_string())
    });
    order
}

/// DOT for the whole graph with the arcs in `bold` highlighted and optional
/// per-vertex annotations.
fn dot(g: &TemporalGraph, bold: &[ArcId], notes: &[Option<String>], only_bold: bool) -> String {
    let mut s = String::from("digraph G {\n");
    for v in 0..g.vertex_count() {
        match &notes[v] {
            Some(n) => writeln!(
                s,
                "  {} [label=\"{}\\n{}\"];",
                quote(g.label(v)),
                escape(g.label(v)),
                escape(n)
            ),
            None => writeln!(s, "  {};", quote(g.label(v))),
        }
        .unwrap();
    }
    let mut marked = vec![false; g.arc_count()];
    for &id in bold {
        marked[id] = true;
    }
    for (id, a) in g.arcs().iter().enumerate() {
        if only_bold && !marked[id] {
            continue;
        }
        let style = if marked[id] && !only_bold {
            ", style=bold"
        } else {
            ""
        };
        writeln!(
            s,
            "  {} -> {} [label=\"({},{})\"{style}];",
            quote(g.label(a.tail)),
            quote(g.label(a.head)),
            a.t_start,
            a.t_arrive
        )
        .unwrap();
    }
    s.push_str("}\n");
    s
}

fn cell(d: Distance) -> String {
    d.to_string()
}

// distances ------------------------------------------------------------------

#[derive(Serialize)]
struct DistanceRow<'a> {
    vertex: &'a str,
    distance: Distance,
    ead: Distance,
}

#[derive(Serialize)]
struct DistancesOut<'a> {
    root: &'a str,
    kind: DistanceKind,
    method: &'a str,
    rows: Vec<DistanceRow<'a>>,
}

pub fn distances(
    g: &TemporalGraph,
    root: VertexId,
    kind: DistanceKind,
    method: &str,
    dist: &[Distance],
    ead: &[Distance],
    format: Format,
) -> String {
    match format {
        Format::Table => {
            let mut s = String::from("vertex\tdistance\tead\n");
            for v in display_order(g) {
                writeln!(s, "{}\t{}\t{}", g.label(v), cell(dist[v]), cell(ead[v])).unwrap();
            }
            s
        }
        Format::Json => json(&DistancesOut {
            root: g.label(root),
            kind,
            method,
            rows: display_order(g)
                .into_iter()
                .map(|v| DistanceRow {
                    vertex: g.label(v),
                    distance: dist[v],
                    ead: ead[v],
                })
                .collect(),
        }),
        Format::Dot => {
            let notes: Vec<Option<String>> = (0..g.vertex_count())
                .map(|v| Some(format!("{kind}={}", dist[v])))
                .collect();
            dot(g, &[], &notes, false)
        }
    }
}

// branchings -----------------------------------------------------------------

#[derive(Serialize)]
struct MemberRow<'a> {
    vertex: &'a str,
    distance: Distance,
    time: Distance,
    parent: Option<ArcId>,
}

#[derive(Serialize)]
struct BranchingOut<'a> {
    kind: DistanceKind,
    direction: Direction,
    root: &'a str,
    method: &'a str,
    spanning: bool,
    members: Vec<MemberRow<'a>>,
    excluded: Vec<&'a str>,
    unreachable: Vec<&'a str>,
    arcs: Vec<ArcOut<'a>>,
}

/// `reachable[v]`: some temporal walk joins `v` and the root in the
/// branching's direction.
pub fn branching(
    g: &TemporalGraph,
    b: &Branching,
    kind: DistanceKind,
    method: &str,
    reachable: &[bool],
    format: Format,
) -> String {
    let order = display_order(g);
    let members: Vec<VertexId> = order.iter().copied().filter(|&v| b.contains(v)).collect();
    let outside = |want_reachable: bool| -> Vec<&str> {
        order
            .iter()
            .copied()
            .filter(|&v| !b.contains(v) && reachable[v] == want_reachable)
            .map(|v| g.label(v))
            .collect()
    };
    let mut arcs = b.arcs();
    arcs.sort_unstable();
    match format {
        Format::Table => {
            let mut s = String::new();
            let dir = match b.direction {
                Direction::Out => "out",
                Direction::In => "in",
            };
            writeln!(
                s,
                "# {kind} {dir}-branching at {}, {method}",
                g.label(b.root)
            )
            .unwrap();
            writeln!(s, "# {} of {} vertices", members.len(), g.vertex_count()).unwrap();
            s.push_str("vertex\tdistance\ttime\tparent\n");
            for &v in &members {
                let parent = b.parent[v].map_or("-".to_string(), |id| g.describe_arc(id));
                writeln!(
                    s,
                    "{}\t{}\t{}\t{parent}",
                    g.label(v),
                    cell(b.dist[v]),
                    cell(b.time[v])
                )
                .unwrap();
            }
            let excluded = outside(true);
            if !excluded.is_empty() {
                writeln!(s, "# excluded: {}", excluded.join(" ")).unwrap();
            }
            let unreachable = outside(false);
            if !unreachable.is_empty() {
                writeln!(s, "# unreachable: {}", unreachable.join(" ")).unwrap();
            }
            s
        }
        Format::Json => json(&BranchingOut {
            kind,
            direction: b.direction,
            root: g.label(b.root),
            method,
            spanning: b.is_spanning(),
            members: members
                .iter()
                .map(|&v| MemberRow {
                    vertex: g.label(v),
                    distance: b.dist[v],
                    time: b.time[v],
                    parent: b.parent[v],
                })
                .collect(),
            excluded: outside(true),
            unreachable: outside(false),
            arcs: arcs.iter().map(|&id| arc_out(g, id)).collect(),
        }),
        Format::Dot => {
            let notes: Vec<Option<String>> = (0..g.vertex_count())
                .map(|v| b.contains(v).then(|| format!("{kind}={}", b.dist[v])))
                .collect();
            dot(g, &arcs, &notes, false)
        }
    }
}

// spanning subgraphs ---------------------------------------------------------

#[derive(Serialize)]
struct WalkOut<'a> {
    vertex: &'a str,
    arcs: Vec<ArcId>,
}

#[derive(Serialize)]
struct SpanningOut<'a> {
    kind: DistanceKind,
    direction: Direction,
    root: &'a str,
    k: Option<usize>,
    feasible: bool,
    size: Option<usize>,
    arcs: Vec<ArcOut<'a>>,
    walks: Vec<WalkOut<'a>>,
}

pub struct SpanningAnswer<'a> {
    pub kind: DistanceKind,
    pub direction: Direction,
    pub root: VertexId,
    pub k: Option<usize>,
    pub arcs: Option<Vec<ArcId>>,
    pub witness: Option<&'a TossWitness>,
}

pub fn spanning(g: &TemporalGraph, ans: &SpanningAnswer<'_>, format: Format) -> String {
    let arcs = ans.arcs.clone().unwrap_or_default();
    let walks: Vec<WalkOut<'_>> = ans
        .witness
        .map(|w| {
            w.walks
                .iter()
                .map(|walk| WalkOut {
                    vertex: g.label(walk.end(g)),
                    arcs: walk.arcs.clone(),
                })
                .collect()
        })
        .unwrap_or_default();
    match format {
        Format::Table => {
            let mut s = String::new();
            let bound = ans.k.map_or("minimum".to_string(), |k| format!("k = {k}"));
            match &ans.arcs {
                Some(a) => writeln!(s, "yes: {} arcs ({bound})", a.len()).unwrap(),
                None => writeln!(s, "no ({bound})").unwrap(),
            }
            for &id in &arcs {
                writeln!(s, "{id}\t{}", g.describe_arc(id)).unwrap();
            }
            s
        }
        Format::Json => json(&SpanningOut {
            kind: ans.kind,
            direction: ans.direction,
            root: g.label(ans.root),
            k: ans.k,
            feasible: ans.arcs.is_some(),
            size: ans.arcs.as_ref().map(Vec::len),
            arcs: arcs.iter().map(|&id| arc_out(g, id)).collect(),
            walks,
        }),
        Format::Dot => dot(g, &arcs, &vec![None; g.vertex_count()], true),
    }
}

// verification ---------------------------------------------------------------

#[derive(Serialize)]
struct VerifyOut<'a> {
    kind: DistanceKind,
    direction: Direction,
    root: &'a str,
    valid: bool,
    violation: Option<String>,
    report: Option<DTobReport>,
}

pub fn verification(
    g: &TemporalGraph,
    kind: DistanceKind,
    direction: Direction,
    root: VertexId,
    outcome: &Result<DTobReport, String>,
    format: Format,
) -> String {
    match format {
        Format::Json => json(&VerifyOut {
            kind,
            direction,
            root: g.label(root),
            valid: outcome.is_ok(),
            violation: outcome.as_ref().err().cloned(),
            report: outcome.as_ref().ok().copied(),
        }),
        _ => match outcome {
            Ok(r) => {
                let prefix = r.prefix_ead.map_or("n/a".to_string(), |b| b.to_string());
                format!(
                    "valid {kind} branching: {} members, spanning {}, ead {}, prefix-optimal ead {prefix}\n",
                    r.members, r.spanning, r.ead
                )
            }
            Err(e) => format!("invalid: {e}\n"),
        },
    }
}

// graphs ---------------------------------------------------------------------

#[derive(Serialize)]
struct GraphOut<'a> {
    tau: u32,
    vertices: &'a [String],
    arcs: Vec<ArcOut<'a>>,
    root: Option<&'a str>,
    k: Option<usize>,
}

pub fn graph(g: &TemporalGraph, root: Option<&str>, k: Option<usize>, format: Format) -> String {
    match format {
        Format::Table => match root {
            Some(r) => temporal_branchings::format::write_instance(g, r, k),
            None => {
                let mut s = String::new();
                temporal_branchings::format::write_tg(g, &mut s)
                    .expect("writing to a String cannot fail");
                s
            }
        },
        Format::Json => json(&GraphOut {
            tau: g.lifetime(),
            vertices: g.labels(),
            arcs: (0..g.arc_count()).map(|id| arc_out(g, id)).collect(),
            root,
            k,
        }),
        Format::Dot => dot(g, &[], &vec![None; g.vertex_count()], false),
    }
}
