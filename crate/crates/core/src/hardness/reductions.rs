//! Instance generators that encode a 3-CNF formula as a temporal graph.
//!
//! Arc order is fixed: variable gadgets first (variable by variable, positive
//! side before negative side), then clause arcs in clause order and literal
//! order within each clause.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::graph::{TemporalArc, TemporalGraph, Time, VertexId};

use super::cnf::CnfFormula;

/// Whether all arcs take zero steps or one step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    El0,
    El1,
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "el0" => Ok(Variant::El0),
            "el1" => Ok(Variant::El1),
            _ => Err(format!("unknown variant `{s}` (expected el0 or el1)")),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::El0 => "el0",
            Variant::El1 => "el1",
        })
    }
}

/// A generated instance. `k` is the arc budget for TOSS instances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: TemporalGraph,
    pub root: VertexId,
    pub k: Option<usize>,
}

#[derive(Default)]
struct Builder {
    labels: Vec<String>,
    index: HashMap<String, VertexId>,
    arcs: Vec<TemporalArc>,
}

impl Builder {
    fn vertex(&mut self, name: impl Into<String>) -> VertexId {
        let name = name.into();
        if let Some(&v) = self.index.get(&name) {
            return v;
        }
        let v = self.labels.len();
        self.index.insert(name.clone(), v);
        self.labels.push(name);
        v
    }

    fn arc(&mut self, u: &str, v: &str, s: Time, t: Time) {
        let (u, v) = (self.vertex(u), self.vertex(v));
        self.arcs.push(TemporalArc::new(u, v, s, t));
    }

    fn finish(self, k: Option<usize>) -> Instance {
        let tau = self.arcs.iter().map(|a| a.t_arrive).max().unwrap_or(1);
        let graph =
            TemporalGraph::new(self.labels, self.arcs, tau).expect("generated graphs are valid");
        Instance { graph, root: 0, k }
    }
}

fn side(positive: bool) -> &'static str {
    if positive {
        "p"
    } else {
        "n"
    }
}

/// Declares `r`, the per-variable vertices, then the clause vertices, so ids
/// follow that order regardless of arc order.
fn declare(b: &mut Builder, phi: &CnfFormula, per_variable: &[&str]) {
    b.vertex("r");
    for i in 1..=phi.variables() {
        for pattern in per_variable {
            b.vertex(pattern.replace('#', &i.to_string()));
        }
    }
    for j in 1..=phi.clauses().len() {
        b.vertex(format!("c{j}"));
    }
}

/// Spanning FT/MW out-branching instance: `φ` is satisfiable iff the graph
/// has a spanning FT-TOB (equivalently MW-TOB) rooted at `r`.
pub fn gen_ftmw_instance(phi: &CnfFormula, variant: Variant, simple: bool) -> Instance {
    let mut b = Builder::default();
    let per_variable: &[&str] = if simple {
        &["x#", "y#a", "y#b"]
    } else {
        &["x#"]
    };
    declare(&mut b, phi, per_variable);
    // (first route, second route) labels, and the clause shift
    let (early, late, shift) = match variant {
        Variant::El0 => ((1, 1), (2, 2), 0),
        Variant::El1 => ((1, 2), (2, 3), 1),
    };
    let bump = |(s, t): (Time, Time)| (s + 1, t + 1);
    for i in 1..=phi.variables() {
        let x = format!("x{i}");
        if simple {
            let (ya, yb) = (format!("y{i}a"), format!("y{i}b"));
            b.arc("r", &ya, early.0, early.1);
            let second = if variant == Variant::El1 {
                bump(early)
            } else {
                early
            };
            b.arc(&ya, &x, second.0, second.1);
            b.arc("r", &yb, late.0, late.1);
            let second = if variant == Variant::El1 {
                bump(late)
            } else {
                late
            };
            b.arc(&yb, &x, second.0, second.1);
        } else {
            b.arc("r", &x, early.0, early.1);
            b.arc("r", &x, late.0, late.1);
        }
    }
    let extra = if simple && variant == Variant::El1 {
        1
    } else {
        0
    };
    for (j, clause) in phi.clauses().iter().enumerate() {
        let c = format!("c{}", j + 1);
        for lit in clause {
            let base = if lit.positive { 1 } else { 2 };
            let s = base + shift + extra;
            let t = s + shift;
            b.arc(&format!("x{}", lit.var), &c, s, t);
        }
    }
    b.finish(None)
}

fn toss_budget(b: &Builder, phi: &CnfFormula) -> usize {
    b.labels.len() - 1 + phi.variables()
}

/// ST-TOSS instance with `τ = 3`: `φ` is satisfiable iff an ST out-spanning
/// subgraph with at most `k` arcs exists.
pub fn gen_st_toss_instance(phi: &CnfFormula, simple: bool) -> Instance {
    let mut b = Builder::default();
    let per_variable: &[&str] = if simple {
        &["x#p", "x#n", "s#p", "s#n", "y#"]
    } else {
        &["x#p", "x#n", "y#"]
    };
    declare(&mut b, phi, per_variable);
    for i in 1..=phi.variables() {
        let y = format!("y{i}");
        for positive in [true, false] {
            let x = format!("x{i}{}", side(positive));
            b.arc("r", &x, 1, 2);
            if simple {
                let s = format!("s{i}{}", side(positive));
                b.arc("r", &s, 3, 3);
                b.arc(&s, &x, 3, 3);
            } else {
                b.arc("r", &x, 3, 3);
            }
            b.arc(&x, &y, 2, 2);
        }
    }
    clause_arcs(&mut b, phi, (2, 2));
    let k = toss_budget(&b, phi);
    b.finish(Some(k))
}

/// LD-TOSS instance: `τ = 2` for el0, `τ = 3` for el1 (`4` when simple).
pub fn gen_ld_toss_instance(phi: &CnfFormula, variant: Variant, simple: bool) -> Instance {
    let mut b = Builder::default();
    let per_variable: &[&str] = match (simple, variant) {
        (false, _) => &["x#p", "x#n", "y#"],
        (true, Variant::El0) => &["x#p", "x#n", "s#p", "s#n", "y#"],
        (true, Variant::El1) => &["x#p", "x#n", "s#p", "s#n", "z#p", "z#n", "y#"],
    };
    declare(&mut b, phi, per_variable);
    let clause_label = match (simple, variant) {
        (_, Variant::El0) => (1, 1),
        (false, Variant::El1) => (2, 3),
        (true, Variant::El1) => (3, 4),
    };
    for i in 1..=phi.variables() {
        let y = format!("y{i}");
        for positive in [true, false] {
            let x = format!("x{i}{}", side(positive));
            let s = format!("s{i}{}", side(positive));
            let z = format!("z{i}{}", side(positive));
            match (simple, variant) {
                (false, Variant::El0) => {
                    b.arc("r", &x, 1, 1);
                    b.arc("r", &x, 2, 2);
                    b.arc(&x, &y, 1, 1);
                }
                (true, Variant::El0) => {
                    b.arc("r", &x, 1, 1);
                    b.arc("r", &s, 2, 2);
                    b.arc(&s, &x, 2, 2);
                    b.arc(&x, &y, 1, 1);
                }
                (false, Variant::El1) => {
                    b.arc("r", &x, 1, 2);
                    b.arc("r", &x, 2, 3);
                    b.arc(&x, &y, 2, 3);
                }
                (true, Variant::El1) => {
                    b.arc("r", &z, 1, 2);
                    b.arc(&z, &x, 2, 3);
                    b.arc("r", &s, 2, 3);
                    b.arc(&s, &x, 3, 4);
                    b.arc(&x, &y, 3, 4);
                }
            }
        }
    }
    clause_arcs(&mut b, phi, clause_label);
    let k = toss_budget(&b, phi);
    b.finish(Some(k))
}

/// MT-TOSS instance: `τ = 2` for el0, `τ = 4` for el1. Already simple.
pub fn gen_mt_toss_instance(phi: &CnfFormula, variant: Variant, _simple: bool) -> Instance {
    let mut b = Builder::default();
    declare(&mut b, phi, &["x#p", "x#n", "z#p", "z#n", "y#"]);
    let (direct, to_z, z_to_x, to_y) = match variant {
        Variant::El0 => ((2, 2), (1, 1), (1, 1), (1, 1)),
        Variant::El1 => ((3, 4), (1, 2), (2, 3), (3, 4)),
    };
    for i in 1..=phi.variables() {
        let y = format!("y{i}");
        for positive in [true, false] {
            let x = format!("x{i}{}", side(positive));
            let z = format!("z{i}{}", side(positive));
            b.arc("r", &x, direct.0, direct.1);
            b.arc("r", &z, to_z.0, to_z.1);
            b.arc(&z, &x, z_to_x.0, z_to_x.1);
            b.arc(&x, &y, to_y.0, to_y.1);
        }
    }
    clause_arcs(&mut b, phi, to_y);
    let k = toss_budget(&b, phi);
    b.finish(Some(k))
}

fn clause_arcs(b: &mut Builder, phi: &CnfFormula, (s, t): (Time, Time)) {
    for (j, clause) in phi.clauses().iter().enumerate() {
        let c = format!("c{}", j + 1);
        for lit in clause {
            let x = format!("x{}{}", lit.var, side(lit.positive));
            b.arc(&x, &c, s, t);
        }
    }
}
