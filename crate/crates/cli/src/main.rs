//! `tbranch`: temporal branchings and spanning subgraphs from the command line.
//!
//! Exit status: 0 success, 1 a decision answered "no" (or a verification
//! failed), 2 usage or input errors, 3 a size guard refused the instance.

mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use temporal_branchings::branching::{
    ft_mw_poly_cases, max_d_tib, max_ld_st_tob, max_mt_tob, spanning_tob, tib_from_arcs,
    tob_from_arcs, verify_d_tob, Branching, Direction,
};
use temporal_branchings::distances::single_source_full;
use temporal_branchings::format::{parse_tg, TgDocument};
use temporal_branchings::hardness::reductions::{
    gen_ftmw_instance, gen_ld_toss_instance, gen_mt_toss_instance, gen_st_toss_instance, Instance,
    Variant,
};
use temporal_branchings::hardness::search::{brute_max_dtob_with, brute_min_dtoss_with};
use temporal_branchings::hardness::{
    brute_max_dtib, ea_toss, ld_tiss_poly, parse_dimacs, sat_brute, CnfFormula, Guards,
    HardnessError,
};
use temporal_branchings::oracle::{oracle_single_source_capped, OracleError};
use temporal_branchings::random::{random_graph, RandomGraphParams};
use temporal_branchings::{ArcId, DistanceKind, TemporalGraph, VertexId};

use render::{Format, SpanningAnswer};

#[derive(Parser)]
#[command(
    name = "tbranch",
    version,
    about = "Optimal temporal branchings and spanning subgraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Single-source distances and earliest-arrival values.
    Distances(GraphArgs),
    /// Maximum out-branching from the root.
    Tob(SearchArgs),
    /// Maximum in-branching towards the root.
    Tib(SearchArgs),
    /// Out-spanning subgraph with at most k arcs (minimum if k is not given).
    Toss(SpanArgs),
    /// In-spanning subgraph with at most k arcs (minimum if k is not given).
    Tiss(SpanArgs),
    /// Check a given arc set as a branching for the kind.
    Verify(VerifyArgs),
    /// Write a random graph, a reduction instance or a random formula.
    Gen(GenArgs),
    /// Exhaustive oracles: distances by walk enumeration, or SAT by enumeration.
    Oracle(OracleArgs),
}

#[derive(Args)]
struct Common {
    /// Graph in .tg format.
    #[arg(long)]
    graph: PathBuf,
    /// Root vertex label; defaults to the file's `root` line.
    #[arg(long)]
    root: Option<String>,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

#[derive(Args)]
struct GraphArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    kind: DistanceKind,
}

#[derive(Args)]
struct SearchArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    kind: DistanceKind,
    /// Largest vertex count the exhaustive FT/MW search accepts.
    #[arg(long, default_value_t = Guards::default().tob_vertices)]
    max_vertices: usize,
}

#[derive(Args)]
struct SpanArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    kind: DistanceKind,
    /// Arc budget; defaults to the file's `k` line, else the minimum is searched.
    #[arg(long)]
    k: Option<usize>,
    /// Largest arc count the exhaustive search accepts.
    #[arg(long, default_value_t = Guards::default().toss_arcs)]
    max_arcs: usize,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    kind: DistanceKind,
    /// File of `tail head t_start t_arrive` lines naming arcs of the graph.
    #[arg(long)]
    arcs: PathBuf,
    /// Read the arcs as an in-branching towards the root.
    #[arg(long = "in")]
    inward: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "what")]
struct GenWhat {
    /// Random graph with --n, --m, --tau and --seed.
    #[arg(long)]
    random: bool,
    /// Reduction from --cnf: ftmw, st-toss, ld-toss or mt-toss.
    #[arg(long, value_parser = ["ftmw", "st-toss", "ld-toss", "mt-toss"])]
    reduction: Option<String>,
    /// Random 3-CNF formula with --vars, --clauses and --seed, in DIMACS.
    #[arg(long)]
    formula: bool,
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    what: GenWhat,
    #[arg(long, default_value_t = 6)]
    n: usize,
    #[arg(long, default_value_t = 12)]
    m: usize,
    #[arg(long, default_value_t = 5)]
    tau: u32,
    #[arg(long, default_value_t = 0)]
    min_elapsed: u32,
    #[arg(long)]
    max_elapsed: Option<u32>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    cnf: Option<PathBuf>,
    /// el0 (all arcs instantaneous) or el1 (all arcs take one step); default el0.
    #[arg(long)]
    variant: Option<Variant>,
    /// Use the simple-graph form of the gadgets.
    #[arg(long)]
    simple: bool,
    #[arg(long, default_value_t = 3)]
    vars: usize,
    #[arg(long, default_value_t = 3)]
    clauses: usize,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long, required_unless_present = "cnf", conflicts_with = "cnf")]
    graph: Option<PathBuf>,
    #[arg(long)]
    root: Option<String>,
    #[arg(long, required_unless_present = "cnf")]
    kind: Option<DistanceKind>,
    /// Walks enumerated before refusing.
    #[arg(long, default_value_t = Guards::default().walk_cap)]
    max_walks: usize,
    /// DIMACS formula to decide by enumeration instead.
    #[arg(long)]
    cnf: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

enum Failure {
    Usage(String),
    Guard(String),
}

impl From<HardnessError> for Failure {
    fn from(e: HardnessError) -> Self {
        match e {
            HardnessError::Guard(_) | HardnessError::WalkCap { .. } => {
                Failure::Guard(e.to_string())
            }
            e => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<TgDocument, Failure> {
    parse_tg(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn root_of(doc: &TgDocument, flag: &Option<String>) -> Result<VertexId, Failure> {
    let name = flag
        .as_ref()
        .or(doc.root.as_ref())
        .ok_or_else(|| usage("no root: pass --root or add a `root` line to the graph"))?;
    doc.graph.require_vertex(name).map_err(usage)
}

fn emit(text: String) -> Outcome {
    print!("{text}");
    Ok(true)
}

fn reachable(g: &TemporalGraph, root: VertexId, direction: Direction) -> Vec<bool> {
    let view = match direction {
        Direction::Out => std::borrow::Cow::Borrowed(g),
        Direction::In => std::borrow::Cow::Owned(g.reverse()),
    };
    let d = single_source_full(&view, root, DistanceKind::EA).expect("root was checked");
    (0..g.vertex_count())
        .map(|v| d.dist.get(v).is_finite())
        .collect()
}

fn distances(a: GraphArgs) -> Outcome {
    let doc = load(&a.common.graph)?;
    let root = root_of(&doc, &a.common.root)?;
    let s = single_source_full(&doc.graph, root, a.kind).map_err(usage)?;
    emit(render::distances(
        &doc.graph,
        root,
        a.kind,
        "sweep",
        &s.dist.values,
        &s.ead.values,
        a.common.format,
    ))
}

fn branching(a: SearchArgs, direction: Direction) -> Outcome {
    let doc = load(&a.common.graph)?;
    let root = root_of(&doc, &a.common.root)?;
    let g = &doc.graph;
    let kind = a.kind;
    let guards = Guards {
        tob_vertices: a.max_vertices,
        ..Guards::default()
    };
    let (b, method): (Branching, &str) = match (kind, direction) {
        (DistanceKind::FT | DistanceKind::MW, _) => {
            eprintln!("warning: maximum {kind} branchings are NP-hard; using the exhaustive search unless a polynomial case applies");
            let poly = match direction {
                Direction::Out => ft_mw_poly_cases(g, root, kind).map_err(usage)?,
                Direction::In => None,
            };
            match poly {
                Some(b) => (b, "polynomial special case"),
                None => match direction {
                    Direction::Out => (
                        brute_max_dtob_with(g, root, kind, &guards)?,
                        "exhaustive search",
                    ),
                    Direction::In => (brute_max_dtib(g, root, kind, &guards)?, "exhaustive search"),
                },
            }
        }
        (_, Direction::In) => (max_d_tib(g, root, kind).map_err(usage)?, "polynomial"),
        (DistanceKind::EA, _) => (spanning_tob(g, root).map_err(usage)?, "polynomial"),
        (DistanceKind::MT, _) => (max_mt_tob(g, root).map_err(usage)?, "polynomial"),
        _ => (max_ld_st_tob(g, root, kind).map_err(usage)?, "polynomial"),
    };
    let reach = reachable(g, root, direction);
    emit(render::branching(
        g,
        &b,
        kind,
        method,
        &reach,
        a.common.format,
    ))
}

fn spanning(a: SpanArgs, direction: Direction) -> Outcome {
    let doc = load(&a.common.graph)?;
    let root = root_of(&doc, &a.common.root)?;
    let g = &doc.graph;
    let kind = a.kind;
    let k = a.k.or(doc.k);
    let guards = Guards {
        toss_arcs: a.max_arcs,
        ..Guards::default()
    };
    let limit = k.unwrap_or(usize::MAX);
    let within = |arcs: Vec<ArcId>| (arcs.len() <= limit).then_some(arcs);
    let witness;
    let arcs = match (direction, kind) {
        (Direction::Out, DistanceKind::EA) => {
            witness = ea_toss(g, root).map_err(usage)?;
            witness.as_ref().and_then(|w| within(w.arcs.clone()))
        }
        (Direction::Out, _) => {
            witness = brute_min_dtoss_with(g, root, kind, limit, &guards)?;
            witness.as_ref().map(|w| w.arcs.clone())
        }
        (Direction::In, DistanceKind::LD) => {
            witness = None;
            ld_tiss_poly(g, root).map_err(usage)?.and_then(within)
        }
        (Direction::In, _) => {
            witness =
                brute_min_dtoss_with(&g.reverse(), root, kind.under_reversal(), limit, &guards)?;
            witness.as_ref().map(|w| w.arcs.clone())
        }
    };
    let feasible = arcs.is_some();
    let answer = SpanningAnswer {
        kind,
        direction,
        root,
        k,
        arcs,
        witness: if direction == Direction::Out && feasible {
            witness.as_ref()
        } else {
            None
        },
    };
    print!("{}", render::spanning(g, &answer, a.common.format));
    Ok(feasible)
}

fn parse_arc_list(g: &TemporalGraph, text: &str) -> Result<Vec<ArcId>, Failure> {
    let mut used = vec![false; g.arc_count()];
    let mut ids = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let [u, v, s, t] = toks[..] else {
            return Err(usage(format!(
                "arcs line {}: expected `tail head t_start t_arrive`",
                i + 1
            )));
        };
        let (s, t): (u32, u32) = match (s.parse(), t.parse()) {
            (Ok(s), Ok(t)) => (s, t),
            _ => return Err(usage(format!("arcs line {}: bad time label", i + 1))),
        };
        let (u, v) = (
            g.require_vertex(u).map_err(usage)?,
            g.require_vertex(v).map_err(usage)?,
        );
        let id = (0..g.arc_count())
            .find(|&id| {
                let a = g.arc(id);
                !used[id] && a.tail == u && a.head == v && a.t_start == s && a.t_arrive == t
            })
            .ok_or_else(|| {
                usage(format!(
                    "arcs line {}: `{line}` is not an arc of the graph",
                    i + 1
                ))
            })?;
        used[id] = true;
        ids.push(id);
    }
    Ok(ids)
}

fn verify(a: VerifyArgs) -> Outcome {
    let doc = load(&a.common.graph)?;
    let root = root_of(&doc, &a.common.root)?;
    let g = &doc.graph;
    let ids = parse_arc_list(g, &read(&a.arcs)?)?;
    let direction = if a.inward {
        Direction::In
    } else {
        Direction::Out
    };
    let built = match direction {
        Direction::Out => tob_from_arcs(g, root, &ids),
        Direction::In => tib_from_arcs(g, root, &ids),
    };
    let outcome = built
        .map_err(|e| e.to_string())
        .and_then(|b| verify_d_tob(g, &b, a.kind).map_err(|e| e.to_string()));
    let valid = outcome.is_ok();
    print!(
        "{}",
        render::verification(g, a.kind, direction, root, &outcome, a.common.format)
    );
    Ok(valid)
}

fn gen(a: GenArgs) -> Outcome {
    if a.what.formula {
        if a.vars == 0 {
            return Err(usage("--vars must be positive"));
        }
        let phi = CnfFormula::random(&mut ChaCha8Rng::seed_from_u64(a.seed), a.vars, a.clauses);
        return emit(phi.to_dimacs());
    }
    if a.what.random {
        if a.tau == 0 || (a.m > 0 && a.n < 2) {
            return Err(usage("need --tau >= 1, and --n >= 2 when --m > 0"));
        }
        let hi = a.max_elapsed.unwrap_or(a.tau - 1).min(a.tau - 1);
        if a.min_elapsed > hi {
            return Err(usage(
                "no legal time labels for the requested elapsed range",
            ));
        }
        let p = RandomGraphParams::new(a.n, a.m, a.tau).elapsed(a.min_elapsed, a.max_elapsed);
        return emit(render::graph(
            &random_graph(&p, a.seed),
            None,
            None,
            a.format,
        ));
    }
    let name = a
        .what
        .reduction
        .as_deref()
        .expect("clap enforces one choice");
    let path = a
        .cnf
        .as_ref()
        .ok_or_else(|| usage("--reduction needs --cnf"))?;
    let phi = parse_dimacs(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let variant = a.variant.unwrap_or(Variant::El0);
    let inst: Instance = match name {
        "ftmw" => gen_ftmw_instance(&phi, variant, a.simple),
        "st-toss" => {
            if a.variant == Some(Variant::El0) {
                eprintln!(
                    "note: the ST gadgets exist only with elapsed time 1; ignoring --variant"
                );
            }
            gen_st_toss_instance(&phi, a.simple)
        }
        "ld-toss" => gen_ld_toss_instance(&phi, variant, a.simple),
        _ => gen_mt_toss_instance(&phi, variant, a.simple),
    };
    let root = inst.graph.label(inst.root).to_string();
    emit(render::graph(&inst.graph, Some(&root), inst.k, a.format))
}

fn oracle(a: OracleArgs) -> Outcome {
    if let Some(path) = &a.cnf {
        let phi =
            parse_dimacs(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        let answer = sat_brute(&phi).map_err(|e| Failure::Guard(e.to_string()))?;
        match &answer {
            Some(x) => {
                let lits: Vec<String> = x
                    .iter()
                    .enumerate()
                    .map(|(i, &b)| {
                        if b {
                            format!("{}", i + 1)
                        } else {
                            format!("-{}", i + 1)
                        }
                    })
                    .collect();
                match a.format {
                    Format::Json => println!(
                        "{{\n  \"satisfiable\": true,\n  \"assignment\": [{}]\n}}",
                        lits.join(", ")
                    ),
                    _ => println!("sat\nv {} 0", lits.join(" ")),
                }
            }
            None => match a.format {
                Format::Json => {
                    println!("{{\n  \"satisfiable\": false,\n  \"assignment\": null\n}}")
                }
                _ => println!("unsat"),
            },
        }
        return Ok(answer.is_some());
    }
    let path = a.graph.as_ref().expect("clap enforces --graph");
    let kind = a.kind.expect("clap enforces --kind");
    let doc = load(path)?;
    let root = root_of(&doc, &a.root)?;
    let (d, ead) =
        oracle_single_source_capped(&doc.graph, root, kind, a.max_walks).map_err(|e| match e {
            OracleError::Overflow { .. } => Failure::Guard(e.to_string()),
            e => usage(e),
        })?;
    emit(render::distances(
        &doc.graph,
        root,
        kind,
        "enumeration",
        &d.values,
        &ead.values,
        a.format,
    ))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Distances(a) => distances(a),
        Command::Tob(a) => branching(a, Direction::Out),
        Command::Tib(a) => branching(a, Direction::In),
        Command::Toss(a) => spanning(a, Direction::Out),
        Command::Tiss(a) => spanning(a, Direction::In),
        Command::Verify(a) => verify(a),
        Command::Gen(a) => gen(a),
        Command::Oracle(a) => oracle(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Guard(msg)) => {
            eprintln!("refused: {msg}");
            ExitCode::from(3)
        }
    }
}
