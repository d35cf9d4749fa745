//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use temporal_branchings::branching::{
    max_d_tib, max_dtob_vertexset_oracle, max_ld_st_tob, max_mt_tob, spanning_tob, tob_from_arcs,
    verify_d_tob, Branching,
};
use temporal_branchings::distances::{prefixes_optimal_against, single_source_full};
use temporal_branchings::expansion::{
    collapse_tree, expansion_dijkstra, expansion_distances, static_expansion,
};
use temporal_branchings::fixtures;
use temporal_branchings::graph::{ArcId, TemporalGraph, Time};
use temporal_branchings::hardness::reductions::{
    gen_ftmw_instance, gen_ld_toss_instance, gen_mt_toss_instance, gen_st_toss_instance, Instance,
    Variant,
};
use temporal_branchings::hardness::{
    brute_max_dtob, brute_min_dtoss, sat_brute, verify_toss_witness, CnfFormula,
};
use temporal_branchings::oracle::{
    enumerate_temporal_paths, oracle_single_source, oracle_single_source_capped,
};
use temporal_branchings::random::{random_graph, random_graph_from, RandomGraphParams};
use temporal_branchings::walk::walk_metrics;
use temporal_branchings::{single_source, Distance, DistanceKind, TemporalWalk};

use DistanceKind::*;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn within(limit: Duration, started: Instant) -> Outcome {
    let took = started.elapsed();
    if took > limit {
        Err(format!("took {took:.2?}, limit {limit:?}"))
    } else {
        Ok(format!("{took:.2?}"))
    }
}

fn arc(g: &TemporalGraph, u: &str, v: &str, s: Time, t: Time) -> ArcId {
    let (u, v) = (g.vertex(u).unwrap(), g.vertex(v).unwrap());
    g.arcs()
        .iter()
        .position(|a| a.tail == u && a.head == v && a.t_start == s && a.t_arrive == t)
        .unwrap_or_else(|| panic!("no arc {u}->{v} ({s},{t})"))
}

fn dist(g: &TemporalGraph, root: &str, kind: DistanceKind, v: &str) -> Distance {
    single_source(g, g.vertex(root).unwrap(), kind)
        .unwrap()
        .get(g.vertex(v).unwrap())
}

fn tob_for(g: &TemporalGraph, r: usize, kind: DistanceKind) -> Branching {
    match kind {
        EA => spanning_tob(g, r).unwrap(),
        MT => max_mt_tob(g, r).unwrap(),
        _ => max_ld_st_tob(g, r, kind).unwrap(),
    }
}

fn small_random(rng: &mut ChaCha8Rng, max_n: usize, max_m: usize, max_tau: Time) -> TemporalGraph {
    let n = rng.gen_range(2..=max_n);
    let m = rng.gen_range(0..=max_m);
    let tau = rng.gen_range(1..=max_tau);
    random_graph_from(rng, &RandomGraphParams::new(n, m, tau))
}

// 1 ----------------------------------------------------------------------

fn bundled_fixtures() -> Outcome {
    let started = Instant::now();
    let g = fixtures::g1();
    let ea: Vec<Distance> = ["1", "2", "3", "4", "5"]
        .iter()
        .map(|v| dist(&g, "1", EA, v))
        .collect();
    let expected: Vec<Distance> = [0, 5, 4, 2, 4].into_iter().map(Distance::finite).collect();
    ensure!(ea == expected, "EA from 1 is {ea:?}");
    for (kind, value) in [(FT, 3), (LD, 6), (MT, 2), (MW, 0), (ST, 2)] {
        let d = dist(&g, "1", kind, "3");
        ensure!(
            d == Distance::finite(value),
            "{kind}(1,3) = {d}, expected {value}"
        );
    }
    let r = g.vertex("1").unwrap();
    for kind in DistanceKind::ALL {
        let fast = single_source_full(&g, r, kind).unwrap();
        let (d, ead) = oracle_single_source(&g, r, kind).unwrap();
        ensure!(
            fast.dist == d && fast.ead == ead,
            "{kind} disagrees with path enumeration"
        );
    }
    within(Duration::from_secs(1), started)
        .map(|t| format!("G1 values exact, all kinds match the oracle, {t}"))
}

// 2 ----------------------------------------------------------------------

fn algorithm_outputs() -> Outcome {
    let started = Instant::now();
    let g = fixtures::g1();
    let r = g.vertex("1").unwrap();
    for kind in [MT, LD, ST] {
        let b = tob_for(&g, r, kind);
        let report = verify_d_tob(&g, &b, kind).map_err(|e| format!("{kind} on G1: {e}"))?;
        ensure!(report.spanning, "{kind} on G1 is not spanning");
        ensure!(report.ead, "{kind} on G1 misses the earliest arrival");
        ensure!(
            report.prefix_ead == Some(true),
            "{kind} on G1 misses the prefix-optimal earliest arrival"
        );
    }
    for (name, g, kind) in [
        ("no_ld_mt", fixtures::no_ld_mt(), MT),
        ("no_ld_mt", fixtures::no_ld_mt(), LD),
        ("no_st", fixtures::no_st(), ST),
    ] {
        let r = g.vertex("r").unwrap();
        let b = tob_for(&g, r, kind);
        ensure!(
            b.member_count() == 3,
            "{kind} on {name} has {} members",
            b.member_count()
        );
        verify_d_tob(&g, &b, kind).map_err(|e| format!("{kind} on {name}: {e}"))?;
    }
    within(Duration::from_secs(1), started)
        .map(|t| format!("G1 spanning and EAD, counterexample graphs give 3 members, {t}"))
}

// 3 ----------------------------------------------------------------------

fn oracle_equivalence() -> Outcome {
    let started = Instant::now();
    let graphs = 500;
    let mut checks = 0usize;
    for seed in 0..graphs {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = small_random(&mut rng, 7, 14, 6);
        let rev = g.reverse();
        let tau = g.lifetime() as u64;
        for r in 0..g.vertex_count() {
            for kind in DistanceKind::ALL {
                let fast = single_source_full(&g, r, kind).unwrap();
                let (d, ead) = oracle_single_source_capped(&g, r, kind, usize::MAX).unwrap();
                ensure!(
                    fast.dist == d && fast.ead == ead,
                    "seed {seed} root {r} {kind}: sweep differs from oracle"
                );
                checks += 1;
            }
            for kind in [LD, MT, ST] {
                let b = tob_for(&g, r, kind);
                let oracle = max_dtob_vertexset_oracle(&g, r, kind).unwrap();
                ensure!(
                    b.members() == oracle,
                    "seed {seed} root {r} {kind}: members differ from oracle"
                );
                let brute = brute_max_dtob(&g, r, kind).unwrap();
                ensure!(
                    brute.member_count() == b.member_count(),
                    "seed {seed} root {r} {kind}: brute force finds {} members, algorithm {}",
                    brute.member_count(),
                    b.member_count()
                );
            }
            for kind in [EA, LD, MT, ST] {
                let tib = max_d_tib(&g, r, kind).unwrap();
                verify_d_tob(&g, &tib, kind)
                    .map_err(|e| format!("seed {seed} root {r} {kind} TIB: {e}"))?;
                let mirror = tob_for(&rev, r, kind.under_reversal());
                ensure!(
                    tib.members() == mirror.members(),
                    "seed {seed} root {r} {kind}: TIB members differ"
                );
                for v in tib.members() {
                    let into = single_source(&g, v, kind).unwrap().get(r);
                    ensure!(
                        tib.dist[v] == into,
                        "seed {seed} root {r} {kind}: TIB value at {v}"
                    );
                }
            }
            for kind in DistanceKind::ALL {
                let out_rev = single_source(&rev, r, kind.under_reversal()).unwrap();
                for v in (0..g.vertex_count()).filter(|&v| v != r) {
                    let into = single_source(&g, v, kind).unwrap().get(r);
                    let expected = match (kind, out_rev.get(v).value()) {
                        (EA | LD, Some(x)) => Distance::finite(tau + 1 - x),
                        _ => out_rev.get(v),
                    };
                    ensure!(
                        into == expected,
                        "seed {seed} {kind}: duality fails for ({v},{r})"
                    );
                }
            }
        }
    }
    within(Duration::from_secs(300), started).map(|t| {
        format!("{graphs} graphs, {checks} distance vectors, branchings and duality agree, {t}")
    })
}

// 4 ----------------------------------------------------------------------

#[derive(Clone, Copy, Debug)]
enum Decision {
    SpanningFtMw,
    Toss(DistanceKind),
}

fn random_formula(rng: &mut ChaCha8Rng) -> CnfFormula {
    let l = rng.gen_range(1..=3);
    let m = rng.gen_range(1..=3);
    CnfFormula::random(rng, l, m)
}

fn decide(inst: &Instance, decision: Decision) -> Result<bool, String> {
    match decision {
        Decision::SpanningFtMw => {
            let ft = brute_max_dtob(&inst.graph, inst.root, FT).map_err(|e| e.to_string())?;
            let mw = brute_max_dtob(&inst.graph, inst.root, MW).map_err(|e| e.to_string())?;
            if ft.is_spanning() != mw.is_spanning() {
                return Err("FT and MW disagree on spanning".into());
            }
            Ok(ft.is_spanning())
        }
        Decision::Toss(kind) => {
            let k = inst.k.expect("TOSS instances carry k");
            let w = brute_min_dtoss(&inst.graph, inst.root, kind, k).map_err(|e| e.to_string())?;
            if let Some(w) = &w {
                if w.len() > k || !verify_toss_witness(&inst.graph, inst.root, kind, w) {
                    return Err("witness does not verify".into());
                }
            }
            Ok(w.is_some())
        }
    }
}

fn reduction_round_trips() -> Outcome {
    let started = Instant::now();
    type Gen = fn(&CnfFormula, Variant, bool) -> Instance;
    let configs: Vec<(&str, Gen, Decision, Vec<Variant>)> = vec![
        (
            "ftmw",
            gen_ftmw_instance,
            Decision::SpanningFtMw,
            vec![Variant::El0, Variant::El1],
        ),
        (
            "st-toss",
            |phi, _, simple| gen_st_toss_instance(phi, simple),
            Decision::Toss(ST),
            vec![Variant::El1],
        ),
        (
            "ld-toss",
            gen_ld_toss_instance,
            Decision::Toss(LD),
            vec![Variant::El0, Variant::El1],
        ),
        (
            "mt-toss",
            gen_mt_toss_instance,
            Decision::Toss(MT),
            vec![Variant::El0, Variant::El1],
        ),
    ];
    let per_config = 50;
    let (mut total, mut unsat) = (0usize, 0usize);
    for (name, gen, decision, variants) in configs {
        for variant in variants {
            for simple in [false, true] {
                let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ total as u64);
                for i in 0..per_config {
                    let phi = random_formula(&mut rng);
                    let sat = sat_brute(&phi).unwrap().is_some();
                    let inst = gen(&phi, variant, simple);
                    if simple {
                        ensure!(
                            inst.graph.is_simple(),
                            "{name} {variant} simple output has parallel arcs"
                        );
                    }
                    let yes = decide(&inst, decision)
                        .map_err(|e| format!("{name} {variant} #{i}: {e}"))?;
                    ensure!(
                        yes == sat,
                        "{name} {variant} simple={simple} #{i}: sat={sat} but decision={yes} for {phi}"
                    );
                    total += 1;
                    unsat += usize::from(!sat);
                }
            }
        }
    }
    within(Duration::from_secs(600), started).map(|t| {
        format!("{total} instances ({unsat} unsatisfiable), every decision matches sat_brute, {t}")
    })
}

// 5 ----------------------------------------------------------------------

fn g1_branchings(g: &TemporalGraph) -> Vec<(DistanceKind, Vec<ArcId>)> {
    let a = |u, v, s, t| arc(g, u, v, s, t);
    vec![
        (
            EA,
            vec![
                a("1", "4", 1, 2),
                a("4", "5", 2, 4),
                a("5", "3", 4, 4),
                a("4", "2", 4, 5),
            ],
        ),
        (
            FT,
            vec![
                a("1", "2", 6, 7),
                a("1", "4", 1, 2),
                a("2", "5", 7, 8),
                a("5", "3", 8, 9),
            ],
        ),
        (
            LD,
            vec![
                a("1", "2", 6, 7),
                a("5", "4", 8, 9),
                a("2", "3", 9, 10),
                a("2", "5", 7, 8),
            ],
        ),
        (
            MT,
            vec![
                a("1", "2", 6, 7),
                a("1", "4", 1, 2),
                a("1", "5", 5, 7),
                a("5", "3", 8, 9),
            ],
        ),
        (
            MW,
            vec![
                a("1", "2", 6, 7),
                a("1", "4", 1, 2),
                a("4", "5", 2, 4),
                a("5", "3", 4, 4),
            ],
        ),
        (
            ST,
            vec![
                a("1", "2", 6, 7),
                a("1", "4", 1, 2),
                a("2", "3", 9, 10),
                a("2", "5", 7, 8),
            ],
        ),
    ]
}

fn perturbed_branchings_fail() -> Result<usize, String> {
    let g = fixtures::g1();
    let r = g.vertex("1").unwrap();
    let mut rejected = 0;
    for (kind, arcs) in g1_branchings(&g) {
        let b =
            tob_from_arcs(&g, r, &arcs).map_err(|e| format!("{kind} branching rejected: {e}"))?;
        let report = verify_d_tob(&g, &b, kind).map_err(|e| format!("{kind} branching: {e}"))?;
        ensure!(report.spanning, "{kind} branching is not spanning");
        for i in 0..arcs.len() {
            let mut fewer = arcs.clone();
            fewer.remove(i);
            let spanning = tob_from_arcs(&g, r, &fewer).is_ok_and(|b| b.is_spanning());
            ensure!(!spanning, "{kind} without arc {} still spans", arcs[i]);
            rejected += 1;
        }
        for extra in (0..g.arc_count()).filter(|id| !arcs.contains(id)) {
            let mut more = arcs.clone();
            more.push(extra);
            ensure!(
                tob_from_arcs(&g, r, &more).is_err(),
                "{kind} plus arc {extra} accepted"
            );
            rejected += 1;
        }
    }
    Ok(rejected)
}

fn optimal_prefix_replacement() -> Result<usize, String> {
    let target = 1000;
    let mut trials = 0;
    let mut seed = 0u64;
    while trials < target {
        seed += 1;
        let mut rng = ChaCha8Rng::seed_from_u64(1_000_000 + seed);
        let g = small_random(&mut rng, 6, 12, 5);
        let kind = [MT, ST, LD][seed as usize % 3];
        let root = 0;
        let d = single_source(&g, root, kind).unwrap();
        let optimal: Vec<TemporalWalk> = (0..g.vertex_count())
            .flat_map(|v| enumerate_temporal_paths(&g, root, v).unwrap())
            .filter(|w| prefixes_optimal_against(&g, w, &d, None))
            .collect();
        let mut per_graph = 0;
        'walks: for w in &optimal {
            let vertices = w.vertices(&g);
            for h in 1..w.len() {
                let v = vertices[h];
                let suffix = w.suffix(&g, h);
                let start = g.arc(suffix.arcs[0]).t_start;
                for wv in optimal
                    .iter()
                    .filter(|x| x.end(&g) == v && x.arcs != w.arcs[..h])
                {
                    if walk_metrics(&g, wv).unwrap().t_arrive > start {
                        continue;
                    }
                    let joined = wv.concat(&suffix);
                    ensure!(
                        joined.validate(&g).is_ok(),
                        "seed {seed}: joined walk is not temporal"
                    );
                    ensure!(
                        prefixes_optimal_against(&g, &joined, &d, None),
                        "seed {seed} {kind}: replacement breaks prefix optimality"
                    );
                    trials += 1;
                    per_graph += 1;
                    if per_graph >= 25 || trials >= target {
                        break 'walks;
                    }
                }
            }
        }
    }
    Ok(trials)
}

fn two_step_st_spans_reachable() -> Result<usize, String> {
    let mut spanning = 0;
    for seed in 0..200u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(2_000_000 + seed);
        let n = rng.gen_range(2..=7);
        let m = rng.gen_range(n..=3 * n);
        let g = random_graph_from(&mut rng, &RandomGraphParams::new(n, m, 2));
        let reach = spanning_tob(&g, 0).unwrap().is_spanning();
        let st = max_ld_st_tob(&g, 0, ST).unwrap().is_spanning();
        ensure!(
            reach == st,
            "seed {seed}: reachable={reach}, ST spanning={st}"
        );
        spanning += usize::from(st);
    }
    Ok(spanning)
}

fn collapsed_expansion_tree() -> Result<(), String> {
    let g = fixtures::mt_expansion();
    let r = g.vertex("r").unwrap();
    let fast = single_source(&g, r, MT).unwrap();
    ensure!(
        expansion_distances(&g, r, MT).unwrap() == fast,
        "expansion MT values differ"
    );
    let x = static_expansion(&g);
    let arcs = collapse_tree(&expansion_dijkstra(&g, &x, r, MT));
    ensure!(
        tob_from_arcs(&g, r, &arcs).is_err(),
        "collapsed expansion tree is a branching"
    );
    Ok(())
}

fn structural_properties() -> Outcome {
    let rejected = perturbed_branchings_fail()?;
    let trials = optimal_prefix_replacement()?;
    let spanning = two_step_st_spans_reachable()?;
    collapsed_expansion_tree()?;
    Ok(format!(
        "6 G1 branchings verify and {rejected} perturbations are rejected, {trials} replacement trials hold, \
         200 two-step graphs agree ({spanning} spanning), collapsed expansion tree is rejected"
    ))
}

// 6 ----------------------------------------------------------------------

fn peak_memory_kib() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    line.split_whitespace().nth(1)?.parse().ok()
}

fn time_algorithms(g: &TemporalGraph) -> Duration {
    let started = Instant::now();
    let a = max_mt_tob(g, 0).unwrap();
    let b = max_ld_st_tob(g, 0, LD).unwrap();
    let c = max_ld_st_tob(g, 0, ST).unwrap();
    std::hint::black_box((a, b, c));
    started.elapsed()
}

fn performance() -> Outcome {
    let n = 100_000;
    let tau = 1_000;
    let sizes = [125_000, 250_000, 500_000, 1_000_000];
    let graphs: Vec<TemporalGraph> = sizes
        .iter()
        .map(|&m| random_graph(&RandomGraphParams::new(n, m, tau), 42))
        .collect();
    // rounds interleave the sizes so a slow stretch does not hit one size only
    let mut best = vec![Duration::MAX; sizes.len()];
    for _ in 0..15 {
        for (g, b) in graphs.iter().zip(&mut best) {
            *b = (*b).min(time_algorithms(g));
        }
    }
    let full = *best.last().unwrap();
    let ratios: Vec<f64> = best
        .windows(2)
        .map(|w| w[1].as_secs_f64() / w[0].as_secs_f64())
        .collect();
    let ratio_text = ratios
        .iter()
        .map(|r| format!("{r:.2}"))
        .collect::<Vec<_>>()
        .join(", ");
    ensure!(full < Duration::from_secs(10), "m = 1e6 took {full:.2?}");
    ensure!(
        ratios.iter().all(|&r| r <= 2.2),
        "doubling ratios {ratio_text} exceed 2.2"
    );
    let memory = peak_memory_kib();
    if let Some(kib) = memory {
        ensure!(kib < 2 * 1024 * 1024, "peak memory {} MiB", kib / 1024);
    }
    let memory = memory.map_or("peak memory unavailable".to_string(), |k| {
        format!("peak memory {} MiB", k / 1024)
    });
    Ok(format!(
        "n=1e5 m=1e6 tau=1e3: MT+LD+ST in {full:.2?}, doubling ratios {ratio_text}, {memory}"
    ))
}

fn main() {
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("bundled fixtures exact", bundled_fixtures),
        ("algorithm outputs verify", algorithm_outputs),
        ("oracle equivalence", oracle_equivalence),
        ("reduction round-trips", reduction_round_trips),
        ("structural properties", structural_properties),
        ("performance", performance),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
