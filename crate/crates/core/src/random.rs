//! Seeded random temporal graphs.
//!
//! Each arc picks an ordered pair `u != v` uniformly, then a label pair
//! `1 <= s <= t <= τ` uniformly among those whose elapsed time lies in the
//! requested range. Vertices are named `1..=n`.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{TemporalArc, TemporalGraph, Time};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomGraphParams {
    pub n: usize,
    pub m: usize,
    pub tau: Time,
    pub min_elapsed: Time,
    /// `None` means no upper bound.
    pub max_elapsed: Option<Time>,
}

impl RandomGraphParams {
    pub fn new(n: usize, m: usize, tau: Time) -> Self {
        RandomGraphParams {
            n,
            m,
            tau,
            min_elapsed: 0,
            max_elapsed: None,
        }
    }

    pub fn elapsed(mut self, min: Time, max: Option<Time>) -> Self {
        self.min_elapsed = min;
        self.max_elapsed = max;
        self
    }
}

/// Samples `(s, t)` uniformly among legal label pairs.
fn sample_times(rng: &mut impl Rng, p: &RandomGraphParams) -> (Time, Time) {
    let hi = p.max_elapsed.unwrap_or(p.tau - 1).min(p.tau - 1);
    let lo = p.min_elapsed;
    assert!(
        lo <= hi,
        "no legal label pair for the requested elapsed range"
    );
    // pairs with elapsed e: τ - e of them
    let total: u64 = (lo..=hi).map(|e| (p.tau - e) as u64).sum();
    let mut k = rng.gen_range(0..total);
    for e in lo..=hi {
        let count = (p.tau - e) as u64;
        if k < count {
            let s = k as Time + 1;
            return (s, s + e);
        }
        k -= count;
    }
    unreachable!()
}

pub fn random_graph_from(rng: &mut impl Rng, p: &RandomGraphParams) -> TemporalGraph {
    assert!(p.tau >= 1, "lifetime must be at least 1");
    assert!(p.m == 0 || p.n >= 2, "arcs need at least two vertices");
    let labels = (1..=p.n).map(|i| i.to_string()).collect();
    let n = p.n;
    let arcs = (0..p.m)
        .map(|_| {
            let pair = rng.gen_range(0..n * (n - 1));
            let u = pair / (n - 1);
            let mut v = pair % (n - 1);
            if v >= u {
                v += 1;
            }
            let (s, t) = sample_times(rng, p);
            TemporalArc::new(u, v, s, t)
        })
        .collect();
    TemporalGraph::new(labels, arcs, p.tau).expect("generated arcs are valid")
}

pub fn random_graph(p: &RandomGraphParams, seed: u64) -> TemporalGraph {
    random_graph_from(&mut ChaCha8Rng::seed_from_u64(seed), p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_graph() {
        let p = RandomGraphParams::new(6, 20, 5);
        assert_eq!(random_graph(&p, 7), random_graph(&p, 7));
        assert_ne!(random_graph(&p, 7), random_graph(&p, 8));
    }

    #[test]
    fn respects_shape() {
        let p = RandomGraphParams::new(7, 40, 6).elapsed(1, Some(1));
        let g = random_graph(&p, 1);
        assert_eq!(g.vertex_count(), 7);
        assert_eq!(g.arc_count(), 40);
        assert!(g
            .arcs()
            .iter()
            .all(|a| a.elapsed() == 1 && a.tail != a.head));
        assert_eq!(g.labels()[0], "1");
    }

    #[test]
    fn all_label_pairs_are_hit() {
        let p = RandomGraphParams::new(2, 500, 3);
        let g = random_graph(&p, 3);
        let mut seen = std::collections::BTreeSet::new();
        for a in g.arcs() {
            seen.insert((a.t_start, a.t_arrive));
        }
        assert_eq!(seen.len(), 6);
    }
}
