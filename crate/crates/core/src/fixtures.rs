//! Small reference graphs shipped with the crate (see `fixtures/*.tg`).

use crate::format::parse_tg;
use crate::graph::TemporalGraph;

pub const G1_TG: &str = include_str!("../fixtures/g1.tg");
pub const NO_FT_MW_TG: &str = include_str!("../fixtures/no_ft_mw.tg");
pub const NO_LD_MT_TG: &str = include_str!("../fixtures/no_ld_mt.tg");
pub const NO_ST_TG: &str = include_str!("../fixtures/no_st.tg");
pub const MT_EXPANSION_TG: &str = include_str!("../fixtures/mt_expansion.tg");

fn load(text: &str) -> TemporalGraph {
    parse_tg(text).expect("bundled fixture parses").graph
}

/// Five vertices `1..=5`, twelve arcs, τ = 10.
pub fn g1() -> TemporalGraph {
    load(G1_TG)
}

/// Two `r -> v` arcs at times 1 and 2 feeding `x` and `y` respectively.
pub fn no_ft_mw() -> TemporalGraph {
    load(NO_FT_MW_TG)
}

/// A unique path `r v x y` at time 1 plus a later direct arc `r -> x`.
pub fn no_ld_mt() -> TemporalGraph {
    load(NO_LD_MT_TG)
}

/// Like [`no_ld_mt`] but with elapsed time on `v -> x` and τ = 3.
pub fn no_st() -> TemporalGraph {
    load(NO_ST_TG)
}

/// Chain `r v x y` with duplicated arcs at time 2 on the first two hops.
pub fn mt_expansion() -> TemporalGraph {
    load(MT_EXPANSION_TG)
}
