use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The six optimality criteria for temporal walks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum DistanceKind {
    /// Earliest arrival time.
    EA,
    /// Fastest time (minimum duration).
    FT,
    /// Latest departure time.
    LD,
    /// Minimum transfers (number of arcs).
    MT,
    /// Minimum waiting time.
    MW,
    /// Shortest travelling time (sum of elapsed times).
    ST,
}

impl DistanceKind {
    pub const ALL: [DistanceKind; 6] = [
        DistanceKind::EA,
        DistanceKind::FT,
        DistanceKind::LD,
        DistanceKind::MT,
        DistanceKind::MW,
        DistanceKind::ST,
    ];

    /// `true` only for LD, the one criterion that is maximized.
    pub fn maximizes(self) -> bool {
        self == DistanceKind::LD
    }

    /// The criterion that corresponds to `self` on the reverse graph:
    /// EA and LD swap, the others are fixed.
    pub fn under_reversal(self) -> DistanceKind {
        match self {
            DistanceKind::EA => DistanceKind::LD,
            DistanceKind::LD => DistanceKind::EA,
            other => other,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            DistanceKind::EA => "EA",
            DistanceKind::FT => "FT",
            DistanceKind::LD => "LD",
            DistanceKind::MT => "MT",
            DistanceKind::MW => "MW",
            DistanceKind::ST => "ST",
        }
    }
}

impl fmt::Display for DistanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown distance kind `{0}` (expected one of EA, FT, LD, MT, MW, ST)")]
pub struct UnknownKind(pub String);

impl FromStr for DistanceKind {
    type Err = UnknownKind;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "EA" => Ok(DistanceKind::EA),
            "FT" => Ok(DistanceKind::FT),
            "LD" => Ok(DistanceKind::LD),
            "MT" => Ok(DistanceKind::MT),
            "MW" => Ok(DistanceKind::MW),
            "ST" => Ok(DistanceKind::ST),
            _ => Err(UnknownKind(s.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        for kind in DistanceKind::ALL {
            assert_eq!(kind.as_str().parse::<DistanceKind>(), Ok(kind));
            assert_eq!(
                kind.to_string().to_lowercase().parse::<DistanceKind>(),
                Ok(kind)
            );
        }
        assert!("XX".parse::<DistanceKind>().is_err());
    }

    #[test]
    fn reversal_swaps_only_ea_and_ld() {
        for kind in DistanceKind::ALL {
            assert_eq!(kind.under_reversal().under_reversal(), kind);
        }
        assert_eq!(DistanceKind::EA.under_reversal(), DistanceKind::LD);
        assert_eq!(DistanceKind::MT.under_reversal(), DistanceKind::MT);
    }
}
