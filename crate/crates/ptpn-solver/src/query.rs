use std::fmt;

use ptpn_core::{PlaceId, Ptpn};
use ptpn_region::{Region, SymStep};

/// A cost-threshold question: can `p_fin` be covered from one fresh token in `p_init` at cost at most `v`?
#[derive(Clone, Copy, Debug)]
pub struct Query<'a> {
    pub net: &'a Ptpn,
    pub p_init: PlaceId,
    pub p_fin: PlaceId,
    pub v: u64,
}

/// Limits for the bounded back end and the auxiliary searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_depth: usize,
    pub max_tokens: usize,
    pub max_configs: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds { max_depth: 64, max_tokens: 32, max_configs: 100_000 }
    }
}

/// A bound whose exhaustion made a search incomplete.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bound {
    Depth,
    Tokens,
    Configs,
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Bound::Depth => "depth",
            Bound::Tokens => "tokens",
            Bound::Configs => "configs",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessStep {
    pub step: SymStep,
    pub cost: u64,
    /// Region after the step.
    pub region: Region,
}

/// A symbolic path from the initial region to a region holding a `p_fin` token.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub p_init: PlaceId,
    pub p_fin: PlaceId,
    pub steps: Vec<WitnessStep>,
}

impl Witness {
    pub fn initial_region(&self) -> Region {
        Region::initial(self.p_init)
    }

    pub fn total_cost(&self) -> u64 {
        self.steps.iter().map(|s| s.cost).sum()
    }

    pub fn final_region(&self) -> Region {
        self.steps.last().map_or_else(|| self.initial_region(), |s| s.region.clone())
    }

    pub fn timed_steps(&self) -> usize {
        self.steps.iter().filter(|s| s.step.is_timed()).count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes(Witness),
    No,
    /// Some bounded stage was cut short; the listed bounds were hit.
    Unknown(Vec<Bound>),
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Yes(_) => "yes",
            Verdict::No => "no",
            Verdict::Unknown(_) => "unknown",
        }
    }

    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Verdict::No)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exactness {
    Exact,
    UpperBound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OptResult {
    Infinite,
    Value(u64, Exactness),
    /// Coverability itself could not be decided within the bounds.
    Unknown,
}
