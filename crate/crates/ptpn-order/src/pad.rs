use std::collections::BTreeSet;

use ptpn_core::Ptpn;
use ptpn_region::{insert_token, slots, token_cost, RVal, Region};

use crate::basis::Basis;
use crate::config::Config;
use crate::ordering::Ordering;

/// Bound on the cost tokens a padded region may hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PadLimit {
    /// Strictly fewer than this many tokens in positive-cost places.
    CountBelow(u64),
    /// Total token cost at most this much.
    TokenCostAtMost(u64),
}

impl PadLimit {
    fn admits(self, net: &Ptpn, r: &Region) -> bool {
        match self {
            PadLimit::CountBelow(n) => (r.cost_token_count(net) as u64) < n,
            PadLimit::TokenCostAtMost(n) => token_cost(net, r) <= n,
        }
    }
}

/// Every region obtained from `r` by adding one token of a positive-cost place.
pub fn add_cost_token(net: &Ptpn, r: &Region) -> BTreeSet<Region> {
    let mut out = BTreeSet::new();
    for p in (0..net.places.len()).filter(|p| !net.is_free(*p)) {
        for v in RVal::all(net.cmax()) {
            for (_, slot) in slots(r) {
                if let Some(x) = insert_token(r, (p, v), slot) {
                    out.insert(x);
                }
            }
        }
    }
    out
}

/// All paddings of `c` with extra cost tokens that stay within `limit`.
///
/// Paddings of a single configuration form an antichain under `Free`, since two
/// of them differ only by cost tokens.
pub fn cost_pad_with(net: &Ptpn, c: &Config, limit: PadLimit) -> Basis {
    let mut seen = BTreeSet::new();
    if limit.admits(net, &c.region) {
        let mut frontier = vec![c.region.clone()];
        seen.insert(c.region.clone());
        while let Some(r) = frontier.pop() {
            for x in add_cost_token(net, &r) {
                if limit.admits(net, &x) && seen.insert(x.clone()) {
                    frontier.push(x);
                }
            }
        }
    }
    Basis::from_antichain(net, Ordering::Free, seen.into_iter().map(|r| Config::new(r, c.budget)).collect())
}

/// Minimal `Free` basis of `↑all{c}` restricted to fewer than `c.budget` cost tokens.
pub fn cost_pad(net: &Ptpn, c: &Config) -> Basis {
    cost_pad_with(net, c, PadLimit::CountBelow(c.budget))
}
