use ptpn_core::Ptpn;
use ptpn_region::{Multiset, Region};

/// Which tokens an upward closure may add: any tokens, or only tokens in zero-cost places.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ordering {
    All,
    Free,
}

impl Ordering {
    pub fn name(self) -> &'static str {
        match self {
            Ordering::All => "all",
            Ordering::Free => "free",
        }
    }
}

/// Greedy subword embedding; leftmost matching is optimal for both orderings.
///
/// Under `Free` an unmatched target multiset can only be skipped when it is
/// entirely free, and then matching it instead is never worse.
fn word_embeds(net: &Ptpn, small: &[Multiset], big: &[Multiset], ord: Ordering) -> bool {
    if small.len() > big.len() {
        return false;
    }
    let mut i = 0;
    for (j, b) in big.iter().enumerate() {
        if big.len() - j < small.len() - i {
            return false;
        }
        let matched = i < small.len()
            && match b.minus(&small[i]) {
                Some(rest) => ord == Ordering::All || rest.all_free(net),
                None => false,
            };
        if matched {
            i += 1;
        } else if ord == Ordering::Free && !b.all_free(net) {
            return false;
        }
    }
    i == small.len()
}

/// `r1 ⊑ r2`: `r2` is obtained from `r1` by adding tokens (only free ones under `Free`).
pub fn region_embeds(net: &Ptpn, r1: &Region, r2: &Region, ord: Ordering) -> bool {
    if r1.token_count() > r2.token_count() {
        return false;
    }
    if ord == Ordering::Free && r1.cost_token_count(net) != r2.cost_token_count(net) {
        return false;
    }
    let zero_ok = match r2.zero.minus(&r1.zero) {
        Some(rest) => ord == Ordering::All || rest.all_free(net),
        None => false,
    };
    zero_ok && word_embeds(net, &r1.high, &r2.high, ord) && word_embeds(net, &r1.low, &r2.low, ord)
}
