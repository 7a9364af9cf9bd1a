use std::collections::{BTreeMap, BTreeSet, VecDeque};

use ptpn_core::Ptpn;
use ptpn_order::{minimize, region_embeds, Config, Ordering};
use ptpn_region::{all_regions, fire_region, succ_a, succ_b, succ_type1, succ_type2, Region};

/// Which successor relation a brute-force predecessor check uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    Discrete(usize),
    A,
    B,
}

/// Successors of `r` of the given kind, with step costs.
pub fn successors(net: &Ptpn, r: &Region, kind: StepKind) -> Vec<(Region, u64)> {
    match kind {
        StepKind::Discrete(t) => {
            let c = net.transitions[t].cost;
            fire_region(net, r, t).into_iter().map(|x| (x, c)).collect()
        }
        StepKind::A => {
            let mut out: Vec<(Region, u64)> =
                succ_type1(r).into_iter().chain(succ_type2(net, r)).map(|x| (x, 0)).collect();
            for t in 0..net.transitions.len() {
                let c = net.transitions[t].cost;
                out.extend(fire_region(net, r, t).into_iter().map(|x| (x, c)));
            }
            out
        }
        StepKind::B => succ_b(net, r).into_iter().collect(),
    }
}

/// Every region with at most `max_tokens` tokens, paired with its successors of each kind.
pub struct Universe {
    pub regions: Vec<Region>,
    succs: BTreeMap<(usize, KindKey), Vec<(Region, u64)>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum KindKey {
    D(usize),
    A,
    B,
}

fn key(k: StepKind) -> KindKey {
    match k {
        StepKind::Discrete(t) => KindKey::D(t),
        StepKind::A => KindKey::A,
        StepKind::B => KindKey::B,
    }
}

impl Universe {
    pub fn new(net: &Ptpn, max_tokens: usize) -> Self {
        let regions: Vec<Region> = all_regions(net, max_tokens).into_iter().collect();
        let mut succs = BTreeMap::new();
        for (i, r) in regions.iter().enumerate() {
            let mut kinds: Vec<StepKind> = (0..net.transitions.len()).map(StepKind::Discrete).collect();
            kinds.extend([StepKind::A, StepKind::B]);
            for k in kinds {
                succs.insert((i, key(k)), successors(net, r, k));
            }
        }
        Universe { regions, succs }
    }

    /// Minimal predecessors of `c` within the universe, found by checking every region forward.
    pub fn brute_pre(&self, net: &Ptpn, c: &Config, kind: StepKind, ord: Ordering, v: u64) -> BTreeSet<Config> {
        let mut found = BTreeSet::new();
        for (i, r) in self.regions.iter().enumerate() {
            for (x, cost) in &self.succs[&(i, key(kind))] {
                if region_embeds(net, &c.region, x, ord) {
                    let budget = c.budget + cost;
                    if budget <= v {
                        found.insert(Config::new(r.clone(), budget));
                    }
                }
            }
        }
        minimize(net, found, ord).into_vec().into_iter().collect()
    }
}

/// Answer of the exhaustive forward oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleAnswer {
    Yes,
    No,
    /// A state above the token cap or the state limit was reached before closure.
    Inconclusive,
}

/// Exhaustive breadth-first exploration of (region, remaining budget) states, with no pruning
/// beyond exact duplicates.
pub fn forward_oracle(
    net: &Ptpn,
    p_init: usize,
    p_fin: usize,
    v: u64,
    token_cap: usize,
    state_limit: usize,
) -> OracleAnswer {
    let start = (Region::initial(p_init), v);
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    let mut complete = true;
    while let Some((r, u)) = queue.pop_front() {
        if r.contains_place(p_fin) {
            return OracleAnswer::Yes;
        }
        let mut next: Vec<(Region, u64)> = succ_a(net, &r).into_iter().collect();
        next.extend(succ_b(net, &r));
        for (x, cost) in next {
            let Some(u2) = u.checked_sub(cost) else { continue };
            if x.token_count() > token_cap || seen.len() >= state_limit {
                complete = false;
                continue;
            }
            if seen.insert((x.clone(), u2)) {
                queue.push_back((x, u2));
            }
        }
    }
    if complete {
        OracleAnswer::No
    } else {
        OracleAnswer::Inconclusive
    }
}
