//! Backward fixpoints over minimal bases, recording how each element was derived.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, VecDeque};

use ptpn_core::Ptpn;
use ptpn_order::{config_leq, Basis, Config, Ordering};

use crate::pre::{pre_a, PreLabel};
use crate::query::{Bound, SearchBounds};

/// How a basis element reaches the configuration it was computed from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Link {
    pub child: Config,
    pub label: PreLabel,
    /// Ordering under which the successor must cover `child`.
    pub ordering: Ordering,
}

/// Parent pointers from predecessors to successors.
pub type Links = BTreeMap<Config, Link>;

#[derive(Clone, Debug)]
pub struct Fixpoint {
    pub basis: Basis,
    pub links: Links,
    /// The configuration cap was hit before the worklist emptied.
    pub capped: bool,
    pub processed: usize,
}

/// The configuration a backward search tries to cover.
///
/// No step ever removes a token from a place that no transition outputs to, so
/// reading steps backwards the token count of such a place never drops. A
/// configuration holding more of them than the goal can therefore never lead to it.
#[derive(Clone, Debug)]
pub struct Goal {
    pub config: Config,
    caps: Vec<Option<usize>>,
}

impl Goal {
    pub fn new(net: &Ptpn, config: Config) -> Self {
        let caps = (0..net.places.len())
            .map(|q| {
                let produced = net.transitions.iter().any(|t| t.outputs.iter().any(|a| a.place == q));
                (!produced).then(|| config.region.tokens().filter(|(p, _)| *p == q).count())
            })
            .collect();
        Goal { config, caps }
    }

    /// False when `c` provably cannot reach a configuration below the goal.
    pub fn viable(&self, c: &Config) -> bool {
        if c.budget > self.config.budget {
            return false;
        }
        let mut counts = vec![0usize; self.caps.len()];
        for (p, _) in c.region.tokens() {
            counts[*p] += 1;
        }
        self.caps.iter().zip(counts).all(|(cap, n)| cap.is_none_or(|k| n <= k))
    }
}

/// Worklist saturation: the least basis containing `start` and closed under `pre`.
///
/// With a goal, configurations that cannot reach it are dropped and the search
/// stops as soon as the goal is covered.
pub fn acjt_fixpoint(
    net: &Ptpn,
    start: impl IntoIterator<Item = Config>,
    pre: &dyn Fn(&Config) -> Vec<(Config, PreLabel)>,
    ord: Ordering,
    max_configs: usize,
    goal: Option<&Goal>,
) -> Fixpoint {
    let viable = |c: &Config| goal.is_none_or(|g| g.viable(c));
    let reached = |c: &Config| goal.is_some_and(|g| config_leq(net, c, &g.config, ord));
    let mut basis = Basis::new(ord);
    let mut links = Links::new();
    let mut queue = VecDeque::new();
    let mut done = false;
    for c in start.into_iter().filter(|c| viable(c)) {
        if basis.insert(net, c.clone()) {
            done |= reached(&c);
            queue.push_back(c);
        }
    }
    let mut processed = 0;
    let mut capped = false;
    while let Some(c) = queue.pop_front() {
        if done {
            break;
        }
        if !basis.contains(&c) {
            continue;
        }
        if processed >= max_configs || basis.len() > max_configs {
            capped = true;
            break;
        }
        processed += 1;
        for (p, label) in pre(&c) {
            if viable(&p) && basis.insert(net, p.clone()) {
                links.entry(p.clone()).or_insert(Link { child: c.clone(), label, ordering: ord });
                if reached(&p) {
                    done = true;
                    break;
                }
                queue.push_back(p);
            }
        }
    }
    Fixpoint { basis, links, capped, processed }
}

/// Result of a bounded backward search.
#[derive(Clone, Debug)]
pub struct PreStar {
    pub basis: Basis,
    pub links: Links,
    pub exhausted: Vec<Bound>,
}

/// Backward closure of `targets` under Type A steps and the `Free` ordering,
/// restricted to `bounds`. Any predecessor dropped by a bound is reported.
/// With a goal, hopeless configurations are dropped and the search stops once the goal is covered.
pub fn bounded_pre_star(net: &Ptpn, targets: &Basis, bounds: &SearchBounds, v: u64, goal: Option<&Goal>) -> PreStar {
    let mut basis = Basis::new(Ordering::Free);
    let mut links = Links::new();
    let mut depth: BTreeMap<Config, usize> = BTreeMap::new();
    // Smallest regions first: they are the ones closest to a single-token start.
    let mut queue = BinaryHeap::new();
    let mut seq = 0usize;
    let mut push = |queue: &mut BinaryHeap<_>, c: Config| {
        queue.push(Reverse((c.region.token_count(), seq, c)));
        seq += 1;
    };
    for c in targets.elements() {
        if basis.insert(net, c.clone()) {
            depth.insert(c.clone(), 0);
            push(&mut queue, c.clone());
        }
    }
    if goal.is_some_and(|g| basis.covers(net, &g.config)) {
        queue.clear();
    }
    let mut exhausted = Vec::new();
    let mut processed = 0;
    while let Some(Reverse((_, _, c))) = queue.pop() {
        if !basis.contains(&c) {
            continue;
        }
        if processed >= bounds.max_configs || basis.len() > bounds.max_configs {
            exhausted.push(Bound::Configs);
            break;
        }
        processed += 1;
        let d = depth[&c];
        for (p, label) in pre_a(net, &c, Ordering::Free, v) {
            if basis.covers(net, &p) || goal.is_some_and(|g| !g.viable(&p)) {
                continue;
            }
            if p.region.token_count() > bounds.max_tokens {
                exhausted.push(Bound::Tokens);
                continue;
            }
            if d + 1 > bounds.max_depth {
                exhausted.push(Bound::Depth);
                continue;
            }
            basis.insert(net, p.clone());
            depth.entry(p.clone()).or_insert(d + 1);
            links.entry(p.clone()).or_insert(Link { child: c.clone(), label, ordering: Ordering::Free });
            let done = goal.is_some_and(|g| config_leq(net, &p, &g.config, Ordering::Free));
            push(&mut queue, p);
            if done {
                queue.clear();
                break;
            }
        }
    }
    exhausted.sort();
    exhausted.dedup();
    PreStar { basis, links, exhausted }
}
