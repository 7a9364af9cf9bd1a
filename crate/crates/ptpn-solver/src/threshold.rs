//! Cost-threshold, coverability and cost-optimality.

use std::collections::BTreeSet;

use ptpn_core::{PlaceId, Ptpn};
use ptpn_order::{cost_pad_with, Basis, Config, Ordering, PadLimit};
use ptpn_region::{token_cost, Region};

use crate::fixpoint::{acjt_fixpoint, bounded_pre_star, Goal, Link, Links};
use crate::forward::forward_search;
use crate::pre::{pre_a, pre_ab, pre_b, target_basis, PreLabel};
use crate::query::{Bound, Exactness, OptResult, Query, SearchBounds, Verdict, Witness};
use crate::witness::reconstruct;

/// Sizes of the alternating sets at one round.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Iteration {
    pub k: usize,
    pub v_size: usize,
    pub u_size: usize,
}

/// Which stage settled the verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    /// Initial place already is the target place.
    Trivial,
    /// Reached through Type A steps only.
    TypeAOnly,
    /// The exact over-approximation excludes the initial configuration.
    OverApproximation,
    /// The alternation of bounded Type A closures and Type B predecessors.
    Alternation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdReport {
    pub verdict: Verdict,
    pub threshold: u64,
    pub stage: Stage,
    pub iterations: Vec<Iteration>,
    pub exhausted: Vec<Bound>,
}

fn witness_or_panic(net: &Ptpn, q: &Query, bounds: &SearchBounds, start: &Config, links: &Links) -> Witness {
    let w = reconstruct(net, q.p_init, q.p_fin, start, links)
        .unwrap_or_else(|e| panic!("witness reconstruction failed: {e}"));
    assert!(w.total_cost() <= q.v, "witness cost {} exceeds threshold {}", w.total_cost(), q.v);
    shorten(q, bounds, w)
}

/// Mimicked paths can take detours; a breadth-first search no deeper than the
/// known witness finds a shortest one within the same budget.
fn shorten(q: &Query, bounds: &SearchBounds, w: Witness) -> Witness {
    let limits = SearchBounds {
        max_depth: w.steps.len(),
        max_tokens: bounds.max_tokens,
        max_configs: bounds.max_configs.min(SHORTEN_CONFIGS),
    };
    match forward_search(q, &limits) {
        Verdict::Yes(short) if short.steps.len() < w.steps.len() => short,
        _ => w,
    }
}

const SHORTEN_CONFIGS: usize = 5_000;

fn merge_links(into: &mut Links, from: &Links, roots: &BTreeSet<Config>) {
    for (k, l) in from {
        if !roots.contains(k) {
            into.entry(k.clone()).or_insert_with(|| l.clone());
        }
    }
}

/// Decides whether `p_fin` can be covered within budget `v`.
///
/// Stages: Type A backward closure (Yes only), an exact over-approximation using
/// both step kinds under the `All` ordering (No only), then the alternation of
/// Type B predecessors and bounded Type A closures under `Free`.
pub fn cost_threshold(q: &Query, bounds: &SearchBounds) -> ThresholdReport {
    let net = q.net;
    let v = q.v;
    let report =
        |verdict, stage, iterations, exhausted| ThresholdReport { verdict, threshold: v, stage, iterations, exhausted };
    if q.p_init == q.p_fin {
        let w = Witness { p_init: q.p_init, p_fin: q.p_fin, steps: vec![] };
        return report(Verdict::Yes(w), Stage::Trivial, vec![], vec![]);
    }
    let init = Config::new(Region::initial(q.p_init), v);
    let targets = target_basis(net, q.p_fin);
    let roots: BTreeSet<Config> = targets.elements().cloned().collect();

    let goal = Goal::new(net, init.clone());
    let wa = acjt_fixpoint(
        net,
        roots.iter().cloned(),
        &|c| pre_a(net, c, Ordering::All, v),
        Ordering::All,
        bounds.max_configs,
        Some(&goal),
    );
    if let Some(b) = wa.basis.find_below(net, &init) {
        let w = witness_or_panic(net, q, bounds, b, &wa.links);
        return report(Verdict::Yes(w), Stage::TypeAOnly, vec![], vec![]);
    }

    let over = acjt_fixpoint(
        net,
        roots.iter().cloned(),
        &|c| pre_ab(net, c, Ordering::All, v),
        Ordering::All,
        bounds.max_configs,
        Some(&goal),
    );
    if !over.capped && !over.basis.covers(net, &init) {
        return report(Verdict::No, Stage::OverApproximation, vec![], vec![]);
    }

    let mut links = wa.links.clone();
    let mut exhausted: Vec<Bound> = if wa.capped { vec![Bound::Configs] } else { vec![] };

    // V_1: the Type A closure padded with cost tokens a unit delay could still pay for.
    let mut vset = Basis::new(Ordering::Free);
    for w in wa.basis.elements() {
        for x in cost_pad_with(net, w, PadLimit::TokenCostAtMost(v - w.budget)).into_vec() {
            if !goal.viable(&x) {
                continue;
            }
            if x != *w && !roots.contains(&x) {
                links.entry(x.clone()).or_insert(Link {
                    child: w.clone(),
                    label: PreLabel::Pad,
                    ordering: Ordering::All,
                });
            }
            vset.insert(net, x);
        }
    }

    let mut ubasis = Basis::new(Ordering::Free);
    let mut iterations = Vec::new();
    let mut converged = false;
    for k in 1..=bounds.max_depth {
        let mut changed = false;
        for x in vset.elements() {
            for (p, label) in pre_b(net, x, Ordering::Free, v) {
                if goal.viable(&p) && ubasis.insert(net, p.clone()) {
                    changed = true;
                    if !roots.contains(&p) {
                        links.entry(p).or_insert(Link { child: x.clone(), label, ordering: Ordering::Free });
                    }
                }
            }
        }
        iterations.push(Iteration { k, v_size: vset.len(), u_size: ubasis.len() });
        if !changed {
            converged = true;
            break;
        }
        let ps = bounded_pre_star(net, &ubasis, bounds, v, Some(&goal));
        merge_links(&mut links, &ps.links, &roots);
        exhausted.extend(ps.exhausted.iter().copied());
        if let Some(b) = ps.basis.find_below(net, &init) {
            let w = witness_or_panic(net, q, bounds, b, &links);
            exhausted.sort();
            exhausted.dedup();
            return report(Verdict::Yes(w), Stage::Alternation, iterations, exhausted);
        }
        let mut next = Basis::new(Ordering::Free);
        for p in ps.basis.into_vec() {
            if token_cost(net, &p.region) + p.budget <= v {
                next.insert(net, p);
            }
        }
        vset = next;
    }
    if !converged {
        exhausted.push(Bound::Depth);
    }
    exhausted.sort();
    exhausted.dedup();
    let verdict = if converged && exhausted.is_empty() { Verdict::No } else { Verdict::Unknown(exhausted.clone()) };
    report(verdict, Stage::Alternation, iterations, exhausted)
}

/// Coverability ignoring costs: one backward fixpoint over both step kinds on the zero-cost copy.
///
/// A witness is mimicked on `net` itself, so its step costs are the real ones.
pub fn coverability_with(net: &Ptpn, p_init: PlaceId, p_fin: PlaceId, bounds: &SearchBounds) -> Verdict {
    if p_init == p_fin {
        return Verdict::Yes(Witness { p_init, p_fin, steps: vec![] });
    }
    let zero = net.zero_cost_copy();
    let targets = target_basis(&zero, p_fin);
    let init = Config::new(Region::initial(p_init), 0);
    let goal = Goal::new(&zero, init.clone());
    let fix = acjt_fixpoint(
        &zero,
        targets.elements().cloned(),
        &|c| pre_ab(&zero, c, Ordering::All, 0),
        Ordering::All,
        bounds.max_configs,
        Some(&goal),
    );
    match fix.basis.find_below(&zero, &init) {
        Some(b) => {
            let w = reconstruct(net, p_init, p_fin, b, &fix.links)
                .unwrap_or_else(|e| panic!("witness reconstruction failed: {e}"));
            Verdict::Yes(w)
        }
        None if fix.capped => Verdict::Unknown(vec![Bound::Configs]),
        None => Verdict::No,
    }
}

pub fn coverability(net: &Ptpn, p_init: PlaceId, p_fin: PlaceId) -> bool {
    coverability_with(net, p_init, p_fin, &SearchBounds::default()).is_yes()
}

/// Outcome of the optimality search with the verdict obtained at each threshold tried.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OptReport {
    pub result: OptResult,
    pub verdicts: Vec<(u64, Verdict)>,
    pub witness: Option<Witness>,
}

/// Smallest threshold with a Yes, trying 0, 1, 2, ... up to the cost of a coverability witness.
pub fn cost_optimal(net: &Ptpn, p_init: PlaceId, p_fin: PlaceId, bounds: &SearchBounds) -> OptReport {
    let cover = match coverability_with(net, p_init, p_fin, bounds) {
        Verdict::Yes(w) => w,
        Verdict::No => return OptReport { result: OptResult::Infinite, verdicts: vec![], witness: None },
        Verdict::Unknown(_) => return OptReport { result: OptResult::Unknown, verdicts: vec![], witness: None },
    };
    let upper = cover.total_cost();
    let mut verdicts = Vec::new();
    let mut all_no = true;
    for v in 0..upper {
        let rep = cost_threshold(&Query { net, p_init, p_fin, v }, bounds);
        let verdict = rep.verdict;
        verdicts.push((v, verdict.clone()));
        match verdict {
            Verdict::Yes(w) => {
                let ex = if all_no { Exactness::Exact } else { Exactness::UpperBound };
                return OptReport { result: OptResult::Value(v, ex), verdicts, witness: Some(w) };
            }
            Verdict::No => {}
            Verdict::Unknown(_) => all_no = false,
        }
    }
    let ex = if all_no { Exactness::Exact } else { Exactness::UpperBound };
    OptReport { result: OptResult::Value(upper, ex), verdicts, witness: Some(cover) }
}
