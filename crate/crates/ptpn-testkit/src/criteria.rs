//! Differential checks shared by the crate tests and the acceptance run.
//! Each returns a one-line summary on success and the first mismatch on failure.

use std::collections::BTreeSet;

use ptpn_core::fixtures::main_net;
use ptpn_core::rat::ratio;
use ptpn_order::{config_leq, Config, Ordering};
use ptpn_region::selfcheck::{completeness_check, soundness_check, StepClass};
use ptpn_solver::{
    acjt_fixpoint, cost_threshold, coverability_with, forward_search, pre_a, pre_ab, pre_b, pre_discrete,
    replay_witness, target_basis, Query, SearchBounds, Verdict,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gen::{random_delta_marking, random_net, random_region, random_step};
use crate::oracle::{forward_oracle, OracleAnswer, StepKind, Universe};

pub type Check = Result<String, String>;

/// Realizes every symbolic successor of random MAIN regions concretely.
pub fn soundness_fuzz(regions: usize, seed: u64) -> Check {
    let net = main_net();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut steps = 0;
    for i in 0..regions {
        let r = random_region(&mut rng, &net, 6);
        for delta in [ratio(1, 10), ratio(1, 100)] {
            steps += soundness_check(&net, &r, &delta)
                .map_err(|e| format!("region #{i} {} at delta {delta}: {e}", r.display(&net)))?;
        }
    }
    Ok(format!("{regions} regions, {steps} successors realized"))
}

/// Abstracts random concrete steps from random delta-form MAIN markings.
pub fn completeness_fuzz(markings: usize, steps_per_marking: usize, seed: u64) -> Check {
    let net = main_net();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = [0usize; 5];
    for i in 0..markings {
        let delta = if rng.gen_bool(0.5) { ratio(1, 10) } else { ratio(1, 100) };
        let m = random_delta_marking(&mut rng, &net, &delta, 6);
        for _ in 0..steps_per_marking {
            let Some(step) = random_step(&mut rng, &net, &m, &delta) else { continue };
            let class = completeness_check(&net, &m, &step, &delta)
                .map_err(|e| format!("marking #{i} {}: {step:?}: {e}", m.display(&net)))?;
            counts[class as usize] += 1;
        }
    }
    let checked: usize = counts[..4].iter().sum();
    if counts[..4].contains(&0) {
        return Err(format!("some step class never exercised: {counts:?}"));
    }
    let names = [StepClass::TypeI, StepClass::TypeII, StepClass::TypeB, StepClass::Discrete];
    let detail: Vec<String> = names.iter().zip(counts).map(|(n, c)| format!("{n:?}={c}")).collect();
    Ok(format!("{markings} markings, {checked} elementary steps ({})", detail.join(", ")))
}

fn restricted(items: impl IntoIterator<Item = Config>, max_tokens: usize) -> BTreeSet<Config> {
    items.into_iter().filter(|c| c.region.token_count() <= max_tokens).collect()
}

/// Compares the predecessor operators with brute-force minimal predecessors over all small regions.
pub fn pre_equivalence(nets: usize, configs_per_net: usize, seed: u64) -> Check {
    const TOKENS: usize = 3;
    const V: u64 = 3;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = 0;
    let mut compared = 0;
    for n in 0..nets {
        let net = random_net(&mut rng, 3, 2);
        let universe = Universe::new(&net, TOKENS);
        for _ in 0..configs_per_net {
            let c = Config::new(random_region(&mut rng, &net, 2), rng.gen_range(0..=2));
            cases += 1;
            for ord in [Ordering::All, Ordering::Free] {
                let mut checks: Vec<(String, StepKind, BTreeSet<Config>)> = Vec::new();
                for t in 0..net.transitions.len() {
                    let got = restricted(pre_discrete(&net, t, &c, ord, V), TOKENS);
                    checks.push((format!("pre_discrete t{t}"), StepKind::Discrete(t), got));
                }
                let got = restricted(pre_a(&net, &c, ord, V).into_iter().map(|x| x.0), TOKENS);
                checks.push(("pre_A".into(), StepKind::A, got));
                let got = restricted(pre_b(&net, &c, ord, V).into_iter().map(|x| x.0), TOKENS);
                checks.push(("pre_B".into(), StepKind::B, got));
                for (name, kind, got) in checks {
                    let want = universe.brute_pre(&net, &c, kind, ord, V);
                    compared += 1;
                    if got != want {
                        let show = |s: &BTreeSet<Config>| {
                            s.iter().map(|x| x.display(&net).to_string()).collect::<Vec<_>>().join("; ")
                        };
                        return Err(format!(
                            "net #{n} ({}), {name} {ord:?} of {}: operator [{}] vs brute force [{}]",
                            ptpn_core::serialize_net(&net).replace('\n', " / "),
                            c.display(&net),
                            show(&got),
                            show(&want)
                        ));
                    }
                }
            }
        }
    }
    Ok(format!("{cases} random cases over {nets} nets, {compared} bases matched"))
}

/// Picks distinct places, preferring an input place of some transition as the start
/// and an output place of some transition as the goal so that many queries are positive.
fn connected_pair(rng: &mut ChaCha8Rng, net: &ptpn_core::Ptpn) -> (usize, usize) {
    let n = net.places.len();
    let t = &net.transitions[rng.gen_range(0..net.transitions.len())];
    let p_init = t.inputs[rng.gen_range(0..t.inputs.len())].place;
    let outputs: Vec<usize> =
        net.transitions.iter().flat_map(|t| t.outputs.iter().map(|a| a.place)).filter(|p| *p != p_init).collect();
    let p_fin = if outputs.is_empty() || rng.gen_bool(0.2) {
        (p_init + rng.gen_range(1..n)) % n
    } else {
        outputs[rng.gen_range(0..outputs.len())]
    };
    (p_init, p_fin)
}

/// Bounds used for the solver on the random corpus.
pub fn corpus_bounds() -> SearchBounds {
    SearchBounds { max_depth: 12, max_tokens: 6, max_configs: 20_000 }
}

/// Compares cost-threshold verdicts with the exhaustive forward oracle on random nets.
pub fn threshold_equivalence(cases: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bounds = corpus_bounds();
    let (mut yes, mut no, mut unknown, mut compared) = (0, 0, 0, 0);
    for i in 0..cases {
        let net = random_net(&mut rng, 3, 2);
        let (p_init, p_fin) = connected_pair(&mut rng, &net);
        let v = rng.gen_range(0..=3);
        let q = Query { net: &net, p_init, p_fin, v };
        let verdict = cost_threshold(&q, &bounds).verdict;
        let oracle = forward_oracle(&net, p_init, p_fin, v, 5, 20_000);
        let ctx = || {
            format!("case #{i} v={v} p{p_init}->p{p_fin} net: {}", ptpn_core::serialize_net(&net).replace('\n', " / "))
        };
        match (&verdict, oracle) {
            (Verdict::Yes(w), OracleAnswer::No) => return Err(format!("{}: solver Yes {w:?}, oracle No", ctx())),
            (Verdict::No, OracleAnswer::Yes) => return Err(format!("{}: solver No, oracle Yes", ctx())),
            (Verdict::Yes(_) | Verdict::No, OracleAnswer::Yes | OracleAnswer::No) => compared += 1,
            _ => {}
        }
        match &verdict {
            Verdict::Yes(w) => {
                yes += 1;
                replay_witness(&net, w, &ratio(1, 1000)).map_err(|e| format!("{}: replay failed: {e}", ctx()))?;
            }
            Verdict::No => no += 1,
            Verdict::Unknown(_) => unknown += 1,
        }
    }
    Ok(format!("{cases} cases: {yes} yes, {no} no, {unknown} unknown; {compared} compared with the oracle"))
}

/// Coverability against cost-threshold at 0 on zero-cost copies of random nets.
pub fn zero_cost_reduction(cases: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bounds = corpus_bounds();
    let mut compared = 0;
    for i in 0..cases {
        let net = random_net(&mut rng, 3, 2).zero_cost_copy();
        let n = net.places.len();
        let p_init = rng.gen_range(0..n);
        let p_fin = rng.gen_range(0..n);
        let cov = coverability_with(&net, p_init, p_fin, &bounds);
        let thr = cost_threshold(&Query { net: &net, p_init, p_fin, v: 0 }, &bounds).verdict;
        let definite = |v: &Verdict| !matches!(v, Verdict::Unknown(_));
        if definite(&cov) && definite(&thr) {
            compared += 1;
            if cov.is_yes() != thr.is_yes() {
                return Err(format!(
                    "case #{i} p{p_init}->p{p_fin}: coverability {}, threshold {} on {}",
                    cov.name(),
                    thr.name(),
                    ptpn_core::serialize_net(&net).replace('\n', " / ")
                ));
            }
        }
    }
    Ok(format!("{cases} zero-cost cases, {compared} definite and equal"))
}

/// Solver invariants on the random corpus: No is monotone in the threshold, forward
/// search never contradicts the backward verdict, and the ACJT fixpoint is an
/// antichain that does not depend on worklist order.
pub fn solver_properties(cases: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bounds = corpus_bounds();
    let fwd_bounds = SearchBounds { max_depth: 10, max_tokens: 5, max_configs: 5_000 };
    let mut forward_yes = 0;
    for i in 0..cases {
        let net = random_net(&mut rng, 3, 2);
        let (p_init, p_fin) = connected_pair(&mut rng, &net);
        let ctx =
            || format!("case #{i} p{p_init}->p{p_fin} net: {}", ptpn_core::serialize_net(&net).replace('\n', " / "));
        let verdicts: Vec<Verdict> =
            (0..=3).map(|v| cost_threshold(&Query { net: &net, p_init, p_fin, v }, &bounds).verdict).collect();
        for (v, verdict) in verdicts.iter().enumerate() {
            if verdict.is_no() {
                if let Some(lower) = verdicts[..v].iter().position(|x| !x.is_no()) {
                    return Err(format!("{}: No at v={v} but {} at v={lower}", ctx(), verdicts[lower].name()));
                }
            }
        }
        let q = Query { net: &net, p_init, p_fin, v: 3 };
        if let Verdict::Yes(w) = forward_search(&q, &fwd_bounds) {
            forward_yes += 1;
            if verdicts[3].is_no() {
                return Err(format!("{}: forward search found {w:?} but the backward verdict is No", ctx()));
            }
        }
        let roots: Vec<Config> = target_basis(&net, p_fin).elements().cloned().collect();
        let pre = |c: &Config| pre_ab(&net, c, Ordering::All, 3);
        let rev = |c: &Config| {
            let mut out = pre_ab(&net, c, Ordering::All, 3);
            out.reverse();
            out
        };
        let a = acjt_fixpoint(&net, roots.iter().cloned(), &pre, Ordering::All, 5_000, None);
        let b = acjt_fixpoint(&net, roots.iter().rev().cloned(), &rev, Ordering::All, 5_000, None);
        if a.capped || b.capped {
            continue;
        }
        let ea: Vec<&Config> = a.basis.elements().collect();
        if ea != b.basis.elements().collect::<Vec<_>>() {
            return Err(format!("{}: fixpoint depends on worklist order", ctx()));
        }
        for x in &ea {
            for y in &ea {
                if x != y && config_leq(&net, x, y, Ordering::All) {
                    return Err(format!(
                        "{}: basis not an antichain: {} <= {}",
                        ctx(),
                        x.display(&net),
                        y.display(&net)
                    ));
                }
            }
        }
    }
    Ok(format!("{cases} cases, {forward_yes} forward witnesses consistent"))
}
