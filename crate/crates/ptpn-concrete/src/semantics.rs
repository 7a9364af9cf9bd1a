use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use ptpn_core::{Arc, PlaceId, Ptpn, Rat, TransitionId};

use crate::marking::Marking;

/// A single timed or discrete transition of a computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    Delay(Rat),
    Fire { transition: TransitionId, consumed: Vec<(PlaceId, Rat)>, produced: Vec<(PlaceId, Rat)> },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Computation {
    pub initial: Marking,
    pub steps: Vec<Step>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum StepError {
    #[error("delay must be positive")]
    NonPositiveDelay,
    #[error("unknown transition index {0}")]
    UnknownTransition(TransitionId),
    #[error("consumed tokens are not an enabled binding")]
    BindingNotEnabled,
    #[error("produced tokens do not match the output arcs")]
    ProducedAgeOutOfInterval,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("step {index}: {error}")]
pub struct RunError {
    pub index: usize,
    pub error: StepError,
}

/// Cost of keeping `m` for one time unit.
pub fn storage_rate(net: &Ptpn, m: &Marking) -> u64 {
    m.tokens().iter().map(|(p, _)| net.place_cost(*p)).sum()
}

/// Ages every token by `d > 0`; cost is `d * storage_rate`.
pub fn delay_step(net: &Ptpn, m: &Marking, d: &Rat) -> Result<(Marking, Rat), StepError> {
    if !d.is_positive() {
        return Err(StepError::NonPositiveDelay);
    }
    let cost = d * Rat::from_integer(storage_rate(net, m).into());
    Ok((m.shifted(d), cost))
}

/// Can `tokens` be assigned one-to-one onto `arcs` with matching places and ages?
pub fn matches_arcs(tokens: &[(PlaceId, Rat)], arcs: &[Arc]) -> bool {
    fn go(tokens: &[(PlaceId, Rat)], arcs: &[Arc], used: &mut Vec<bool>) -> bool {
        let Some((arc, rest)) = arcs.split_first() else {
            return true;
        };
        for i in 0..tokens.len() {
            if !used[i] && tokens[i].0 == arc.place && arc.interval.contains(&tokens[i].1) {
                used[i] = true;
                if go(tokens, rest, used) {
                    return true;
                }
                used[i] = false;
            }
        }
        false
    }
    tokens.len() == arcs.len() && go(tokens, arcs, &mut vec![false; tokens.len()])
}

/// Every way of picking one distinct token per input arc, as sorted multisets.
pub fn enabled_bindings(net: &Ptpn, m: &Marking, t: TransitionId) -> BTreeSet<Vec<(PlaceId, Rat)>> {
    fn go(
        toks: &[(PlaceId, Rat)],
        arcs: &[Arc],
        used: &mut Vec<bool>,
        pick: &mut Vec<(PlaceId, Rat)>,
        out: &mut BTreeSet<Vec<(PlaceId, Rat)>>,
    ) {
        let Some((arc, rest)) = arcs.split_first() else {
            let mut b = pick.clone();
            b.sort();
            out.insert(b);
            return;
        };
        for i in 0..toks.len() {
            if !used[i] && toks[i].0 == arc.place && arc.interval.contains(&toks[i].1) {
                used[i] = true;
                pick.push(toks[i].clone());
                go(toks, rest, used, pick, out);
                pick.pop();
                used[i] = false;
            }
        }
    }
    let mut out = BTreeSet::new();
    if let Some(tr) = net.transitions.get(t) {
        go(m.tokens(), &tr.inputs, &mut vec![false; m.len()], &mut Vec::new(), &mut out);
    }
    out
}

/// Fires `t`, removing `consumed` and adding `produced`; cost is the transition cost.
pub fn fire_step(
    net: &Ptpn,
    m: &Marking,
    t: TransitionId,
    consumed: &[(PlaceId, Rat)],
    produced: &[(PlaceId, Rat)],
) -> Result<(Marking, u64), StepError> {
    let tr = net.transitions.get(t).ok_or(StepError::UnknownTransition(t))?;
    if !m.includes(consumed) || !matches_arcs(consumed, &tr.inputs) {
        return Err(StepError::BindingNotEnabled);
    }
    if !matches_arcs(produced, &tr.outputs) {
        return Err(StepError::ProducedAgeOutOfInterval);
    }
    let mut next = m.clone();
    for (p, a) in consumed {
        next.remove(*p, a);
    }
    for (p, a) in produced {
        next.add(*p, a.clone());
    }
    Ok((next, tr.cost))
}

/// Applies one step, returning the successor and its cost.
pub fn apply_step(net: &Ptpn, m: &Marking, step: &Step) -> Result<(Marking, Rat), StepError> {
    match step {
        Step::Delay(d) => delay_step(net, m, d),
        Step::Fire { transition, consumed, produced } => {
            let (m2, c) = fire_step(net, m, *transition, consumed, produced)?;
            Ok((m2, Rat::from_integer(c.into())))
        }
    }
}

/// Outcome of replaying a computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunReport {
    pub final_marking: Marking,
    pub total_cost: Rat,
    pub step_costs: Vec<Rat>,
}

/// Replays `c`, summing exact step costs; reports the first invalid step.
pub fn run(net: &Ptpn, c: &Computation) -> Result<RunReport, RunError> {
    let mut m = c.initial.clone();
    let mut total = Rat::zero();
    let mut step_costs = Vec::with_capacity(c.steps.len());
    for (index, s) in c.steps.iter().enumerate() {
        let (next, cost) = apply_step(net, &m, s).map_err(|error| RunError { index, error })?;
        total += &cost;
        step_costs.push(cost);
        m = next;
    }
    Ok(RunReport { final_marking: m, total_cost: total, step_costs })
}
