//! Turning parent-pointer chains into forward symbolic paths, and replaying
//! those paths as concrete computations.

use ptpn_concrete::{
    apply_step, check_delta, run, storage_rate, Computation, DeltaError, Marking, RunError, Step, StepError,
};
use ptpn_core::{PlaceId, Ptpn, Rat};
use ptpn_order::{region_embeds, Config};
use ptpn_region::{
    abstract_marking, fire_region_detailed, realize_step, succ_b_labeled, succ_type1, succ_type2, token_cost,
    RealizeError, Region, SymStep,
};

use crate::fixpoint::Links;
use crate::pre::PreLabel;
use crate::query::{Witness, WitnessStep};

#[derive(Debug, thiserror::Error)]
pub enum WitnessError {
    #[error("no forward step covers the next configuration after {0} steps")]
    Stuck(usize),
    #[error("the final region holds no token in the target place")]
    NotCovered,
}

fn push(net: &Ptpn, steps: &mut Vec<WitnessStep>, r: &mut Region, step: SymStep, next: Region) {
    let cost = match &step {
        SymStep::TypeI | SymStep::TypeII => 0,
        SymStep::TypeIII { .. } | SymStep::TypeIV { .. } => token_cost(net, r),
        SymStep::Fire { transition, .. } => net.transitions[*transition].cost,
    };
    *r = next.clone();
    steps.push(WitnessStep { step, cost, region: next });
}

/// Follows `links` from `start` (a basis element below the initial configuration) to a
/// root, mimicking each link forward from the initial region of `p_init`.
pub fn reconstruct(
    net: &Ptpn,
    p_init: PlaceId,
    p_fin: PlaceId,
    start: &Config,
    links: &Links,
) -> Result<Witness, WitnessError> {
    let mut r = Region::initial(p_init);
    let mut steps = Vec::new();
    let mut node = start.clone();
    while let Some(link) = links.get(&node) {
        let goal = &link.child.region;
        let ord = link.ordering;
        let done = |x: &Region| region_embeds(net, goal, x, ord);
        if !done(&r) {
            match link.label {
                PreLabel::Pad => {}
                PreLabel::TypeI | PreLabel::TypeII => {
                    // The Type I/II chain is deterministic; extra tokens may need their own steps.
                    for _ in 0..2 * r.token_count() + 2 {
                        let next = match succ_type1(&r) {
                            Some(x) => (SymStep::TypeI, x),
                            None => match succ_type2(net, &r) {
                                Some(x) => (SymStep::TypeII, x),
                                None => break,
                            },
                        };
                        push(net, &mut steps, &mut r, next.0, next.1);
                        if done(&r) {
                            break;
                        }
                    }
                }
                PreLabel::Fire(t) => {
                    let found = fire_region_detailed(net, &r, t).into_iter().find(|(x, _)| done(x));
                    if let Some((x, choice)) = found {
                        push(net, &mut steps, &mut r, SymStep::Fire { transition: t, choice }, x);
                    }
                }
                PreLabel::TypeIII | PreLabel::TypeIV => {
                    let found = succ_b_labeled(net, &r).into_iter().find(|(x, _, _)| done(x));
                    if let Some((x, _, s)) = found {
                        push(net, &mut steps, &mut r, s, x);
                    }
                }
            }
        }
        if !done(&r) {
            return Err(WitnessError::Stuck(steps.len()));
        }
        node = link.child.clone();
    }
    if !r.contains_place(p_fin) {
        return Err(WitnessError::NotCovered);
    }
    Ok(Witness { p_init, p_fin, steps })
}

/// A concrete computation certifying a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Replay {
    pub delta: Rat,
    pub computation: Computation,
    pub cost: Rat,
    /// Symbolic cost plus `delta * timed_steps * max_rate`.
    pub bound: Rat,
    pub timed_steps: usize,
    pub max_rate: u64,
}

#[derive(Debug, thiserror::Error)]
pub enum ReplayError {
    #[error(transparent)]
    Delta(#[from] DeltaError),
    #[error("step {index}: {source}")]
    Realize { index: usize, source: RealizeError },
    #[error("step {index}: {source}")]
    Step { index: usize, source: StepError },
    #[error("step {0}: concrete marking left the witness region")]
    Diverged(usize),
    #[error(transparent)]
    Run(#[from] RunError),
    #[error("concrete cost {cost} exceeds the bound {bound}")]
    CostBound { cost: Box<Rat>, bound: Box<Rat> },
    #[error("final marking holds no token in the target place")]
    NotCovered,
}

/// Realizes every symbolic step in delta-form and validates the result with `run`.
pub fn replay_witness(net: &Ptpn, w: &Witness, delta: &Rat) -> Result<Replay, ReplayError> {
    check_delta(delta)?;
    let initial = Marking::initial(w.p_init);
    let mut m = initial.clone();
    let mut max_rate = storage_rate(net, &m);
    let mut steps: Vec<Step> = Vec::with_capacity(w.steps.len());
    for (index, ws) in w.steps.iter().enumerate() {
        let s = realize_step(net, &m, &ws.step, delta).map_err(|source| ReplayError::Realize { index, source })?;
        let (next, _) = apply_step(net, &m, &s).map_err(|source| ReplayError::Step { index, source })?;
        if abstract_marking(net, &next, delta).ok().as_ref() != Some(&ws.region) {
            return Err(ReplayError::Diverged(index));
        }
        max_rate = max_rate.max(storage_rate(net, &next));
        steps.push(s);
        m = next;
    }
    let computation = Computation { initial, steps };
    let report = run(net, &computation)?;
    let timed_steps = w.timed_steps();
    let bound =
        Rat::from_integer(w.total_cost().into()) + delta * Rat::from_integer((timed_steps as u64 * max_rate).into());
    let cost = report.total_cost;
    if cost > bound {
        return Err(ReplayError::CostBound { cost: Box::new(cost), bound: Box::new(bound) });
    }
    if !report.final_marking.contains_place(w.p_fin) {
        return Err(ReplayError::NotCovered);
    }
    Ok(Replay { delta: delta.clone(), computation, cost, bound, timed_steps, max_rate })
}
