//! Executable checks tying the symbolic transitions to the concrete semantics.

use num_traits::{One, Signed};
use ptpn_concrete::{apply_step, crossing_instants, frac_in_delta_form, is_delta_form, storage_rate, Marking, Step};
use ptpn_core::rat::{frac, int};
use ptpn_core::{Ptpn, Rat};

use crate::realize::realize_step;
use crate::region::Region;
use crate::symbolic::{
    abstract_marking, concretize, fire_region, succ_a_labeled, succ_b_labeled, succ_type1, succ_type2, SymStep,
};

/// Realizes every symbolic successor of `r` concretely and re-abstracts it.
///
/// The witness marking is `concretize(r, delta / 2)`, which also satisfies `r`
/// at `delta`. Returns the number of successors checked.
pub fn soundness_check(net: &Ptpn, r: &Region, delta: &Rat) -> Result<usize, String> {
    let m = concretize(net, r, &(delta / int(2)));
    let rate = Rat::from_integer(storage_rate(net, &m).into());
    let mut succs = succ_a_labeled(net, r);
    succs.extend(succ_b_labeled(net, r));
    for (r2, cost, sym) in &succs {
        let step = realize_step(net, &m, sym, delta).map_err(|e| format!("{sym:?}: {e}"))?;
        let (m2, c) = apply_step(net, &m, &step).map_err(|e| format!("{sym:?}: concrete step rejected: {e}"))?;
        if !matches!(is_delta_form(&m2, delta), Ok(true)) {
            return Err(format!("{sym:?}: successor marking leaves delta-form"));
        }
        let got = abstract_marking(net, &m2, delta).map_err(|e| e.to_string())?;
        if got != *r2 {
            return Err(format!("{sym:?}: abstracts to {} instead of {}", got.display(net), r2.display(net)));
        }
        let symbolic = Rat::from_integer((*cost).into());
        let gap = (&symbolic - &c).abs();
        let ok = match sym {
            SymStep::Fire { .. } => gap == Rat::from_integer(0.into()),
            _ => gap <= &rate * delta,
        };
        if !ok {
            return Err(format!("{sym:?}: concrete cost {c} too far from {symbolic}"));
        }
    }
    Ok(succs.len())
}

/// Outcome of checking one concrete step for completeness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepClass {
    TypeI,
    TypeII,
    TypeB,
    Discrete,
    /// Not an elementary delta-form step (composite, stuttering, or leaves delta-form).
    Skipped,
}

/// Classifies a concrete step from a delta-form marking and checks that its
/// abstraction is a symbolic successor of the matching type.
pub fn completeness_check(net: &Ptpn, m: &Marking, step: &Step, delta: &Rat) -> Result<StepClass, String> {
    let Ok((m2, _)) = apply_step(net, m, step) else {
        return Ok(StepClass::Skipped);
    };
    if !matches!(is_delta_form(&m2, delta), Ok(true)) || !matches!(is_delta_form(m, delta), Ok(true)) {
        return Ok(StepClass::Skipped);
    }
    let r = abstract_marking(net, m, delta).map_err(|e| e.to_string())?;
    let r2 = abstract_marking(net, &m2, delta).map_err(|e| e.to_string())?;
    let one = Rat::one();
    match step {
        Step::Delay(d) => {
            if d < delta {
                let events = crossing_instants(m, d);
                let has_zero = !r.zero.is_empty();
                if has_zero && events.is_empty() {
                    return expect(succ_type1(&r) == Some(r2.clone()), StepClass::TypeI, net, &r, &r2);
                }
                if !has_zero && events.len() == 1 && events[0] == *d {
                    return expect(succ_type2(net, &r) == Some(r2.clone()), StepClass::TypeII, net, &r, &r2);
                }
                Ok(StepClass::Skipped)
            } else if *d > &one - delta && *d < one {
                let found = succ_b_labeled(net, &r).into_iter().any(|(x, _, _)| x == r2);
                expect(found, StepClass::TypeB, net, &r, &r2)
            } else {
                Ok(StepClass::Skipped)
            }
        }
        Step::Fire { transition, produced, .. } => {
            if !produced.iter().all(|(_, a)| frac_in_delta_form(&frac(a), delta)) {
                return Ok(StepClass::Skipped);
            }
            let found = fire_region(net, &r, *transition).contains(&r2);
            expect(found, StepClass::Discrete, net, &r, &r2)
        }
    }
}

fn expect(ok: bool, class: StepClass, net: &Ptpn, r: &Region, r2: &Region) -> Result<StepClass, String> {
    if ok {
        Ok(class)
    } else {
        Err(format!("{class:?} step {} -> {} has no symbolic counterpart", r.display(net), r2.display(net)))
    }
}
