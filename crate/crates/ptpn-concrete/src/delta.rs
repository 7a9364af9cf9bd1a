use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use ptpn_core::rat::{frac, ratio};
use ptpn_core::{Ptpn, Rat};

use crate::marking::Marking;
use crate::semantics::{run, Computation, RunError, Step};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DeltaError {
    #[error("delta must lie strictly between 0 and 1/5")]
    OutOfRange,
    #[error("marking is not in delta-form")]
    NotDeltaForm,
    #[error(transparent)]
    Run(#[from] RunError),
}

pub fn check_delta(delta: &Rat) -> Result<(), DeltaError> {
    if delta.is_positive() && *delta < ratio(1, 5) {
        Ok(())
    } else {
        Err(DeltaError::OutOfRange)
    }
}

/// Whether `f` is 0, below `delta`, or above `1 - delta`.
pub fn frac_in_delta_form(f: &Rat, delta: &Rat) -> bool {
    *f < *delta || *f > Rat::one() - delta
}

pub fn is_delta_form(m: &Marking, delta: &Rat) -> Result<bool, DeltaError> {
    check_delta(delta)?;
    Ok(m.tokens().iter().all(|(_, a)| frac_in_delta_form(&frac(a), delta)))
}

/// Tokens grouped by fractional part: high groups, the integer group, low groups.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Decomposition {
    /// Fractional parts above `1 - delta`, increasing.
    pub high: Vec<Marking>,
    pub zero: Marking,
    /// Fractional parts in `(0, delta)`, increasing.
    pub low: Vec<Marking>,
}

impl Decomposition {
    /// The fractional part shared by each high group, then each low group.
    pub fn high_fracs(&self) -> Vec<Rat> {
        self.high.iter().map(|g| frac(&g.tokens()[0].1)).collect()
    }

    pub fn low_fracs(&self) -> Vec<Rat> {
        self.low.iter().map(|g| frac(&g.tokens()[0].1)).collect()
    }
}

pub fn decompose_delta(m: &Marking, delta: &Rat) -> Result<Decomposition, DeltaError> {
    if !is_delta_form(m, delta)? {
        return Err(DeltaError::NotDeltaForm);
    }
    let mut by_frac: std::collections::BTreeMap<Rat, Vec<_>> = Default::default();
    for t in m.tokens() {
        by_frac.entry(frac(&t.1)).or_default().push(t.clone());
    }
    let mut d = Decomposition::default();
    let half = ratio(1, 2);
    for (f, toks) in by_frac {
        let g = Marking::from_tokens(toks);
        if f.is_zero() {
            d.zero = g;
        } else if f < half {
            d.low.push(g);
        } else {
            d.high.push(g);
        }
    }
    Ok(d)
}

/// Instants in `(0, d]` at which some fractional class reaches an integer, sorted.
pub fn crossing_instants(m: &Marking, d: &Rat) -> Vec<Rat> {
    let classes: BTreeSet<Rat> = m.tokens().iter().map(|(_, a)| frac(a)).collect();
    let mut out = Vec::new();
    for f in classes {
        let mut e = Rat::one() - &f;
        while e <= *d {
            out.push(e.clone());
            e += Rat::one();
        }
    }
    out.sort();
    out
}

/// At most one fractional class reaches or passes an integer during `(0, d]`.
pub fn is_detailed_delay(m: &Marking, d: &Rat) -> bool {
    crossing_instants(m, d).len() <= 1
}

/// Cuts `d` at every crossing instant so each piece is detailed.
pub fn split_delay(m: &Marking, d: &Rat) -> Vec<Rat> {
    let mut out = Vec::new();
    let mut last = Rat::zero();
    for e in crossing_instants(m, d) {
        out.push(&e - &last);
        last = e;
    }
    if last < *d {
        out.push(d - last);
    }
    out
}

/// Every produced age lies within `delta` of an integer and every delay is
/// in `(0, delta)` or `(1 - delta, 1)`; the computation must replay.
pub fn is_delta_computation(net: &Ptpn, c: &Computation, delta: &Rat) -> Result<bool, DeltaError> {
    check_delta(delta)?;
    run(net, c)?;
    let one = Rat::one();
    Ok(c.steps.iter().all(|s| match s {
        Step::Delay(d) => (d.is_positive() && d < delta) || (*d > &one - delta && *d < one),
        Step::Fire { produced, .. } => produced.iter().all(|(_, a)| frac_in_delta_form(&frac(a), delta)),
    }))
}
