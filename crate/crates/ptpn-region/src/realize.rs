//! Turning symbolic steps into concrete delta-form steps.
//!
//! Fractional parts are chosen so that the largest low fraction plus the
//! largest distance of a high fraction to the next integer stays below delta.
//! Every step below preserves that slack, so a whole symbolic path can be
//! replayed from a marking that satisfies it.

use num_traits::{One, Zero};
use ptpn_concrete::{decompose_delta, DeltaError, Marking, Step};
use ptpn_core::rat::{frac, int};
use ptpn_core::{PlaceId, Ptpn, Rat};

use crate::region::{Part, RVal};
use crate::symbolic::{age_of, Slot, SymStep};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RealizeError {
    #[error(transparent)]
    Delta(#[from] DeltaError),
    #[error("the symbolic step is not enabled in the current marking")]
    NotEnabled,
    #[error("no concrete token matches a consumed abstract token")]
    MissingToken,
}

type Group = (Rat, Vec<(PlaceId, Rat)>);

struct Groups {
    high: Vec<Group>,
    zero: Vec<(PlaceId, Rat)>,
    low: Vec<Group>,
}

impl Groups {
    fn of(m: &Marking, delta: &Rat) -> Result<Self, DeltaError> {
        let d = decompose_delta(m, delta)?;
        let grp = |g: &Marking| (frac(&g.tokens()[0].1), g.tokens().to_vec());
        Ok(Groups {
            high: d.high.iter().map(grp).collect(),
            zero: d.zero.tokens().to_vec(),
            low: d.low.iter().map(grp).collect(),
        })
    }

    fn lowmax(&self) -> Rat {
        self.low.last().map(|g| g.0.clone()).unwrap_or_else(Rat::zero)
    }

    fn maxdist(&self) -> Rat {
        self.high.first().map(|g| Rat::one() - &g.0).unwrap_or_else(Rat::zero)
    }

    fn words(&mut self, p: Part) -> &mut Vec<Group> {
        match p {
            Part::H => &mut self.high,
            Part::L => &mut self.low,
            Part::Z => unreachable!("Z is not a word"),
        }
    }

    /// Fractional part for a new group at position `i` of the given word.
    fn new_frac(&self, part: Part, i: usize, delta: &Rat) -> Rat {
        let two = int(2);
        match part {
            Part::L => {
                let lo = if i == 0 { Rat::zero() } else { self.low[i - 1].0.clone() };
                let hi = if i < self.low.len() { self.low[i].0.clone() } else { delta - self.maxdist() };
                (lo + hi) / two
            }
            Part::H => {
                if i == 0 {
                    // New lowest high class: distance between current max and the slack bound.
                    let d = (self.maxdist() + (delta - self.lowmax())) / two;
                    Rat::one() - d
                } else if i < self.high.len() {
                    (&self.high[i - 1].0 + &self.high[i].0) / two
                } else {
                    (&self.high[i - 1].0 + Rat::one()) / two
                }
            }
            Part::Z => Rat::zero(),
        }
    }
}

fn value_of(age: &Rat, cmax: u64) -> RVal {
    if *age >= int(cmax as i64 + 1) {
        RVal::Omega
    } else {
        RVal::Fin(ptpn_core::rat::floor(age).try_into().expect("small age"))
    }
}

/// A concrete step from `m` whose target abstracts to the symbolic successor.
pub fn realize_step(net: &Ptpn, m: &Marking, step: &SymStep, delta: &Rat) -> Result<Step, RealizeError> {
    let mut g = Groups::of(m, delta)?;
    let two = int(2);
    let cmax = net.cmax();
    match step {
        SymStep::TypeI => {
            if g.zero.is_empty() {
                return Err(RealizeError::NotEnabled);
            }
            let room = delta - g.lowmax();
            let eps = match g.high.last() {
                Some(top) => {
                    let d = Rat::one() - &top.0;
                    if d < room {
                        d
                    } else {
                        room
                    }
                }
                None => room,
            };
            Ok(Step::Delay(eps / two))
        }
        SymStep::TypeII => {
            if !g.zero.is_empty() {
                return Err(RealizeError::NotEnabled);
            }
            let top = g.high.last().ok_or(RealizeError::NotEnabled)?;
            Ok(Step::Delay(Rat::one() - &top.0))
        }
        SymStep::TypeIII { split } => {
            let n = g.low.len();
            if *split > n {
                return Err(RealizeError::NotEnabled);
            }
            let lower = if *split == 0 { Rat::zero() } else { g.low[split - 1].0.clone() };
            let bound = delta - g.maxdist();
            let upper = match g.low.get(*split) {
                Some(x) if x.0 < bound => x.0.clone(),
                _ => bound,
            };
            let eta = (lower + upper) / two;
            Ok(Step::Delay(Rat::one() - eta))
        }
        SymStep::TypeIV { index } => {
            let x = g.low.get(*index).ok_or(RealizeError::NotEnabled)?;
            Ok(Step::Delay(Rat::one() - &x.0))
        }
        SymStep::Fire { transition, choice } => {
            let mut consumed = Vec::new();
            for l in &choice.consumed {
                let pool = match l.part {
                    Part::Z => &mut g.zero,
                    p => &mut g.words(p).get_mut(l.group).ok_or(RealizeError::MissingToken)?.1,
                };
                let i = pool
                    .iter()
                    .position(|(p, a)| *p == l.token.0 && value_of(a, cmax) == l.token.1)
                    .ok_or(RealizeError::MissingToken)?;
                consumed.push(pool.remove(i));
            }
            g.high.retain(|x| !x.1.is_empty());
            g.low.retain(|x| !x.1.is_empty());
            let mut produced = Vec::new();
            for ((p, v), slot) in &choice.produced {
                let age = match *slot {
                    Slot::Zero => {
                        let a = age_of(*v, &Rat::zero(), cmax);
                        g.zero.push((*p, a.clone()));
                        a
                    }
                    Slot::Join(part, i) => {
                        let grp = g.words(part).get_mut(i).ok_or(RealizeError::NotEnabled)?;
                        let a = age_of(*v, &grp.0, cmax);
                        grp.1.push((*p, a.clone()));
                        a
                    }
                    Slot::New(part, i) => {
                        if i > g.words(part).len() {
                            return Err(RealizeError::NotEnabled);
                        }
                        let f = g.new_frac(part, i, delta);
                        let a = age_of(*v, &f, cmax);
                        g.words(part).insert(i, (f, vec![(*p, a.clone())]));
                        a
                    }
                };
                produced.push((*p, age));
            }
            Ok(Step::Fire { transition: *transition, consumed, produced })
        }
    }
}
