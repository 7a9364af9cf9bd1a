use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use ptpn_concrete::{decompose_delta, is_delta_form, DeltaError, Marking};
use ptpn_core::rat::{floor, int};
use ptpn_core::{Interval, Ptpn, Rat, TransitionId};

use crate::region::{Multiset, Part, RVal, Region, Token};

/// Whether every age of the given class lies in `i` for all small enough delta.
pub fn class_sat(part: Part, v: RVal, i: &Interval) -> bool {
    match v {
        RVal::Omega => i.hi.is_none(),
        RVal::Fin(k) => match part {
            Part::Z => i.contains(&int(k as i64)),
            Part::L => i.lo <= k && i.hi.is_none_or(|h| k < h),
            Part::H => i.lo <= k && i.hi.is_none_or(|h| k < h),
        },
    }
}

fn abstract_value(age: &Rat, cmax: u64) -> RVal {
    if *age >= int(cmax as i64 + 1) {
        RVal::Omega
    } else {
        RVal::Fin(floor(age).try_into().expect("age below cmax + 1"))
    }
}

fn abstract_group(m: &Marking, cmax: u64) -> Multiset {
    Multiset::from_tokens(m.tokens().iter().map(|(p, a)| (*p, abstract_value(a, cmax))).collect())
}

/// The region of a delta-form marking.
pub fn abstract_marking(net: &Ptpn, m: &Marking, delta: &Rat) -> Result<Region, DeltaError> {
    let d = decompose_delta(m, delta)?;
    let c = net.cmax();
    Ok(Region {
        high: d.high.iter().map(|g| abstract_group(g, c)).collect(),
        zero: abstract_group(&d.zero, c),
        low: d.low.iter().map(|g| abstract_group(g, c)).collect(),
    })
}

/// `m` is in delta-form and abstracts to `r`.
pub fn satisfies(net: &Ptpn, m: &Marking, r: &Region, delta: &Rat) -> bool {
    matches!(is_delta_form(m, delta), Ok(true)) && abstract_marking(net, m, delta).as_ref() == Ok(r)
}

/// Concrete age of an abstract token at fractional part `f`.
pub fn age_of(v: RVal, f: &Rat, cmax: u64) -> Rat {
    match v {
        RVal::Fin(k) => int(k as i64) + f,
        RVal::Omega => int(cmax as i64 + 1) + f,
    }
}

/// Canonical marking of `r`: evenly spaced fractional parts inside `(0, delta)` and `(1 - delta, 1)`.
pub fn concretize(net: &Ptpn, r: &Region, delta: &Rat) -> Marking {
    let c = net.cmax();
    let mut toks = Vec::new();
    let h = r.high.len() as i64;
    for (idx, g) in r.high.iter().enumerate() {
        let i = idx as i64 + 1;
        let f = Rat::one() - delta * int(h + 1 - i) / int(h + 1);
        toks.extend(g.iter().map(|(p, v)| (*p, age_of(*v, &f, c))));
    }
    toks.extend(r.zero.iter().map(|(p, v)| (*p, age_of(*v, &Rat::zero(), c))));
    let n = r.low.len() as i64;
    for (idx, g) in r.low.iter().enumerate() {
        let j = idx as i64 + 1;
        let f = delta * int(j) / int(n + 1);
        toks.extend(g.iter().map(|(p, v)| (*p, age_of(*v, &f, c))));
    }
    Marking::from_tokens(toks)
}

/// Sum of place costs over all tokens: the price of one time unit.
pub fn token_cost(net: &Ptpn, r: &Region) -> u64 {
    r.tokens().map(|(p, _)| net.place_cost(*p)).sum()
}

/// Integer-age tokens move to the front of L.
pub fn succ_type1(r: &Region) -> Option<Region> {
    if r.zero.is_empty() {
        return None;
    }
    let mut low = Vec::with_capacity(r.low.len() + 1);
    low.push(r.zero.clone());
    low.extend(r.low.iter().cloned());
    Some(Region { high: r.high.clone(), zero: Multiset::new(), low })
}

/// The highest class reaches the next integer.
pub fn succ_type2(net: &Ptpn, r: &Region) -> Option<Region> {
    if !r.zero.is_empty() || r.high.is_empty() {
        return None;
    }
    let mut high = r.high.clone();
    let top = high.pop().expect("nonempty");
    Some(Region { high, zero: top.inc(net.cmax()), low: r.low.clone() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BKind {
    /// Delay close to 1; `split` tokens groups of L stay below the next integer.
    III,
    /// Delay close to 1 landing the selected L group on an integer.
    IV,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("split position {split} is invalid for an L word of length {len}")]
pub struct InvalidSplit {
    pub split: usize,
    pub len: usize,
}

/// Type III (split L into `L[..split]` and `L[split..]`) or Type IV (select `L[split]`).
pub fn succ_type_b(net: &Ptpn, r: &Region, kind: BKind, split: usize) -> Result<Region, InvalidSplit> {
    let c = net.cmax();
    let n = r.low.len();
    let ok = match kind {
        BKind::III => split <= n,
        BKind::IV => split < n,
    };
    if !ok {
        return Err(InvalidSplit { split, len: n });
    }
    let mut high: Vec<Multiset> = r.high.iter().map(|m| m.inc(c)).collect();
    if !r.zero.is_empty() {
        high.push(r.zero.clone());
    }
    high.extend(r.low[..split].iter().cloned());
    let (zero, rest) = match kind {
        BKind::III => (Multiset::new(), &r.low[split..]),
        BKind::IV => (r.low[split].inc(c), &r.low[split + 1..]),
    };
    Ok(Region { high, zero, low: rest.iter().map(|m| m.inc(c)).collect() })
}

/// Location of a token in a region.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Loc {
    pub part: Part,
    /// Index into H or L; 0 for Z.
    pub group: usize,
    pub token: Token,
}

/// Where an output token is placed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    Zero,
    /// Join the existing multiset at this index.
    Join(Part, usize),
    /// New singleton multiset inserted at this index.
    New(Part, usize),
}

/// The nondeterministic choices of one symbolic firing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FireChoice {
    /// Consumed tokens, located in the region before firing.
    pub consumed: Vec<Loc>,
    /// Output tokens in arc order; slots index the region as it stands after
    /// consumption and after the earlier insertions.
    pub produced: Vec<(Token, Slot)>,
}

/// One symbolic step with enough detail to be replayed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymStep {
    TypeI,
    TypeII,
    TypeIII { split: usize },
    TypeIV { index: usize },
    Fire { transition: TransitionId, choice: FireChoice },
}

impl SymStep {
    pub fn is_timed(&self) -> bool {
        !matches!(self, SymStep::Fire { .. })
    }

    pub fn is_b(&self) -> bool {
        matches!(self, SymStep::TypeIII { .. } | SymStep::TypeIV { .. })
    }

    pub fn label(&self, net: &Ptpn) -> String {
        match self {
            SymStep::TypeI => "type I".into(),
            SymStep::TypeII => "type II".into(),
            SymStep::TypeIII { split } => format!("type III (split {split})"),
            SymStep::TypeIV { index } => format!("type IV (select {index})"),
            SymStep::Fire { transition, .. } => format!("fire {}", net.transition_name(*transition)),
        }
    }
}

/// Removes `locs` simultaneously and drops emptied multisets.
pub fn remove_tokens(r: &Region, locs: &[Loc]) -> Option<Region> {
    let mut out = r.clone();
    for l in locs {
        let ok = match l.part {
            Part::Z => out.zero.remove(&l.token),
            p => out.words_mut(p).get_mut(l.group).is_some_and(|m| m.remove(&l.token)),
        };
        if !ok {
            return None;
        }
    }
    out.high.retain(|m| !m.is_empty());
    out.low.retain(|m| !m.is_empty());
    Some(out)
}

/// Places one token; `None` when the slot does not exist.
pub fn insert_token(r: &Region, t: Token, slot: Slot) -> Option<Region> {
    let mut out = r.clone();
    match slot {
        Slot::Zero => out.zero.insert(t),
        Slot::Join(p, i) => out.words_mut(p).get_mut(i)?.insert(t),
        Slot::New(p, i) => {
            let w = out.words_mut(p);
            if i > w.len() {
                return None;
            }
            w.insert(i, Multiset::singleton(t));
        }
    }
    Some(out)
}

/// Every slot of `r` together with the part it lands in.
pub fn slots(r: &Region) -> Vec<(Part, Slot)> {
    let mut out = vec![(Part::Z, Slot::Zero)];
    for part in [Part::H, Part::L] {
        let n = r.words(part).len();
        out.extend((0..n).map(|i| (part, Slot::Join(part, i))));
        out.extend((0..=n).map(|i| (part, Slot::New(part, i))));
    }
    out
}

/// Every location of every token, one per distinct (part, group, token).
pub fn locations(r: &Region) -> Vec<Loc> {
    let mut out = BTreeSet::new();
    for (g, m) in r.high.iter().enumerate() {
        out.extend(m.iter().map(|t| Loc { part: Part::H, group: g, token: *t }));
    }
    out.extend(r.zero.iter().map(|t| Loc { part: Part::Z, group: 0, token: *t }));
    for (g, m) in r.low.iter().enumerate() {
        out.extend(m.iter().map(|t| Loc { part: Part::L, group: g, token: *t }));
    }
    out.into_iter().collect()
}

/// All symbolic firings of `t`, keyed by resulting region.
pub fn fire_region_detailed(net: &Ptpn, r: &Region, t: TransitionId) -> BTreeMap<Region, FireChoice> {
    let tr = &net.transitions[t];
    let c = net.cmax();

    // Consumption: one compatible token per input arc, all removed at once.
    let mut partial: Vec<(Region, Vec<Loc>)> = vec![(r.clone(), vec![])];
    for arc in &tr.inputs {
        let mut next = Vec::new();
        for (rem, locs) in &partial {
            for l in locations(rem) {
                if l.token.0 == arc.place && class_sat(l.part, l.token.1, &arc.interval) {
                    // `rem` keeps empty multisets so group indices match `r`.
                    let mut rem2 = rem.clone();
                    match l.part {
                        Part::Z => rem2.zero.remove(&l.token),
                        p => rem2.words_mut(p)[l.group].remove(&l.token),
                    };
                    let mut locs2 = locs.clone();
                    locs2.push(l);
                    next.push((rem2, locs2));
                }
            }
        }
        let mut seen = BTreeMap::new();
        for (rem, locs) in next {
            seen.entry(rem).or_insert(locs);
        }
        partial = seen.into_iter().collect();
    }

    let mut stage: BTreeMap<Region, FireChoice> = BTreeMap::new();
    for (mut rem, locs) in partial {
        rem.high.retain(|m| !m.is_empty());
        rem.low.retain(|m| !m.is_empty());
        stage.entry(rem).or_insert(FireChoice { consumed: locs, produced: vec![] });
    }

    for arc in &tr.outputs {
        let mut next: BTreeMap<Region, FireChoice> = BTreeMap::new();
        for (reg, choice) in &stage {
            for (part, slot) in slots(reg) {
                for v in RVal::all(c) {
                    if !class_sat(part, v, &arc.interval) {
                        continue;
                    }
                    let tok = (arc.place, v);
                    let r2 = insert_token(reg, tok, slot).expect("enumerated slot exists");
                    next.entry(r2).or_insert_with(|| {
                        let mut ch = choice.clone();
                        ch.produced.push((tok, slot));
                        ch
                    });
                }
            }
        }
        stage = next;
    }
    stage
}

/// All regions reachable by one symbolic firing of `t`.
pub fn fire_region(net: &Ptpn, r: &Region, t: TransitionId) -> BTreeSet<Region> {
    fire_region_detailed(net, r, t).into_keys().collect()
}

/// Replays a firing choice on `r`.
pub fn apply_fire_choice(r: &Region, choice: &FireChoice) -> Option<Region> {
    let mut out = remove_tokens(r, &choice.consumed)?;
    for (t, s) in &choice.produced {
        out = insert_token(&out, *t, *s)?;
    }
    Some(out)
}

/// Type A successors: Type I, Type II and every firing, with their costs.
pub fn succ_a_labeled(net: &Ptpn, r: &Region) -> Vec<(Region, u64, SymStep)> {
    let mut out = Vec::new();
    if let Some(r1) = succ_type1(r) {
        out.push((r1, 0, SymStep::TypeI));
    }
    if let Some(r2) = succ_type2(net, r) {
        out.push((r2, 0, SymStep::TypeII));
    }
    for t in 0..net.transitions.len() {
        let cost = net.transitions[t].cost;
        for (r3, choice) in fire_region_detailed(net, r, t) {
            out.push((r3, cost, SymStep::Fire { transition: t, choice }));
        }
    }
    out
}

pub fn succ_a(net: &Ptpn, r: &Region) -> BTreeSet<(Region, u64)> {
    succ_a_labeled(net, r).into_iter().map(|(r, c, _)| (r, c)).collect()
}

/// Type B successors (every Type III split and Type IV selection), each costing `token_cost(r)`.
pub fn succ_b_labeled(net: &Ptpn, r: &Region) -> Vec<(Region, u64, SymStep)> {
    let cost = token_cost(net, r);
    let n = r.low.len();
    let mut out = Vec::with_capacity(2 * n + 1);
    for split in 0..=n {
        out.push((succ_type_b(net, r, BKind::III, split).expect("valid"), cost, SymStep::TypeIII { split }));
    }
    for index in 0..n {
        out.push((succ_type_b(net, r, BKind::IV, index).expect("valid"), cost, SymStep::TypeIV { index }));
    }
    out
}

pub fn succ_b(net: &Ptpn, r: &Region) -> BTreeSet<(Region, u64)> {
    succ_b_labeled(net, r).into_iter().map(|(r, c, _)| (r, c)).collect()
}

/// Applies a symbolic step label to `r`, returning the successor and its cost.
pub fn apply_sym_step(net: &Ptpn, r: &Region, s: &SymStep) -> Option<(Region, u64)> {
    match s {
        SymStep::TypeI => succ_type1(r).map(|x| (x, 0)),
        SymStep::TypeII => succ_type2(net, r).map(|x| (x, 0)),
        SymStep::TypeIII { split } => succ_type_b(net, r, BKind::III, *split).ok().map(|x| (x, token_cost(net, r))),
        SymStep::TypeIV { index } => succ_type_b(net, r, BKind::IV, *index).ok().map(|x| (x, token_cost(net, r))),
        SymStep::Fire { transition, choice } => {
            let tr = net.transitions.get(*transition)?;
            if choice.consumed.len() != tr.inputs.len() || choice.produced.len() != tr.outputs.len() {
                return None;
            }
            // Check that consumed and produced classes match the arcs.
            let ins: Vec<(Part, RVal, _)> = choice.consumed.iter().map(|l| (l.part, l.token.1, l.token.0)).collect();
            if !assign_classes(&ins, &tr.inputs) {
                return None;
            }
            let mut staged = remove_tokens(r, &choice.consumed)?;
            let mut outs = Vec::new();
            for (tok, slot) in &choice.produced {
                let part = match slot {
                    Slot::Zero => Part::Z,
                    Slot::Join(p, _) | Slot::New(p, _) => *p,
                };
                outs.push((part, tok.1, tok.0));
                staged = insert_token(&staged, *tok, *slot)?;
            }
            if !assign_classes(&outs, &tr.outputs) {
                return None;
            }
            Some((staged, tr.cost))
        }
    }
}

fn assign_classes(items: &[(Part, RVal, usize)], arcs: &[ptpn_core::Arc]) -> bool {
    fn go(items: &[(Part, RVal, usize)], arcs: &[ptpn_core::Arc], used: &mut Vec<bool>) -> bool {
        let Some((a, rest)) = arcs.split_first() else { return true };
        for i in 0..items.len() {
            let (part, v, p) = items[i];
            if !used[i] && p == a.place && class_sat(part, v, &a.interval) {
                used[i] = true;
                if go(items, rest, used) {
                    return true;
                }
                used[i] = false;
            }
        }
        false
    }
    items.len() == arcs.len() && go(items, arcs, &mut vec![false; items.len()])
}

/// Every region over `net` with at most `max_tokens` tokens, in canonical order.
pub fn all_regions(net: &Ptpn, max_tokens: usize) -> BTreeSet<Region> {
    let mut out = BTreeSet::from([Region::empty()]);
    let mut layer = vec![Region::empty()];
    for _ in 0..max_tokens {
        let mut next = BTreeSet::new();
        for r in &layer {
            for p in 0..net.places.len() {
                for v in RVal::all(net.cmax()) {
                    for (_, slot) in slots(r) {
                        if let Some(x) = insert_token(r, (p, v), slot) {
                            next.insert(x);
                        }
                    }
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next.into_iter().collect();
    }
    out
}
