//! Predecessor operators over configurations with remaining budgets.

use std::collections::BTreeMap;

use ptpn_core::{Ptpn, TransitionId};
use ptpn_order::{Basis, Config, Ordering};
use ptpn_region::{
    class_sat, insert_token, locations, remove_tokens, slots, token_cost, Multiset, RVal, Region, Token,
};

/// The kind of step linking a predecessor to the configuration it was computed from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PreLabel {
    TypeI,
    TypeII,
    TypeIII,
    TypeIV,
    Fire(TransitionId),
    /// Padding with cost tokens; no step is taken.
    Pad,
}

impl PreLabel {
    pub fn is_b(self) -> bool {
        matches!(self, PreLabel::TypeIII | PreLabel::TypeIV)
    }
}

/// Single-token regions holding `p_fin`, in every part and with every value, at budget 0.
pub fn target_basis(net: &Ptpn, p_fin: usize) -> Basis {
    let mut b = Basis::new(Ordering::All);
    for v in RVal::all(net.cmax()) {
        let m = Multiset::singleton((p_fin, v));
        for r in [
            Region::new(vec![m.clone()], Multiset::new(), vec![]),
            Region::new(vec![], m.clone(), vec![]),
            Region::new(vec![], Multiset::new(), vec![m.clone()]),
        ] {
            b.insert(net, Config::new(r, 0));
        }
    }
    b
}

/// Tokens that an ordering allows upward closure to add.
fn extra_tokens(net: &Ptpn, ord: Ordering) -> Vec<Token> {
    let mut out = Vec::new();
    for p in 0..net.places.len() {
        if ord == Ordering::All || net.is_free(p) {
            out.extend(RVal::all(net.cmax()).map(|v| (p, v)));
        }
    }
    out
}

/// Keeps the minimal configurations, each with the first label found for it.
pub fn minimal_labeled(net: &Ptpn, items: Vec<(Config, PreLabel)>, ord: Ordering) -> Vec<(Config, PreLabel)> {
    let mut labels: BTreeMap<Config, PreLabel> = BTreeMap::new();
    for (c, l) in items {
        labels.entry(c).or_insert(l);
    }
    let basis = ptpn_order::minimize(net, labels.keys().cloned(), ord);
    basis
        .into_vec()
        .into_iter()
        .map(|c| {
            let l = labels[&c];
            (c, l)
        })
        .collect()
}

/// Regions obtained by matching some outputs of `t` against tokens of `r` and removing them.
fn unproduce(net: &Ptpn, t: TransitionId, r: &Region, ord: Ordering) -> Vec<Region> {
    fn go(net: &Ptpn, arcs: &[ptpn_core::Arc], r: Region, ord: Ordering, out: &mut Vec<Region>) {
        let Some((a, rest)) = arcs.split_first() else {
            out.push(r);
            return;
        };
        if ord == Ordering::All || net.is_free(a.place) {
            go(net, rest, r.clone(), ord, out);
        }
        for loc in locations(&r) {
            if loc.token.0 == a.place && class_sat(loc.part, loc.token.1, &a.interval) {
                if let Some(x) = remove_tokens(&r, &[loc]) {
                    go(net, rest, x, ord, out);
                }
            }
        }
    }
    let mut out = Vec::new();
    go(net, &net.transitions[t].outputs, r.clone(), ord, &mut out);
    out.sort();
    out.dedup();
    out
}

/// Regions obtained by inserting one token per input arc of `t` at every admissible slot.
fn unconsume(net: &Ptpn, t: TransitionId, r: &Region) -> Vec<Region> {
    let mut layer = vec![r.clone()];
    for a in &net.transitions[t].inputs {
        let mut next = Vec::new();
        for x in &layer {
            for (part, slot) in slots(x) {
                for v in RVal::all(net.cmax()).filter(|v| class_sat(part, *v, &a.interval)) {
                    next.extend(insert_token(x, (a.place, v), slot));
                }
            }
        }
        next.sort();
        next.dedup();
        layer = next;
    }
    layer
}

/// Minimal predecessors of `c` under firing `t`, with budgets raised by the firing cost and capped at `v`.
pub fn pre_discrete(net: &Ptpn, t: TransitionId, c: &Config, ord: Ordering, v: u64) -> Vec<Config> {
    pre_discrete_labeled(net, t, c, ord, v).into_iter().map(|x| x.0).collect()
}

fn pre_discrete_labeled(net: &Ptpn, t: TransitionId, c: &Config, ord: Ordering, v: u64) -> Vec<(Config, PreLabel)> {
    let budget = c.budget + net.transitions[t].cost;
    if budget > v {
        return Vec::new();
    }
    let mut out = Vec::new();
    for mid in unproduce(net, t, &c.region, ord) {
        for r in unconsume(net, t, &mid) {
            out.push((Config::new(r, budget), PreLabel::Fire(t)));
        }
    }
    minimal_labeled(net, out, ord)
}

fn pre_type1(net: &Ptpn, c: &Config, ord: Ordering) -> Vec<(Config, PreLabel)> {
    let r = &c.region;
    if !r.zero.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    if let Some((first, rest)) = r.low.split_first() {
        out.push(Region::new(r.high.clone(), first.clone(), rest.to_vec()));
    }
    for x in extra_tokens(net, ord) {
        out.push(Region::new(r.high.clone(), Multiset::singleton(x), r.low.clone()));
    }
    out.into_iter().map(|p| (Config::new(p, c.budget), PreLabel::TypeI)).collect()
}

fn pre_type2(net: &Ptpn, c: &Config, ord: Ordering) -> Vec<(Config, PreLabel)> {
    let r = &c.region;
    let tops: Vec<Multiset> = if r.zero.is_empty() {
        extra_tokens(net, ord).into_iter().map(Multiset::singleton).collect()
    } else {
        r.zero.dec_preimages(net.cmax())
    };
    tops.into_iter()
        .map(|top| {
            let mut high = r.high.clone();
            high.push(top);
            (Config::new(Region::new(high, Multiset::new(), r.low.clone()), c.budget), PreLabel::TypeII)
        })
        .collect()
}

/// Minimal predecessors of `c` under Type I, Type II and every firing, budgets capped at `v`.
pub fn pre_a(net: &Ptpn, c: &Config, ord: Ordering, v: u64) -> Vec<(Config, PreLabel)> {
    let mut out = pre_type1(net, c, ord);
    out.extend(pre_type2(net, c, ord));
    for t in 0..net.transitions.len() {
        out.extend(pre_discrete_labeled(net, t, c, ord, v));
    }
    minimal_labeled(net, out, ord)
}

/// Every combination of decrement preimages of a word; empty when some multiset has none.
fn dec_word(word: &[Multiset], cmax: u64) -> Vec<Vec<Multiset>> {
    let mut acc: Vec<Vec<Multiset>> = vec![vec![]];
    for m in word {
        let pre = m.dec_preimages(cmax);
        let mut next = Vec::with_capacity(acc.len() * pre.len());
        for a in &acc {
            for p in &pre {
                let mut b = a.clone();
                b.push(p.clone());
                next.push(b);
            }
        }
        acc = next;
    }
    acc
}

/// Minimal predecessors of `c` under Type III and Type IV; budgets grow by the predecessor's token cost.
pub fn pre_b(net: &Ptpn, c: &Config, ord: Ordering, v: u64) -> Vec<(Config, PreLabel)> {
    let cmax = net.cmax();
    let r = &c.region;
    let lows = dec_word(&r.low, cmax);
    if lows.is_empty() {
        return Vec::new();
    }
    // Type IV needs the landing class: the decremented Z, or one extra token when Z is empty.
    let mids: Vec<Multiset> = if r.zero.is_empty() {
        extra_tokens(net, ord).into_iter().map(Multiset::singleton).collect()
    } else {
        r.zero.dec_preimages(cmax)
    };
    let h = r.high.len();
    let mut out = Vec::new();
    for i in 0..=h {
        for j in [i, i + 1] {
            if j > h {
                continue;
            }
            let zero = if j > i { r.high[i].clone() } else { Multiset::new() };
            let tail = &r.high[j..];
            for a in dec_word(&r.high[..i], cmax) {
                for low in &lows {
                    if r.zero.is_empty() {
                        let l: Vec<Multiset> = tail.iter().chain(low).cloned().collect();
                        out.push((Region::new(a.clone(), zero.clone(), l), PreLabel::TypeIII));
                    }
                    for m in &mids {
                        let l: Vec<Multiset> =
                            tail.iter().cloned().chain(std::iter::once(m.clone())).chain(low.iter().cloned()).collect();
                        out.push((Region::new(a.clone(), zero.clone(), l), PreLabel::TypeIV));
                    }
                }
            }
        }
    }
    let out = out
        .into_iter()
        .filter_map(|(p, l)| {
            let budget = c.budget + token_cost(net, &p);
            (budget <= v).then(|| (Config::new(p, budget), l))
        })
        .collect();
    minimal_labeled(net, out, ord)
}

/// `pre_a` and `pre_b` together, minimized.
pub fn pre_ab(net: &Ptpn, c: &Config, ord: Ordering, v: u64) -> Vec<(Config, PreLabel)> {
    let mut out = pre_a(net, c, ord, v);
    out.extend(pre_b(net, c, ord, v));
    minimal_labeled(net, out, ord)
}
