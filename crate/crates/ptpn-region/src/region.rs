use std::fmt;

use ptpn_core::{PlaceId, Ptpn};

/// Abstract token value: integer part up to `cmax`, or omega for ages at least `cmax + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RVal {
    Fin(u64),
    Omega,
}

impl RVal {
    /// Successor with omega saturation.
    pub fn inc(self, cmax: u64) -> RVal {
        match self {
            RVal::Fin(k) if k < cmax => RVal::Fin(k + 1),
            _ => RVal::Omega,
        }
    }

    /// All `x` with `x.inc(cmax) == self`.
    pub fn dec_preimages(self, cmax: u64) -> Vec<RVal> {
        match self {
            RVal::Fin(0) => vec![],
            RVal::Fin(k) => vec![RVal::Fin(k - 1)],
            RVal::Omega => vec![RVal::Fin(cmax), RVal::Omega],
        }
    }

    /// `0..=cmax` followed by omega.
    pub fn all(cmax: u64) -> impl Iterator<Item = RVal> {
        (0..=cmax).map(RVal::Fin).chain(std::iter::once(RVal::Omega))
    }
}

impl fmt::Display for RVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RVal::Fin(k) => write!(f, "{k}"),
            RVal::Omega => write!(f, "w"),
        }
    }
}

pub type Token = (PlaceId, RVal);

/// A sorted multiset of abstract tokens.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multiset(Vec<Token>);

impl Multiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_tokens(mut v: Vec<Token>) -> Self {
        v.sort();
        Multiset(v)
    }

    pub fn singleton(t: Token) -> Self {
        Multiset(vec![t])
    }

    pub fn tokens(&self) -> &[Token] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn insert(&mut self, t: Token) {
        let pos = self.0.partition_point(|x| *x < t);
        self.0.insert(pos, t);
    }

    /// Removes one occurrence of `t`.
    pub fn remove(&mut self, t: &Token) -> bool {
        match self.0.binary_search(t) {
            Ok(i) => {
                self.0.remove(i);
                true
            }
            Err(_) => false,
        }
    }

    pub fn contains(&self, t: &Token) -> bool {
        self.0.binary_search(t).is_ok()
    }

    /// `self - sub` when `sub` is included in `self`.
    pub fn minus(&self, sub: &Multiset) -> Option<Multiset> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for t in &self.0 {
            if j < sub.0.len() && sub.0[j] == *t {
                j += 1;
            } else if j < sub.0.len() && sub.0[j] < *t {
                return None;
            } else {
                out.push(*t);
            }
        }
        (j == sub.0.len()).then_some(Multiset(out))
    }

    pub fn includes(&self, sub: &Multiset) -> bool {
        self.minus(sub).is_some()
    }

    pub fn union(&self, other: &Multiset) -> Multiset {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Multiset::from_tokens(v)
    }

    /// Every value incremented with omega saturation.
    pub fn inc(&self, cmax: u64) -> Multiset {
        Multiset::from_tokens(self.0.iter().map(|(p, v)| (*p, v.inc(cmax))).collect())
    }

    /// All multisets `x` with `x.inc(cmax) == self`.
    pub fn dec_preimages(&self, cmax: u64) -> Vec<Multiset> {
        let mut acc: Vec<Vec<Token>> = vec![vec![]];
        for (p, v) in &self.0 {
            let pre = v.dec_preimages(cmax);
            let mut next = Vec::with_capacity(acc.len() * pre.len());
            for a in &acc {
                for w in &pre {
                    let mut b = a.clone();
                    b.push((*p, *w));
                    next.push(b);
                }
            }
            acc = next;
        }
        let mut out: Vec<Multiset> = acc.into_iter().map(Multiset::from_tokens).collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = &Token> {
        self.0.iter()
    }

    pub fn cost(&self, net: &Ptpn) -> u64 {
        self.0.iter().map(|(p, _)| net.place_cost(*p)).sum()
    }

    /// Whether every token sits in a zero-cost place.
    pub fn all_free(&self, net: &Ptpn) -> bool {
        self.0.iter().all(|(p, _)| net.is_free(*p))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Part {
    H,
    Z,
    L,
}

/// Symbolic state: high word, integer multiset, low word.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Region {
    pub high: Vec<Multiset>,
    pub zero: Multiset,
    pub low: Vec<Multiset>,
}

impl Region {
    pub fn new(high: Vec<Multiset>, zero: Multiset, low: Vec<Multiset>) -> Self {
        Region { high, zero, low }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// `(H = [], Z = {p:0}, L = [])`.
    pub fn initial(p: PlaceId) -> Self {
        Region { high: vec![], zero: Multiset::singleton((p, RVal::Fin(0))), low: vec![] }
    }

    pub fn token_count(&self) -> usize {
        self.high.iter().chain(&self.low).map(Multiset::len).sum::<usize>() + self.zero.len()
    }

    pub fn tokens(&self) -> impl Iterator<Item = &Token> {
        self.high.iter().flat_map(|m| m.iter()).chain(self.zero.iter()).chain(self.low.iter().flat_map(|m| m.iter()))
    }

    pub fn contains_place(&self, p: PlaceId) -> bool {
        self.tokens().any(|(q, _)| *q == p)
    }

    /// Number of tokens in positive-cost places.
    pub fn cost_token_count(&self, net: &Ptpn) -> usize {
        self.tokens().filter(|(p, _)| !net.is_free(*p)).count()
    }

    /// No empty multiset in H or L.
    pub fn is_well_formed(&self) -> bool {
        self.high.iter().chain(&self.low).all(|m| !m.is_empty())
    }

    pub fn words(&self, part: Part) -> &Vec<Multiset> {
        match part {
            Part::H => &self.high,
            Part::L => &self.low,
            Part::Z => panic!("Z is not a word"),
        }
    }

    pub fn words_mut(&mut self, part: Part) -> &mut Vec<Multiset> {
        match part {
            Part::H => &mut self.high,
            Part::L => &mut self.low,
            Part::Z => panic!("Z is not a word"),
        }
    }

    pub fn display<'a>(&'a self, net: &'a Ptpn) -> RegionDisplay<'a> {
        RegionDisplay { net, region: self }
    }
}

pub struct RegionDisplay<'a> {
    net: &'a Ptpn,
    region: &'a Region,
}

fn write_ms(f: &mut fmt::Formatter<'_>, net: &Ptpn, m: &Multiset) -> fmt::Result {
    write!(f, "{{")?;
    for (i, (p, v)) in m.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{}:{}", net.place_name(*p), v)?;
    }
    write!(f, "}}")
}

fn write_word(f: &mut fmt::Formatter<'_>, net: &Ptpn, w: &[Multiset]) -> fmt::Result {
    write!(f, "[")?;
    for (i, m) in w.iter().enumerate() {
        if i > 0 {
            write!(f, " ")?;
        }
        write_ms(f, net, m)?;
    }
    write!(f, "]")
}

impl fmt::Display for RegionDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H:")?;
        write_word(f, self.net, &self.region.high)?;
        write!(f, " | Z:")?;
        write_ms(f, self.net, &self.region.zero)?;
        write!(f, " | L:")?;
        write_word(f, self.net, &self.region.low)
    }
}
