use std::collections::{BTreeMap, BTreeSet};

use ptpn_core::Ptpn;
use ptpn_region::{region_from_json, region_to_json, RegionLiteralError, Token};
use serde_json::{json, Value};

use crate::config::{config_leq, Config};
use crate::ordering::Ordering;

/// Finite antichain standing for its upward closure.
///
/// Under `Free` two comparable configurations hold the same multiset of cost
/// tokens, so elements are bucketed by that multiset. Within a bucket they are
/// layered by token count: an embedding between regions of equal size is equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    ordering: Ordering,
    elements: BTreeSet<Config>,
    buckets: BTreeMap<Vec<Token>, BTreeMap<usize, BTreeSet<Config>>>,
}

impl Basis {
    pub fn new(ordering: Ordering) -> Self {
        Basis { ordering, elements: BTreeSet::new(), buckets: BTreeMap::new() }
    }

    fn key(&self, net: &Ptpn, c: &Config) -> Vec<Token> {
        match self.ordering {
            Ordering::All => Vec::new(),
            Ordering::Free => {
                let mut v: Vec<Token> = c.region.tokens().filter(|(p, _)| !net.is_free(*p)).copied().collect();
                v.sort();
                v
            }
        }
    }

    pub fn ordering(&self) -> Ordering {
        self.ordering
    }

    /// Elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = &Config> {
        self.elements.iter()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, c: &Config) -> bool {
        self.elements.contains(c)
    }

    /// An element below `c`, if any.
    pub fn find_below(&self, net: &Ptpn, c: &Config) -> Option<&Config> {
        let layers = self.buckets.get(&self.key(net, c))?;
        let n = c.region.token_count();
        let smaller = layers.range(..n).flat_map(|(_, l)| l.iter());
        let same = layers.get(&n).into_iter().flat_map(|l| l.iter());
        smaller
            .filter(|b| config_leq(net, b, c, self.ordering))
            .chain(same.filter(|b| b.region == c.region && b.budget <= c.budget))
            .next()
    }

    pub fn covers(&self, net: &Ptpn, c: &Config) -> bool {
        self.find_below(net, c).is_some()
    }

    /// Adds `c` unless already covered, dropping elements it dominates. Returns whether it was added.
    pub fn insert(&mut self, net: &Ptpn, c: Config) -> bool {
        if self.covers(net, &c) {
            return false;
        }
        let ord = self.ordering;
        let n = c.region.token_count();
        let layers = self.buckets.entry(self.key(net, &c)).or_default();
        let mut dominated = Vec::new();
        for (&m, layer) in layers.range(n..) {
            for b in layer {
                let below = if m == n { b.region == c.region } else { config_leq(net, &c, b, ord) };
                if below && c.budget <= b.budget {
                    dominated.push((m, b.clone()));
                }
            }
        }
        for (m, b) in dominated {
            let layer = layers.get_mut(&m).expect("layer exists");
            layer.remove(&b);
            if layer.is_empty() {
                layers.remove(&m);
            }
            self.elements.remove(&b);
        }
        layers.entry(n).or_default().insert(c.clone());
        self.elements.insert(c);
        true
    }

    /// Wraps a set already known to be an antichain.
    pub(crate) fn from_antichain(net: &Ptpn, ordering: Ordering, elements: BTreeSet<Config>) -> Self {
        let mut b = Basis::new(ordering);
        for c in &elements {
            let k = b.key(net, c);
            b.buckets.entry(k).or_default().entry(c.region.token_count()).or_default().insert(c.clone());
        }
        b.elements = elements;
        b
    }

    pub fn into_vec(self) -> Vec<Config> {
        self.elements.into_iter().collect()
    }
}

/// Minimal elements of `items` under `ord`.
pub fn minimize(net: &Ptpn, items: impl IntoIterator<Item = Config>, ord: Ordering) -> Basis {
    // Inserting small configurations first keeps the antichain short.
    let mut all: Vec<Config> = items.into_iter().collect();
    all.sort_by_key(|c| (c.region.token_count(), c.budget));
    let mut b = Basis::new(ord);
    for c in all {
        b.insert(net, c);
    }
    b
}

pub fn member_upward(net: &Ptpn, c: &Config, b: &Basis) -> bool {
    b.covers(net, c)
}

#[derive(Debug, thiserror::Error)]
pub enum BasisJsonError {
    #[error("expected an array of {{region, budget}} objects")]
    Shape,
    #[error(transparent)]
    Region(#[from] RegionLiteralError),
}

pub fn config_to_json(net: &Ptpn, c: &Config) -> Value {
    json!({ "region": region_to_json(net, &c.region), "budget": c.budget })
}

pub fn basis_to_json(net: &Ptpn, b: &Basis) -> Value {
    Value::Array(b.elements().map(|c| config_to_json(net, c)).collect())
}

pub fn basis_from_json(net: &Ptpn, ord: Ordering, v: &Value) -> Result<Basis, BasisJsonError> {
    let arr = v.as_array().ok_or(BasisJsonError::Shape)?;
    let mut items = Vec::with_capacity(arr.len());
    for e in arr {
        let region = region_from_json(net, e.get("region").ok_or(BasisJsonError::Shape)?)?;
        let budget = e.get("budget").and_then(Value::as_u64).ok_or(BasisJsonError::Shape)?;
        items.push(Config::new(region, budget));
    }
    Ok(minimize(net, items, ord))
}
