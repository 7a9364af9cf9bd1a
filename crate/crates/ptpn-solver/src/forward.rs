//! Forward exploration with dominance pruning: finds witnesses, never proves absence.

use std::collections::{BTreeMap, VecDeque};

use ptpn_order::{region_embeds, Ordering};
use ptpn_region::{succ_a_labeled, succ_b_labeled, Region, Token};

use crate::query::{Bound, Query, SearchBounds, Verdict, Witness, WitnessStep};

struct Node {
    region: Region,
    budget: u64,
    depth: usize,
    parent: Option<(usize, WitnessStep)>,
}

/// Cost tokens of a region; configurations comparable under `Free` share them.
fn cost_key(q: &Query, r: &Region) -> Vec<Token> {
    let mut v: Vec<Token> = r.tokens().filter(|(p, _)| !q.net.is_free(*p)).copied().collect();
    v.sort();
    v
}

pub fn forward_search(q: &Query, bounds: &SearchBounds) -> Verdict {
    let net = q.net;
    let mut nodes = vec![Node { region: Region::initial(q.p_init), budget: q.v, depth: 0, parent: None }];
    let mut buckets: BTreeMap<Vec<Token>, Vec<usize>> = BTreeMap::new();
    buckets.entry(cost_key(q, &nodes[0].region)).or_default().push(0);
    let mut queue = VecDeque::from([0usize]);
    let mut exhausted = Vec::new();
    while let Some(i) = queue.pop_front() {
        if nodes[i].region.contains_place(q.p_fin) {
            let mut steps = Vec::new();
            let mut cur = i;
            while let Some((p, s)) = &nodes[cur].parent {
                steps.push(s.clone());
                cur = *p;
            }
            steps.reverse();
            return Verdict::Yes(Witness { p_init: q.p_init, p_fin: q.p_fin, steps });
        }
        if nodes[i].depth >= bounds.max_depth {
            exhausted.push(Bound::Depth);
            continue;
        }
        let r = nodes[i].region.clone();
        let mut succs = succ_a_labeled(net, &r);
        succs.extend(succ_b_labeled(net, &r));
        for (r2, cost, step) in succs {
            let Some(budget) = nodes[i].budget.checked_sub(cost) else { continue };
            if r2.token_count() > bounds.max_tokens {
                exhausted.push(Bound::Tokens);
                continue;
            }
            let key = cost_key(q, &r2);
            let bucket = buckets.entry(key).or_default();
            let dominated = bucket
                .iter()
                .any(|&j| nodes[j].budget >= budget && region_embeds(net, &r2, &nodes[j].region, Ordering::Free));
            if dominated {
                continue;
            }
            if nodes.len() >= bounds.max_configs {
                exhausted.push(Bound::Configs);
                queue.clear();
                break;
            }
            let depth = nodes[i].depth + 1;
            let ws = WitnessStep { step, cost, region: r2.clone() };
            bucket.push(nodes.len());
            nodes.push(Node { region: r2, budget, depth, parent: Some((i, ws)) });
            queue.push_back(nodes.len() - 1);
        }
    }
    exhausted.sort();
    exhausted.dedup();
    Verdict::Unknown(exhausted)
}
