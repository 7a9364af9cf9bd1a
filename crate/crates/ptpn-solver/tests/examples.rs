use ptpn_core::fixtures::{main_net, simple};
use ptpn_core::rat::{int, ratio};
use ptpn_core::Ptpn;
use ptpn_order::{Config, Ordering};
use ptpn_region::{fire_region, parse_region, succ_b, Region, SymStep};
use ptpn_solver::*;

fn reg(net: &Ptpn, s: &str) -> Region {
    parse_region(net, s).unwrap()
}

fn q<'a>(net: &'a Ptpn, from: &str, to: &str, v: u64) -> Query<'a> {
    Query { net, p_init: net.place_id(from).unwrap(), p_fin: net.place_id(to).unwrap(), v }
}

#[test]
fn target_basis_sizes() {
    let s = simple();
    assert_eq!(target_basis(&s, 1).len(), 12);
    let m = main_net();
    assert_eq!(target_basis(&m, m.place_id("red").unwrap()).len(), 24);
    let tiny = ptpn_core::parse_net("place a cost 0\nplace b cost 1\n").unwrap();
    assert_eq!(target_basis(&tiny, 0).len(), 6);
}

#[test]
fn pre_discrete_simple() {
    let net = simple();
    let c = Config::new(reg(&net, "H:[] | Z:{blue:0} | L:[]"), 0);
    let got: Vec<Region> = pre_discrete(&net, 0, &c, Ordering::All, 5).into_iter().map(|c| c.region).collect();
    // The red token must sit in H or L with value 1; Z has no integer strictly inside (1,2).
    assert!(got.contains(&reg(&net, "H:[{red:1}] | Z:{} | L:[]")));
    assert!(got.contains(&reg(&net, "H:[] | Z:{} | L:[{red:1}]")));
    for r in &got {
        assert!(r.tokens().all(|t| *t != (0, ptpn_region::RVal::Fin(1)) || !r.zero.contains(t)));
        assert!(fire_region(&net, r, 0).iter().any(|x| ptpn_order::region_embeds(&net, &c.region, x, Ordering::All)));
    }
}

#[test]
fn pre_discrete_budget_overflow() {
    let net = main_net();
    let t1 = net.transition_id("t1").unwrap();
    let c = Config::new(reg(&net, "H:[] | Z:{} | L:[]"), 4);
    assert!(pre_discrete(&net, t1, &c, Ordering::All, 5).is_empty());
    assert!(!pre_discrete(&net, t1, &c, Ordering::All, 6).is_empty());
}

#[test]
fn pre_a_inverts_type1_and_type2() {
    let net = main_net();
    let c = Config::new(reg(&net, "H:[{blue:0}] | Z:{} | L:[{red:3} {white:4}]"), 2);
    let preds = pre_a(&net, &c, Ordering::All, 10);
    let want = Config::new(reg(&net, "H:[{blue:0}] | Z:{red:3} | L:[{white:4}]"), 2);
    assert!(preds.iter().any(|(p, l)| *p == want && *l == PreLabel::TypeI));
    let c = Config::new(reg(&net, "H:[] | Z:{white:2, orange:3} | L:[]"), 0);
    let preds = pre_a(&net, &c, Ordering::All, 10);
    let want = Config::new(reg(&net, "H:[{white:1, orange:2}] | Z:{} | L:[]"), 0);
    assert!(preds.iter().any(|(p, l)| *p == want && *l == PreLabel::TypeII));
}

#[test]
fn pre_b_inverts_type3_example() {
    let net = main_net();
    let out = reg(
        &net,
        "H:[{red:w, green:5} {blue:1} {white:2, orange:3} {blue:1, red:5} {orange:2, green:w}] | Z:{} | \
         L:[{white:5} {red:4}]",
    );
    let input = reg(
        &net,
        "H:[{red:6, green:4} {blue:0}] | Z:{white:2, orange:3} | L:[{blue:1, red:5} {orange:2, green:w} {white:4} {red:3}]",
    );
    let preds = pre_b(&net, &Config::new(out.clone(), 0), Ordering::Free, 20);
    assert!(preds.iter().any(|(p, _)| *p == Config::new(input.clone(), 15)));
    assert!(succ_b(&net, &input).iter().any(|(r, c)| *r == out && *c == 15));
    assert_eq!(
        pre_b(&net, &Config::new(Region::empty(), 3), Ordering::Free, 3),
        vec![(Config::new(Region::empty(), 3), PreLabel::TypeIII)]
    );
    assert!(pre_b(&net, &Config::new(out, 20), Ordering::Free, 20).is_empty());
}

#[test]
fn acjt_with_empty_pre_is_start() {
    let net = simple();
    let t = target_basis(&net, 1);
    let f = acjt_fixpoint(&net, t.elements().cloned(), &|_| vec![], Ordering::All, 100, None);
    assert_eq!(f.basis, t);
    assert!(!f.capped);
}

#[test]
fn bounded_pre_star_depth_zero() {
    let net = simple();
    let t = ptpn_order::minimize(&net, [Config::new(reg(&net, "H:[] | Z:{} | L:[{blue:0}]"), 0)], Ordering::Free);
    let bounds = SearchBounds { max_depth: 0, ..SearchBounds::default() };
    let ps = bounded_pre_star(&net, &t, &bounds, 3, None);
    assert_eq!(ps.basis, t);
    assert_eq!(ps.exhausted, vec![Bound::Depth]);
    let ps = bounded_pre_star(&net, &t, &SearchBounds { max_depth: 8, max_tokens: 4, max_configs: 10_000 }, 3, None);
    assert!(ps.exhausted.is_empty());
}

#[test]
fn simple_threshold() {
    let net = simple();
    let b = SearchBounds::default();
    assert_eq!(cost_threshold(&q(&net, "red", "blue", 0), &b).verdict, Verdict::No);
    let rep = cost_threshold(&q(&net, "red", "blue", 1), &b);
    let Verdict::Yes(w) = rep.verdict else { panic!("{:?}", rep) };
    let kinds: Vec<&str> = w
        .steps
        .iter()
        .map(|s| match s.step {
            SymStep::TypeI => "I",
            SymStep::TypeII => "II",
            SymStep::TypeIII { .. } => "III",
            SymStep::TypeIV { .. } => "IV",
            SymStep::Fire { .. } => "fire",
        })
        .collect();
    assert_eq!(kinds, ["I", "III", "fire"]);
    assert_eq!(w.total_cost(), 1);
    let delta = ratio(1, 1000);
    let rp = replay_witness(&net, &w, &delta).unwrap();
    assert!(rp.cost < int(1) + &delta * int(2), "{}", rp.cost);
    assert!(rp.cost > int(1) - &delta);
}

#[test]
fn same_place_is_trivial() {
    let net = simple();
    let rep = cost_threshold(&q(&net, "red", "red", 0), &SearchBounds::default());
    assert_eq!(rep.verdict, Verdict::Yes(Witness { p_init: 0, p_fin: 0, steps: vec![] }));
    let Verdict::Yes(w) = rep.verdict else { unreachable!() };
    let rp = replay_witness(&net, &w, &ratio(1, 100)).unwrap();
    assert!(rp.computation.steps.is_empty());
    assert_eq!(rp.cost, int(0));
}

#[test]
fn simple_coverability() {
    let net = simple();
    assert!(coverability(&net, 0, 1));
    assert!(!coverability(&net, 1, 0));
    assert!(coverability(&net, 0, 0));
}

#[test]
fn simple_optimal() {
    let net = simple();
    let b = SearchBounds::default();
    assert_eq!(cost_optimal(&net, 0, 1, &b).result, OptResult::Value(1, Exactness::Exact));
    assert_eq!(cost_optimal(&net, 1, 1, &b).result, OptResult::Value(0, Exactness::Exact));
    assert_eq!(cost_optimal(&net, 1, 0, &b).result, OptResult::Infinite);
}

#[test]
fn forward_search_examples() {
    let net = simple();
    let b = SearchBounds { max_depth: 8, max_tokens: 4, max_configs: 1000 };
    assert!(forward_search(&q(&net, "red", "blue", 1), &b).is_yes());
    assert!(matches!(forward_search(&q(&net, "red", "blue", 0), &b), Verdict::Unknown(_)));
    assert!(forward_search(&q(&net, "blue", "blue", 0), &b).is_yes());
}

#[test]
fn report_json_shape() {
    let net = simple();
    let rep = cost_threshold(&q(&net, "red", "blue", 1), &SearchBounds::default());
    let Verdict::Yes(w) = &rep.verdict else { panic!() };
    let rp = replay_witness(&net, w, &ratio(1, 1000)).unwrap();
    let j = threshold_json(&net, &rep, Some(&rp));
    assert_eq!(j["verdict"], "yes");
    assert_eq!(j["threshold"], 1);
    assert_eq!(j["witness"].as_array().unwrap().len(), 3);
    assert_eq!(j["replay"]["delta"], "1/1000");
    assert!(j["replay"]["cost"].as_str().unwrap().contains('/'));
}
