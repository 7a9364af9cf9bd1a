use proptest::prelude::*;
use ptpn_core::fixtures::main_net;
use ptpn_core::Ptpn;
use ptpn_order::*;
use ptpn_region::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_region<R: Rng>(rng: &mut R, net: &Ptpn, max_tokens: usize) -> Region {
    let mut r = Region::empty();
    for _ in 0..rng.gen_range(0..=max_tokens) {
        r = add_random_token(rng, net, &r, |_| true);
    }
    r
}

fn add_random_token<R: Rng>(rng: &mut R, net: &Ptpn, r: &Region, place_ok: impl Fn(usize) -> bool) -> Region {
    let places: Vec<usize> = (0..net.places.len()).filter(|p| place_ok(*p)).collect();
    let p = *places.choose(rng).unwrap();
    let vals: Vec<RVal> = RVal::all(net.cmax()).collect();
    let v = *vals.choose(rng).unwrap();
    let (_, slot) = *slots(r).choose(rng).unwrap();
    insert_token(r, (p, v), slot).unwrap()
}

/// `r` with `n` extra tokens, restricted to free places when `free` is set.
fn pad<R: Rng>(rng: &mut R, net: &Ptpn, r: &Region, n: usize, free: bool) -> Region {
    let mut x = r.clone();
    for _ in 0..n {
        x = add_random_token(rng, net, &x, |p| !free || net.is_free(p));
    }
    x
}

/// Exhaustive embedding oracle: tries every order-preserving injection.
fn embeds_oracle(net: &Ptpn, r1: &Region, r2: &Region, ord: Ordering) -> bool {
    fn words(net: &Ptpn, a: &[Multiset], b: &[Multiset], ord: Ordering) -> bool {
        if a.is_empty() {
            return ord == Ordering::All || b.iter().all(|m| m.all_free(net));
        }
        (0..b.len()).any(|j| {
            let skipped_ok = ord == Ordering::All || b[..j].iter().all(|m| m.all_free(net));
            let here = b[j].minus(&a[0]).is_some_and(|rest| ord == Ordering::All || rest.all_free(net));
            skipped_ok && here && words(net, &a[1..], &b[j + 1..], ord)
        })
    }
    let z = r2.zero.minus(&r1.zero).is_some_and(|rest| ord == Ordering::All || rest.all_free(net));
    z && words(net, &r1.high, &r2.high, ord) && words(net, &r1.low, &r2.low, ord)
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #[test]
    fn greedy_embedding_matches_oracle(seed in any::<u64>(), n in 0usize..4, free in any::<bool>()) {
        let net = main_net();
        let mut g = rng(seed);
        let r1 = random_region(&mut g, &net, 4);
        let r2 = if g.gen_bool(0.7) { pad(&mut g, &net, &r1, n, free) } else { random_region(&mut g, &net, 6) };
        for ord in [Ordering::All, Ordering::Free] {
            prop_assert_eq!(region_embeds(&net, &r1, &r2, ord), embeds_oracle(&net, &r1, &r2, ord));
        }
    }

    #[test]
    fn orders_are_preorders_and_free_refines_all(seed in any::<u64>()) {
        let net = main_net();
        let mut g = rng(seed);
        let a = random_region(&mut g, &net, 4);
        for free in [false, true] {
            let ord = if free { Ordering::Free } else { Ordering::All };
            let b = pad(&mut g, &net, &a, 2, free);
            let c = pad(&mut g, &net, &b, 2, free);
            prop_assert!(region_embeds(&net, &a, &a, ord));
            prop_assert!(region_embeds(&net, &a, &b, ord));
            prop_assert!(region_embeds(&net, &b, &c, ord));
            prop_assert!(region_embeds(&net, &a, &c, ord));
            if region_embeds(&net, &b, &a, ord) {
                prop_assert_eq!(&a, &b);
            }
        }
        let x = random_region(&mut g, &net, 5);
        if region_embeds(&net, &a, &x, Ordering::Free) {
            prop_assert!(region_embeds(&net, &a, &x, Ordering::All));
        }
    }

    #[test]
    fn type_a_steps_are_monotone(seed in any::<u64>()) {
        let net = main_net();
        let mut g = rng(seed);
        let r1 = random_region(&mut g, &net, 3);
        let n = g.gen_range(0..3);
        let r3 = pad(&mut g, &net, &r1, n, false);
        let big = succ_a_labeled(&net, &r3);
        for (r2, cost, step) in succ_a_labeled(&net, &r1) {
            let kind = std::mem::discriminant(&step);
            let mut ok = big.iter().any(|(r4, c4, s4)| {
                *c4 == cost && std::mem::discriminant(s4) == kind && region_embeds(&net, &r2, r4, Ordering::All)
            });
            // Extra tokens of r3 may need their own Type I/II steps first; the chain is deterministic.
            if step.is_timed() && !ok {
                let mut cur = r3.clone();
                for _ in 0..2 * r3.token_count() + 2 {
                    match succ_type1(&cur).or_else(|| succ_type2(&net, &cur)) {
                        Some(next) => cur = next,
                        None => break,
                    }
                    if region_embeds(&net, &r2, &cur, Ordering::All) {
                        ok = true;
                        break;
                    }
                }
            }
            prop_assert!(ok, "{} -> {} via {:?}", r1.display(&net), r2.display(&net), step);
        }
    }

    #[test]
    fn type_b_steps_are_free_monotone(seed in any::<u64>()) {
        let net = main_net();
        let mut g = rng(seed);
        let r1 = random_region(&mut g, &net, 4);
        let n = g.gen_range(0..3);
        let r3 = pad(&mut g, &net, &r1, n, true);
        let big = succ_b_labeled(&net, &r3);
        for (r2, cost, _) in succ_b_labeled(&net, &r1) {
            let ok = big.iter().any(|(r4, c4, _)| *c4 == cost && region_embeds(&net, &r2, r4, Ordering::Free));
            prop_assert!(ok);
        }
    }

    #[test]
    fn minimize_matches_pairwise_filter(seed in any::<u64>(), free in any::<bool>()) {
        let net = main_net();
        let ord = if free { Ordering::Free } else { Ordering::All };
        let mut g = rng(seed);
        let base = random_region(&mut g, &net, 2);
        let items: Vec<Config> = (0..6)
            .map(|_| {
                let (n, free, u) = (g.gen_range(0..3), g.gen_bool(0.5), g.gen_range(0..3));
                Config::new(pad(&mut g, &net, &base, n, free), u)
            })
            .collect();
        let b = minimize(&net, items.clone(), ord);
        let mut oracle: Vec<Config> = items
            .iter()
            .filter(|c| !items.iter().any(|d| config_leq(&net, d, c, ord) && !config_leq(&net, c, d, ord)))
            .cloned()
            .collect();
        oracle.sort();
        oracle.dedup();
        prop_assert_eq!(b.clone().into_vec(), oracle);
        let mut shuffled = items.clone();
        shuffled.reverse();
        prop_assert_eq!(minimize(&net, shuffled, ord), b.clone());
        prop_assert_eq!(minimize(&net, b.clone().into_vec(), ord), b.clone());
        let probe = Config::new(random_region(&mut g, &net, 4), 2);
        prop_assert_eq!(member_upward(&net, &probe, &b), items.iter().any(|s| config_leq(&net, s, &probe, ord)));
    }
}

#[test]
fn random_sequences_contain_dominating_pairs() {
    let net = main_net();
    let mut g = rng(3);
    for ord in [Ordering::All, Ordering::Free] {
        let seq: Vec<Config> =
            (0..10_000).map(|_| Config::new(random_region(&mut g, &net, 3), g.gen_range(0..3))).collect();
        let found = (1..seq.len()).any(|j| (0..j).any(|i| config_leq(&net, &seq[i], &seq[j], ord)));
        assert!(found, "{ord:?}");
    }
}
