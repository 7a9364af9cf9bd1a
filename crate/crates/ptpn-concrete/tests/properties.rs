use proptest::prelude::*;
use ptpn_concrete::*;
use ptpn_core::fixtures::main_net;
use ptpn_core::rat::ratio;
use ptpn_core::Rat;

fn arb_marking() -> impl Strategy<Value = Marking> {
    prop::collection::vec((0usize..5, 0i64..400, prop::sample::select(vec![1i64, 2, 4, 5, 10, 100])), 0..7)
        .prop_map(|ts| Marking::from_tokens(ts.into_iter().map(|(p, n, d)| (p, ratio(n, d))).collect()))
}

fn arb_delay() -> impl Strategy<Value = Rat> {
    (1i64..500, prop::sample::select(vec![1i64, 3, 10, 100])).prop_map(|(n, d)| ratio(n, d))
}

proptest! {
    #[test]
    fn delays_are_additive(m in arb_marking(), a in arb_delay(), b in arb_delay()) {
        let net = main_net();
        let (m1, c1) = delay_step(&net, &m, &a).unwrap();
        let (m2, c2) = delay_step(&net, &m1, &b).unwrap();
        let (m3, c3) = delay_step(&net, &m, &(&a + &b)).unwrap();
        prop_assert_eq!(m2, m3);
        prop_assert_eq!(c1 + c2, c3);
    }

    #[test]
    fn split_is_exact_and_detailed(m in arb_marking(), d in arb_delay()) {
        let net = main_net();
        let parts = split_delay(&m, &d);
        prop_assert_eq!(parts.iter().sum::<Rat>(), d.clone());
        let mut cur = m.clone();
        let mut cost = Rat::from_integer(0.into());
        for p in &parts {
            prop_assert!(is_detailed_delay(&cur, p));
            let (n, c) = delay_step(&net, &cur, p).unwrap();
            cur = n;
            cost += c;
        }
        let (direct, dc) = delay_step(&net, &m, &d).unwrap();
        prop_assert_eq!(cur, direct);
        prop_assert_eq!(cost, dc);
    }

    #[test]
    fn firing_conserves_arities(m in arb_marking(), t in 0usize..5, k in 0usize..4) {
        let net = main_net();
        let bindings: Vec<_> = enabled_bindings(&net, &m, t).into_iter().collect();
        if bindings.is_empty() { return Ok(()); }
        let consumed = &bindings[k % bindings.len()];
        // produce every output at its lower endpoint nudged inside the interval
        let produced: Vec<_> = net.transitions[t].outputs.iter().map(|a| {
            let lo = Rat::from_integer(a.interval.lo.into());
            (a.place, if a.interval.lo_closed { lo } else { lo + ratio(1, 2) })
        }).collect();
        let (m2, _) = fire_step(&net, &m, t, consumed, &produced).unwrap();
        for p in 0..net.places.len() {
            let ins = net.transitions[t].inputs.iter().filter(|a| a.place == p).count();
            let outs = net.transitions[t].outputs.iter().filter(|a| a.place == p).count();
            prop_assert_eq!(m2.count(p) + ins, m.count(p) + outs);
        }
    }

    #[test]
    fn decomposition_partitions(m in arb_marking()) {
        let delta = ratio(1, 10);
        if let Ok(d) = decompose_delta(&m, &delta) {
            let mut all: Vec<_> = d.high.iter().chain(std::iter::once(&d.zero)).chain(&d.low)
                .flat_map(|g| g.tokens().to_vec()).collect();
            all.sort();
            prop_assert_eq!(all, m.tokens().to_vec());
            let hf = d.high_fracs();
            let lf = d.low_fracs();
            prop_assert!(hf.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(lf.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn run_total_is_sum_of_steps(m in arb_marking(), ds in prop::collection::vec(arb_delay(), 0..5)) {
        let net = main_net();
        let c = Computation { initial: m, steps: ds.into_iter().map(Step::Delay).collect() };
        let r = run(&net, &c).unwrap();
        prop_assert_eq!(r.step_costs.iter().sum::<Rat>(), r.total_cost);
    }

    #[test]
    fn trace_round_trip(ds in prop::collection::vec(arb_delay(), 0..4), m in arb_marking()) {
        let net = main_net();
        let mut steps: Vec<Step> = ds.into_iter().map(Step::Delay).collect();
        steps.push(Step::Fire { transition: 1, consumed: m.tokens().to_vec(), produced: vec![] });
        let text = serialize_trace(&net, &steps);
        prop_assert_eq!(parse_trace(&net, &text).unwrap(), steps);
    }

    #[test]
    fn marking_literal_round_trip(m in arb_marking()) {
        let net = main_net();
        prop_assert_eq!(parse_marking(&net, &format_marking(&net, &m)).unwrap(), m);
    }
}
