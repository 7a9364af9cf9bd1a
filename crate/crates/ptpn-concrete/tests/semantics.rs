use ptpn_concrete::*;
use ptpn_core::fixtures::{main_net, simple};
use ptpn_core::rat::{int, parse_rat, ratio};
use ptpn_core::{Ptpn, Rat};

fn m(net: &Ptpn, s: &str) -> Marking {
    parse_marking(net, s).unwrap()
}

fn q(s: &str) -> Rat {
    parse_rat(s).unwrap()
}

fn trace(net: &Ptpn, file: &str) -> Vec<Step> {
    let path = format!("{}/../../fixtures/{file}", env!("CARGO_MANIFEST_DIR"));
    parse_trace(net, &std::fs::read_to_string(path).unwrap()).unwrap()
}

pub const M5: &str = "red:6.95, red:5.00, red:3.04, green:4.95, green:8.01, white:1.97, white:4.03, \
                      orange:2.97, orange:2.01, blue:0.96, blue:1.00";
const DELTA_MARKING: &str = "red:7.93, red:1.06, red:2.02, white:2.00, white:0.97, blue:8.00, green:4.02, \
                         green:1.91, orange:2.03, orange:1.97, orange:4.02";

#[test]
fn storage_rate_examples() {
    let n = main_net();
    assert_eq!(storage_rate(&n, &m(&n, "white:2.4, blue:5.4, blue:3.1")), 1);
    assert_eq!(storage_rate(&n, &Marking::new()), 0);
    // 2 red, 1 white, 1 blue, 2 green, 1 orange
    let fig = m(&n, "red:0, red:0, white:0, blue:0, green:0, green:0, orange:0");
    assert_eq!(storage_rate(&n, &fig), ((3 * 2 + 1) + 2 * 2));
}

#[test]
fn delay_examples() {
    let n = main_net();
    let (m2, c) = delay_step(&n, &m(&n, "white:2.4, blue:5.4, blue:3.1"), &q("1.5")).unwrap();
    assert_eq!(m2, m(&n, "white:3.9, blue:6.9, blue:4.6"));
    assert_eq!(c, q("1.5"));
    let s = simple();
    let (m2, c) = delay_step(&s, &m(&s, "red:0"), &q("1.01")).unwrap();
    assert_eq!((m2, c), (m(&s, "red:1.01"), q("1.01")));
    let (m2, c) = delay_step(&n, &Marking::new(), &int(7)).unwrap();
    assert_eq!((m2, c), (Marking::new(), int(0)));
    assert_eq!(delay_step(&n, &Marking::new(), &int(0)), Err(StepError::NonPositiveDelay));
}

#[test]
fn binding_examples() {
    let n = main_net();
    let t1 = n.transition_id("t1").unwrap();
    let red = n.place_id("red").unwrap();
    let b = enabled_bindings(&n, &m(&n, "red:2.0, blue:6.9"), t1);
    assert_eq!(b.into_iter().collect::<Vec<_>>(), vec![vec![(red, int(2))]]);
    assert!(enabled_bindings(&n, &m(&n, "red:0.5"), t1).is_empty());
    let two = enabled_bindings(&n, &m(&n, "red:1.0, red:2.5"), t1);
    assert_eq!(two.len(), 2);
    assert!(two.iter().all(|b| b.len() == 1));
}

#[test]
fn fire_examples() {
    let n = main_net();
    let t1 = n.transition_id("t1").unwrap();
    let tok = |s: &str| parse_token(&n, s).unwrap();
    let (m2, c) =
        fire_step(&n, &m(&n, "red:2.0, blue:6.9"), t1, &[tok("red:2.0")], &[tok("white:0.8"), tok("blue:3.1")])
            .unwrap();
    assert_eq!((m2, c), (m(&n, "white:0.8, blue:6.9, blue:3.1"), 2));
    let err = fire_step(&n, &m(&n, "red:2.0"), t1, &[tok("red:2.0")], &[tok("white:1.0"), tok("blue:3.1")]);
    assert_eq!(err, Err(StepError::ProducedAgeOutOfInterval));
    let err = fire_step(&n, &m(&n, "red:0.5"), t1, &[tok("red:0.5")], &[tok("white:0"), tok("blue:3")]);
    assert_eq!(err, Err(StepError::BindingNotEnabled));

    let s = simple();
    let blue = s.place_id("blue").unwrap();
    let red = s.place_id("red").unwrap();
    let (m2, c) = fire_step(&s, &m(&s, "red:3/2"), 0, &[(red, ratio(3, 2))], &[(blue, int(0))]).unwrap();
    assert_eq!((m2, c), (m(&s, "blue:0"), 0));
}

#[test]
fn pi_costs_289_tenths() {
    let n = main_net();
    let c = Computation { initial: m(&n, "red:0"), steps: trace(&n, "main_pi.jsonl") };
    let r = run(&n, &c).unwrap();
    assert_eq!(r.total_cost, ratio(289, 10));
    assert_eq!(r.final_marking, m(&n, "red:1.5, blue:5.6"));
    assert_eq!(r.step_costs.iter().sum::<Rat>(), r.total_cost);
    assert!(!is_delta_computation(&n, &c, &ratio(1, 20)).unwrap());
}

#[test]
fn empty_computation() {
    let n = simple();
    let c = Computation { initial: Marking::initial(0), steps: vec![] };
    let r = run(&n, &c).unwrap();
    assert_eq!((r.final_marking, r.total_cost), (Marking::initial(0), int(0)));
    assert!(is_delta_computation(&n, &c, &ratio(1, 20)).unwrap());
}

#[test]
fn run_reports_first_bad_step() {
    let n = main_net();
    let steps =
        vec![Step::Delay(q("0.5")), Step::Fire { transition: 0, consumed: vec![(0, q("0.5"))], produced: vec![] }];
    let err = run(&n, &Computation { initial: m(&n, "red:0"), steps }).unwrap_err();
    assert_eq!(err, RunError { index: 1, error: StepError::BindingNotEnabled });
}

#[test]
fn delta_form_examples() {
    let n = main_net();
    assert!(is_delta_form(&m(&n, DELTA_MARKING), &q("0.2")).is_err(), "0.2 is outside the open range");
    assert!(is_delta_form(&m(&n, DELTA_MARKING), &q("0.19")).unwrap());
    assert!(!is_delta_form(&m(&n, "red:0.5"), &q("0.19")).unwrap());
    assert!(is_delta_form(&m(&n, M5), &q("0.1")).unwrap());
    assert_eq!(is_delta_form(&Marking::new(), &int(0)), Err(DeltaError::OutOfRange));
}

#[test]
fn decomposition_of_delta_marking() {
    let n = main_net();
    let d = decompose_delta(&m(&n, DELTA_MARKING), &q("0.19")).unwrap();
    assert_eq!(d.high_fracs(), vec![q("0.91"), q("0.93"), q("0.97")]);
    assert_eq!(d.low_fracs(), vec![q("0.02"), q("0.03"), q("0.06")]);
    let sizes: Vec<usize> = d.high.iter().chain(std::iter::once(&d.zero)).chain(&d.low).map(|g| g.len()).collect();
    assert_eq!(sizes, vec![1, 1, 2, 2, 3, 1, 1]);
}

#[test]
fn decomposition_single_and_m5() {
    let n = main_net();
    let d = decompose_delta(&m(&n, "red:5"), &q("0.1")).unwrap();
    assert!(d.high.is_empty() && d.low.is_empty());
    assert_eq!(d.zero, m(&n, "red:5"));
    let d = decompose_delta(&m(&n, M5), &q("0.1")).unwrap();
    assert_eq!((d.high.len(), d.zero.len(), d.low.len()), (3, 2, 3));
    assert_eq!(d.high[0], m(&n, "red:6.95, green:4.95"));
    assert_eq!(d.low[0], m(&n, "orange:2.01, green:8.01"));
    assert_eq!(decompose_delta(&m(&n, "red:0.5"), &q("0.1")), Err(DeltaError::NotDeltaForm));
}

#[test]
fn detailed_delay_examples() {
    let n = main_net();
    let fig = m(&n, "white:0.98, orange:1.98, blue:1.01, white:2.01");
    assert!(is_detailed_delay(&fig, &q("0.02")));
    assert!(!is_detailed_delay(&fig, &int(1)));
    assert!(is_detailed_delay(&Marking::new(), &int(9)));
}

#[test]
fn split_examples() {
    let n = main_net();
    assert_eq!(split_delay(&m(&n, "red:0"), &int(3)), vec![int(1), int(1), int(1)]);
    assert_eq!(split_delay(&Marking::new(), &int(5)), vec![int(5)]);
    // M5 fractional classes .95, .96, .97, 0, .01, .03, .04 cross at .05, .04, .03, 1, .99, .97, .96
    let parts = split_delay(&m(&n, M5), &int(1));
    let mut acc = Rat::from_integer(0.into());
    let mut sums = vec![];
    for p in &parts {
        acc += p;
        sums.push(acc.clone());
    }
    let expect: Vec<Rat> = ["0.03", "0.04", "0.05", "0.96", "0.97", "0.99", "1"].iter().map(|s| q(s)).collect();
    assert_eq!(sums, expect);
}
