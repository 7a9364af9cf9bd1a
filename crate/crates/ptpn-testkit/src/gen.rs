use ptpn_concrete::{enabled_bindings, Marking, Step};
use ptpn_core::rat::{frac, int, ratio};
use ptpn_core::{Arc, Interval, Place, Ptpn, Rat, Transition};
use ptpn_region::{Multiset, RVal, Region};
use rand::seq::SliceRandom;
use rand::Rng;

/// A random net with at most `max_places` places and every finite interval bound at most `max_bound`.
pub fn random_net<R: Rng>(rng: &mut R, max_places: usize, max_bound: u64) -> Ptpn {
    let n = rng.gen_range(2..=max_places);
    let places: Vec<Place> =
        (0..n).map(|i| Place { id: i, name: format!("p{i}"), cost: rng.gen_range(0..=2) }).collect();
    let arc = |rng: &mut R| {
        let lo = rng.gen_range(0..=max_bound);
        let interval = loop {
            let lo_closed = rng.gen_bool(0.5);
            let hi = if rng.gen_bool(0.3) { None } else { Some(rng.gen_range(lo..=max_bound)) };
            let hi_closed = hi.is_some() && rng.gen_bool(0.5);
            if let Ok(i) = Interval::new(lo, lo_closed, hi, hi_closed) {
                break i;
            }
        };
        Arc { place: rng.gen_range(0..n), interval }
    };
    let transitions = (0..rng.gen_range(1..=3))
        .map(|i| {
            let inputs = (0..rng.gen_range(1..=2)).map(|_| arc(rng)).collect();
            let outputs = (0..rng.gen_range(0..=2)).map(|_| arc(rng)).collect();
            Transition { id: i, name: format!("t{i}"), cost: rng.gen_range(0..=2), inputs, outputs }
        })
        .collect();
    Ptpn::new(places, transitions).expect("generated names are unique")
}

pub fn random_value<R: Rng>(rng: &mut R, cmax: u64) -> RVal {
    let k = rng.gen_range(0..=cmax + 1);
    if k > cmax {
        RVal::Omega
    } else {
        RVal::Fin(k)
    }
}

/// Random well-formed region with at most `max_tokens` tokens.
pub fn random_region<R: Rng>(rng: &mut R, net: &Ptpn, max_tokens: usize) -> Region {
    let n = rng.gen_range(0..=max_tokens);
    if n == 0 {
        return Region::empty();
    }
    let groups = rng.gen_range(1..=n);
    let mut owner: Vec<usize> = (0..groups).chain((groups..n).map(|_| rng.gen_range(0..groups))).collect();
    owner.shuffle(rng);
    let mut ms = vec![Vec::new(); groups];
    for g in owner {
        let p = rng.gen_range(0..net.places.len());
        ms[g].push((p, random_value(rng, net.cmax())));
    }
    let ms: Vec<Multiset> = ms.into_iter().map(Multiset::from_tokens).collect();
    let with_zero = rng.gen_bool(0.5);
    let (zero, rest) = if with_zero { (ms[0].clone(), &ms[1..]) } else { (Multiset::new(), &ms[..]) };
    let cut = rng.gen_range(0..=rest.len());
    Region::new(rest[..cut].to_vec(), zero, rest[cut..].to_vec())
}

/// Fractions available to a marking at `delta`: 0, and small offsets near 0 and near 1.
pub fn palette(delta: &Rat) -> Vec<Rat> {
    let mut v = vec![int(0)];
    for k in 1..8 {
        v.push(delta * ratio(k, 8));
        v.push(int(1) - delta * ratio(k, 8));
    }
    v
}

/// Random delta-form marking with at most `max_tokens` tokens.
pub fn random_delta_marking<R: Rng>(rng: &mut R, net: &Ptpn, delta: &Rat, max_tokens: usize) -> Marking {
    let pal = palette(delta);
    let used: Vec<Rat> = (0..3).map(|_| pal.choose(rng).unwrap().clone()).collect();
    let n = rng.gen_range(0..=max_tokens);
    let toks = (0..n)
        .map(|_| {
            let p = rng.gen_range(0..net.places.len());
            let k = rng.gen_range(0..=net.cmax() as i64 + 2);
            (p, int(k) + used.choose(rng).unwrap())
        })
        .collect();
    Marking::from_tokens(toks)
}

/// Random candidate step from `m`: short delays, landing delays, near-unit delays, or firings.
pub fn random_step<R: Rng>(rng: &mut R, net: &Ptpn, m: &Marking, delta: &Rat) -> Option<Step> {
    let fracs: Vec<Rat> = m.tokens().iter().map(|(_, a)| frac(a)).collect();
    match rng.gen_range(0..5) {
        0 => Some(Step::Delay(delta * ratio(rng.gen_range(1..16), 16))),
        1 => {
            let f = fracs.choose(rng)?;
            let d = int(1) - f;
            (d < *delta).then_some(Step::Delay(d))
        }
        2 => {
            let f = fracs.choose(rng)?;
            let d = int(1) - f;
            (d < int(1) && d > int(1) - delta).then_some(Step::Delay(d))
        }
        3 => Some(Step::Delay(int(1) - delta * ratio(rng.gen_range(1..32), 32))),
        _ => {
            let t = rng.gen_range(0..net.transitions.len());
            let bindings: Vec<_> = enabled_bindings(net, m, t).into_iter().collect();
            let consumed = bindings.choose(rng)?.clone();
            let mut pal = palette(delta);
            pal.extend(fracs.iter().cloned());
            let produced = net.transitions[t]
                .outputs
                .iter()
                .map(|a| {
                    let hi = a.interval.hi.unwrap_or(net.cmax() + 2);
                    let k = rng.gen_range(a.interval.lo..=hi) as i64;
                    (a.place, int(k) + pal.choose(rng).unwrap())
                })
                .collect();
            Some(Step::Fire { transition: t, consumed, produced })
        }
    }
}
