//! JSON reports.

use ptpn_concrete::serialize_trace;
use ptpn_core::rat::fmt_rat;
use ptpn_core::Ptpn;
use ptpn_region::format_region;
use serde_json::{json, Value};

use crate::query::{Exactness, OptResult, Verdict, Witness};
use crate::threshold::{OptReport, ThresholdReport};
use crate::witness::Replay;

pub fn witness_json(net: &Ptpn, w: &Witness) -> Value {
    Value::Array(
        w.steps
            .iter()
            .map(|s| json!({ "step": s.step.label(net), "cost": s.cost, "region": format_region(net, &s.region) }))
            .collect(),
    )
}

pub fn replay_json(net: &Ptpn, r: &Replay) -> Value {
    let trace: Vec<Value> = serialize_trace(net, &r.computation.steps)
        .lines()
        .map(|l| serde_json::from_str(l).expect("trace lines are JSON"))
        .collect();
    json!({
        "delta": fmt_rat(&r.delta),
        "cost": fmt_rat(&r.cost),
        "bound": fmt_rat(&r.bound),
        "timed_steps": r.timed_steps,
        "max_rate": r.max_rate,
        "computation": trace,
    })
}

pub fn threshold_json(net: &Ptpn, rep: &ThresholdReport, replay: Option<&Replay>) -> Value {
    let witness = match &rep.verdict {
        Verdict::Yes(w) => witness_json(net, w),
        _ => Value::Null,
    };
    json!({
        "verdict": rep.verdict.name(),
        "threshold": rep.threshold,
        "stage": format!("{:?}", rep.stage),
        "iterations": rep.iterations.iter().map(|i| json!({ "k": i.k, "V": i.v_size, "U": i.u_size })).collect::<Vec<_>>(),
        "exhausted_bounds": rep.exhausted.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
        "witness": witness,
        "replay": replay.map_or(Value::Null, |r| replay_json(net, r)),
    })
}

pub fn optimal_json(net: &Ptpn, rep: &OptReport, replay: Option<&Replay>) -> Value {
    let (result, value, exact) = match rep.result {
        OptResult::Infinite => ("infinite", Value::Null, Value::Null),
        OptResult::Unknown => ("unknown", Value::Null, Value::Null),
        OptResult::Value(n, e) => ("value", json!(n), json!(e == Exactness::Exact)),
    };
    json!({
        "result": result,
        "value": value,
        "exact": exact,
        "verdicts": rep.verdicts.iter().map(|(v, x)| json!({ "threshold": v, "verdict": x.name() })).collect::<Vec<_>>(),
        "witness": rep.witness.as_ref().map_or(Value::Null, |w| witness_json(net, w)),
        "replay": replay.map_or(Value::Null, |r| replay_json(net, r)),
    })
}
