use std::path::Path;

use ptpn_concrete::{
    apply_step, is_delta_computation, is_detailed_delay, parse_marking, parse_trace, step_to_json, Computation,
    Marking, Step,
};
use ptpn_core::rat::{fmt_rat, to_f64};
use ptpn_core::{parse_net, serialize_net, PlaceId, Ptpn, Rat};
use ptpn_region::{abstract_marking, format_region, region_to_json};
use ptpn_solver::{
    cost_optimal, cost_threshold, optimal_json, replay_witness, threshold_json, Exactness, OptResult, Query, Replay,
    SearchBounds, Verdict, Witness,
};
use serde_json::{json, Value};

use crate::args::{Cli, Command, QueryArgs};
use crate::settings::{self, FileSettings};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    /// Unparseable input data.
    #[error("{0}")]
    Data(String),
    /// Well-formed input describing something impossible, such as a disabled step.
    #[error("{0}")]
    Invalid(String),
}

/// One report in both renderings; `code` is the process exit status.
pub struct Output {
    pub code: u8,
    pub json: Value,
    pub human: Vec<String>,
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let file = settings::load(cli.config.as_deref())?;
    match &cli.command {
        Command::Validate { net } => validate(net),
        Command::Simulate { net, trace, delta, initial } => simulate(net, trace, delta.as_deref(), initial.as_deref()),
        Command::Abstract { net, marking, delta } => abstract_cmd(net, marking, file.delta(delta.as_deref())?),
        Command::Check { query, threshold } => check(&file, query, *threshold),
        Command::Optimize { query } => optimize(&file, query),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load_net(path: &Path) -> Result<Ptpn, CliError> {
    parse_net(&read(path)?).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn place(net: &Ptpn, name: &str) -> Result<PlaceId, CliError> {
    net.place_id(name).ok_or_else(|| CliError::Usage(format!("unknown place `{name}`")))
}

/// Exact value with a decimal approximation.
fn show(r: &Rat) -> String {
    let exact = fmt_rat(r);
    if exact.contains('/') {
        format!("{exact} (~{:.6})", to_f64(r))
    } else {
        exact
    }
}

fn plural(n: usize, word: &str) -> String {
    format!("{n} {word}{}", if n == 1 { "" } else { "s" })
}

fn validate(path: &Path) -> Result<Output, CliError> {
    let net = load_net(path)?;
    let canonical = serialize_net(&net);
    let summary = format!(
        "cmax={}, {}, {}",
        net.cmax(),
        plural(net.places.len(), "place"),
        plural(net.transitions.len(), "transition")
    );
    let places: Vec<Value> = net.places.iter().map(|p| json!({ "name": p.name, "cost": p.cost })).collect();
    let transitions: Vec<Value> = net
        .transitions
        .iter()
        .map(|t| json!({ "name": t.name, "cost": t.cost, "inputs": t.inputs.len(), "outputs": t.outputs.len() }))
        .collect();
    let mut human: Vec<String> = canonical.lines().map(str::to_string).collect();
    human.push(summary.clone());
    human.push(format!(
        "place costs: {}",
        net.places.iter().map(|p| format!("{}={}", p.name, p.cost)).collect::<Vec<_>>().join(", ")
    ));
    human.push(format!(
        "transition costs: {}",
        net.transitions.iter().map(|t| format!("{}={}", t.name, t.cost)).collect::<Vec<_>>().join(", ")
    ));
    let json = json!({
        "canonical": canonical,
        "summary": summary,
        "cmax": net.cmax(),
        "places": places,
        "transitions": transitions,
    });
    Ok(Output { code: 0, json, human })
}

fn simulate(path: &Path, trace_path: &Path, delta: Option<&str>, initial: Option<&str>) -> Result<Output, CliError> {
    let net = load_net(path)?;
    let steps =
        parse_trace(&net, &read(trace_path)?).map_err(|e| CliError::Data(format!("{}: {e}", trace_path.display())))?;
    let initial = match initial {
        Some(text) => parse_marking(&net, text).map_err(|e| CliError::Data(format!("initial marking: {e}")))?,
        None => Marking::initial(0),
    };
    let delta = delta.map(|d| settings::parse_delta(d, CliError::Usage)).transpose()?;

    let mut m = initial.clone();
    let mut total = Rat::from_integer(0.into());
    let mut rows = Vec::new();
    let mut human = vec![format!("initial: {}", m.display(&net))];
    let mut detailed = Vec::new();
    for (index, step) in steps.iter().enumerate() {
        if let (Some(_), Step::Delay(d)) = (&delta, step) {
            detailed.push(json!({ "index": index, "detailed": is_detailed_delay(&m, d) }));
        }
        let (next, cost) = apply_step(&net, &m, step).map_err(|e| CliError::Invalid(format!("step {index}: {e}")))?;
        total += &cost;
        let s = step_to_json(&net, step);
        human.push(format!("{index:>3}  {s}  cost {}  -> {}", show(&cost), next.display(&net)));
        rows.push(
            json!({ "index": index, "step": s, "cost": fmt_rat(&cost), "marking": next.display(&net).to_string() }),
        );
        m = next;
    }
    human.push(format!("total cost = {}", show(&total)));
    human.push(format!("final marking: {}", m.display(&net)));
    let delta_json = match &delta {
        None => Value::Null,
        Some(d) => {
            let c = Computation { initial: initial.clone(), steps };
            let ok = is_delta_computation(&net, &c, d).map_err(|e| CliError::Invalid(e.to_string()))?;
            human.push(format!("delta-form at {}: {ok}", fmt_rat(d)));
            for x in &detailed {
                human.push(format!("  delay at step {}: detailed = {}", x["index"], x["detailed"]));
            }
            json!({ "delta": fmt_rat(d), "delta_form": ok, "delays": detailed })
        }
    };
    let json = json!({
        "initial": initial.display(&net).to_string(),
        "steps": rows,
        "total_cost": fmt_rat(&total),
        "final_marking": m.display(&net).to_string(),
        "delta_check": delta_json,
    });
    Ok(Output { code: 0, json, human })
}

fn abstract_cmd(path: &Path, literal: &str, delta: Rat) -> Result<Output, CliError> {
    let net = load_net(path)?;
    let m = parse_marking(&net, literal).map_err(|e| CliError::Data(format!("marking: {e}")))?;
    let r = abstract_marking(&net, &m, &delta)
        .map_err(|e| CliError::Invalid(format!("{} at delta {}: {e}", m.display(&net), fmt_rat(&delta))))?;
    let text = format_region(&net, &r);
    let json = json!({
        "marking": m.display(&net).to_string(),
        "delta": fmt_rat(&delta),
        "region": text,
        "region_json": region_to_json(&net, &r),
    });
    Ok(Output { code: 0, json, human: vec![text] })
}

fn witness_lines(net: &Ptpn, w: &Witness, out: &mut Vec<String>) {
    if w.steps.is_empty() {
        out.push("witness: empty (the target is already covered)".into());
        return;
    }
    out.push("witness:".into());
    for (i, s) in w.steps.iter().enumerate() {
        out.push(format!("  {:>2}. {} cost {} -> {}", i + 1, s.step.label(net), s.cost, format_region(net, &s.region)));
    }
}

fn replay_lines(r: &Replay, out: &mut Vec<String>) {
    out.push(format!(
        "replay at delta {}: cost {} <= bound {} ({} timed steps, max rate {})",
        fmt_rat(&r.delta),
        show(&r.cost),
        show(&r.bound),
        r.timed_steps,
        r.max_rate
    ));
}

fn certify(net: &Ptpn, w: &Witness, delta: &Rat) -> Result<Replay, CliError> {
    replay_witness(net, w, delta).map_err(|e| CliError::Invalid(format!("witness replay failed: {e}")))
}

struct Prepared {
    net: Ptpn,
    p_init: PlaceId,
    p_fin: PlaceId,
    bounds: SearchBounds,
    delta: Rat,
}

fn prepare(file: &FileSettings, q: &QueryArgs) -> Result<Prepared, CliError> {
    let net = load_net(&q.net)?;
    let p_init = place(&net, &q.from)?;
    let p_fin = place(&net, &q.to)?;
    let delta = file.delta(q.delta.as_deref())?;
    Ok(Prepared { bounds: file.bounds(&q.bounds), net, p_init, p_fin, delta })
}

fn check(file: &FileSettings, q: &QueryArgs, v: u64) -> Result<Output, CliError> {
    let p = prepare(file, q)?;
    let rep = cost_threshold(&Query { net: &p.net, p_init: p.p_init, p_fin: p.p_fin, v }, &p.bounds);
    let replay = match &rep.verdict {
        Verdict::Yes(w) => Some(certify(&p.net, w, &p.delta)?),
        _ => None,
    };
    let mut human = vec![format!("verdict: {} (threshold {v})", rep.verdict.name()), format!("stage: {:?}", rep.stage)];
    for it in &rep.iterations {
        human.push(format!("  iteration {}: |V|={} |U|={}", it.k, it.v_size, it.u_size));
    }
    if !rep.exhausted.is_empty() {
        let names: Vec<String> = rep.exhausted.iter().map(|b| b.to_string()).collect();
        human.push(format!("exhausted bounds: {}", names.join(", ")));
    }
    if let Verdict::Yes(w) = &rep.verdict {
        witness_lines(&p.net, w, &mut human);
    }
    if let Some(r) = &replay {
        replay_lines(r, &mut human);
    }
    let code = match rep.verdict {
        Verdict::Yes(_) => 0,
        Verdict::No => 1,
        Verdict::Unknown(_) => 2,
    };
    Ok(Output { code, json: threshold_json(&p.net, &rep, replay.as_ref()), human })
}

fn optimize(file: &FileSettings, q: &QueryArgs) -> Result<Output, CliError> {
    let p = prepare(file, q)?;
    let rep = cost_optimal(&p.net, p.p_init, p.p_fin, &p.bounds);
    let replay = rep.witness.as_ref().map(|w| certify(&p.net, w, &p.delta)).transpose()?;
    let (line, code) = match rep.result {
        OptResult::Infinite => ("unreachable (∞)".to_string(), 0),
        OptResult::Value(n, Exactness::Exact) => (format!("optimal = {n} (exact)"), 0),
        OptResult::Value(n, Exactness::UpperBound) => (format!("optimal <= {n} (upper bound)"), 2),
        OptResult::Unknown => ("unknown (search bounds exhausted)".to_string(), 2),
    };
    let mut human = vec![line];
    for (v, verdict) in &rep.verdicts {
        human.push(format!("  threshold {v}: {}", verdict.name()));
    }
    if let Some(w) = &rep.witness {
        witness_lines(&p.net, w, &mut human);
    }
    if let Some(r) = &replay {
        replay_lines(r, &mut human);
    }
    Ok(Output { code, json: optimal_json(&p.net, &rep, replay.as_ref()), human })
}
