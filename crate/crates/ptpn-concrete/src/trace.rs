//! JSON Lines computation traces.

use ptpn_core::rat::{fmt_rat, parse_rat};
use ptpn_core::{PlaceId, Ptpn, Rat};
use serde_json::{json, Value};

use crate::marking::{parse_token, LiteralError};
use crate::semantics::Step;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TraceError {
    #[error("line {line}: invalid JSON: {msg}")]
    Json { line: usize, msg: String },
    #[error("line {line}: {msg}")]
    Shape { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Token { line: usize, source: LiteralError },
}

fn tokens(net: &Ptpn, v: Option<&Value>, line: usize, key: &str) -> Result<Vec<(PlaceId, Rat)>, TraceError> {
    let Some(v) = v else {
        return Ok(Vec::new());
    };
    let arr = v.as_array().ok_or_else(|| TraceError::Shape { line, msg: format!("`{key}` must be an array") })?;
    arr.iter()
        .map(|t| {
            let s = t
                .as_str()
                .ok_or_else(|| TraceError::Shape { line, msg: format!("`{key}` entries must be strings") })?;
            parse_token(net, s).map_err(|source| TraceError::Token { line, source })
        })
        .collect()
}

/// Parses one step object.
pub fn parse_step(net: &Ptpn, v: &Value, line: usize) -> Result<Step, TraceError> {
    if let Some(d) = v.get("delay") {
        let text = match d {
            Value::String(s) => s.clone(),
            Value::Number(n) => n.to_string(),
            _ => return Err(TraceError::Shape { line, msg: "`delay` must be a rational string".into() }),
        };
        let d = parse_rat(&text).ok_or_else(|| TraceError::Shape { line, msg: format!("bad delay `{text}`") })?;
        return Ok(Step::Delay(d));
    }
    if let Some(t) = v.get("fire") {
        let name = t.as_str().ok_or_else(|| TraceError::Shape { line, msg: "`fire` must be a string".into() })?;
        let transition = net
            .transition_id(name)
            .ok_or_else(|| TraceError::Shape { line, msg: format!("unknown transition `{name}`") })?;
        let consumed = tokens(net, v.get("consume"), line, "consume")?;
        let produced = tokens(net, v.get("produce"), line, "produce")?;
        return Ok(Step::Fire { transition, consumed, produced });
    }
    Err(TraceError::Shape { line, msg: "expected a `delay` or `fire` object".into() })
}

/// Parses a JSONL trace; blank lines are skipped.
pub fn parse_trace(net: &Ptpn, text: &str) -> Result<Vec<Step>, TraceError> {
    let mut out = Vec::new();
    for (i, l) in text.lines().enumerate() {
        if l.trim().is_empty() {
            continue;
        }
        let v: Value = serde_json::from_str(l).map_err(|e| TraceError::Json { line: i + 1, msg: e.to_string() })?;
        out.push(parse_step(net, &v, i + 1)?);
    }
    Ok(out)
}

pub fn step_to_json(net: &Ptpn, s: &Step) -> Value {
    let toks = |ts: &[(PlaceId, Rat)]| -> Vec<String> {
        ts.iter().map(|(p, a)| format!("{}:{}", net.place_name(*p), fmt_rat(a))).collect()
    };
    match s {
        Step::Delay(d) => json!({ "delay": fmt_rat(d) }),
        Step::Fire { transition, consumed, produced } => json!({
            "fire": net.transition_name(*transition),
            "consume": toks(consumed),
            "produce": toks(produced),
        }),
    }
}

/// One JSON object per line.
pub fn serialize_trace(net: &Ptpn, steps: &[Step]) -> String {
    steps.iter().map(|s| step_to_json(net, s).to_string() + "\n").collect()
}
