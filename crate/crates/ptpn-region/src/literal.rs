//! Text and JSON forms of regions.

use ptpn_core::Ptpn;
use serde_json::{json, Value};

use crate::region::{Multiset, RVal, Region, Token};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RegionLiteralError {
    #[error("malformed region literal: {0}")]
    Malformed(String),
    #[error("unknown place `{0}`")]
    UnknownPlace(String),
    #[error("value `{0}` is not in 0..=cmax or w")]
    BadValue(String),
    #[error("H and L may not contain empty multisets")]
    EmptyMultiset,
}

fn parse_token(net: &Ptpn, s: &str) -> Result<Token, RegionLiteralError> {
    let (p, v) = s.split_once(':').ok_or_else(|| RegionLiteralError::Malformed(s.to_string()))?;
    let pid = net.place_id(p.trim()).ok_or_else(|| RegionLiteralError::UnknownPlace(p.trim().to_string()))?;
    Ok((pid, parse_value(net, v.trim())?))
}

fn parse_value(net: &Ptpn, v: &str) -> Result<RVal, RegionLiteralError> {
    match v {
        "w" | "ω" | "omega" => Ok(RVal::Omega),
        _ => match v.parse::<u64>() {
            Ok(k) if k <= net.cmax() => Ok(RVal::Fin(k)),
            _ => Err(RegionLiteralError::BadValue(v.to_string())),
        },
    }
}

fn parse_multiset(net: &Ptpn, s: &str) -> Result<Multiset, RegionLiteralError> {
    let inner = s
        .trim()
        .strip_prefix('{')
        .and_then(|x| x.strip_suffix('}'))
        .ok_or_else(|| RegionLiteralError::Malformed(s.trim().to_string()))?;
    let toks = inner
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| parse_token(net, t.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Multiset::from_tokens(toks))
}

fn parse_word(net: &Ptpn, s: &str) -> Result<Vec<Multiset>, RegionLiteralError> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|x| x.strip_suffix(']'))
        .ok_or_else(|| RegionLiteralError::Malformed(s.trim().to_string()))?;
    let mut out = Vec::new();
    let mut rest = inner.trim();
    while !rest.is_empty() {
        let end = rest.find('}').ok_or_else(|| RegionLiteralError::Malformed(rest.to_string()))?;
        let m = parse_multiset(net, &rest[..=end])?;
        if m.is_empty() {
            return Err(RegionLiteralError::EmptyMultiset);
        }
        out.push(m);
        rest = rest[end + 1..].trim_start_matches(|c: char| c.is_whitespace() || c == ',');
    }
    Ok(out)
}

/// Parses `H: [{red:6, green:4} {blue:0}] | Z: {blue:1} | L: [{green:w}]`.
pub fn parse_region(net: &Ptpn, text: &str) -> Result<Region, RegionLiteralError> {
    let parts: Vec<&str> = text.split('|').collect();
    if parts.len() != 3 {
        return Err(RegionLiteralError::Malformed(text.to_string()));
    }
    let body = |s: &str, label: &str| -> Result<String, RegionLiteralError> {
        s.trim()
            .strip_prefix(label)
            .map(|x| x.trim_start().trim_start_matches(':').to_string())
            .ok_or_else(|| RegionLiteralError::Malformed(format!("expected `{label}:` in `{}`", s.trim())))
    };
    let high = parse_word(net, &body(parts[0], "H")?)?;
    let zero = parse_multiset(net, &body(parts[1], "Z")?)?;
    let low = parse_word(net, &body(parts[2], "L")?)?;
    Ok(Region { high, zero, low })
}

/// Canonical literal, e.g. `H:[] | Z:{red:0} | L:[]`.
pub fn format_region(net: &Ptpn, r: &Region) -> String {
    r.display(net).to_string()
}

fn ms_json(net: &Ptpn, m: &Multiset) -> Value {
    Value::Array(
        m.iter()
            .map(|(p, v)| {
                let val = match v {
                    RVal::Fin(k) => json!(k),
                    RVal::Omega => json!("w"),
                };
                json!({ "place": net.place_name(*p), "value": val })
            })
            .collect(),
    )
}

pub fn region_to_json(net: &Ptpn, r: &Region) -> Value {
    json!({
        "H": r.high.iter().map(|m| ms_json(net, m)).collect::<Vec<_>>(),
        "Z": ms_json(net, &r.zero),
        "L": r.low.iter().map(|m| ms_json(net, m)).collect::<Vec<_>>(),
    })
}

fn ms_from_json(net: &Ptpn, v: &Value) -> Result<Multiset, RegionLiteralError> {
    let arr = v.as_array().ok_or_else(|| RegionLiteralError::Malformed(v.to_string()))?;
    let mut toks = Vec::new();
    for t in arr {
        let p = t.get("place").and_then(Value::as_str).ok_or_else(|| RegionLiteralError::Malformed(t.to_string()))?;
        let pid = net.place_id(p).ok_or_else(|| RegionLiteralError::UnknownPlace(p.to_string()))?;
        let val = match t.get("value") {
            Some(Value::String(s)) => parse_value(net, s)?,
            Some(Value::Number(n)) => parse_value(net, &n.to_string())?,
            _ => return Err(RegionLiteralError::Malformed(t.to_string())),
        };
        toks.push((pid, val));
    }
    Ok(Multiset::from_tokens(toks))
}

fn word_from_json(net: &Ptpn, v: Option<&Value>) -> Result<Vec<Multiset>, RegionLiteralError> {
    let arr = v.and_then(Value::as_array).ok_or_else(|| RegionLiteralError::Malformed("missing word".into()))?;
    let w = arr.iter().map(|m| ms_from_json(net, m)).collect::<Result<Vec<_>, _>>()?;
    if w.iter().any(Multiset::is_empty) {
        return Err(RegionLiteralError::EmptyMultiset);
    }
    Ok(w)
}

pub fn region_from_json(net: &Ptpn, v: &Value) -> Result<Region, RegionLiteralError> {
    Ok(Region {
        high: word_from_json(net, v.get("H"))?,
        zero: ms_from_json(net, v.get("Z").ok_or_else(|| RegionLiteralError::Malformed("missing Z".into()))?)?,
        low: word_from_json(net, v.get("L"))?,
    })
}
