//! Line-oriented text format for nets.
//!
//! ```text
//! place red cost 1
//! transition t1 cost 0
//!   in  red (1,2)
//!   out blue [0,1)
//! ```

use std::fmt::Write as _;

use crate::interval::{Interval, IntervalError};
use crate::net::{Arc, NetError, Place, Ptpn, Transition};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("E001 syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("E002 unknown place `{name}` at line {line}")]
    UnknownPlace { line: usize, name: String },
    #[error("E003 duplicate name `{name}` at line {line}")]
    DuplicateName { line: usize, name: String },
    #[error("E004 empty interval `{text}` at line {line}")]
    EmptyInterval { line: usize, text: String },
    #[error("E005 net declares no places")]
    NoPlaces,
}

impl ParseError {
    /// Stable diagnostic code.
    pub fn code(&self) -> &'static str {
        match self {
            ParseError::Syntax { .. } => "E001",
            ParseError::UnknownPlace { .. } => "E002",
            ParseError::DuplicateName { .. } => "E003",
            ParseError::EmptyInterval { .. } => "E004",
            ParseError::NoPlaces => "E005",
        }
    }
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, col, msg: msg.into() }
}

/// Parses interval text such as `[1,3)` or `(1, inf)`.
pub fn parse_interval(text: &str) -> Result<Interval, IntervalParseError> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let lo_closed = match t.chars().next() {
        Some('[') => true,
        Some('(') => false,
        _ => return Err(IntervalParseError::Syntax),
    };
    let hi_closed = match t.chars().last() {
        Some(']') => true,
        Some(')') => false,
        _ => return Err(IntervalParseError::Syntax),
    };
    if t.len() < 2 {
        return Err(IntervalParseError::Syntax);
    }
    let inner = &t[1..t.len() - 1];
    let (a, b) = inner.split_once(',').ok_or(IntervalParseError::Syntax)?;
    let lo: u64 = a.parse().map_err(|_| IntervalParseError::Syntax)?;
    let hi = if b == "inf" { None } else { Some(b.parse::<u64>().map_err(|_| IntervalParseError::Syntax)?) };
    Interval::new(lo, lo_closed, hi, hi_closed).map_err(|e| match e {
        IntervalError::Empty => IntervalParseError::Empty,
        IntervalError::ClosedInfinity => IntervalParseError::Syntax,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntervalParseError {
    Syntax,
    Empty,
}

struct PendingArc {
    line: usize,
    place: String,
    interval: Interval,
    output: bool,
}

/// Parses the net text format.
pub fn parse_net(text: &str) -> Result<Ptpn, ParseError> {
    let mut places: Vec<(usize, Place)> = Vec::new();
    let mut transitions: Vec<(usize, Transition, Vec<PendingArc>)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        // Word tokens with their 1-based columns.
        let mut words: Vec<(usize, &str)> = Vec::new();
        let mut start = None;
        for (i, c) in content.char_indices() {
            match (c.is_whitespace(), start) {
                (false, None) => start = Some(i),
                (true, Some(s)) => {
                    words.push((s + 1, &content[s..i]));
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(s) = start {
            words.push((s + 1, &content[s..]));
        }
        let (col0, kw) = words[0];
        match kw {
            "place" | "transition" => {
                if words.len() != 4 {
                    let col = words.get(4).map(|w| w.0).unwrap_or(content.len() + 1);
                    return Err(syntax(line, col, format!("expected `{kw} <name> cost <nat>`")));
                }
                let (ncol, name) = words[1];
                if !is_name(name) {
                    return Err(syntax(line, ncol, format!("invalid name `{name}`")));
                }
                if words[2].1 != "cost" {
                    return Err(syntax(line, words[2].0, "expected `cost`"));
                }
                let cost: u64 = words[3]
                    .1
                    .parse()
                    .map_err(|_| syntax(line, words[3].0, format!("invalid cost `{}`", words[3].1)))?;
                let clash =
                    places.iter().any(|(_, p)| p.name == name) || transitions.iter().any(|(_, t, _)| t.name == name);
                if clash {
                    return Err(ParseError::DuplicateName { line, name: name.to_string() });
                }
                if kw == "place" {
                    let id = places.len();
                    places.push((line, Place { id, name: name.to_string(), cost }));
                } else {
                    let id = transitions.len();
                    let t = Transition { id, name: name.to_string(), cost, inputs: vec![], outputs: vec![] };
                    transitions.push((line, t, vec![]));
                }
            }
            "in" | "out" => {
                let Some(current) = transitions.last_mut() else {
                    return Err(syntax(line, col0, "arc outside of a transition"));
                };
                if words.len() < 3 {
                    return Err(syntax(line, content.len() + 1, "expected `<place> <interval>`"));
                }
                let (pcol, place) = words[1];
                if !is_name(place) {
                    return Err(syntax(line, pcol, format!("invalid place name `{place}`")));
                }
                let icol = words[2].0;
                let itext = content[icol - 1..].trim();
                let interval = parse_interval(itext).map_err(|e| match e {
                    IntervalParseError::Syntax => syntax(line, icol, format!("invalid interval `{itext}`")),
                    IntervalParseError::Empty => ParseError::EmptyInterval { line, text: itext.to_string() },
                })?;
                current.2.push(PendingArc { line, place: place.to_string(), interval, output: kw == "out" });
            }
            other => return Err(syntax(line, col0, format!("unknown keyword `{other}`"))),
        }
    }

    if places.is_empty() {
        return Err(ParseError::NoPlaces);
    }
    let mut ts = Vec::with_capacity(transitions.len());
    for (_, mut t, arcs) in transitions {
        for a in arcs {
            let Some(pid) = places.iter().position(|(_, p)| p.name == a.place) else {
                return Err(ParseError::UnknownPlace { line: a.line, name: a.place });
            };
            let arc = Arc { place: pid, interval: a.interval };
            if a.output {
                t.outputs.push(arc);
            } else {
                t.inputs.push(arc);
            }
        }
        ts.push(t);
    }
    Ptpn::new(places.into_iter().map(|(_, p)| p).collect(), ts).map_err(|e| match e {
        NetError::NoPlaces => ParseError::NoPlaces,
        NetError::DuplicateName(name) => ParseError::DuplicateName { line: 0, name },
        NetError::UnknownPlace { place, .. } => ParseError::UnknownPlace { line: 0, name: place.to_string() },
    })
}

/// Canonical text form; `parse_net` inverts it.
pub fn serialize_net(net: &Ptpn) -> String {
    let mut out = String::new();
    for p in &net.places {
        let _ = writeln!(out, "place {} cost {}", p.name, p.cost);
    }
    for t in &net.transitions {
        let _ = writeln!(out, "transition {} cost {}", t.name, t.cost);
        for a in &t.inputs {
            let _ = writeln!(out, "  in {} {}", net.place_name(a.place), a.interval);
        }
        for a in &t.outputs {
            let _ = writeln!(out, "  out {} {}", net.place_name(a.place), a.interval);
        }
    }
    out
}
