use std::fmt;

use ptpn_core::rat::{fmt_rat, is_nonneg, parse_rat};
use ptpn_core::{PlaceId, Ptpn, Rat};

/// A finite multiset of `(place, age)` tokens, kept sorted so equality is multiset equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Marking {
    tokens: Vec<(PlaceId, Rat)>,
}

impl Marking {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_tokens(mut tokens: Vec<(PlaceId, Rat)>) -> Self {
        tokens.sort();
        Marking { tokens }
    }

    /// One token of age 0 in `p`.
    pub fn initial(p: PlaceId) -> Self {
        Marking { tokens: vec![(p, Rat::from_integer(0.into()))] }
    }

    pub fn tokens(&self) -> &[(PlaceId, Rat)] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn count(&self, p: PlaceId) -> usize {
        self.tokens.iter().filter(|(q, _)| *q == p).count()
    }

    pub fn contains_place(&self, p: PlaceId) -> bool {
        self.tokens.iter().any(|(q, _)| *q == p)
    }

    pub fn add(&mut self, p: PlaceId, age: Rat) {
        let pos = self.tokens.partition_point(|t| *t < (p, age.clone()));
        self.tokens.insert(pos, (p, age));
    }

    /// Removes one occurrence; false when absent.
    pub fn remove(&mut self, p: PlaceId, age: &Rat) -> bool {
        match self.tokens.iter().position(|(q, a)| *q == p && a == age) {
            Some(i) => {
                self.tokens.remove(i);
                true
            }
            None => false,
        }
    }

    /// Multiset inclusion.
    pub fn includes(&self, sub: &[(PlaceId, Rat)]) -> bool {
        let mut rest = self.clone();
        sub.iter().all(|(p, a)| rest.remove(*p, a))
    }

    /// Every age shifted by `d`.
    pub fn shifted(&self, d: &Rat) -> Marking {
        Marking { tokens: self.tokens.iter().map(|(p, a)| (*p, a + d)).collect() }
    }

    pub fn display<'a>(&'a self, net: &'a Ptpn) -> MarkingDisplay<'a> {
        MarkingDisplay { net, marking: self }
    }
}

pub struct MarkingDisplay<'a> {
    net: &'a Ptpn,
    marking: &'a Marking,
}

impl fmt::Display for MarkingDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (p, a)) in self.marking.tokens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:{}", self.net.place_name(*p), fmt_rat(a))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LiteralError {
    #[error("malformed token `{0}`, expected `place:age`")]
    Malformed(String),
    #[error("unknown place `{0}`")]
    UnknownPlace(String),
    #[error("invalid age `{0}`")]
    BadAge(String),
}

/// Parses one `place:age` token.
pub fn parse_token(net: &Ptpn, text: &str) -> Result<(PlaceId, Rat), LiteralError> {
    let (p, a) = text.trim().split_once(':').ok_or_else(|| LiteralError::Malformed(text.trim().to_string()))?;
    let pid = net.place_id(p.trim()).ok_or_else(|| LiteralError::UnknownPlace(p.trim().to_string()))?;
    let age = parse_rat(a).filter(is_nonneg).ok_or_else(|| LiteralError::BadAge(a.trim().to_string()))?;
    Ok((pid, age))
}

/// Parses `red:0, blue:7/2`; the empty string is the empty marking.
pub fn parse_marking(net: &Ptpn, text: &str) -> Result<Marking, LiteralError> {
    let text = text.trim().trim_start_matches('{').trim_end_matches('}');
    let tokens =
        text.split(',').filter(|s| !s.trim().is_empty()).map(|s| parse_token(net, s)).collect::<Result<Vec<_>, _>>()?;
    Ok(Marking::from_tokens(tokens))
}

/// Inverse of [`parse_marking`].
pub fn format_marking(net: &Ptpn, m: &Marking) -> String {
    m.display(net).to_string()
}
