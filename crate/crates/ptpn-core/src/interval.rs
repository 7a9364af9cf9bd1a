use std::fmt;

use crate::rat::{int, Rat};

/// An age interval with natural endpoints; `hi == None` stands for infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub lo: u64,
    pub lo_closed: bool,
    pub hi: Option<u64>,
    pub hi_closed: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum IntervalError {
    #[error("interval is empty")]
    Empty,
    #[error("an infinite upper bound cannot be closed")]
    ClosedInfinity,
}

impl Interval {
    pub fn new(lo: u64, lo_closed: bool, hi: Option<u64>, hi_closed: bool) -> Result<Self, IntervalError> {
        match hi {
            None if hi_closed => return Err(IntervalError::ClosedInfinity),
            Some(h) if lo > h || (lo == h && !(lo_closed && hi_closed)) => return Err(IntervalError::Empty),
            _ => {}
        }
        Ok(Interval { lo, lo_closed, hi, hi_closed })
    }

    /// `[lo, hi]`
    pub fn closed(lo: u64, hi: u64) -> Self {
        Self::new(lo, true, Some(hi), true).expect("nonempty")
    }

    /// `(lo, hi)`
    pub fn open(lo: u64, hi: u64) -> Self {
        Self::new(lo, false, Some(hi), false).expect("nonempty")
    }

    /// `[lo, hi)`
    pub fn closed_open(lo: u64, hi: u64) -> Self {
        Self::new(lo, true, Some(hi), false).expect("nonempty")
    }

    /// `(lo, hi]`
    pub fn open_closed(lo: u64, hi: u64) -> Self {
        Self::new(lo, false, Some(hi), true).expect("nonempty")
    }

    /// `[lo, inf)` or `(lo, inf)`.
    pub fn unbounded(lo: u64, lo_closed: bool) -> Self {
        Self::new(lo, lo_closed, None, false).expect("nonempty")
    }

    pub fn is_unbounded(&self) -> bool {
        self.hi.is_none()
    }

    /// Largest finite endpoint.
    pub fn max_finite(&self) -> u64 {
        self.hi.unwrap_or(self.lo).max(self.lo)
    }

    pub fn contains(&self, age: &Rat) -> bool {
        let lo = int(self.lo as i64);
        let lower = if self.lo_closed { *age >= lo } else { *age > lo };
        let upper = match self.hi {
            None => true,
            Some(h) => {
                let h = int(h as i64);
                if self.hi_closed {
                    *age <= h
                } else {
                    *age < h
                }
            }
        };
        lower && upper
    }
}

/// Membership test with open/closed endpoints respected.
pub fn interval_contains(i: &Interval, age: &Rat) -> bool {
    i.contains(age)
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.lo_closed { '[' } else { '(' };
        let close = if self.hi_closed { ']' } else { ')' };
        match self.hi {
            Some(h) => write!(f, "{open}{},{h}{close}", self.lo),
            None => write!(f, "{open}{},inf{close}", self.lo),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{parse_rat, ratio};

    #[test]
    fn membership_examples() {
        assert!(Interval::closed_open(1, 3).contains(&int(2)));
        assert!(!Interval::open(1, 2).contains(&int(1)));
        let big = parse_rat("1000000001/1").unwrap() + ratio(1, 3);
        assert!(Interval::unbounded(1, false).contains(&big));
    }

    #[test]
    fn rejects_empty() {
        assert_eq!(Interval::new(3, true, Some(3), false), Err(IntervalError::Empty));
        assert_eq!(Interval::new(4, true, Some(3), true), Err(IntervalError::Empty));
        assert_eq!(Interval::new(0, true, None, true), Err(IntervalError::ClosedInfinity));
        assert!(Interval::new(3, true, Some(3), true).is_ok());
    }

    #[test]
    fn displays_canonically() {
        assert_eq!(Interval::open(1, 2).to_string(), "(1,2)");
        assert_eq!(Interval::unbounded(1, false).to_string(), "(1,inf)");
        assert_eq!(Interval::closed(3, 4).to_string(), "[3,4]");
    }
}
