//! Exact rational helpers shared by every layer of the toolkit.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact nonnegative-or-signed rational used for ages, delays and costs.
pub type Rat = BigRational;

/// Builds `n/1`.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Builds `n/d`; panics when `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Integer part (floor).
pub fn floor(r: &Rat) -> BigInt {
    r.numer().div_floor(r.denom())
}

/// Fractional part in `[0, 1)`.
pub fn frac(r: &Rat) -> Rat {
    r - Rat::from_integer(floor(r))
}

/// Parses `p/q`, a decimal such as `3.25`, or a plain integer.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(Rat::new(p, q));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (ip, fp) = match body.split_once('.') {
        Some((a, b)) => (a, b),
        None => (body, ""),
    };
    if ip.is_empty() && fp.is_empty() {
        return None;
    }
    if !ip.chars().all(|c| c.is_ascii_digit()) || !fp.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{}{}", if ip.is_empty() { "0" } else { ip }, fp);
    let numer: BigInt = digits.parse().ok()?;
    let denom = num_traits::pow(BigInt::from(10), fp.len());
    let r = Rat::new(numer, denom);
    Some(if neg { -r } else { r })
}

/// Canonical exact text: `p/q`, or `n` for integers.
pub fn fmt_rat(r: &Rat) -> String {
    r.to_string()
}

/// Lossy decimal rendering for human-readable output.
pub fn to_f64(r: &Rat) -> f64 {
    let n: f64 = r.numer().to_string().parse().unwrap_or(f64::NAN);
    let d: f64 = r.denom().to_string().parse().unwrap_or(f64::NAN);
    n / d
}

/// True when `0 <= r`.
pub fn is_nonneg(r: &Rat) -> bool {
    !r.is_negative()
}

/// True when `r` is an integer.
pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}
