//! Exact rationals and their text renderings.
//!
//! Every quantity derived from an integer Laplacian is rational, so the whole
//! crate works over [`Rat`]. Values are kept in lowest terms with a positive
//! denominator.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = num_rational::BigRational;

/// Builds `p / 1`.
pub fn int(p: i64) -> Rat {
    Rat::from_integer(BigInt::from(p))
}

/// Builds `p / q`, reduced.
///
/// Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Renders `p/q`, or `p` when the denominator is one.
pub fn to_exact_string(r: &Rat) -> String {
    r.to_string()
}

/// Parses `p/q` or `p`.
pub fn parse_exact(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse {
        line: None,
        msg: format!("invalid rational {s:?}"),
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Fixed-point decimal rendering with `places` digits after the point,
/// rounding half to even. A value that rounds to zero prints without a sign.
pub fn to_decimal(r: &Rat, places: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), places);
    let scaled = r.abs() * Rat::from_integer(scale.clone());
    let (q, rem) = scaled.numer().div_rem(scaled.denom());
    let twice: BigInt = &rem * BigInt::from(2);
    let rounded = match twice.cmp(scaled.denom()) {
        std::cmp::Ordering::Less => q,
        std::cmp::Ordering::Greater => q + 1,
        std::cmp::Ordering::Equal => {
            if q.is_even() {
                q
            } else {
                q + 1
            }
        }
    };
    let negative = r.is_negative() && !rounded.is_zero();
    let (whole, frac) = rounded.div_rem(&scale);
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    out.push_str(&whole.to_string());
    if places > 0 {
        out.push('.');
        out.push_str(&format!("{:0>width$}", frac.to_string(), width = places));
    }
    out
}

/// Exact `10^-places`-grid value nearest to `r` (ties to even); used when
/// comparing against tabulated decimals.
pub fn round_to_places(r: &Rat, places: usize) -> Rat {
    let text = to_decimal(r, places);
    parse_decimal(&text).expect("to_decimal produces a parsable decimal")
}

/// Parses a plain decimal literal such as `-0.0625` into an exact rational.
pub fn parse_decimal(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse {
        line: None,
        msg: format!("invalid decimal {s:?}"),
    };
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole
        .chars()
        .chain(frac.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits: BigInt = format!("{whole}{frac}").parse().map_err(|_| bad())?;
    let scale = num_traits::pow(BigInt::from(10), frac.len());
    let v = Rat::new(digits, scale);
    Ok(if negative { -v } else { v })
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Lossy conversion for summaries and plotting; never used in checks.
pub fn to_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}
