//! Exact rational scalars and their canonical text form.
//!
//! All region geometry and exact-mode simulation runs on [`Rat`]
//! (arbitrary-precision rationals), so every computed vertex, bound, and
//! decoded symbol is exact. Rationals cross the CLI/JSON boundary as the
//! strings `"p"` (integers) and `"p/q"` (reduced, `q > 0`).

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, ToPrimitive};
use thiserror::Error;

/// Arbitrary-precision rational number, always kept in reduced form with a
/// positive denominator.
pub type Rat = BigRational;

/// Builds the rational `n`.
pub fn rat_int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Builds the rational `n / d` exactly.
///
/// Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Formats a rational as `p` when integral and `p/q` otherwise.
///
/// The output is canonical: reduced, `q > 0`, and any sign on `p`.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Error returned by [`parse_rat`] for malformed literals.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("invalid rational literal `{input}` (expected `p` or `p/q` with q != 0)")]
pub struct RationalParseError {
    /// The rejected input.
    pub input: String,
}

/// Parses the `p` / `p/q` form produced by [`format_rat`].
///
/// Accepts unreduced input and a sign on either part; the result is reduced
/// with a positive denominator. A zero denominator is rejected.
pub fn parse_rat(s: &str) -> Result<Rat, RationalParseError> {
    let bad = || RationalParseError {
        input: s.to_string(),
    };
    let s = s.trim();
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let numer: BigInt = num_str.parse().map_err(|_| bad())?;
    let denom: BigInt = match den_str {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if denom == BigInt::from(0) {
        return Err(bad());
    }
    Ok(BigRational::new(numer, denom))
}

/// Converts a rational to the nearest `f64` (used only for plotting and
/// float-mode tolerances, never for exact decisions).
pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}
