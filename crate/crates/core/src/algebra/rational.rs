//! Exact rational scalars: the ground field for all algebraic checks.
//!
//! `Rational` is `Ratio<BigInt>`, which keeps every value in canonical form
//! (reduced, positive denominator) after each operation. Parsing and
//! formatting use the shared wire format: a decimal integer or `"p/q"`.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};

pub type Rational = num_rational::Ratio<BigInt>;

pub fn rat_i64(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p"` or `"p/q"`. A zero denominator is rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), Some(q.trim())),
        None => (s, None),
    };
    let p: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad integer `{num}`")))?;
    let q: BigInt = match den {
        Some(q) => q
            .parse()
            .map_err(|_| Error::Parse(format!("bad integer `{q}`")))?,
        None => BigInt::from(1),
    };
    if q.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rational::new(p, q))
}

/// Canonical string form: bare integer when the denominator is 1, else `p/q`.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Exact conversion: every finite `f64` is a rational with a power-of-two
/// denominator.
pub fn rational_from_f64(v: f64) -> Result<Rational> {
    Rational::from_float(v).ok_or_else(|| Error::InvalidInput(format!("non-finite float {v}")))
}

/// Rounded conversion for reporting and float-mode evaluation.
pub fn rational_to_f64(r: &Rational) -> f64 {
    // Scale into f64 range by splitting off an exponent when the parts
    // are too large for a direct conversion.
    let n = r.numer();
    let d = r.denom();
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    if nb < 1000 && db < 1000 {
        let nf = bigint_to_f64(n);
        let df = bigint_to_f64(d);
        nf / df
    } else {
        let shift = (nb.max(db) - 512).max(0) as u64;
        let nf = bigint_to_f64(&(n >> shift));
        let df = bigint_to_f64(&(d >> shift));
        nf / df
    }
}

fn bigint_to_f64(v: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    v.to_f64().unwrap_or_else(|| {
        if v.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

use num_traits::Zero;
