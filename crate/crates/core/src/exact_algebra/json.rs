//! JSON encoding of exact scalars and series.
//!
//! A `QRoot` coefficient `a + b√q` is the array `[a_num, a_den, b_num, b_den]`.
//! Integers that fit in `i64` are written as JSON numbers, larger ones as
//! decimal strings; both forms are accepted on input.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

use super::{QRoot, Rational, TruncatedSeries};

fn int_to_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => Value::String(n.to_string()),
    }
}

fn int_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Parse(format!("not an integer: {n}"))),
        Value::String(s) => {
            BigInt::from_str(s).map_err(|e| Error::Parse(format!("bad integer {s:?}: {e}")))
        }
        other => Err(Error::Parse(format!("expected integer, got {other}"))),
    }
}

fn rational_from_parts(num: &Value, den: &Value) -> Result<Rational> {
    let d = int_from_json(den)?;
    if d.is_zero() {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(Rational::new(int_from_json(num)?, d))
}

/// Parses `"-3/7"`, `"5"` or `"-2"` into an exact rational.
pub fn rational_from_str(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))?;
    let den = BigInt::from_str(den).map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

pub fn qroot_to_json(x: &QRoot) -> Value {
    let a = x.rational_part();
    let b = x.sqrt_part();
    json!([
        int_to_json(a.numer()),
        int_to_json(a.denom()),
        int_to_json(b.numer()),
        int_to_json(b.denom())
    ])
}

pub fn qroot_from_json(v: &Value, q: u64) -> Result<QRoot> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 4)
        .ok_or_else(|| Error::Parse(format!("expected [a_num, a_den, b_num, b_den], got {v}")))?;
    let a = rational_from_parts(&arr[0], &arr[1])?;
    let b = rational_from_parts(&arr[2], &arr[3])?;
    Ok(QRoot::new(a, b, q))
}

/// `{"q": q, "order": N, "coeffs": [[a_num, a_den, b_num, b_den], ...]}`.
pub fn series_to_json(s: &TruncatedSeries) -> Value {
    json!({
        "q": s.q(),
        "order": s.order(),
        "coeffs": s.coeffs().iter().map(qroot_to_json).collect::<Vec<_>>(),
    })
}

pub fn series_from_json(v: &Value) -> Result<TruncatedSeries> {
    let q = v
        .get("q")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("series: missing q".into()))?;
    let coeffs = v
        .get("coeffs")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("series: missing coeffs".into()))?;
    if coeffs.is_empty() {
        return Err(Error::Parse("series: empty coeffs".into()));
    }
    let order = match v.get("order") {
        Some(o) => o
            .as_u64()
            .ok_or_else(|| Error::Parse("series: bad order".into()))? as usize,
        None => coeffs.len() - 1,
    };
    if order + 1 != coeffs.len() {
        return Err(Error::Parse(format!(
            "series: order {order} does not match {} coefficients",
            coeffs.len()
        )));
    }
    let parsed = coeffs
        .iter()
        .map(|c| qroot_from_json(c, q))
        .collect::<Result<Vec<_>>>()?;
    Ok(TruncatedSeries::new(parsed, q, order))
}
