use serde_json::Value;

use crate::error::{Error, Result};
use crate::exact_algebra::{rat, rational_from_str, Rational};

use super::ExactMatrix;

/// Rows of exact-rational strings, e.g. `[["1", "-3/7"], ["0", "2"]]`.
pub fn matrix_to_json(m: &ExactMatrix<Rational>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(|x| Value::String(x.to_string())).collect()))
            .collect(),
    )
}

/// Accepts strings or JSON integers as entries.
pub fn matrix_from_json(v: &Value) -> Result<ExactMatrix<Rational>> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Parse("matrix: expected an array of rows".into()))?;
    let parsed = rows
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| Error::Parse("matrix: row is not an array".into()))?
                .iter()
                .map(|x| match x {
                    Value::String(s) => rational_from_str(s),
                    Value::Number(n) => n
                        .as_i64()
                        .map(rat)
                        .ok_or_else(|| Error::Parse(format!("matrix: bad entry {n}"))),
                    other => Err(Error::Parse(format!("matrix: bad entry {other}"))),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if parsed.is_empty() {
        return Ok(ExactMatrix::zeros(0, 0, &rat(0)));
    }
    ExactMatrix::from_rows(parsed)
}
