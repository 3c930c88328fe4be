use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact_algebra::{series_to_json, HalfInteger, TruncatedSeries};

use super::{l_factor, local_integral_with_height, omega_l_factor, zeta_gj_with_ledger, SatakeParams, TorusSummandLedger};

/// A torus sum that matched its closed form to `order`.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityReport {
    pub identity: String,
    pub n: usize,
    pub q: u64,
    pub order: usize,
    pub torus_sum: TruncatedSeries,
    pub closed_form: TruncatedSeries,
    pub ledger: TorusSummandLedger,
}

impl IdentityReport {
    pub fn to_json(&self) -> Value {
        json!({
            "identity": self.identity,
            "n": self.n,
            "q": self.q,
            "order": self.order,
            "passed": true,
            "torus_sum": series_to_json(&self.torus_sum),
            "closed_form": series_to_json(&self.closed_form),
            "ledger": self.ledger.to_json(),
        })
    }
}

fn mismatch_error(identity: &str, degree: usize, expected: &TruncatedSeries, actual: &TruncatedSeries) -> Error {
    Error::IdentityFailed {
        identity: identity.to_string(),
        degree,
        expected: expected.coeff(degree).to_string(),
        actual: actual.coeff(degree).to_string(),
    }
}

/// Checks that the Godement–Jacquet torus sum at spherical data equals
/// `L(s, π) = Π (1 - α_i X)^{-1}` modulo `X^{order+1}`.
pub fn verify_gj_identity(params: &SatakeParams, order: usize) -> Result<IdentityReport> {
    let (torus_sum, ledger) = zeta_gj_with_ledger(params, order)?;
    let closed_form = l_factor(params, 1, HalfInteger::ZERO)?.expand(order)?;
    if let Some(k) = torus_sum.first_mismatch(&closed_form) {
        return Err(mismatch_error("gj", k, &closed_form, &torus_sum));
    }
    Ok(IdentityReport {
        identity: "gj".into(),
        n: params.n(),
        q: params.q(),
        order,
        torus_sum,
        closed_form,
        ledger,
    })
}

/// One candidate closed form for the local integral.
#[derive(Clone, Debug, PartialEq)]
pub struct VariantOutcome {
    pub label: String,
    pub formula: String,
    pub closed_form: TruncatedSeries,
    /// First degree where the closed form and the torus sum differ.
    pub first_mismatch: Option<usize>,
}

impl VariantOutcome {
    pub fn matches(&self) -> bool {
        self.first_mismatch.is_none()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "variant": self.label,
            "formula": self.formula,
            "matches": self.matches(),
            "first_mismatch": self.first_mismatch,
            "closed_form": series_to_json(&self.closed_form),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LocalIdentityReport {
    pub m: usize,
    pub n: usize,
    pub q: u64,
    pub order: usize,
    pub torus_sum: TruncatedSeries,
    /// `L(m(s+1/2) - (n-1)/2, π) / L(mn(s+1/2), ω)`.
    pub variant_a: VariantOutcome,
    /// `L(m(s+1/2) - (n-1)/2, π) / L(m(s+1/2), ω)`.
    pub variant_b: VariantOutcome,
    pub ledger: TorusSummandLedger,
}

impl LocalIdentityReport {
    pub fn matching_variants(&self) -> Vec<&str> {
        [&self.variant_a, &self.variant_b]
            .into_iter()
            .filter(|v| v.matches())
            .map(|v| v.label.as_str())
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "identity": "local",
            "m": self.m,
            "n": self.n,
            "q": self.q,
            "order": self.order,
            "passed": self.variant_a.matches() || self.variant_b.matches(),
            "matching_variants": self.matching_variants(),
            "torus_sum": series_to_json(&self.torus_sum),
            "variants": [self.variant_a.to_json(), self.variant_b.to_json()],
            "ledger": self.ledger.to_json(),
        })
    }
}

/// Compares the local torus sum with both candidate closed forms.
///
/// Fails only when neither candidate matches.
pub fn verify_local_identity(m: usize, params: &SatakeParams, order: usize) -> Result<LocalIdentityReport> {
    let n = params.n();
    let ledger = local_integral_with_height(m, params, order, order.div_ceil(m.max(1)) as u32)?;
    let torus_sum = ledger.replay();
    let omega = params.central_character();
    // L(m(s+1/2) - (n-1)/2, π) has a = m, b = (m - n + 1)/2
    let numerator = l_factor(params, m, HalfInteger::from_twice(m as i64 - n as i64 + 1))?;
    let outcome = |label: &str, formula: &str, a: usize| -> Result<VariantOutcome> {
        let denominator = omega_l_factor(&omega, a, HalfInteger::from_twice(a as i64))?;
        let closed_form = numerator.mul(&denominator.recip()?).expand(order)?;
        Ok(VariantOutcome {
            label: label.into(),
            formula: formula.into(),
            first_mismatch: torus_sum.first_mismatch(&closed_form),
            closed_form,
        })
    };
    let variant_a = outcome("A", "L(m(s+1/2)-(n-1)/2, pi) / L(mn(s+1/2), omega)", m * n)?;
    let variant_b = outcome("B", "L(m(s+1/2)-(n-1)/2, pi) / L(m(s+1/2), omega)", m)?;
    if let (Some(ka), Some(_)) = (variant_a.first_mismatch, variant_b.first_mismatch) {
        return Err(mismatch_error("local", ka, &variant_a.closed_form, &torus_sum));
    }
    Ok(LocalIdentityReport { m, n, q: params.q(), order, torus_sum, variant_a, variant_b, ledger })
}
