use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact_algebra::{qroot_to_json, QRoot, TruncatedSeries};
use crate::padic::{enumerate_dominant, macdonald_measure, DominantCochar};

use super::{center_factor, section_value_on_torus, SatakeParams, SphericalKernel};

/// Cell, measure, spherical coefficient, degree, section coefficient.
type LedgerCell = (DominantCochar, QRoot, QRoot, usize, QRoot);

/// One Cartan cell's contribution `μ(t) · c(t) · coeff · X^degree`.
#[derive(Clone, Debug, PartialEq)]
pub struct LedgerRow {
    pub cell: DominantCochar,
    pub mu: QRoot,
    pub spherical: QRoot,
    pub degree: usize,
    /// `μ(t) c(t)` times the scalar part of the integrand's monomial.
    pub coefficient: QRoot,
    /// Running coefficient of `X^degree` after this row.
    pub partial_sum: QRoot,
}

/// The cells of a torus sum in lexicographic order.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusSummandLedger {
    pub q: u64,
    pub order: usize,
    pub height: u32,
    pub rows: Vec<LedgerRow>,
}

impl TorusSummandLedger {
    /// `Σ coefficient · X^degree`.
    pub fn replay(&self) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(self.q, self.order);
        for row in &self.rows {
            s.add_monomial(&row.coefficient, row.degree);
        }
        s
    }

    /// Columns `exps,mu_numerator,mu_denominator,spherical,degree,coefficient,partial_sum`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Parse(e.to_string());
        w.write_record(["exps", "mu_numerator", "mu_denominator", "spherical", "degree", "coefficient", "partial_sum"])
            .map_err(io)?;
        for row in &self.rows {
            let mu = row.mu.rational_part();
            w.write_record([
                row.cell.to_string(),
                mu.numer().to_string(),
                mu.denom().to_string(),
                row.spherical.to_string(),
                row.degree.to_string(),
                row.coefficient.to_string(),
                row.partial_sum.to_string(),
            ])
            .map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                json!({
                    "exps": r.cell.exps(),
                    "mu": qroot_to_json(&r.mu),
                    "spherical": qroot_to_json(&r.spherical),
                    "degree": r.degree,
                    "coefficient": qroot_to_json(&r.coefficient),
                    "partial_sum": qroot_to_json(&r.partial_sum),
                })
            })
            .collect();
        json!({ "q": self.q, "order": self.order, "height": self.height, "rows": rows })
    }
}

/// Sums `μ(t) c(t) · weight(t)` over dominant `t` with `r_1 ≤ height`,
/// where `weight(t) = (scalar, degree)`; cells beyond `order` are dropped.
fn torus_sum(
    params: &SatakeParams,
    order: usize,
    height: u32,
    weight: impl Fn(&DominantCochar) -> Result<(QRoot, usize)> + Sync,
) -> Result<TorusSummandLedger> {
    let kernel = SphericalKernel::new(params)?;
    let (n, q) = (params.n(), params.q());
    let cells = enumerate_dominant(n, height);
    let rows: Vec<Option<LedgerCell>> = cells
        .into_par_iter()
        .map(|t| {
            let (scalar, degree) = weight(&t)?;
            if degree > order {
                return Ok(None);
            }
            let mu = macdonald_measure(&t, n, q)?;
            let c = kernel.value(&t);
            let coefficient = mu.clone() * c.clone() * scalar;
            Ok(Some((t, mu, c, degree, coefficient)))
        })
        .collect::<Result<_>>()?;
    let mut running: BTreeMap<usize, QRoot> = BTreeMap::new();
    let rows = rows
        .into_iter()
        .flatten()
        .map(|(cell, mu, spherical, degree, coefficient)| {
            let slot = running.entry(degree).or_insert_with(|| QRoot::zero(q));
            *slot = slot.clone() + coefficient.clone();
            LedgerRow { cell, mu, spherical, degree, coefficient, partial_sum: slot.clone() }
        })
        .collect();
    Ok(TorusSummandLedger { q, order, height, rows })
}

/// `Z_GJ = Σ_t μ(t) F_{s,Φ₀}(t) c(t) |det t|^{s+(n-1)/2}`, split through the
/// center into the torus part times the center factor. Cells with `Σ r_i = d`
/// first appear at `X^d`, so height `order` is complete.
pub fn zeta_gj_with_ledger(params: &SatakeParams, order: usize) -> Result<(TruncatedSeries, TorusSummandLedger)> {
    let (n, q) = (params.n() as i64, params.q());
    let ledger = torus_sum(params, order, order as u32, |t| {
        let total = t.total();
        Ok((QRoot::q_pow_half(q, -total * (n - 1)), total as usize))
    })?;
    let center = center_factor(params.n(), &params.central_character(), order);
    Ok((ledger.replay().mul_trunc(&center), ledger))
}

pub fn zeta_gj_torus_sum(params: &SatakeParams, order: usize) -> Result<TruncatedSeries> {
    Ok(zeta_gj_with_ledger(params, order)?.0)
}

/// `Σ_t μ(t) c(t) |det t|^{ms + m/2}` with an explicit height cutoff.
pub fn local_integral_with_height(
    m: usize,
    params: &SatakeParams,
    order: usize,
    height: u32,
) -> Result<TorusSummandLedger> {
    let (n, q) = (params.n(), params.q());
    if n > m {
        return Err(Error::BadShape(format!("need n <= m, got (m, n) = ({m}, {n})")));
    }
    torus_sum(params, order, height, |t| {
        let mono = section_value_on_torus(m, n, t, q)?;
        Ok((mono.coeff, mono.degree))
    })
}

/// The local integral as a torus sum, complete to `X^order` with height
/// `ceil(order / m)`.
pub fn local_integral_torus_sum(m: usize, params: &SatakeParams, order: usize) -> Result<TruncatedSeries> {
    let height = order.div_ceil(m.max(1)) as u32;
    Ok(local_integral_with_height(m, params, order, height)?.replay())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::{rat, ratio, Rational, RingElem};

    fn params(alphas: &[Rational], q: u64) -> SatakeParams {
        SatakeParams::from_rationals(alphas, q).unwrap()
    }

    #[test]
    fn gj_n1_is_geometric() {
        let p = params(&[ratio(-2, 3)], 5);
        let s = zeta_gj_torus_sum(&p, 6).unwrap();
        let a = QRoot::from_rational(ratio(-2, 3), 5);
        let expected = TruncatedSeries::new((0..=6).map(|k| a.pow_u(k)).collect(), 5, 6);
        assert_eq!(s, expected);
        let c = center_factor(1, &p.central_character(), 6);
        assert_eq!(s, c);
    }

    #[test]
    fn gj_constant_term_is_one() {
        let p = params(&[rat(1), rat(2), rat(4)], 2);
        assert_eq!(*zeta_gj_torus_sum(&p, 3).unwrap().coeff(0), QRoot::one(2));
    }

    #[test]
    fn local_two_two_low_coefficients() {
        let (a1, a2, q) = (rat(2), rat(3), 5u64);
        let p = params(&[a1.clone(), a2.clone()], q);
        let s = local_integral_torus_sum(2, &p, 4).unwrap();
        let qr = |x: Rational| QRoot::from_rational(x, q);
        assert_eq!(*s.coeff(1), QRoot::zero(q));
        assert_eq!(*s.coeff(2), QRoot::q_pow_half(q, -1) * qr(&a1 + &a2));
        let h2 = &a1 * &a1 + &a1 * &a2 + &a2 * &a2;
        let x4 = qr(h2 * ratio(1, 5)) - qr(&a1 * &a2 * ratio(1, 25));
        assert_eq!(*s.coeff(4), x4);
    }

    #[test]
    fn local_n1_is_one() {
        let p = params(&[rat(3)], 2);
        assert_eq!(local_integral_torus_sum(3, &p, 7).unwrap(), TruncatedSeries::one(2, 7));
    }

    #[test]
    fn ledger_round_trip() {
        let p = params(&[rat(1), ratio(1, 2)], 3);
        let (_, ledger) = zeta_gj_with_ledger(&p, 4).unwrap();
        assert_eq!(ledger.rows.len(), 5);
        let csv = ledger.to_csv().unwrap();
        assert!(csv.starts_with("exps,mu_numerator,mu_denominator,"));
        assert_eq!(csv.lines().count(), 6);
        for row in &ledger.rows {
            assert_eq!(row.partial_sum, *ledger.replay().coeff(row.degree));
        }
    }

    #[test]
    fn local_rejects_n_above_m() {
        let p = params(&[rat(1), rat(2), rat(3)], 2);
        assert!(matches!(local_integral_torus_sum(2, &p, 4), Err(Error::BadShape(_))));
    }
}
