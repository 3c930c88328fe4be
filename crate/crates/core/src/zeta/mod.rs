//! The unramified local computation: Satake parameters, L-factors,
//! Macdonald's spherical function and the torus sums for the
//! Godement–Jacquet integral and for the Kronecker-section integral.
//!
//! Everything is a formal power series in `X = q^{-s}` with coefficients in
//! `Q(√q)`.

mod identities;
mod sums;

use itertools::Itertools;
use rand::Rng;

use crate::error::{Error, Result};
use crate::exact_algebra::{
    rational_pow, FieldElem, HalfInteger, LaurentPoly, PrimeField, QRoot, Rational, RationalFunction, RingElem,
    TruncatedSeries,
};
use crate::padic::{phi_poly, DominantCochar};

pub use identities::{verify_gj_identity, verify_local_identity, IdentityReport, LocalIdentityReport, VariantOutcome};
pub use sums::{
    local_integral_torus_sum, local_integral_with_height, zeta_gj_torus_sum, zeta_gj_with_ledger, LedgerRow,
    TorusSummandLedger,
};

/// Satake parameters `α_1, …, α_n` of an unramified representation of `GL_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct SatakeParams {
    alphas: Vec<QRoot>,
    q: u64,
}

impl SatakeParams {
    pub fn new(alphas: Vec<QRoot>, q: u64) -> Result<Self> {
        PrimeField::new(q)?;
        if alphas.is_empty() {
            return Err(Error::BadShape("at least one Satake parameter is required".into()));
        }
        if let Some(a) = alphas.iter().find(|a| a.q() != q) {
            return Err(Error::RingMismatch(format!("parameter {a} lives over q = {}, not {q}", a.q())));
        }
        if alphas.iter().any(RingElem::is_zero) {
            return Err(Error::DomainError("Satake parameters must be nonzero".into()));
        }
        Ok(SatakeParams { alphas, q })
    }

    pub fn from_rationals(alphas: &[Rational], q: u64) -> Result<Self> {
        SatakeParams::new(alphas.iter().map(|a| QRoot::from_rational(a.clone(), q)).collect(), q)
    }

    pub fn alphas(&self) -> &[QRoot] {
        &self.alphas
    }

    pub fn n(&self) -> usize {
        self.alphas.len()
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn is_regular(&self) -> bool {
        self.alphas.iter().tuple_combinations().all(|(a, b)| a != b)
    }

    pub fn require_regular(&self) -> Result<()> {
        if self.is_regular() {
            Ok(())
        } else {
            Err(Error::NonRegularSatake)
        }
    }

    /// `ω(ϖ) = Π α_i`.
    pub fn central_character(&self) -> CentralCharValue {
        let omega = self.alphas.iter().cloned().reduce(|a, b| a * b).expect("nonempty");
        CentralCharValue { omega }
    }
}

/// `ω(ϖ)` for the central character `ω`.
#[derive(Clone, Debug, PartialEq)]
pub struct CentralCharValue {
    omega: QRoot,
}

impl CentralCharValue {
    pub fn new(omega: QRoot) -> Result<Self> {
        if omega.is_zero() {
            return Err(Error::DomainError("central character value must be nonzero".into()));
        }
        Ok(CentralCharValue { omega })
    }

    pub fn value(&self) -> &QRoot {
        &self.omega
    }
}

/// Random regular parameters with small numerators and denominators.
pub fn random_regular_params<R: Rng + ?Sized>(n: usize, q: u64, rng: &mut R) -> Result<SatakeParams> {
    loop {
        let alphas: Vec<Rational> = (0..n)
            .map(|_| {
                let mut num = rng.gen_range(1..=9i64);
                if rng.gen_bool(0.5) {
                    num = -num;
                }
                crate::exact_algebra::ratio(num, rng.gen_range(1..=5i64))
            })
            .collect();
        let params = SatakeParams::from_rationals(&alphas, q)?;
        if params.is_regular() {
            return Ok(params);
        }
    }
}

/// `Π_i (1 - c_i q^{-b} X^a)^{-1}` for arbitrary nonzero scalars `c_i`.
pub fn l_factor_of(scalars: &[QRoot], q: u64, a: usize, b: HalfInteger) -> Result<RationalFunction> {
    if a == 0 {
        return Err(Error::DomainError("L-factor needs a >= 1".into()));
    }
    let shift = QRoot::q_pow(q, -b);
    let denominator = scalars.iter().fold(LaurentPoly::one(q), |acc, c| {
        let mut coeffs = vec![QRoot::zero(q); a + 1];
        coeffs[0] = QRoot::one(q);
        coeffs[a] = -(c.clone() * shift.clone());
        acc.mul(&LaurentPoly::new(0, coeffs, q))
    });
    RationalFunction::new(LaurentPoly::one(q), denominator)
}

/// `L(as + b, π) = Π_i (1 - α_i q^{-b} X^a)^{-1}`.
pub fn l_factor(params: &SatakeParams, a: usize, b: HalfInteger) -> Result<RationalFunction> {
    l_factor_of(params.alphas(), params.q(), a, b)
}

/// `L(as + b, ω) = (1 - ω(ϖ) q^{-b} X^a)^{-1}`.
pub fn omega_l_factor(omega: &CentralCharValue, a: usize, b: HalfInteger) -> Result<RationalFunction> {
    l_factor_of(std::slice::from_ref(omega.value()), omega.value().q(), a, b)
}

/// `Σ_{j≥0} ω^j q^{-j n(n-1)/2} X^{jn}` truncated at `X^order`.
pub fn center_factor(n: usize, omega: &CentralCharValue, order: usize) -> TruncatedSeries {
    let q = omega.value().q();
    let step = QRoot::q_pow_half(q, -((n * (n - 1)) as i64)) * omega.value().clone();
    let mut out = TruncatedSeries::zero(q, order);
    let mut c = QRoot::one(q);
    for degree in (0..=order).step_by(n.max(1)) {
        out.add_monomial(&c, degree);
        c = c * step.clone();
    }
    out
}

/// `W(q^{-1}) = Π_{j=1}^{n} (1 - q^{-j}) / (1 - q^{-1})`.
fn weyl_poincare(n: usize, q: u64) -> Rational {
    let x = rational_pow(q, -1);
    let one_minus = Rational::from_integer(1.into()) - &x;
    phi_poly(n, &x) / num_traits::pow(one_minus, n)
}

/// Per-permutation weights of Macdonald's formula, so that each cell costs
/// only the monomial `Π (wα)_i^{r_i}`.
pub(crate) struct SphericalKernel {
    q: u64,
    terms: Vec<(Vec<QRoot>, QRoot)>,
    normalizer: QRoot,
}

impl SphericalKernel {
    pub(crate) fn new(params: &SatakeParams) -> Result<Self> {
        params.require_regular()?;
        let q = params.q();
        let q_inv = QRoot::from_rational(rational_pow(q, -1), q);
        let n = params.n();
        let mut terms = Vec::new();
        for perm in (0..n).permutations(n) {
            let wa: Vec<QRoot> = perm.iter().map(|&i| params.alphas()[i].clone()).collect();
            let mut weight = QRoot::one(q);
            for (i, j) in (0..n).tuple_combinations() {
                let num = wa[i].clone() - q_inv.clone() * wa[j].clone();
                let den = wa[i].clone() - wa[j].clone();
                weight = weight * num.div(&den).ok_or(Error::NonRegularSatake)?;
            }
            terms.push((wa, weight));
        }
        let normalizer = QRoot::from_rational(weyl_poincare(n, q).recip(), q);
        Ok(SphericalKernel { q, terms, normalizer })
    }

    pub(crate) fn value(&self, t: &DominantCochar) -> QRoot {
        let full = t.full();
        let sum = self.terms.iter().fold(QRoot::zero(self.q), |acc, (wa, weight)| {
            let mono = wa
                .iter()
                .zip(&full)
                .fold(weight.clone(), |m, (a, &r)| m * a.pow_u(r as u64));
            acc + mono
        });
        QRoot::q_pow_half(self.q, -t.rho_pairing()) * self.normalizer.clone() * sum
    }
}

/// The normalized spherical matrix coefficient at `t`, by Macdonald's formula
/// `δ_B^{1/2}(t) W(q^{-1})^{-1} Σ_w Π_{i<j} ((wα)_i - q^{-1}(wα)_j)/((wα)_i - (wα)_j) Π_i (wα)_i^{r_i}`.
pub fn spherical_coeff(t: &DominantCochar, params: &SatakeParams) -> Result<QRoot> {
    if t.n() != params.n() {
        return Err(Error::BadShape(format!("cocharacter {t} does not match n = {}", params.n())));
    }
    Ok(SphericalKernel::new(params)?.value(t))
}

/// `c · X^degree`.
#[derive(Clone, Debug, PartialEq)]
pub struct Monomial {
    pub coeff: QRoot,
    pub degree: usize,
}

/// `f°(ε̃ t(I_m, t)) = |det t|^{ms + m/2} = q^{-(m/2) Σr} X^{m Σr}`.
pub fn section_value_on_torus(m: usize, n: usize, t: &DominantCochar, q: u64) -> Result<Monomial> {
    if n == 0 || n > m {
        return Err(Error::BadShape(format!("need 1 <= n <= m, got (m, n) = ({m}, {n})")));
    }
    if t.n() != n {
        return Err(Error::BadShape(format!("cocharacter {t} does not have n = {n}")));
    }
    DominantCochar::new(t.exps().to_vec())?;
    let total = t.total();
    Ok(Monomial {
        coeff: QRoot::q_pow_half(q, -(m as i64) * total),
        degree: m * total as usize,
    })
}
