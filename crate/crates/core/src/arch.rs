//! The real-place computation: the φ-sequence, the closed-form
//! Gram–Schmidt recursion for `[[I, 0], [y(t), 1]]`, a numeric Iwasawa
//! factorization, and the exponents of the section value at `ε̃ t^Δ`.

use nalgebra::DMatrix;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_algebra::rat;
use crate::matgroup::{epsilon_rep, ExactMatrix};

/// `(t_1, …, t_{n-1})` with `0 < t_1 ≤ … ≤ t_{n-1} ≤ 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealTorusPoint {
    t: Vec<f64>,
}

impl RealTorusPoint {
    pub fn new(t: Vec<f64>) -> Result<Self> {
        if t.iter().any(|&x| !(x > 0.0 && x <= 1.0)) {
            return Err(Error::DomainError(format!("entries of {t:?} must lie in (0, 1]")));
        }
        if t.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::DomainError(format!("{t:?} is not nondecreasing")));
        }
        Ok(RealTorusPoint { t })
    }

    pub fn t(&self) -> &[f64] {
        &self.t
    }

    pub fn n(&self) -> usize {
        self.t.len() + 1
    }

    /// `t_i` for `1 ≤ i ≤ n-1`.
    fn at(&self, i: usize) -> f64 {
        self.t[i - 1]
    }

    /// `|det diag(t, 1)|`.
    pub fn det(&self) -> f64 {
        self.t.iter().product()
    }
}

/// `φ_i = 1 + Σ_{j ≥ i} t_j²` for `1 ≤ i ≤ n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhiSequence {
    phi: Vec<f64>,
}

impl PhiSequence {
    /// `φ_i`, 1-based.
    pub fn get(&self, i: usize) -> f64 {
        self.phi[i - 1]
    }

    pub fn values(&self) -> &[f64] {
        &self.phi
    }
}

pub fn phi_sequence(t: &RealTorusPoint) -> PhiSequence {
    let n = t.n();
    let mut phi = vec![1.0; n];
    for i in (1..n).rev() {
        phi[i - 1] = phi[i] + t.at(i) * t.at(i);
    }
    PhiSequence { phi }
}

/// `Y = [[I_{n-1}, 0], [t_{n-1}, …, t_1, 1]]` with rows `u_1, …, u_n`.
pub fn torus_row_matrix(t: &RealTorusPoint) -> DMatrix<f64> {
    let n = t.n();
    let mut y = DMatrix::identity(n, n);
    for r in 1..n {
        y[(n - 1, n - 1 - r)] = t.at(r);
    }
    y
}

/// `Y = y_P y_K` from the closed-form recursion.
#[derive(Clone, Debug, PartialEq)]
pub struct GramSchmidtFactors {
    pub y_p: DMatrix<f64>,
    pub y_k: DMatrix<f64>,
    /// `v_1', …, v_n'` as row vectors; `v_i'` orthogonalizes `u_{n-i+1}`.
    pub v_prime: Vec<Vec<f64>>,
    /// `‖v_1'‖² = φ_1` and `‖v_i'‖² = φ_i / φ_{i-1}`.
    pub norms: Vec<f64>,
}

/// `v_1' = u_n` and, for `i ≥ 2`,
/// `v_i' = u_{n-i+1} + t_{i-1}/φ_{i-1} · (Σ_{r=1}^{i-2} t_r u_{n-r} - u_n)`.
pub fn gram_schmidt_explicit(t: &RealTorusPoint) -> GramSchmidtFactors {
    let n = t.n();
    let phi = phi_sequence(t);
    let y = torus_row_matrix(t);
    let u = |j: usize| -> Vec<f64> { y.row(j - 1).iter().copied().collect() };
    let axpy = |acc: &mut Vec<f64>, c: f64, v: &[f64]| {
        for (a, x) in acc.iter_mut().zip(v) {
            *a += c * x;
        }
    };
    let mut v_prime = vec![u(n)];
    let mut norms = vec![phi.get(1)];
    for i in 2..=n {
        let c = t.at(i - 1) / phi.get(i - 1);
        let mut v = u(n - i + 1);
        for r in 1..=i.saturating_sub(2) {
            axpy(&mut v, c * t.at(r), &u(n - r));
        }
        axpy(&mut v, -c, &u(n));
        v_prime.push(v);
        norms.push(phi.get(i) / phi.get(i - 1));
    }
    // y_K has rows v_n, …, v_1
    let y_k = DMatrix::from_fn(n, n, |row, col| v_prime[n - 1 - row][col] / norms[n - 1 - row].sqrt());
    let y_p = &y * y_k.transpose();
    GramSchmidtFactors { y_p, y_k, v_prime, norms }
}

/// `g = x_P x_K` with `x_P` upper triangular (positive diagonal) and `x_K` orthogonal.
#[derive(Clone, Debug, PartialEq)]
pub struct IwasawaFactors {
    pub x_p: DMatrix<f64>,
    pub x_k: DMatrix<f64>,
}

impl IwasawaFactors {
    /// `‖x_P x_K - g‖_F / ‖g‖_F`.
    pub fn relative_residual(&self, g: &DMatrix<f64>) -> f64 {
        (&self.x_p * &self.x_k - g).norm() / g.norm()
    }

    /// `‖x_K x_K^T - I‖_F`.
    pub fn orthogonality_defect(&self) -> f64 {
        let n = self.x_k.nrows();
        (&self.x_k * self.x_k.transpose() - DMatrix::identity(n, n)).norm()
    }
}

/// Householder QR of `g^T J` (`J` the reversal), rearranged into
/// `g = (J R^T J)(J Q^T)`.
pub fn iwasawa_numeric(g: &DMatrix<f64>) -> Result<IwasawaFactors> {
    let n = g.nrows();
    if n != g.ncols() || n == 0 {
        return Err(Error::BadShape(format!("{}x{} is not square", g.nrows(), g.ncols())));
    }
    let j = DMatrix::from_fn(n, n, |r, c| if r + c == n - 1 { 1.0 } else { 0.0 });
    let qr = (g.transpose() * &j).qr();
    let (mut q, mut r) = (qr.q(), qr.r());
    let scale = r.diagonal().amax();
    if scale.is_nan() || scale <= 0.0 || r.diagonal().iter().any(|d| d.abs() <= 1e-13 * scale) {
        return Err(Error::SingularMatrix);
    }
    for i in 0..n {
        if r[(i, i)] < 0.0 {
            r.row_mut(i).neg_mut();
            q.column_mut(i).neg_mut();
        }
    }
    let x_p = &j * r.transpose() * &j;
    let x_k = &j * q.transpose();
    Ok(IwasawaFactors { x_p, x_k })
}

fn to_real(x: &ExactMatrix<crate::exact_algebra::Rational>) -> DMatrix<f64> {
    DMatrix::from_fn(x.rows(), x.cols(), |i, j| x.get(i, j).to_f64().unwrap_or(f64::NAN))
}

/// `ε̃ · t(I_m, diag(t, 1))` with `ε̃ = ε_{n-1}`.
pub fn epsilon_tilde_torus(m: usize, n: usize, t: &RealTorusPoint) -> Result<DMatrix<f64>> {
    if t.n() != n {
        return Err(Error::BadShape(format!("torus point of size {} for n = {n}", t.n())));
    }
    let eps = to_real(&epsilon_rep(m, n, n - 1, &rat(0))?);
    let mut diag = vec![1.0; m * n];
    for block in 0..m {
        for (c, &x) in t.t().iter().enumerate() {
            diag[block * n + c] = x;
        }
    }
    Ok(eps * DMatrix::from_diagonal(&nalgebra::DVector::from_vec(diag)))
}

/// Measured and predicted quantities of `δ_{P(mn-1,1)}(x_P)` at `ε̃ t^Δ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SectionExponents {
    pub m: usize,
    pub n: usize,
    pub t: Vec<f64>,
    /// Bottom-right entry of `x_P`.
    pub alpha: f64,
    pub delta: f64,
    /// Measured power of `|det t|` in `δ(x_P)`; `None` when `|det t| = 1`.
    pub det_power: Option<f64>,
    /// Measured power of `φ_1` in `δ(x_P)`; `None` when `φ_1 = 1`.
    pub phi_power: Option<f64>,
    pub predicted_alpha: f64,
    pub predicted_delta: f64,
    pub reconstruction_residual: f64,
}

/// Sample points for the `s`-dependence of `δ^{s+1/2}`.
const S_SAMPLES: (f64, f64) = (0.3, 1.7);

/// Factors `ε̃ t^Δ`, reads `α` and `δ(x_P) = |det A| α^{-(mn-1)}`, and
/// checks `α = √φ_1`, `δ(x_P) = |det t|^m φ_1^{-mn/2}` to `1e-10`.
///
/// The `|det t|` and `φ_1` powers are separated using
/// `|det x_P| = |det A| · α`: the slope of `log δ^{s+1/2}` in `s` gives
/// `log δ`, then `log δ = log|det x_P| - mn log α`.
pub fn section_value_exponents(m: usize, n: usize, t: &RealTorusPoint) -> Result<SectionExponents> {
    if n == 0 || n > m {
        return Err(Error::DomainError(format!("need 1 <= n <= m, got (m, n) = ({m}, {n})")));
    }
    let size = m * n;
    let g = epsilon_tilde_torus(m, n, t)?;
    let f = iwasawa_numeric(&g)?;
    let alpha = f.x_p[(size - 1, size - 1)];
    let log_det_a: f64 = (0..size - 1).map(|i| f.x_p[(i, i)].abs().ln()).sum();
    let log_delta = log_det_a - (size as f64 - 1.0) * alpha.abs().ln();
    let log_section = |s: f64| (s + 0.5) * log_delta;
    let (s1, s2) = S_SAMPLES;
    let slope = (log_section(s2) - log_section(s1)) / (s2 - s1);
    let intercept = log_section(s1) - (s1 + 0.5) * slope;
    if intercept.abs() > 1e-10 * (1.0 + slope.abs()) {
        return Err(Error::AssertionFailed(format!("δ^(s+1/2) is not a pure power: offset {intercept}")));
    }
    let log_det_xp = log_det_a + alpha.abs().ln();
    let phi1 = phi_sequence(t).get(1);
    let identifiable = |x: f64| x.abs() > 1e-12;
    let det_t = t.det();
    let det_power = identifiable(det_t.ln()).then(|| log_det_xp / det_t.ln());
    let phi_power = identifiable(phi1.ln()).then(|| (slope - log_det_xp) / phi1.ln());

    let predicted_alpha = phi1.sqrt();
    let predicted_delta = det_t.powi(m as i32) * phi1.powf(-((m * n) as f64) / 2.0);
    let delta = slope.exp();
    let report = SectionExponents {
        m,
        n,
        t: t.t().to_vec(),
        alpha,
        delta,
        det_power,
        phi_power,
        predicted_alpha,
        predicted_delta,
        reconstruction_residual: f.relative_residual(&g),
    };
    if (alpha - predicted_alpha).abs() > 1e-10 * predicted_alpha {
        return Err(Error::AssertionFailed(format!("α = {alpha}, predicted √φ_1 = {predicted_alpha}")));
    }
    if (delta - predicted_delta).abs() > 1e-10 * predicted_delta {
        return Err(Error::AssertionFailed(format!(
            "δ(x_P) = {delta} (powers {det_power:?}, {phi_power:?}), predicted {predicted_delta} (powers {m}, {})",
            -((m * n) as f64) / 2.0
        )));
    }
    Ok(report)
}
