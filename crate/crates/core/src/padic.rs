//! p-adic structure: dominant cocharacters, Cartan decomposition through
//! elementary divisors over `Z_(p)`, and the Macdonald measure of a Cartan
//! cell.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_algebra::{p_valuation, rat, rational_pow, FieldElem, QRoot, Rational};
use crate::matgroup::ExactMatrix;

/// `diag(ϖ^{r_1}, …, ϖ^{r_{n-1}}, 1)` with `r_1 ≥ … ≥ r_{n-1} ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DominantCochar {
    exps: Vec<i64>,
}

impl DominantCochar {
    pub fn new(exps: Vec<i64>) -> Result<Self> {
        let dominant = exps.windows(2).all(|w| w[0] >= w[1]) && exps.iter().all(|&r| r >= 0);
        if !dominant {
            return Err(Error::NonDominant(exps));
        }
        Ok(DominantCochar { exps })
    }

    /// The identity cell for `GL_n`.
    pub fn zero(n: usize) -> Self {
        DominantCochar { exps: vec![0; n.saturating_sub(1)] }
    }

    pub fn exps(&self) -> &[i64] {
        &self.exps
    }

    /// Rank `n` of the ambient group.
    pub fn n(&self) -> usize {
        self.exps.len() + 1
    }

    /// `(r_1, …, r_{n-1}, 0)`.
    pub fn full(&self) -> Vec<i64> {
        let mut v = self.exps.clone();
        v.push(0);
        v
    }

    /// `Σ r_i`, so that `|det t| = q^{-Σ r_i}`.
    pub fn total(&self) -> i64 {
        self.exps.iter().sum()
    }

    /// `Σ_{i=1}^{n} (n - 2i + 1) r_i`, the exponent of `δ_B(t)^{-1}`.
    pub fn rho_pairing(&self) -> i64 {
        let n = self.n() as i64;
        self.full()
            .iter()
            .enumerate()
            .map(|(i, r)| (n - 2 * (i as i64 + 1) + 1) * r)
            .sum()
    }

    /// Lengths of the maximal constant runs of `(r_1, …, r_{n-1}, 0)`.
    pub fn run_lengths(&self) -> Vec<usize> {
        let full = self.full();
        let mut runs = vec![1usize];
        for w in full.windows(2) {
            if w[0] == w[1] {
                *runs.last_mut().expect("nonempty") += 1;
            } else {
                runs.push(1);
            }
        }
        runs
    }
}

impl fmt::Display for DominantCochar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.exps.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All dominant tuples for `GL_n` with `r_1 ≤ height`, lexicographically sorted.
pub fn enumerate_dominant(n: usize, height: u32) -> Vec<DominantCochar> {
    fn rec(len: usize, cap: i64, prefix: &mut Vec<i64>, out: &mut Vec<DominantCochar>) {
        if prefix.len() == len {
            out.push(DominantCochar { exps: prefix.clone() });
            return;
        }
        for r in 0..=cap {
            prefix.push(r);
            rec(len, r, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n.saturating_sub(1), height as i64, &mut Vec::new(), &mut out);
    out
}

/// `φ_j(x) = (1 - x)(1 - x²)⋯(1 - x^j)`.
pub fn phi_poly(j: usize, x: &Rational) -> Rational {
    let mut acc = Rational::one();
    let mut power = Rational::one();
    for _ in 0..j {
        power *= x;
        acc *= Rational::one() - &power;
    }
    acc
}

/// Volume of `K t K` with `vol(K) = 1`:
/// `q^{⟨2ρ, r⟩} · φ_n(q^{-1}) / (1 - q^{-1})^n · Π_j (1 - q^{-1})^{n_j} / φ_{n_j}(q^{-1})`
/// where `n_j` are the run lengths of `(r_1, …, r_{n-1}, 0)`.
pub fn macdonald_measure(t: &DominantCochar, n: usize, q: u64) -> Result<QRoot> {
    if t.n() != n {
        return Err(Error::BadShape(format!("cocharacter {t} does not have n = {n}")));
    }
    let x = rational_pow(q, -1);
    let one_minus = Rational::one() - &x;
    let mut value = rational_pow(q, t.rho_pairing()) * phi_poly(n, &x)
        / num_traits::pow(one_minus.clone(), n);
    for run in t.run_lengths() {
        value = value * num_traits::pow(one_minus.clone(), run) / phi_poly(run, &x);
    }
    Ok(QRoot::from_rational(value, q))
}

/// `g = A · diag(p^{e_1}, …, p^{e_n}) · B` with `A, B ∈ GL_n(Z_(p))`.
#[derive(Clone, Debug, PartialEq)]
pub struct CartanForm {
    pub a: ExactMatrix<Rational>,
    pub b: ExactMatrix<Rational>,
    /// Nonincreasing.
    pub exps: Vec<i64>,
    pub p: u64,
}

impl CartanForm {
    pub fn diagonal(&self) -> ExactMatrix<Rational> {
        let entries: Vec<Rational> = self.exps.iter().map(|&e| rational_pow(self.p, e)).collect();
        ExactMatrix::diagonal(&entries, &rat(0))
    }

    pub fn reconstruct(&self) -> ExactMatrix<Rational> {
        &(&self.a * &self.diagonal()) * &self.b
    }
}

/// Whether every entry is `p`-integral and the determinant is a `p`-unit.
pub fn is_p_unimodular(x: &ExactMatrix<Rational>, p: u64) -> bool {
    let integral = x
        .entries()
        .iter()
        .all(|e| Zero::is_zero(e) || p_valuation(e, p).is_some_and(|v| v >= 0));
    integral && x.det().ok().and_then(|d| p_valuation(&d, p)) == Some(0)
}

/// Smith form over `Z_(p)`: at each step the entry of minimal valuation in
/// the remaining block (first in row-major order) becomes the pivot.
pub fn cartan_decompose(g: &ExactMatrix<Rational>, p: u64) -> Result<CartanForm> {
    crate::exact_algebra::PrimeField::new(p)?;
    if !g.is_square() {
        return Err(Error::BadShape(format!("{}x{} is not square", g.rows(), g.cols())));
    }
    if !g.is_invertible() {
        return Err(Error::SingularMatrix);
    }
    let n = g.rows();
    let zero = rat(0);
    let mut a = ExactMatrix::identity(n, &zero);
    let mut b = ExactMatrix::identity(n, &zero);
    let mut m = g.clone();
    // invariant: a · m · b = g
    for k in 0..n {
        let (pi, pj) = (k..n)
            .flat_map(|i| (k..n).map(move |j| (i, j)))
            .filter_map(|(i, j)| p_valuation(m.get(i, j), p).map(|v| (v, i, j)))
            .min_by_key(|&(v, i, j)| (v, i, j))
            .map(|(_, i, j)| (i, j))
            .ok_or(Error::SingularMatrix)?;
        m.swap_rows(k, pi);
        a.swap_cols(k, pi);
        m.swap_cols(k, pj);
        b.swap_rows(k, pj);
        let pivot = m.get(k, k).clone();
        for i in k + 1..n {
            let c = m.get(i, k).div(&pivot).expect("nonzero pivot");
            if c.is_zero() {
                continue;
            }
            m.add_row_multiple(i, k, &-c.clone());
            a.add_col_multiple(k, i, &c);
        }
        for j in k + 1..n {
            let c = m.get(k, j).div(&pivot).expect("nonzero pivot");
            if c.is_zero() {
                continue;
            }
            m.add_col_multiple(j, k, &-c.clone());
            b.add_row_multiple(k, j, &c);
        }
    }
    let mut exps = Vec::with_capacity(n);
    for i in 0..n {
        let d = m.get(i, i).clone();
        let e = p_valuation(&d, p).ok_or(Error::SingularMatrix)?;
        a.scale_col(i, &(d / rational_pow(p, e)));
        exps.push(e);
    }
    // stable sort into nonincreasing order, moving A's columns and B's rows along
    let mut perm: Vec<usize> = (0..n).collect();
    perm.sort_by_key(|&i| std::cmp::Reverse(exps[i]));
    let a = ExactMatrix::from_fn(n, n, &zero, |i, k| a.get(i, perm[k]).clone());
    let b = ExactMatrix::from_fn(n, n, &zero, |k, j| b.get(perm[k], j).clone());
    let exps: Vec<i64> = perm.iter().map(|&i| exps[i]).collect();
    if exps.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::AssertionFailed(format!("elementary divisors {exps:?} not sorted")));
    }
    Ok(CartanForm { a, b, exps, p })
}
