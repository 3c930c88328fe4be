//! The double cosets `P(mn-1,1) \ GL(mn) / t(GL(m), GL(n))`.
//!
//! A coset `P(mn-1,1)·g` is determined by the last row of `g` up to a
//! nonzero scalar. Cutting that row into `m` blocks of length `n` gives an
//! `m × n` matrix `R`, and right multiplication by `t(h, g')` sends `R` to
//! `h^T R g'`. The rank of `R` is therefore the complete double-coset
//! invariant, with `ε_r` representing rank `r + 1`.

pub mod ff;
mod lemmas;
mod orbits;
mod stabilizer;

use crate::error::{Error, Result};
use crate::exact_algebra::{FieldElem, PrimeFieldElem, RingElem};
use crate::matgroup::{epsilon_rep, kronecker, ExactMatrix, ParabolicShape};

pub use lemmas::{verify_orbit_lemma, verify_tensor_inv_lemma, TensorSweep};
pub use orbits::{enumerate_orbits, OrbitRow, OrbitTable, DEFAULT_BUDGET};
pub use stabilizer::{stabilizer_bruteforce, StabilizerCheck, StabilizerDescription};

/// A point of projective space: a nonzero row vector whose first nonzero
/// entry is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CosetLabel<T> {
    coords: Vec<T>,
}

impl<T: FieldElem> CosetLabel<T> {
    /// Normalizes a nonzero vector.
    pub fn from_vector(v: &[T]) -> Result<Self> {
        let lead = v
            .iter()
            .find(|x| !x.is_zero())
            .ok_or_else(|| Error::DomainError("zero vector has no projective class".into()))?;
        let inv = lead.inv().expect("nonzero");
        Ok(CosetLabel { coords: v.iter().map(|x| x.clone() * inv.clone()).collect() })
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    /// The `m × n` matrix whose rows are consecutive blocks of length `n`.
    pub fn reshape(&self, m: usize, n: usize) -> Result<ExactMatrix<T>> {
        if m * n != self.coords.len() {
            return Err(Error::BadShape(format!(
                "cannot reshape a vector of length {} to {m}x{n}",
                self.coords.len()
            )));
        }
        ExactMatrix::from_vec(m, n, self.coords.clone(), &self.coords[0])
    }

    pub fn rank(&self, m: usize, n: usize) -> Result<usize> {
        Ok(self.reshape(m, n)?.rank())
    }
}

impl CosetLabel<PrimeFieldElem> {
    /// Base-`q` integer with the first coordinate most significant.
    pub fn code(&self) -> u64 {
        self.coords
            .iter()
            .fold(0u64, |acc, x| acc * x.q() + x.residue())
    }
}

/// The label of the coset `P(mn-1,1)·g`: the normalized last row.
pub fn coset_label<T: FieldElem>(g: &ExactMatrix<T>) -> Result<CosetLabel<T>> {
    if !g.is_invertible() {
        return Err(Error::SingularMatrix);
    }
    CosetLabel::from_vector(g.row(g.rows() - 1))
}

/// A factorization `input = p · ε_r · t(h, g)` with `p ∈ P(mn-1,1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness<T: RingElem> {
    pub p: ExactMatrix<T>,
    pub h: ExactMatrix<T>,
    pub g: ExactMatrix<T>,
}

impl<T: FieldElem> Witness<T> {
    pub fn reconstruct(&self, m: usize, n: usize, r: usize) -> Result<ExactMatrix<T>> {
        let eps = epsilon_rep(m, n, r, self.p.zero_elem())?;
        Ok(&(&self.p * &eps) * &kronecker(&self.h, &self.g)?)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DoubleCosetClass<T: RingElem> {
    /// Rank of the reshaped last row minus one.
    pub r: usize,
    pub witness: Option<Witness<T>>,
}

/// Invertible `P` (`m × m`) and `Q` (`n × n`) with `P·R·Q = [[I_k, 0], [0, 0]]`.
fn rank_normal_form<T: FieldElem>(r: &ExactMatrix<T>) -> Result<(ExactMatrix<T>, ExactMatrix<T>, usize)> {
    let (m, n) = (r.rows(), r.cols());
    let like = r.zero_elem();
    let rows_aug = ExactMatrix::from_blocks(
        r,
        &ExactMatrix::identity(m, like),
        &ExactMatrix::zeros(0, n, like),
        &ExactMatrix::zeros(0, m, like),
    )?;
    let p = rows_aug.echelon().reduced.block(0, n, m, m);
    let pr = &p * r;
    let k = pr.rank();
    let cols_aug = ExactMatrix::from_blocks(
        &pr.transpose(),
        &ExactMatrix::identity(n, like),
        &ExactMatrix::zeros(0, m, like),
        &ExactMatrix::zeros(0, n, like),
    )?;
    let qt = cols_aug.echelon().reduced.block(0, m, n, n);
    Ok((p, qt.transpose(), k))
}

/// Permutation matrix sending basis vector `i` to `perm[i]` (`S[perm[i]][i] = 1`).
fn permutation<T: RingElem>(perm: &[usize], like: &T) -> ExactMatrix<T> {
    let n = perm.len();
    let mut s = ExactMatrix::zeros(n, n, like);
    for (i, &pi) in perm.iter().enumerate() {
        s.set(pi, i, like.one_like());
    }
    s
}

/// Classifies `g ∈ GL(mn)` into its double coset `P(mn-1,1) ε_r t(GL(m), GL(n))`,
/// optionally with a witness factorization.
///
/// The witness comes from a rank normal form `h0^T R g0 = R_r` of the
/// reshaped last row, where `R_r` is the reshaped last row of `ε_r`; then
/// `p = g · t(h0, g0) · ε_r^{-1}` has last row `e_{mn}`.
pub fn classify_double_coset<T: FieldElem>(
    g: &ExactMatrix<T>,
    m: usize,
    n: usize,
    want_witness: bool,
) -> Result<DoubleCosetClass<T>> {
    if n == 0 || n > m || g.rows() != m * n || !g.is_square() {
        return Err(Error::BadShape(format!(
            "expected a {0}x{0} matrix with 1 <= n <= m, got {1}x{2} for (m, n) = ({m}, {n})",
            m * n,
            g.rows(),
            g.cols()
        )));
    }
    if !g.is_invertible() {
        return Err(Error::SingularMatrix);
    }
    let like = g.zero_elem().clone();
    let last = g.row(m * n - 1).to_vec();
    let big_r = ExactMatrix::from_vec(m, n, last, &like)?;
    let (p_rows, q_cols, k) = rank_normal_form(&big_r)?;
    let r = k - 1;
    if !want_witness {
        return Ok(DoubleCosetClass { r, witness: None });
    }
    // R_r = S1 · [[I_k,0],[0,0]] · S2 with S1: i ↦ i + m - k (cyclic), S2: i ↦ n-1-i
    let s1 = permutation(&(0..m).map(|i| (i + m - k) % m).collect::<Vec<_>>(), &like);
    let s2 = permutation(&(0..n).map(|i| n - 1 - i).collect::<Vec<_>>(), &like).transpose();
    let h0 = (&s1 * &p_rows).transpose();
    let g0 = &q_cols * &s2;
    let eps = epsilon_rep(m, n, r, &like)?;
    let p = &(g * &kronecker(&h0, &g0)?) * &eps.inverse()?;
    if !ParabolicShape::new(m * n - 1, 1).contains(&p) {
        return Err(Error::AssertionFailed(
            "rank normal form did not produce an element of P(mn-1,1)".into(),
        ));
    }
    let witness = Witness { p, h: h0.inverse()?, g: g0.inverse()? };
    Ok(DoubleCosetClass { r, witness: Some(witness) })
}
