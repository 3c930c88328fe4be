use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_algebra::PrimeField;
use crate::matgroup::{kronecker, unipotent_rep, weyl_rep};

use super::coset_label;
use super::ff::Fq;

type Witness = (Vec<u32>, Vec<u32>, u32);

/// A random element `[[1, x], [0, h']]` of the mirabolic-type group `H(1, k-1)`.
fn random_h1<R: Rng + ?Sized>(fq: &Fq, k: usize, rng: &mut R) -> Vec<u32> {
    let inner = fq.random_invertible(k - 1, rng);
    let mut h = vec![0u32; k * k];
    h[0] = 1;
    for x in h.iter_mut().take(k).skip(1) {
        *x = rng.gen_range(0..fq.q);
    }
    for i in 1..k {
        for j in 1..k {
            h[i * k + j] = inner[(i - 1) * (k - 1) + (j - 1)];
        }
    }
    h
}

/// Checks `P w_1 u_1(R) t(h, g) = P w_1 u_1(h^T R g)` on random `R` with
/// `R[0][0] = 1`, `h ∈ H(1, m-1)`, `g ∈ H(1, n-1)`, comparing coset labels.
pub fn verify_orbit_lemma<R: Rng + ?Sized>(m: usize, n: usize, q: u64, trials: usize, rng: &mut R) -> Result<bool> {
    if m == 0 || n == 0 {
        return Err(Error::BadShape(format!("(m, n) = ({m}, {n})")));
    }
    let fq = Fq::new(q)?;
    let field = PrimeField::new(q)?;
    let one = field.one();
    let size = m * n;
    let w1 = weyl_rep(1, size, &one)?;
    let to_vec = |v: &[u32]| v.iter().map(|&x| field.elem(x as i64)).collect::<Vec<_>>();
    for _ in 0..trials {
        let mut rmat: Vec<u32> = (0..size).map(|_| rng.gen_range(0..fq.q)).collect();
        rmat[0] = 1;
        let h = random_h1(&fq, m, rng);
        let g = random_h1(&fq, n, rng);
        let t = kronecker(&fq.to_exact(&h, m, m), &fq.to_exact(&g, n, n))?;
        let lhs = &(&w1 * &unipotent_rep(1, &to_vec(&rmat[1..]), size, &one)?) * &t;
        let moved = fq.matmul(&fq.matmul(&fq.transpose(&h, m, m), &rmat, m, m, n), &g, m, n, n);
        if moved[0] != 1 {
            return Err(Error::AssertionFailed("H(1,k-1) action moved the leading entry".into()));
        }
        let rhs = &w1 * &unipotent_rep(1, &to_vec(&moved[1..]), size, &one)?;
        if coset_label(&lhs)? != coset_label(&rhs)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of the exhaustive sweep over `(S, R, α)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorSweep {
    pub l: usize,
    pub q: u64,
    pub pairs: u64,
    /// Triples `(S, R, α)` where both sides hold.
    pub both_hold: u64,
    /// First `(S, R, α)` (residues, row-major) where the sides disagree.
    pub counterexample: Option<(Vec<u32>, Vec<u32>, u32)>,
}

impl TensorSweep {
    pub fn equivalent(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// For all `ℓ × ℓ` matrices `S, R` over `F_q` and all `α`: the Kronecker
/// product `S ⊗ R` scales `Σ e_j ⊗ e_j` by `α` iff `S R^T = α I`.
pub fn verify_tensor_inv_lemma(l: usize, q: u64, budget: u128) -> Result<TensorSweep> {
    let fq = Fq::new(q)?;
    let field = PrimeField::new(q)?;
    let per = (q as u128).pow((l * l) as u32);
    let needed = per * per * q as u128;
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let per = per as u64;
    let decode = |mut c: u64| {
        let mut v = vec![0u32; l * l];
        for slot in v.iter_mut().rev() {
            *slot = (c % q) as u32;
            c /= q;
        }
        v
    };
    // vec(I) as a column: coordinate (i, k) ↦ δ_{ik}
    let vec_id: Vec<_> = (0..l * l)
        .map(|idx| if idx / l == idx % l { field.one() } else { field.zero() })
        .collect();
    let results: Vec<(u64, Option<Witness>)> = (0..per)
        .into_par_iter()
        .map(|sc| {
            let s = decode(sc);
            let s_exact = fq.to_exact(&s, l, l);
            let mut both = 0u64;
            for rc in 0..per {
                let r = decode(rc);
                let k = kronecker(&s_exact, &fq.to_exact(&r, l, l)).expect("square");
                let image = k.transpose().left_mul_vec(&vec_id).expect("dimensions");
                let srt = fq.matmul(&s, &fq.transpose(&r, l, l), l, l, l);
                for alpha in 0..q as u32 {
                    let a = field.elem(alpha as i64);
                    let lhs = image.iter().zip(&vec_id).all(|(x, e)| *x == a * *e);
                    let rhs = (0..l * l).all(|idx| {
                        srt[idx] == if idx / l == idx % l { alpha } else { 0 }
                    });
                    if lhs != rhs {
                        return (both, Some((s.clone(), r, alpha)));
                    }
                    if lhs {
                        both += 1;
                    }
                }
            }
            (both, None)
        })
        .collect();
    let both_hold = results.iter().map(|(b, _)| b).sum();
    let counterexample = results.into_iter().find_map(|(_, c)| c);
    Ok(TensorSweep { l, q, pairs: per * per, both_hold, counterexample })
}
