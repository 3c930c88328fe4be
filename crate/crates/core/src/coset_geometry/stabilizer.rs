use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::exact_algebra::FieldElem;
use crate::matgroup::{ExactMatrix, StarContext};

use super::ff::{gl_order, Fq};

/// The predicted stabilizer `t_Δ(P^m_{r+1}, P^n_{r+1})` of the coset of `ε_r`:
/// pairs `h = [[A, B], [0, λ d*]]`, `g = [[a, b], [0, d]]` with
/// `d ∈ GL_{r+1}` and `d*` the `w̃`-twisted star.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StabilizerDescription {
    pub m: usize,
    pub n: usize,
    pub r: usize,
}

impl StabilizerDescription {
    pub fn new(m: usize, n: usize, r: usize) -> Result<Self> {
        if n == 0 || n > m || r >= n {
            return Err(Error::RankOutOfRange { r, m, n });
        }
        Ok(StabilizerDescription { m, n, r })
    }

    fn k(&self) -> usize {
        self.r + 1
    }

    /// Membership of the pair `(h, g)`.
    pub fn contains<T: FieldElem>(&self, h: &ExactMatrix<T>, g: &ExactMatrix<T>) -> bool {
        let (m, n, k) = (self.m, self.n, self.k());
        if h.rows() != m || g.rows() != n || !h.is_invertible() || !g.is_invertible() {
            return false;
        }
        let lower_left_zero = |x: &ExactMatrix<T>, size: usize| {
            (size - k..size).all(|i| (0..size - k).all(|j| x.get(i, j).is_zero()))
        };
        if !lower_left_zero(h, m) || !lower_left_zero(g, n) {
            return false;
        }
        let d = g.block(n - k, n - k, k, k);
        let Ok(d_star) = StarContext::new(k).star(&d) else {
            return false;
        };
        let corner = h.block(m - k, m - k, k, k);
        // λ is read off any nonzero entry of d*
        let Some((i, j)) = (0..k)
            .flat_map(|i| (0..k).map(move |j| (i, j)))
            .find(|&(i, j)| !d_star.get(i, j).is_zero())
        else {
            return false;
        };
        let lambda = corner.get(i, j).div(d_star.get(i, j)).expect("nonzero");
        !lambda.is_zero() && corner == d_star.scale(&lambda)
    }
}

/// Brute-force and predicted stabilizers as sets of Kronecker products
/// `t(h, g)` (which quotients out the kernel of `t`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerCheck {
    pub m: usize,
    pub n: usize,
    pub r: usize,
    pub q: u64,
    pub pairs_examined: u128,
    pub found: BTreeSet<Vec<u32>>,
    pub predicted: BTreeSet<Vec<u32>>,
}

impl StabilizerCheck {
    pub fn matches(&self) -> bool {
        self.found == self.predicted
    }
}

/// `R_r`: the reshaped last row of `ε_r`, i.e. `w̃` of size `r+1` in the
/// bottom-right corner of an `m × n` zero matrix.
fn reshaped_epsilon_row(m: usize, n: usize, r: usize) -> Vec<u32> {
    let mut rr = vec![0u32; m * n];
    for j in 0..=r {
        rr[(m - 1 - r + j) * n + (n - 1 - j)] = 1;
    }
    rr
}

/// Enumerates `GL_m(F_q) × GL_n(F_q)` and keeps the pairs with
/// `ε_r t(h, g) ε_r^{-1} ∈ P(mn-1,1)`, i.e. `h^T R_r g = λ R_r`; compares
/// with the predicted `t_Δ` set.
pub fn stabilizer_bruteforce(m: usize, n: usize, r: usize, q: u64, budget: u128) -> Result<StabilizerCheck> {
    let desc = StabilizerDescription::new(m, n, r)?;
    let pairs = gl_order(m, q).saturating_mul(gl_order(n, q));
    if pairs > budget {
        return Err(Error::BudgetExceeded { needed: pairs, budget });
    }
    let fq = Fq::new(q)?;
    let rr = reshaped_epsilon_row(m, n, r);
    let anchor = (m - 1 - r) * n + (n - 1);
    let gl_n = fq.all_invertible(n);
    let mut found = BTreeSet::new();
    let mut examined = 0u128;
    fq.for_each_invertible(m, &mut |h| {
        let ht_r = fq.matmul(&fq.transpose(h, m, m), &rr, m, m, n);
        for g in &gl_n {
            examined += 1;
            let img = fq.matmul(&ht_r, g, m, n, n);
            let lambda = img[anchor];
            if lambda != 0 && img.iter().zip(&rr).all(|(&x, &y)| x == fq.mul(lambda, y)) {
                found.insert(fq.kron(h, m, g, n));
            }
        }
    });
    let predicted = predicted_stabilizer(&desc, &fq);
    Ok(StabilizerCheck { m, n, r, q, pairs_examined: examined, found, predicted })
}

/// Generates `t(h, g)` for every parameter tuple `(A, B, λ, d, a, b)`.
fn predicted_stabilizer(desc: &StabilizerDescription, fq: &Fq) -> BTreeSet<Vec<u32>> {
    let (m, n, k) = (desc.m, desc.n, desc.k());
    let (ml, nl) = (m - k, n - k);
    let gl_ml = fq.all_invertible(ml);
    let gl_nl = fq.all_invertible(nl);
    let gl_k = fq.all_invertible(k);
    let w = {
        let mut w = vec![0u32; k * k];
        for i in 0..k {
            w[i * k + (k - 1 - i)] = 1;
        }
        w
    };
    let stars: Vec<Vec<u32>> = gl_k
        .iter()
        .map(|d| {
            let dti = fq.inverse(&fq.transpose(d, k, k), k).expect("invertible");
            fq.matmul(&fq.matmul(&w, &dti, k, k, k), &w, k, k, k)
        })
        .collect();
    let all_blocks = |rows: usize, cols: usize| -> Vec<Vec<u32>> {
        let len = rows * cols;
        let total = (fq.q as u64).pow(len as u32);
        (0..total)
            .map(|mut c| {
                let mut v = vec![0u32; len];
                for slot in v.iter_mut().rev() {
                    *slot = (c % fq.q as u64) as u32;
                    c /= fq.q as u64;
                }
                v
            })
            .collect()
    };
    let bs_h = all_blocks(ml, k);
    let bs_g = all_blocks(nl, k);
    let assemble = |size: usize, lead: usize, a: &[u32], b: &[u32], d: &[u32]| -> Vec<u32> {
        let mut x = vec![0u32; size * size];
        for i in 0..lead {
            for j in 0..lead {
                x[i * size + j] = a[i * lead + j];
            }
            for j in 0..k {
                x[i * size + lead + j] = b[i * k + j];
            }
        }
        for i in 0..k {
            for j in 0..k {
                x[(lead + i) * size + lead + j] = d[i * k + j];
            }
        }
        x
    };
    let mut out = BTreeSet::new();
    for (d, d_star) in gl_k.iter().zip(&stars) {
        for lambda in 1..fq.q {
            let ld: Vec<u32> = d_star.iter().map(|&x| fq.mul(lambda, x)).collect();
            for a_h in &gl_ml {
                for b_h in &bs_h {
                    let h = assemble(m, ml, a_h, b_h, &ld);
                    for a_g in &gl_nl {
                        for b_g in &bs_g {
                            let g = assemble(n, nl, a_g, b_g, d);
                            out.insert(fq.kron(&h, m, &g, n));
                        }
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::PrimeField;

    #[test]
    fn full_rank_case_has_six_elements() {
        let c = stabilizer_bruteforce(2, 2, 1, 2, 1_000_000).unwrap();
        assert_eq!(c.found.len(), 6);
        assert!(c.matches());
    }

    #[test]
    fn contains_identity() {
        let f = PrimeField::new(3).unwrap();
        let id2 = ExactMatrix::identity(2, &f.one());
        for r in 0..2 {
            let d = StabilizerDescription::new(2, 2, r).unwrap();
            assert!(d.contains(&id2, &id2));
            let c = stabilizer_bruteforce(2, 2, r, 3, 1_000_000).unwrap();
            let fq = Fq::new(3).unwrap();
            assert!(c.found.contains(&fq.kron(&[1, 0, 0, 1], 2, &[1, 0, 0, 1], 2)));
        }
    }

    #[test]
    fn membership_predicate_agrees_with_bruteforce() {
        let fq = Fq::new(2).unwrap();
        let (m, n) = (3, 2);
        for r in 0..n {
            let desc = StabilizerDescription::new(m, n, r).unwrap();
            let check = stabilizer_bruteforce(m, n, r, 2, 1_000_000).unwrap();
            for h in fq.all_invertible(m) {
                for g in fq.all_invertible(n) {
                    let member = desc.contains(&fq.to_exact(&h, m, m), &fq.to_exact(&g, n, n));
                    assert_eq!(member, check.found.contains(&fq.kron(&h, m, &g, n)));
                }
            }
        }
    }

    #[test]
    fn budget() {
        assert!(matches!(
            stabilizer_bruteforce(3, 2, 0, 2, 100),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
