//! Small dense matrices over `F_q` as plain residue arrays, for the
//! exhaustive sweeps where generic exact matrices would be too slow.

use rand::Rng;

use crate::error::Result;
use crate::exact_algebra::{PrimeField, PrimeFieldElem, RingElem};
use crate::matgroup::ExactMatrix;

/// Residue arithmetic mod a small prime.
#[derive(Clone, Debug)]
pub struct Fq {
    pub q: u32,
    inv: Vec<u32>,
}

impl Fq {
    pub fn new(q: u64) -> Result<Self> {
        let field = PrimeField::new(q)?;
        let q = field.q() as u32;
        let mut inv = vec![0; q as usize];
        for x in field.units() {
            inv[x.residue() as usize] = x.pow_u(q as u64 - 2).residue() as u32;
        }
        Ok(Fq { q, inv })
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.q
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.q as u64) as u32
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        (self.q - a) % self.q
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        self.inv[a as usize]
    }

    /// Smallest generator of `F_q^×`.
    pub fn primitive_root(&self) -> u32 {
        PrimeField::new(self.q as u64)
            .expect("prime")
            .primitive_root()
            .residue() as u32
    }

    /// Row-major `k × k` product.
    pub fn matmul(&self, a: &[u32], b: &[u32], rows: usize, inner: usize, cols: usize) -> Vec<u32> {
        let mut out = vec![0u32; rows * cols];
        for i in 0..rows {
            for t in 0..inner {
                let x = a[i * inner + t];
                if x == 0 {
                    continue;
                }
                for j in 0..cols {
                    out[i * cols + j] = self.add(out[i * cols + j], self.mul(x, b[t * cols + j]));
                }
            }
        }
        out
    }

    pub fn transpose(&self, a: &[u32], rows: usize, cols: usize) -> Vec<u32> {
        let mut out = vec![0u32; rows * cols];
        for i in 0..rows {
            for j in 0..cols {
                out[j * rows + i] = a[i * cols + j];
            }
        }
        out
    }

    pub fn rank(&self, a: &[u32], rows: usize, cols: usize) -> usize {
        let mut m = a.to_vec();
        let mut rank = 0;
        for col in 0..cols {
            let Some(p) = (rank..rows).find(|&i| m[i * cols + col] != 0) else {
                continue;
            };
            for j in 0..cols {
                m.swap(p * cols + j, rank * cols + j);
            }
            let inv = self.inv(m[rank * cols + col]);
            for i in rank + 1..rows {
                let f = self.mul(m[i * cols + col], inv);
                if f == 0 {
                    continue;
                }
                for j in col..cols {
                    let sub = self.mul(f, m[rank * cols + j]);
                    m[i * cols + j] = self.add(m[i * cols + j], self.neg(sub));
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    pub fn inverse(&self, a: &[u32], k: usize) -> Option<Vec<u32>> {
        let mut m = a.to_vec();
        let mut inv = vec![0u32; k * k];
        for i in 0..k {
            inv[i * k + i] = 1;
        }
        for col in 0..k {
            let p = (col..k).find(|&i| m[i * k + col] != 0)?;
            for j in 0..k {
                m.swap(p * k + j, col * k + j);
                inv.swap(p * k + j, col * k + j);
            }
            let s = self.inv(m[col * k + col]);
            for j in 0..k {
                m[col * k + j] = self.mul(m[col * k + j], s);
                inv[col * k + j] = self.mul(inv[col * k + j], s);
            }
            for i in 0..k {
                let f = m[i * k + col];
                if i == col || f == 0 {
                    continue;
                }
                let nf = self.neg(f);
                for j in 0..k {
                    m[i * k + j] = self.add(m[i * k + j], self.mul(nf, m[col * k + j]));
                    inv[i * k + j] = self.add(inv[i * k + j], self.mul(nf, inv[col * k + j]));
                }
            }
        }
        Some(inv)
    }

    /// `t(h, g)` for `h` of size `m` and `g` of size `n`.
    pub fn kron(&self, h: &[u32], m: usize, g: &[u32], n: usize) -> Vec<u32> {
        let size = m * n;
        let mut out = vec![0u32; size * size];
        for r in 0..size {
            for c in 0..size {
                out[r * size + c] = self.mul(h[(r / n) * m + c / n], g[(r % n) * n + c % n]);
            }
        }
        out
    }

    /// Visits every element of `GL_k(F_q)` in lexicographic row order.
    pub fn for_each_invertible(&self, k: usize, visit: &mut impl FnMut(&[u32])) {
        let mut rows = Vec::with_capacity(k * k);
        let mut basis: Vec<(usize, Vec<u32>)> = Vec::with_capacity(k);
        self.gl_rec(k, &mut rows, &mut basis, visit);
    }

    fn gl_rec(
        &self,
        k: usize,
        rows: &mut Vec<u32>,
        basis: &mut Vec<(usize, Vec<u32>)>,
        visit: &mut impl FnMut(&[u32]),
    ) {
        if basis.len() == k {
            visit(rows);
            return;
        }
        let mut v = vec![0u32; k];
        let total = (self.q as u64).pow(k as u32);
        for code in 0..total {
            let mut c = code;
            for slot in v.iter_mut().rev() {
                *slot = (c % self.q as u64) as u32;
                c /= self.q as u64;
            }
            // reduce against the echelon basis of the rows chosen so far
            let mut w = v.clone();
            for (pivot, b) in basis.iter() {
                let f = w[*pivot];
                if f != 0 {
                    let nf = self.neg(f);
                    for j in 0..k {
                        w[j] = self.add(w[j], self.mul(nf, b[j]));
                    }
                }
            }
            let Some(pivot) = w.iter().position(|&x| x != 0) else {
                continue;
            };
            let s = self.inv(w[pivot]);
            for x in w.iter_mut() {
                *x = self.mul(*x, s);
            }
            rows.extend_from_slice(&v);
            basis.push((pivot, w));
            self.gl_rec(k, rows, basis, visit);
            basis.pop();
            rows.truncate(rows.len() - k);
        }
    }

    pub fn all_invertible(&self, k: usize) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        self.for_each_invertible(k, &mut |m| out.push(m.to_vec()));
        out
    }

    pub fn random_invertible<R: Rng + ?Sized>(&self, k: usize, rng: &mut R) -> Vec<u32> {
        loop {
            let m: Vec<u32> = (0..k * k).map(|_| rng.gen_range(0..self.q)).collect();
            if self.rank(&m, k, k) == k {
                return m;
            }
        }
    }

    pub fn to_exact(&self, a: &[u32], rows: usize, cols: usize) -> ExactMatrix<PrimeFieldElem> {
        let field = PrimeField::new(self.q as u64).expect("prime");
        ExactMatrix::from_fn(rows, cols, &field.zero(), |i, j| field.elem(a[i * cols + j] as i64))
    }

    pub fn from_exact(&self, m: &ExactMatrix<PrimeFieldElem>) -> Vec<u32> {
        m.entries().iter().map(|x| x.residue() as u32).collect()
    }
}

/// `|GL_k(F_q)| = Π_{i<k} (q^k - q^i)`, saturating.
pub fn gl_order(k: usize, q: u64) -> u128 {
    let qk = (q as u128).saturating_pow(k as u32);
    (0..k as u32).fold(1u128, |acc, i| acc.saturating_mul(qk - (q as u128).pow(i)))
}
