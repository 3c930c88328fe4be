//! Independent oracles shared by the integration tests. Nothing here calls
//! the routine it is used to check.

#![allow(dead_code)]

use eisenkron::exact_algebra::{rat, ratio, Rational};
use eisenkron::ExactMatrix;
use num_traits::{One, Zero};
use rand::Rng;

/// Complete homogeneous symmetric polynomials `h_0, …, h_order` of `alphas`:
/// the coefficients of `Π (1 - α_i X)^{-1}`.
pub fn complete_homogeneous(alphas: &[Rational], order: usize) -> Vec<Rational> {
    let mut h = vec![Rational::zero(); order + 1];
    h[0] = Rational::one();
    for a in alphas {
        // multiply by 1/(1 - aX): h'_k = h_k + a h'_{k-1}
        for k in 1..=order {
            let prev = h[k - 1].clone();
            h[k] += a * prev;
        }
    }
    h
}

/// Number of `rows × cols` matrices over `F_q` of each rank, by brute force.
pub fn rank_counts(rows: usize, cols: usize, q: u64) -> Vec<u64> {
    let len = rows * cols;
    let mut counts = vec![0u64; rows.min(cols) + 1];
    for code in 0..q.pow(len as u32) {
        let mut c = code;
        let mut m = vec![0i64; len];
        for slot in m.iter_mut().rev() {
            *slot = (c % q) as i64;
            c /= q;
        }
        counts[rank_mod(&mut m, rows, cols, q as i64)] += 1;
    }
    counts
}

fn rank_mod(m: &mut [i64], rows: usize, cols: usize, q: i64) -> usize {
    let inv = |a: i64| (1..q).find(|b| a * b % q == 1).expect("unit");
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&i| m[i * cols + col] != 0) else { continue };
        for j in 0..cols {
            m.swap(p * cols + j, rank * cols + j);
        }
        let s = inv(m[rank * cols + col]);
        for i in 0..rows {
            if i != rank && m[i * cols + col] != 0 {
                let f = m[i * cols + col] * s % q;
                for j in 0..cols {
                    m[i * cols + j] = (m[i * cols + j] - f * m[rank * cols + j]).rem_euclid(q);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn valuation_i128(x: i128, p: i128) -> Option<u32> {
    if x == 0 {
        return None;
    }
    let (mut x, mut v) = (x.abs(), 0);
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    Some(v)
}

fn det_i128(m: &[i128], k: usize) -> i128 {
    if k == 1 {
        return m[0];
    }
    (0..k)
        .map(|j| {
            let minor: Vec<i128> = (1..k)
                .flat_map(|i| (0..k).filter(move |&c| c != j).map(move |c| (i, c)))
                .map(|(i, c)| m[i * k + c])
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[j] * det_i128(&minor, k - 1)
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Elementary-divisor exponents of an integer matrix at `p`, nonincreasing,
/// from determinantal divisors `d_k = min_{k×k minors} v_p(minor)`.
#[allow(clippy::needless_range_loop)]
pub fn elementary_divisor_exps(m: &[i128], n: usize, p: u64) -> Vec<i64> {
    let p = p as i128;
    let mut d = vec![0i64; n + 1];
    for k in 1..=n {
        let mut best: Option<u32> = None;
        for rows in subsets(n, k) {
            for cols in subsets(n, k) {
                let minor: Vec<i128> =
                    rows.iter().flat_map(|&i| cols.iter().map(move |&j| m[i * n + j])).collect();
                if let Some(v) = valuation_i128(det_i128(&minor, k), p) {
                    best = Some(best.map_or(v, |b| b.min(v)));
                }
            }
        }
        d[k] = best.expect("nonsingular") as i64;
    }
    let mut e: Vec<i64> = (1..=n).map(|k| d[k] - d[k - 1]).collect();
    e.reverse();
    e
}

/// `|K diag(ϖ^{r_1}, …, ϖ^{r_n}) K / K|`: lattices `M Z_p^n` with `M` in
/// column Hermite form (upper triangular, diagonal `p^{a_i}`, entries of row
/// `i` reduced mod `p^{a_i}`), counted by their elementary divisors.
pub fn cartan_cell_size(exps: &[i64], p: u64) -> u64 {
    let n = exps.len();
    let total: i64 = exps.iter().sum();
    let mut target = exps.to_vec();
    target.sort_unstable_by(|a, b| b.cmp(a));
    let mut count = 0;
    let mut diag = vec![0i64; n];
    fn diagonals(i: usize, left: i64, diag: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i + 1 == diag.len() {
            diag[i] = left;
            out.push(diag.clone());
            return;
        }
        for a in 0..=left {
            diag[i] = a;
            diagonals(i + 1, left - a, diag, out);
        }
    }
    let mut all = Vec::new();
    diagonals(0, total, &mut diag, &mut all);
    for diag in all {
        let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let ranges: Vec<i128> = slots.iter().map(|&(i, _)| (p as i128).pow(diag[i] as u32)).collect();
        let combos: i128 = ranges.iter().product();
        for mut code in 0..combos {
            let mut m = vec![0i128; n * n];
            for i in 0..n {
                m[i * n + i] = (p as i128).pow(diag[i] as u32);
            }
            for (&(i, j), &r) in slots.iter().zip(&ranges) {
                m[i * n + j] = code % r;
                code /= r;
            }
            if elementary_divisor_exps(&m, n, p) == target {
                count += 1;
            }
        }
    }
    count
}

/// Rows of `v_1', …, v_n'` by modified Gram–Schmidt applied to `u_n, u_{n-1}, …, u_1`.
pub fn modified_gram_schmidt(rows_bottom_up: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::new();
    for u in rows_bottom_up {
        let mut v = u.clone();
        for w in &out {
            let ww: f64 = w.iter().map(|x| x * x).sum();
            let c: f64 = v.iter().zip(w).map(|(a, b)| a * b).sum::<f64>() / ww;
            for (a, b) in v.iter_mut().zip(w) {
                *a -= c * b;
            }
        }
        out.push(v);
    }
    out
}

/// Random nondecreasing `t` in `(0, 1]^{n-1}` bounded away from 0.
pub fn random_torus<R: Rng>(n: usize, rng: &mut R) -> Vec<f64> {
    let mut t: Vec<f64> = (0..n.saturating_sub(1)).map(|_| rng.gen_range(0.05..=1.0)).collect();
    t.sort_by(|a, b| a.partial_cmp(b).unwrap());
    t
}

/// Random `rows × cols` rational matrix with entries `a/b`, `|a| ≤ 6`, `1 ≤ b ≤ 3`.
pub fn random_rational_matrix<R: Rng>(rows: usize, cols: usize, rng: &mut R) -> ExactMatrix<Rational> {
    ExactMatrix::from_fn(rows, cols, &rat(0), |_, _| ratio(rng.gen_range(-6..=6), rng.gen_range(1..=3)))
}

/// Random invertible rational matrix.
pub fn random_invertible_rational<R: Rng>(k: usize, rng: &mut R) -> ExactMatrix<Rational> {
    loop {
        let m = random_rational_matrix(k, k, rng);
        if m.is_invertible() {
            return m;
        }
    }
}

/// Random integer matrix with entries in `[-bound, bound]`.
pub fn random_integer_matrix<R: Rng>(n: usize, bound: i64, rng: &mut R) -> Vec<i128> {
    (0..n * n).map(|_| rng.gen_range(-bound..=bound) as i128).collect()
}

pub fn integer_matrix_to_exact(m: &[i128], n: usize) -> ExactMatrix<Rational> {
    ExactMatrix::from_fn(n, n, &rat(0), |i, j| rat(m[i * n + j] as i64))
}
