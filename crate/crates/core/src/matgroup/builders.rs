use crate::error::{Error, Result};
use crate::exact_algebra::RingElem;

use super::ExactMatrix;

/// The Kronecker product `t(h, g)`: block `(i, j)` is `h[i][j] · g`.
pub fn kronecker<T: RingElem>(h: &ExactMatrix<T>, g: &ExactMatrix<T>) -> Result<ExactMatrix<T>> {
    if !h.is_square() || !g.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "kronecker needs square factors, got {}x{} and {}x{}",
            h.rows(),
            h.cols(),
            g.rows(),
            g.cols()
        )));
    }
    if !h.zero_elem().same_ring(g.zero_elem()) {
        return Err(Error::RingMismatch("kronecker factors over different rings".into()));
    }
    let (m, n) = (h.rows(), g.rows());
    Ok(ExactMatrix::from_fn(m * n, m * n, h.zero_elem(), |r, c| {
        let hij = h.get(r / n, c / n);
        if hij.is_zero() {
            h.zero_elem().clone()
        } else {
            hij.clone() * g.get(r % n, c % n).clone()
        }
    }))
}

/// `w_j`: the permutation matrix with rows `e_1, …, e_{j-1}, e_{j+1}, …, e_N, e_j`
/// (1-based `j`).
pub fn weyl_rep<T: RingElem>(j: usize, size: usize, like: &T) -> Result<ExactMatrix<T>> {
    if j == 0 || j > size {
        return Err(Error::IndexOutOfRange { index: j, max: size });
    }
    let mut m = ExactMatrix::zeros(size, size, like);
    let one = like.one_like();
    for row in 0..size {
        // 0-based column of the unit vector in this row
        let col = if row + 1 < j {
            row
        } else if row + 1 < size {
            row + 1
        } else {
            j - 1
        };
        m.set(row, col, one.clone());
    }
    Ok(m)
}

/// `u_j(v)`: the identity with row `j` replaced by `(0_{j-1}, 1, v)`,
/// `v` of length `N - j`.
pub fn unipotent_rep<T: RingElem>(j: usize, v: &[T], size: usize, like: &T) -> Result<ExactMatrix<T>> {
    if j == 0 || j > size {
        return Err(Error::IndexOutOfRange { index: j, max: size });
    }
    if v.len() != size - j {
        return Err(Error::DimensionMismatch(format!(
            "u_{j} needs a vector of length {}, got {}",
            size - j,
            v.len()
        )));
    }
    let mut m = ExactMatrix::identity(size, like);
    for (k, x) in v.iter().enumerate() {
        m.set(j - 1, j + k, x.clone());
    }
    Ok(m)
}

/// The vector `b_r = (e_{n-1}, e_{n-2}, …, e_{n-r})`, each `e_k` a unit row
/// vector of length `n`.
pub fn b_vector<T: RingElem>(n: usize, r: usize, like: &T) -> Vec<T> {
    let mut v = vec![like.zero_like(); r * n];
    for k in 0..r {
        // e_{n-1-k}, 1-based
        v[k * n + (n - 2 - k)] = like.one_like();
    }
    v
}

/// The double-coset representative `ε_r = w_{(m-r)n} · u_{(m-r)n}(b_r)`.
pub fn epsilon_rep<T: RingElem>(m: usize, n: usize, r: usize, like: &T) -> Result<ExactMatrix<T>> {
    if n == 0 || n > m || r >= n {
        return Err(Error::RankOutOfRange { r, m, n });
    }
    let size = m * n;
    let j = (m - r) * n;
    let w = weyl_rep(j, size, like)?;
    let u = unipotent_rep(j, &b_vector(n, r, like), size, like)?;
    w.mul(&u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::{rat, Rational};

    fn one() -> Rational {
        rat(1)
    }

    fn q(rows: &[&[i64]]) -> ExactMatrix<Rational> {
        ExactMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn kronecker_of_identities() {
        let i2 = ExactMatrix::identity(2, &one());
        assert!(kronecker(&i2, &i2).unwrap().is_identity());
    }

    #[test]
    fn kronecker_swap_is_block_antidiagonal() {
        let s = q(&[&[0, 1], &[1, 0]]);
        let i2 = ExactMatrix::identity(2, &one());
        let k = kronecker(&s, &i2).unwrap();
        let expected = q(&[&[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, 1, 0, 0]]);
        assert_eq!(k, expected);
    }

    #[test]
    fn kronecker_diagonal() {
        let h = ExactMatrix::diagonal(&[rat(2), rat(3)], &one());
        let g = ExactMatrix::diagonal(&[rat(5), rat(7)], &one());
        let k = kronecker(&h, &g).unwrap();
        assert_eq!(k, ExactMatrix::diagonal(&[rat(10), rat(14), rat(15), rat(21)], &one()));
        assert_eq!(k.det().unwrap(), rat(44100));
    }

    #[test]
    fn kronecker_rejects_rectangular() {
        let a = q(&[&[1, 2]]);
        assert!(matches!(kronecker(&a, &a), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn weyl_examples() {
        assert!(weyl_rep(4, 4, &one()).unwrap().is_identity());
        let w = weyl_rep(2, 4, &one()).unwrap();
        assert_eq!(w, q(&[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1], &[0, 1, 0, 0]]));
        assert_eq!(weyl_rep(0, 4, &one()), Err(Error::IndexOutOfRange { index: 0, max: 4 }));
        assert!(weyl_rep(5, 4, &one()).is_err());
    }

    #[test]
    fn unipotent_examples() {
        let u = unipotent_rep(2, &[rat(1), rat(0)], 4, &one()).unwrap();
        assert_eq!(u.row(1), &[rat(0), rat(1), rat(1), rat(0)]);
        assert!(unipotent_rep(2, &[rat(0), rat(0)], 4, &one()).unwrap().is_identity());
        assert!(unipotent_rep(2, &[rat(1)], 4, &one()).is_err());
    }

    #[test]
    fn unipotent_group_law() {
        let v = [rat(1), rat(-2), rat(3)];
        let w = [rat(4), rat(5), rat(-6)];
        let sum: Vec<_> = v.iter().zip(&w).map(|(a, b)| a + b).collect();
        let lhs = &unipotent_rep(1, &v, 4, &one()).unwrap() * &unipotent_rep(1, &w, 4, &one()).unwrap();
        assert_eq!(lhs, unipotent_rep(1, &sum, 4, &one()).unwrap());
    }

    #[test]
    fn epsilon_examples() {
        assert!(epsilon_rep(2, 2, 0, &one()).unwrap().is_identity());
        let e = epsilon_rep(2, 2, 1, &one()).unwrap();
        assert_eq!(e, q(&[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1], &[0, 1, 1, 0]]));
        assert_eq!(epsilon_rep(2, 2, 2, &one()), Err(Error::RankOutOfRange { r: 2, m: 2, n: 2 }));
        assert!(epsilon_rep(2, 3, 0, &one()).is_err());
    }

    #[test]
    fn epsilon_structure() {
        for (m, n) in [(2, 2), (3, 2), (3, 3), (4, 2), (4, 3)] {
            for r in 0..n {
                let e = epsilon_rep(m, n, r, &one()).unwrap();
                assert!(e.is_invertible());
                let single = (0..m * n)
                    .filter(|&i| e.row(i).iter().filter(|x| !RingElem::is_zero(*x)).count() == 1)
                    .count();
                assert_eq!(single, m * n - r.min(1), "({m},{n},{r})");
                let single_cols = (0..m * n)
                    .filter(|&j| (0..m * n).filter(|&i| !RingElem::is_zero(e.get(i, j))).count() == 1)
                    .count();
                assert_eq!(single_cols, m * n - r, "({m},{n},{r})");
                assert!(e.entries().iter().all(|x| *x == rat(0) || *x == rat(1)));
                // last row reshaped m×n has rank r+1
                let last = e.row(m * n - 1).to_vec();
                let reshaped = ExactMatrix::from_vec(m, n, last, &one()).unwrap();
                assert_eq!(reshaped.rank(), r + 1);
            }
        }
    }
}
