//! Matrices over exact rings and the explicit group elements built from them.

mod builders;
mod json;
mod matrix;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_algebra::{p_valuation, rat, rational_pow, FieldElem, Rational, RingElem};

pub use builders::{b_vector, epsilon_rep, kronecker, unipotent_rep, weyl_rep};
pub use json::{matrix_from_json, matrix_to_json};
pub use matrix::{Echelon, ExactMatrix};

/// Block sizes `(ℓ, r)` of the standard parabolic `P(ℓ, r)` of `GL(ℓ + r)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ParabolicShape {
    pub l: usize,
    pub r: usize,
}

impl ParabolicShape {
    pub fn new(l: usize, r: usize) -> Self {
        ParabolicShape { l, r }
    }

    pub fn size(&self) -> usize {
        self.l + self.r
    }

    /// Whether `p` is block upper triangular of this shape (the lower-left
    /// `r × ℓ` block vanishes).
    pub fn contains<T: RingElem>(&self, p: &ExactMatrix<T>) -> bool {
        p.rows() == self.size()
            && p.cols() == self.size()
            && (self.l..self.size()).all(|i| (0..self.l).all(|j| p.get(i, j).is_zero()))
    }

    /// The Levi blocks `(A, B)` of `p = [[A, *], [0, B]]`.
    pub fn levi_blocks<T: RingElem>(&self, p: &ExactMatrix<T>) -> Result<(ExactMatrix<T>, ExactMatrix<T>)> {
        if !self.contains(p) {
            return Err(Error::NotInParabolic { l: self.l, r: self.r });
        }
        Ok((p.block(0, 0, self.l, self.l), p.block(self.l, self.l, self.r, self.r)))
    }
}

/// Carries the anti-diagonal matrix `w̃` of a given size and the twisted
/// transpose-inverse `d* = w̃^{-1} (d^T)^{-1} w̃` built from it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StarContext {
    pub size: usize,
}

impl StarContext {
    pub fn new(size: usize) -> Self {
        StarContext { size }
    }

    /// Ones on the anti-diagonal; an involution.
    pub fn w_tilde<T: RingElem>(&self, like: &T) -> ExactMatrix<T> {
        let n = self.size;
        ExactMatrix::from_fn(n, n, like, |i, j| {
            if i + j + 1 == n {
                like.one_like()
            } else {
                like.zero_like()
            }
        })
    }

    pub fn star<T: FieldElem>(&self, d: &ExactMatrix<T>) -> Result<ExactMatrix<T>> {
        if d.rows() != self.size || !d.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "star context of size {} applied to {}x{}",
                self.size,
                d.rows(),
                d.cols()
            )));
        }
        let w = self.w_tilde(d.zero_elem());
        // w̃ is its own inverse
        Ok(&(&w * &d.star()?) * &w)
    }
}

/// How absolute values of rationals are taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Valuation {
    /// The ordinary absolute value on `Q`.
    Archimedean,
    /// `|x|_p = p^{-v_p(x)}`.
    PAdic { p: u64 },
}

impl Valuation {
    pub fn abs(&self, x: &Rational) -> Rational {
        match self {
            Valuation::Archimedean => x.abs(),
            Valuation::PAdic { p } => match p_valuation(x, *p) {
                None => Rational::zero(),
                Some(v) => rational_pow(*p, -v),
            },
        }
    }
}

/// `(det A)^r · (det B)^{-ℓ}` for `p = [[A, *], [0, B]] ∈ P(ℓ, r)`, without
/// absolute values.
pub fn modulus_character<T: FieldElem>(shape: ParabolicShape, p: &ExactMatrix<T>) -> Result<T> {
    let (a, b) = shape.levi_blocks(p)?;
    let da = a.det()?;
    let db = b.det()?;
    let db_pow = db.pow_i(-(shape.l as i64)).ok_or(Error::SingularBlock)?;
    if da.is_zero() {
        return Err(Error::SingularBlock);
    }
    Ok(da.pow_u(shape.r as u64) * db_pow)
}

/// `δ_P(p) = |det A|^r · |det B|^{-ℓ}` under the chosen absolute value.
pub fn modulus_character_abs(
    shape: ParabolicShape,
    p: &ExactMatrix<Rational>,
    valuation: Valuation,
) -> Result<Rational> {
    Ok(valuation.abs(&modulus_character(shape, p)?))
}

/// Both sides of the modulus-character compatibility for `ε̃ = ε_{n-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModulusCheck {
    /// `ε̃ t(p, D*) ε̃^{-1}`.
    pub conjugate: ExactMatrix<Rational>,
    pub in_parabolic: bool,
    /// Bottom-right entry of the conjugate.
    pub alpha: Rational,
    /// `δ_{P(mn-1,1)}` of the conjugate.
    pub lhs: Rational,
    /// `δ_{P(m-n,n)}(p)`.
    pub rhs: Rational,
}

impl ModulusCheck {
    pub fn holds(&self) -> bool {
        self.in_parabolic && self.alpha == rat(1) && self.lhs == self.rhs
    }
}

/// Evaluates `δ_{P(mn-1,1)}(ε̃ t(p, D*) ε̃^{-1})` and `δ_{P(m-n,n)}(p)` for
/// `p = [[A, B], [0, D]]`, with `D*` the `w̃`-twisted star of size `n`.
pub fn modulus_compatibility(m: usize, n: usize, p: &ExactMatrix<Rational>) -> Result<ModulusCheck> {
    if n == 0 || n > m {
        return Err(Error::BadShape(format!("need 1 <= n <= m, got (m, n) = ({m}, {n})")));
    }
    let shape = ParabolicShape::new(m - n, n);
    let (a, d) = shape.levi_blocks(p)?;
    if (m > n && !a.is_invertible()) || !d.is_invertible() {
        return Err(Error::SingularBlock);
    }
    let one = rat(1);
    let d_star = StarContext::new(n).star(&d)?;
    let eps = epsilon_rep(m, n, n - 1, &one)?;
    let conjugate = &(&eps * &kronecker(p, &d_star)?) * &eps.inverse()?;
    let big = ParabolicShape::new(m * n - 1, 1);
    let in_parabolic = big.contains(&conjugate);
    let alpha = conjugate.get(m * n - 1, m * n - 1).clone();
    let lhs = if in_parabolic {
        modulus_character_abs(big, &conjugate, Valuation::Archimedean)?
    } else {
        Rational::zero()
    };
    let rhs = modulus_character_abs(shape, p, Valuation::Archimedean)?;
    Ok(ModulusCheck { conjugate, in_parabolic, alpha, lhs, rhs })
}

/// True iff the conjugate lies in `P(mn-1,1)`, its corner is 1 and the two
/// modulus characters agree.
pub fn verify_modulus_compatibility(m: usize, n: usize, p: &ExactMatrix<Rational>) -> Result<bool> {
    Ok(modulus_compatibility(m, n, p)?.holds())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::{ratio, PrimeField};

    fn q(rows: &[&[i64]]) -> ExactMatrix<Rational> {
        ExactMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn w_tilde_is_involution() {
        for n in 1..5 {
            let w = StarContext::new(n).w_tilde(&rat(1));
            assert!((&w * &w).is_identity());
        }
    }

    #[test]
    fn twisted_star_is_involution() {
        let ctx = StarContext::new(3);
        let d = q(&[&[2, 1, 0], &[0, 1, 5], &[1, 0, 3]]);
        assert_eq!(ctx.star(&ctx.star(&d).unwrap()).unwrap(), d);
    }

    #[test]
    fn modulus_examples() {
        let one = rat(1);
        let id = ExactMatrix::identity(3, &one);
        assert_eq!(modulus_character(ParabolicShape::new(2, 1), &id).unwrap(), one);
        let p = ExactMatrix::diagonal(&[rat(4), rat(7)], &one);
        assert_eq!(modulus_character(ParabolicShape::new(1, 1), &p).unwrap(), ratio(4, 7));
        let p = ExactMatrix::diagonal(&[rat(2), rat(3), rat(5)], &one);
        assert_eq!(modulus_character(ParabolicShape::new(2, 1), &p).unwrap(), ratio(6, 25));
    }

    #[test]
    fn not_in_parabolic() {
        let p = q(&[&[1, 0], &[1, 1]]);
        assert_eq!(
            modulus_character(ParabolicShape::new(1, 1), &p),
            Err(Error::NotInParabolic { l: 1, r: 1 })
        );
    }

    #[test]
    fn valuations() {
        assert_eq!(Valuation::Archimedean.abs(&ratio(-3, 4)), ratio(3, 4));
        assert_eq!(Valuation::PAdic { p: 2 }.abs(&ratio(-3, 4)), rat(4));
        assert_eq!(Valuation::PAdic { p: 3 }.abs(&rat(18)), ratio(1, 9));
    }

    #[test]
    fn modulus_compatibility_examples() {
        let one = rat(1);
        let c = modulus_compatibility(2, 2, &ExactMatrix::identity(2, &one)).unwrap();
        assert!(c.holds());
        assert_eq!(c.lhs, one);
        let c = modulus_compatibility(2, 1, &ExactMatrix::diagonal(&[rat(3), rat(1)], &one)).unwrap();
        assert!(c.holds());
        assert_eq!(c.rhs, rat(3));
        assert_eq!(c.lhs, rat(3));
        let p = q(&[&[2, 1, -1], &[0, 3, 1], &[0, 2, 5]]);
        let c = modulus_compatibility(3, 2, &p).unwrap();
        assert!(c.holds(), "{c:?}");
    }

    #[test]
    fn singular_block_rejected() {
        let p = q(&[&[0, 1], &[0, 1]]);
        assert_eq!(modulus_compatibility(2, 1, &p), Err(Error::SingularBlock));
    }

    #[test]
    fn levi_blocks_over_prime_field() {
        let f = PrimeField::new(3).unwrap();
        let p = ExactMatrix::from_rows(vec![
            vec![f.elem(1), f.elem(2)],
            vec![f.elem(0), f.elem(2)],
        ])
        .unwrap();
        let (a, b) = ParabolicShape::new(1, 1).levi_blocks(&p).unwrap();
        assert_eq!(a.get(0, 0), &f.elem(1));
        assert_eq!(b.get(0, 0), &f.elem(2));
        assert_eq!(modulus_character(ParabolicShape::new(1, 1), &p).unwrap(), f.elem(2));
    }
}
