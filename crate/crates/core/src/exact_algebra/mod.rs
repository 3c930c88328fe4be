//! Exact scalar and series arithmetic.
//!
//! Everything downstream is generic over [`RingElem`] / [`FieldElem`], which
//! are implemented for [`Rational`], [`PrimeFieldElem`] and [`QRoot`]. Ring
//! elements carry whatever context they need (the prime for `F_q`, the
//! radicand for `Q(√q)`) so that `zero_like` / `one_like` can build constants
//! without a separate context object.

mod json;
mod laurent;
mod prime_field;
mod qroot;
mod series;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use json::{
    qroot_from_json, qroot_to_json, rational_from_str, series_from_json, series_to_json,
};
pub use laurent::{LaurentPoly, RationalFunction};
pub use prime_field::{is_prime, PrimeField, PrimeFieldElem};
pub use qroot::{HalfInteger, QRoot};
pub use series::TruncatedSeries;

/// Arbitrary-precision rational numbers.
pub type Rational = num_rational::BigRational;

/// A commutative ring element that knows how to build its own constants.
pub trait RingElem:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;

    #[allow(clippy::wrong_self_convention)]
    fn from_i64_like(&self, v: i64) -> Self;

    /// Whether `self` and `other` belong to the same ring instance
    /// (same prime, same radicand).
    fn same_ring(&self, _other: &Self) -> bool {
        true
    }

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn pow_u(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }
}

/// A [`RingElem`] in a field.
pub trait FieldElem: RingElem {
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.clone() * i)
    }

    fn pow_i(&self, e: i64) -> Option<Self> {
        if e >= 0 {
            Some(self.pow_u(e as u64))
        } else {
            self.inv().map(|i| i.pow_u(e.unsigned_abs()))
        }
    }
}

impl RingElem for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_i64_like(&self, v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
}

impl FieldElem for Rational {
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Shorthand for an integer-valued rational.
pub fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Shorthand for `num / den`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// p-adic valuation of a nonzero rational. `None` for zero.
pub fn p_valuation(x: &Rational, p: u64) -> Option<i64> {
    if Zero::is_zero(x) {
        return None;
    }
    Some(int_valuation(x.numer(), p) - int_valuation(x.denom(), p))
}

fn int_valuation(n: &BigInt, p: u64) -> i64 {
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}

/// `p^e` as a rational, for any integer `e`.
pub fn rational_pow(p: u64, e: i64) -> Rational {
    let base = Rational::from_integer(BigInt::from(p));
    if e >= 0 {
        num_traits::pow(base, e as usize)
    } else {
        num_traits::pow(base.recip(), e.unsigned_abs() as usize)
    }
}
