use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{rational_pow, FieldElem, Rational, RingElem};

/// An element `a + b√q` of the quadratic field `Q(√q)`, `q` prime.
///
/// Equality is componentwise. Since `q` is prime, `√q` is irrational and the
/// representation is unique.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QRoot {
    a: Rational,
    b: Rational,
    q: u64,
}

/// A number in `(1/2)Z`, stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInteger {
    twice: i64,
}

impl HalfInteger {
    pub const ZERO: HalfInteger = HalfInteger { twice: 0 };

    pub fn from_twice(twice: i64) -> Self {
        HalfInteger { twice }
    }

    pub fn integer(v: i64) -> Self {
        HalfInteger { twice: 2 * v }
    }

    pub fn twice(self) -> i64 {
        self.twice
    }

    pub fn is_integral(self) -> bool {
        self.twice % 2 == 0
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integral() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl Add for HalfInteger {
    type Output = HalfInteger;
    fn add(self, rhs: Self) -> Self {
        HalfInteger::from_twice(self.twice + rhs.twice)
    }
}

impl Neg for HalfInteger {
    type Output = HalfInteger;
    fn neg(self) -> Self {
        HalfInteger::from_twice(-self.twice)
    }
}

impl QRoot {
    pub fn new(a: Rational, b: Rational, q: u64) -> Self {
        assert!(q >= 2, "QRoot radicand must be a prime, got {q}");
        QRoot { a, b, q }
    }

    pub fn from_rational(a: Rational, q: u64) -> Self {
        QRoot::new(a, Rational::zero(), q)
    }

    pub fn from_int(v: i64, q: u64) -> Self {
        QRoot::from_rational(Rational::from_integer(BigInt::from(v)), q)
    }

    pub fn zero(q: u64) -> Self {
        QRoot::from_int(0, q)
    }

    pub fn one(q: u64) -> Self {
        QRoot::from_int(1, q)
    }

    /// `√q` itself.
    pub fn sqrt_q(q: u64) -> Self {
        QRoot::new(Rational::zero(), Rational::one(), q)
    }

    /// `q^{k/2}` for any integer `k`.
    pub fn q_pow_half(q: u64, k: i64) -> Self {
        if k % 2 == 0 {
            QRoot::from_rational(rational_pow(q, k / 2), q)
        } else {
            // q^{k/2} = q^{(k-1)/2} · √q
            QRoot::new(Rational::zero(), rational_pow(q, (k - 1).div_euclid(2)), q)
        }
    }

    /// `q^{e}` for a half-integer `e`.
    pub fn q_pow(q: u64, e: HalfInteger) -> Self {
        QRoot::q_pow_half(q, e.twice())
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn sqrt_part(&self) -> &Rational {
        &self.b
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn is_rational(&self) -> bool {
        Zero::is_zero(&self.b)
    }

    /// Galois conjugate `a - b√q`.
    pub fn conjugate(&self) -> Self {
        QRoot::new(self.a.clone(), -self.b.clone(), self.q)
    }

    /// Field norm `a² - q b²`.
    pub fn norm(&self) -> Rational {
        let q = Rational::from_integer(BigInt::from(self.q));
        &self.a * &self.a - q * &self.b * &self.b
    }

    pub fn scale(&self, c: &Rational) -> Self {
        QRoot::new(&self.a * c, &self.b * c, self.q)
    }

    /// Floating-point value, for cross-checks only.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.a.to_f64().unwrap_or(f64::NAN)
            + self.b.to_f64().unwrap_or(f64::NAN) * (self.q as f64).sqrt()
    }

    fn check(&self, other: &QRoot) {
        assert_eq!(
            self.q, other.q,
            "QRoot arithmetic across different radicands"
        );
    }
}

impl fmt::Debug for QRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (Zero::is_zero(&self.a), Zero::is_zero(&self.b)) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*sqrt({})", self.b, self.q),
            (false, false) => write!(f, "{} + {}*sqrt({})", self.a, self.b, self.q),
        }
    }
}

impl Add for QRoot {
    type Output = QRoot;
    fn add(self, rhs: QRoot) -> QRoot {
        self.check(&rhs);
        QRoot::new(self.a + rhs.a, self.b + rhs.b, self.q)
    }
}

impl Sub for QRoot {
    type Output = QRoot;
    fn sub(self, rhs: QRoot) -> QRoot {
        self.check(&rhs);
        QRoot::new(self.a - rhs.a, self.b - rhs.b, self.q)
    }
}

impl Mul for QRoot {
    type Output = QRoot;
    fn mul(self, rhs: QRoot) -> QRoot {
        self.check(&rhs);
        let q = Rational::from_integer(BigInt::from(self.q));
        // (a + b√q)(c + d√q) = (ac + bdq) + (ad + bc)√q
        let a = &self.a * &rhs.a + &self.b * &rhs.b * q;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        QRoot::new(a, b, self.q)
    }
}

impl Neg for QRoot {
    type Output = QRoot;
    fn neg(self) -> QRoot {
        QRoot::new(-self.a, -self.b, self.q)
    }
}

impl RingElem for QRoot {
    fn zero_like(&self) -> Self {
        QRoot::zero(self.q)
    }
    fn one_like(&self) -> Self {
        QRoot::one(self.q)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.a) && Zero::is_zero(&self.b)
    }
    fn from_i64_like(&self, v: i64) -> Self {
        QRoot::from_int(v, self.q)
    }
    fn same_ring(&self, other: &Self) -> bool {
        self.q == other.q
    }
}

impl FieldElem for QRoot {
    fn inv(&self) -> Option<Self> {
        if RingElem::is_zero(self) {
            return None;
        }
        let n = self.norm();
        let c = self.conjugate();
        let inv_n = n.recip();
        Some(c.scale(&inv_n))
    }
}
