use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

use super::{FieldElem, RingElem};

/// Deterministic trial-division primality test; moduli here are tiny.
pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The prime field `F_q` as a factory for its elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    q: u64,
}

impl PrimeField {
    pub fn new(q: u64) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        if q > u32::MAX as u64 {
            return Err(Error::DomainError(format!("prime {q} too large")));
        }
        Ok(PrimeField { q })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn elem(&self, v: i64) -> PrimeFieldElem {
        PrimeFieldElem {
            residue: v.rem_euclid(self.q as i64) as u64,
            q: self.q,
        }
    }

    pub fn zero(&self) -> PrimeFieldElem {
        self.elem(0)
    }

    pub fn one(&self) -> PrimeFieldElem {
        self.elem(1)
    }

    /// All elements `0, 1, …, q-1`.
    pub fn elements(&self) -> impl Iterator<Item = PrimeFieldElem> + '_ {
        (0..self.q).map(move |r| PrimeFieldElem { residue: r, q: self.q })
    }

    /// Nonzero elements.
    pub fn units(&self) -> impl Iterator<Item = PrimeFieldElem> + '_ {
        (1..self.q).map(move |r| PrimeFieldElem { residue: r, q: self.q })
    }

    /// Smallest generator of the cyclic group `F_q^×`.
    pub fn primitive_root(&self) -> PrimeFieldElem {
        let q = self.q;
        if q == 2 {
            return self.one();
        }
        let order = q - 1;
        let mut factors = Vec::new();
        let mut rest = order;
        let mut d = 2;
        while d * d <= rest {
            if rest.is_multiple_of(d) {
                factors.push(d);
                while rest.is_multiple_of(d) {
                    rest /= d;
                }
            }
            d += 1;
        }
        if rest > 1 {
            factors.push(rest);
        }
        (2..q)
            .map(|g| self.elem(g as i64))
            .find(|g| factors.iter().all(|&f| !g.pow_u(order / f).is_one()))
            .expect("F_q^x is cyclic")
    }
}

/// A residue in `[0, q)` for a prime `q`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeFieldElem {
    residue: u64,
    q: u64,
}

impl PrimeFieldElem {
    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.q, other.q, "F_q arithmetic across different primes");
    }
}

impl fmt::Debug for PrimeFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.residue, self.q)
    }
}

impl fmt::Display for PrimeFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

impl Add for PrimeFieldElem {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.check(&rhs);
        PrimeFieldElem {
            residue: (self.residue + rhs.residue) % self.q,
            q: self.q,
        }
    }
}

impl Sub for PrimeFieldElem {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.check(&rhs);
        PrimeFieldElem {
            residue: (self.residue + self.q - rhs.residue) % self.q,
            q: self.q,
        }
    }
}

impl Mul for PrimeFieldElem {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.check(&rhs);
        PrimeFieldElem {
            residue: (self.residue * rhs.residue) % self.q,
            q: self.q,
        }
    }
}

impl Neg for PrimeFieldElem {
    type Output = Self;
    fn neg(self) -> Self {
        PrimeFieldElem {
            residue: (self.q - self.residue) % self.q,
            q: self.q,
        }
    }
}

impl RingElem for PrimeFieldElem {
    fn zero_like(&self) -> Self {
        PrimeFieldElem { residue: 0, q: self.q }
    }
    fn one_like(&self) -> Self {
        PrimeFieldElem { residue: 1 % self.q, q: self.q }
    }
    fn is_zero(&self) -> bool {
        self.residue == 0
    }
    fn from_i64_like(&self, v: i64) -> Self {
        PrimeFieldElem {
            residue: v.rem_euclid(self.q as i64) as u64,
            q: self.q,
        }
    }
    fn same_ring(&self, other: &Self) -> bool {
        self.q == other.q
    }
}

impl FieldElem for PrimeFieldElem {
    fn inv(&self) -> Option<Self> {
        if self.residue == 0 {
            None
        } else {
            // Fermat: x^{q-2}
            Some(self.pow_u(self.q - 2))
        }
    }
}
