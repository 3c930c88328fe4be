use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

use super::{FieldElem, QRoot, RingElem};

/// A power series in the formal variable `X = q^{-s}` with coefficients in
/// `Q(√q)`, known modulo `X^{N+1}`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<QRoot>,
    q: u64,
}

impl TruncatedSeries {
    /// Builds a series of order `order`, padding or truncating `coeffs`.
    pub fn new(mut coeffs: Vec<QRoot>, q: u64, order: usize) -> Self {
        assert!(coeffs.iter().all(|c| c.q() == q), "coefficient radicand mismatch");
        coeffs.resize(order + 1, QRoot::zero(q));
        TruncatedSeries { coeffs, q }
    }

    pub fn zero(q: u64, order: usize) -> Self {
        TruncatedSeries::new(Vec::new(), q, order)
    }

    pub fn one(q: u64, order: usize) -> Self {
        TruncatedSeries::constant(QRoot::one(q), order)
    }

    pub fn constant(c: QRoot, order: usize) -> Self {
        let q = c.q();
        TruncatedSeries::new(vec![c], q, order)
    }

    /// `c · X^degree` (zero if `degree > order`).
    pub fn monomial(c: QRoot, degree: usize, order: usize) -> Self {
        let q = c.q();
        let mut s = TruncatedSeries::zero(q, order);
        if degree <= order {
            s.coeffs[degree] = c;
        }
        s
    }

    pub fn from_ints(coeffs: &[i64], q: u64, order: usize) -> Self {
        TruncatedSeries::new(coeffs.iter().map(|&c| QRoot::from_int(c, q)).collect(), q, order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn coeff(&self, k: usize) -> &QRoot {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[QRoot] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        TruncatedSeries::new(self.coeffs.clone(), self.q, order.min(self.order()))
    }

    /// Adds `c · X^degree` in place, ignoring terms beyond the order.
    pub fn add_monomial(&mut self, c: &QRoot, degree: usize) {
        if degree <= self.order() {
            let cur = std::mem::replace(&mut self.coeffs[degree], QRoot::zero(self.q));
            self.coeffs[degree] = cur + c.clone();
        }
    }

    pub fn scale(&self, c: &QRoot) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
            q: self.q,
        }
    }

    /// Truncated product; the result has the smaller of the two orders.
    pub fn mul_trunc(&self, other: &Self) -> Self {
        assert_eq!(self.q, other.q, "series radicand mismatch");
        let order = self.order().min(other.order());
        let mut out = vec![QRoot::zero(self.q); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                let slot = std::mem::replace(&mut out[i + j], QRoot::zero(self.q));
                out[i + j] = slot + a.clone() * b.clone();
            }
        }
        TruncatedSeries { coeffs: out, q: self.q }
    }

    /// Multiplicative inverse modulo `X^{N+1}`.
    pub fn invert(&self) -> Result<Self> {
        let c0_inv = self.coeffs[0].inv().ok_or(Error::ZeroConstantTerm)?;
        let n = self.order();
        let mut g: Vec<QRoot> = Vec::with_capacity(n + 1);
        g.push(c0_inv.clone());
        for k in 1..=n {
            let mut acc = QRoot::zero(self.q);
            for i in 1..=k {
                if !self.coeffs[i].is_zero() {
                    acc = acc + self.coeffs[i].clone() * g[k - i].clone();
                }
            }
            g.push(-(acc * c0_inv.clone()));
        }
        Ok(TruncatedSeries { coeffs: g, q: self.q })
    }

    /// Substitutes `X ↦ c · X^a`, keeping the order.
    pub fn substitute(&self, c: &QRoot, a: usize) -> Self {
        assert!(a >= 1);
        let mut out = TruncatedSeries::zero(self.q, self.order());
        let mut cpow = QRoot::one(self.q);
        for (k, coeff) in self.coeffs.iter().enumerate() {
            if k * a > self.order() {
                break;
            }
            out.coeffs[k * a] = coeff.clone() * cpow.clone();
            cpow = cpow * c.clone();
        }
        out
    }

    /// First degree at which the two series differ, compared up to the
    /// smaller order.
    pub fn first_mismatch(&self, other: &Self) -> Option<usize> {
        let order = self.order().min(other.order());
        (0..=order).find(|&k| self.coeffs[k] != other.coeffs[k])
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})X")?,
                _ => write!(f, "({c})X^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(X^{})", self.order() + 1)
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        assert_eq!(self.q, rhs.q, "series radicand mismatch");
        let order = self.order().min(rhs.order());
        TruncatedSeries {
            coeffs: (0..=order)
                .map(|k| self.coeffs[k].clone() + rhs.coeffs[k].clone())
                .collect(),
            q: self.q,
        }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self + &(-rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
            q: self.q,
        }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.mul_trunc(rhs)
    }
}
