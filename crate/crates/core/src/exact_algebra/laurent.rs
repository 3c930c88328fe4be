use std::fmt;

use crate::error::{Error, Result};

use super::{QRoot, RingElem, TruncatedSeries};

/// A Laurent polynomial `Σ c_k X^k` over `Q(√q)`, `k` ranging over a finite
/// window that may start below zero.
///
/// Stored trimmed: the first and last stored coefficients are nonzero, the
/// zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<QRoot>,
    q: u64,
}

impl LaurentPoly {
    pub fn new(low: i64, coeffs: Vec<QRoot>, q: u64) -> Self {
        let mut p = LaurentPoly { low, coeffs, q };
        p.trim();
        p
    }

    pub fn zero(q: u64) -> Self {
        LaurentPoly { low: 0, coeffs: Vec::new(), q }
    }

    pub fn one(q: u64) -> Self {
        LaurentPoly::monomial(QRoot::one(q), 0)
    }

    pub fn monomial(c: QRoot, degree: i64) -> Self {
        let q = c.q();
        LaurentPoly::new(degree, vec![c], q)
    }

    pub fn from_ints(coeffs: &[i64], q: u64) -> Self {
        LaurentPoly::new(0, coeffs.iter().map(|&c| QRoot::from_int(c, q)).collect(), q)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn low_degree(&self) -> i64 {
        self.low
    }

    pub fn high_degree(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, k: i64) -> QRoot {
        if k < self.low || k > self.high_degree() {
            QRoot::zero(self.q)
        } else {
            self.coeffs[(k - self.low) as usize].clone()
        }
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.q, other.q, "Laurent radicand mismatch");
        if self.is_zero() || other.is_zero() {
            return LaurentPoly::zero(self.q);
        }
        let mut out = vec![QRoot::zero(self.q); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                let slot = std::mem::replace(&mut out[i + j], QRoot::zero(self.q));
                out[i + j] = slot + a.clone() * b.clone();
            }
        }
        LaurentPoly::new(self.low + other.low, out, self.q)
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.q, other.q, "Laurent radicand mismatch");
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = self.high_degree().max(other.high_degree());
        let coeffs = (low..=high).map(|k| self.coeff(k) + other.coeff(k)).collect();
        LaurentPoly::new(low, coeffs, self.q)
    }

    /// Multiplies by `X^k`.
    pub fn shift(&self, k: i64) -> LaurentPoly {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly { low: self.low + k, coeffs: self.coeffs.clone(), q: self.q }
    }

    /// The power series of a polynomial (no negative exponents) truncated
    /// to `order`.
    pub fn to_series(&self, order: usize) -> Result<TruncatedSeries> {
        if !self.is_zero() && self.low < 0 {
            return Err(Error::DomainError(
                "Laurent polynomial has negative powers of X".into(),
            ));
        }
        let mut s = TruncatedSeries::zero(self.q, order);
        for (i, c) in self.coeffs.iter().enumerate() {
            s.add_monomial(c, (self.low as usize) + i);
        }
        Ok(s)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let k = self.low + i as i64;
            if k == 0 {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})X^{k}")?;
            }
        }
        Ok(())
    }
}

/// A quotient of Laurent polynomials in `X`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalFunction {
    numerator: LaurentPoly,
    denominator: LaurentPoly,
}

impl RationalFunction {
    pub fn new(numerator: LaurentPoly, denominator: LaurentPoly) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::DomainError("zero denominator".into()));
        }
        if numerator.q() != denominator.q() {
            return Err(Error::RingMismatch("numerator and denominator radicands differ".into()));
        }
        Ok(RationalFunction { numerator, denominator })
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.denominator
    }

    pub fn q(&self) -> u64 {
        self.numerator.q()
    }

    pub fn mul(&self, other: &RationalFunction) -> RationalFunction {
        RationalFunction {
            numerator: self.numerator.mul(&other.numerator),
            denominator: self.denominator.mul(&other.denominator),
        }
    }

    /// Inverse; fails on the zero function.
    pub fn recip(&self) -> Result<RationalFunction> {
        RationalFunction::new(self.denominator.clone(), self.numerator.clone())
    }

    /// Power-series expansion modulo `X^{N+1}`.
    ///
    /// Negative powers are cleared from both numerator and denominator first;
    /// the denominator must then have a nonzero constant term.
    pub fn expand(&self, order: usize) -> Result<TruncatedSeries> {
        let clear = -self.numerator.low_degree().min(self.denominator.low_degree()).min(0);
        let num = self.numerator.shift(clear);
        let den = self.denominator.shift(clear);
        if den.coeff(0).is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let den_inv = den.to_series(order)?.invert()?;
        Ok(num.to_series(order)?.mul_trunc(&den_inv))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] / [{}]", self.numerator, self.denominator)
    }
}
