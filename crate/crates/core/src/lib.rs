//! Exact-arithmetic verification of the constructive content behind the
//! Kronecker-product identity between Eisenstein series on `GL(m)` and
//! `GL(mn)`.
//!
//! The crate is organised bottom-up:
//!
//! * [`exact_algebra`]: rationals, the quadratic field `Q(√q)`, prime
//!   fields, truncated power series and rational functions in `X = q^{-s}`.
//! * [`matgroup`]: dense matrices over exact rings and builders for the
//!   explicit group elements (Kronecker products, Weyl and unipotent
//!   representatives, `ε_r`, modulus characters).
//! * [`coset_geometry`]: the double cosets `P(mn-1,1) \ GL(mn) / t(GL(m), GL(n))`
//!   over finite fields: classification, witnesses, orbit enumeration and
//!   stabilizers.
//! * [`padic`]: Cartan decomposition by elementary divisors, the Macdonald
//!   volume of Cartan cells and dominant exponent enumeration.
//! * [`zeta`]: the unramified torus sums and the identity checkers.
//! * [`arch`]: the real Gram–Schmidt / Iwasawa recursion.

pub mod arch;
pub mod coset_geometry;
pub mod error;
pub mod exact_algebra;
pub mod matgroup;
pub mod padic;
pub mod zeta;

pub use error::{Error, Result};
pub use exact_algebra::{
    FieldElem, HalfInteger, LaurentPoly, PrimeField, PrimeFieldElem, QRoot, Rational,
    RationalFunction, RingElem, TruncatedSeries,
};
pub use matgroup::{ExactMatrix, ParabolicShape, StarContext, Valuation};
