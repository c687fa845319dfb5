//! Hendriksen-van Rossum (HR) Laurent biorthogonal polynomials, Darboux
//! transformations of the associated generalized eigenvalue problem, and the
//! four exceptional HR families with their biorthogonal partners and weights.
//!
//! The crate is organized in two layers:
//!
//! * an exact layer over arbitrary-precision rationals — Laurent polynomials
//!   ([`LaurentPoly`]), rational functions ([`RationalFunc`]), quasi-rational
//!   functions ([`QuasiRationalFunc`]) and second-order operator pencils
//!   ([`DiffOp2`], [`Pencil`]) — in which every operator identity of the
//!   construction is decided by exact normalization;
//! * a numeric layer — branch-correct evaluation on the unit circle and
//!   double-exponential quadrature ([`quad`]) — for the biorthogonality
//!   relations, norms and moments that involve Γ-function ratios.
//!
//! The [`verify`] module packages both layers into named check suites; the
//! `xhr` binary exposes them on the command line.

pub mod diffop;
pub mod error;
pub mod exceptional;
pub mod gamma;
pub mod hr;
pub mod laurent;
pub mod quad;
pub mod quasi;
pub mod rat;
pub mod ratfunc;
pub mod verify;

pub use diffop::{DiffOp1, DiffOp2, Pencil};
pub use error::{Error, Result};
pub use exceptional::{ExceptionalFamily, Multistep, SeedSpec};
pub use hr::{EigenFamily, HrParams, Side};
pub use laurent::LaurentPoly;
pub use quad::{CirclePoint, QuadratureRule};
pub use quasi::QuasiRationalFunc;
pub use rat::Rational;
pub use ratfunc::RationalFunc;
