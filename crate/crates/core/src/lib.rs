//! Exact computer algebra for XXX-type Bethe ansatz equations.
//!
//! The crate verifies and reproduces h-critical points of the A/B/C-type
//! discrete Bethe systems entirely over the rationals: no root extraction,
//! no floating point. The main pipelines are
//!
//! - [`bethe`]: initial data, T-polynomials and the exact criticality test;
//! - [`wronskian`]: discrete and divided Wronskians plus an identity suite;
//! - [`reproduction`]: fertility as exact linear algebra, immediate
//!   descendants and population atlases;
//! - [`fundamental`]: fundamental spaces, frames, difference operators,
//!   generating morphisms and Schubert/Bruhat positions;
//! - [`selfdual`]: h-dual spaces, the canonical bilinear form, Witt bases and
//!   the B/C folding;
//! - [`repcount`]: root systems, the shifted Weyl action and tensor-product
//!   multiplicities used as counting oracles.

pub mod bethe;
pub mod error;
pub mod exactalg;
pub mod fundamental;
pub mod repcount;
pub mod reproduction;
mod rng;
pub mod selfdual;
pub mod wronskian;

pub use error::Error;
pub use exactalg::{Poly, Rational, RationalFunction};
