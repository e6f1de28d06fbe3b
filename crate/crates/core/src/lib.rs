//! K-theoretic quiver polynomials for Dynkin quivers, computed with iterated
//! residues.
//!
//! The crate is generic over an exact coefficient field ([`Scalar`]); the
//! aliases below fix it to arbitrary precision rationals.

pub mod acceptance;
pub mod cohomology;
pub mod error;
pub mod groth;
pub mod kclass;
pub mod linsolve;
pub mod quiver;
pub mod reineke;
pub mod residue;
pub mod scalar;
pub mod symbolic;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Default coefficient field.
pub type Rational = num_rational::BigRational;
/// Laurent polynomials over [`Rational`].
pub type Poly = symbolic::LaurentPoly<Rational>;
/// Factored rational functions over [`Rational`].
pub type Frac = symbolic::FactoredRational<Rational>;
