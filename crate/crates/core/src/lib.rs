//! Exact computations for the moduli of n-pointed curves of arithmetic genus
//! one: equation systems, Groebner-basis verification, path-algebra rewriting
//! and Hochschild cohomology of the associated Ext-algebra.
//!
//! The numeric core is generic over [`exact_math::Field`]; concrete aliases
//! for rational and prime-field coefficients are exported here.

pub mod einf_algebra;
pub mod exact_math;
pub mod grassmannian;
pub mod moduli;
pub mod ncrewrite;
pub mod polyring;
pub mod verify;

pub use exact_math::{ExactScalar, Field, FieldKind, Fp, Rational};

pub type QPoly = polyring::Polynomial<Rational>;
pub type FpPoly = polyring::Polynomial<Fp>;
pub type QRing = polyring::PolyRing<Rational>;
pub type FpRing = polyring::PolyRing<Fp>;
pub type QIdeal = polyring::IdealPresentation<Rational>;
pub type FpIdeal = polyring::IdealPresentation<Fp>;
pub type QMatrix = exact_math::SparseMatrix<Rational>;
pub type FpMatrix = exact_math::SparseMatrix<Fp>;
