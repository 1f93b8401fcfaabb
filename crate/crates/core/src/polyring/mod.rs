//! Weighted polynomial rings, Groebner bases, Hilbert counts and ideal utilities.

mod groebner;
pub mod hilbert;
mod ideal;
mod monomial;
mod poly;
mod ring;
mod ringmap;
pub mod text;

pub use groebner::{buchberger, interreduce, normal_form, normal_form_with_quotients, s_polynomial, GroebnerBasis, Reduction};
pub use ideal::{member_in, IdealPresentation, Membership};
pub use monomial::Monomial;
pub use poly::Polynomial;
pub use ring::{MonomialOrder, OrderKind, PolyRing, VarSpec};
pub use ringmap::RingMap;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomials from different rings")]
    RingMismatch,
    #[error("bad ring: {0}")]
    Ring(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("Groebner basis truncated at degree cap {0}")]
    Truncated(u32),
    #[error("generator `{0}` has a nonzero constant term")]
    NotAtOrigin(String),
    #[error("ideal is not weighted-homogeneous")]
    NotHomogeneous,
}
