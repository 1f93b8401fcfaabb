//! Explicit equation systems: the moduli ideals U_n, universal curves,
//! symmetric-group involutions, special points, the wheel of lines and the
//! small-characteristic vector fields.

mod charp;
mod curve;
mod maps;
mod points;
mod un;
mod wheel;

pub use charp::{charp_vector_fields, CharPCase, CharPVectorField, Laurent};
pub use curve::{c1n_relations, curve_over_un, curve_ring, dehomogenize_at, special_curve, CurveSpec, MarkedPoint};
pub use maps::{full_from_reduced_map, sn_involution, substitution_map, Transposition};
pub use points::{
    full_point_from_reduced, random_point, reduced_fiber_points, special_point_pin, wheel_point, Point,
};
pub use un::{special_moduli, u_n, u_n_full, u_n_reduced, Coords, ModuliSpec};
pub(crate) use un::{FullCoords, RedCoords};
pub use wheel::{c1n_branch_images, c1n_membership, wheel_data, wheel_relations, WheelData};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuliError {
    #[error("n = {0} is out of range for {1}")]
    BadN(usize, &'static str),
    #[error("point does not satisfy the ideal (generator `{0}`)")]
    OffScheme(String),
    #[error("bad argument: {0}")]
    BadArg(String),
}

/// Variable names. Indices are 1-based curve labels.
pub mod names {
    pub fn x(i: usize) -> String {
        format!("x_{i}")
    }
    pub fn big_x(i: usize) -> String {
        format!("X_{i}")
    }
    pub fn c2(i: usize, j: usize) -> String {
        format!("c_{i}_{j}")
    }
    pub fn d2(i: usize, j: usize) -> String {
        format!("d_{i}_{j}")
    }
    pub fn ci(i: usize) -> String {
        format!("c_{i}")
    }
    pub fn cbi(i: usize) -> String {
        format!("cb_{i}")
    }
    pub const CBAR: &str = "cb";
}
