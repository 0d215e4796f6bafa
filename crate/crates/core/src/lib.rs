//! Creeping-wave diffraction by a sound-soft sphere.
//!
//! The crate follows a diffracted ray from its geometric construction to its
//! contribution in the backward scattering amplitude:
//!
//! * [`specfun`]: Airy functions and zeros, spherical Bessel functions,
//!   Legendre functions of integer and complex degree.
//! * [`geometry`]: geodesics of the exterior of a ball viewed as a manifold
//!   with boundary, the bifurcation of rays at the boundary, diffracted-ray
//!   construction, winding and crossing numbers, and caustic crossings.
//! * [`maslov`]: index bookkeeping on the Lagrangian circle of the sphere's
//!   geodesic flow and the phase shifts it induces.
//! * [`asymptotics`]: uniform Airy asymptotics for coalescing saddles, creeping
//!   modes with their damping exponents, and the tour-summed amplitude in both
//!   exponential and Legendre form.
//! * [`oracle`]: the exact partial-wave series used as ground truth.
//! * [`sweep`]: data-parallel evaluation over parameter grids (rayon behind the
//!   `parallel` feature, sequential otherwise).

// Reference constants keep all published digits; `!(x > 0.0)` guards are
// written that way so that NaN is rejected too.
#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod error;
pub mod geometry;
pub mod maslov;
pub mod oracle;
pub mod specfun;
pub mod sweep;

pub use error::{Error, Result};

/// Library version, for provenance records.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub use num_complex::Complex64;

/// Direction of travel around the obstacle.
///
/// Counterclockwise rays are the `+` family (arc angle `theta_s + 2 pi n`),
/// clockwise rays the `-` family (arc angle `2 pi - theta_s + 2 pi n`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sense {
    Counterclockwise,
    Clockwise,
}

impl Sense {
    pub const BOTH: [Sense; 2] = [Sense::Counterclockwise, Sense::Clockwise];

    /// `+1` for counterclockwise, `-1` for clockwise.
    pub fn sign(self) -> f64 {
        match self {
            Sense::Counterclockwise => 1.0,
            Sense::Clockwise => -1.0,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sense::Counterclockwise => '+',
            Sense::Clockwise => '-',
        }
    }
}
