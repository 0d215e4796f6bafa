//! Special functions needed by the diffraction asymptotics and the oracle.

mod airy;
mod bessel;
mod legendre;

use std::sync::OnceLock;

pub use airy::{airy_ai, airy_ai_prime, airy_pair, airy_pair_real, airy_prime_zeros, airy_zeros, AiryZeroTable, AI0, AIP0};
pub use bessel::{miller_start, spherical_bessel, spherical_bessel_array, SphericalBessel};
pub use legendre::{legendre_backward_asymptotic, legendre_p_complex, legendre_p_int, legendre_p_int_array, ComplexDegree};

use crate::error::Result;

/// Number of Airy zeros kept in the process-wide table.
pub const CACHED_ZEROS: usize = 100;

static ZERO_TABLE: OnceLock<AiryZeroTable> = OnceLock::new();

/// The first [`CACHED_ZEROS`] Airy zeros, computed once per process.
pub fn cached_airy_zeros() -> &'static AiryZeroTable {
    ZERO_TABLE.get_or_init(|| airy_zeros(CACHED_ZEROS).expect("the first 100 Airy zeros always converge"))
}

/// `q_i`, taken from the cached table when `i` is small enough.
pub fn airy_zero(i: usize) -> Result<f64> {
    if (1..=CACHED_ZEROS).contains(&i) {
        Ok(cached_airy_zeros().q(i))
    } else {
        Ok(airy_zeros(i)?.q(i))
    }
}
