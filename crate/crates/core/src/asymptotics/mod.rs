//! From ray geometry to creeping-wave amplitudes.
//!
//! The coalescing-saddle machinery (`cfu`) justifies the Airy form of a
//! creeping mode; `modes` fixes the per-mode constants and `amplitude`
//! assembles the tour sums. `calibration` fits the one free real scale of the
//! diffraction coefficient against reference data.

mod amplitude;
mod calibration;
mod cfu;
mod modes;

pub use amplitude::{
    legendre_amplitude, maslov_factor, mode_amplitude_no_tour, mode_amplitude_tour, mode_amplitude_tours,
    resummed_amplitude, total_amplitude, tour_crossings, tour_tail_bound, AmplitudeBreakdown, AmplitudeForm,
    AmplitudePart,
};
pub use calibration::{fit_calibration, CalibrationFit};
pub use cfu::{cfu_map, stationary_phase_leading, uniform_airy_eval, SaddlePair};
pub use modes::{damping_exponent, diffraction_coefficient, CreepingMode, DAMPING_CONSTANT};
