//! Creeping-wave contributions to the scattering amplitude.

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;

use super::modes::CreepingMode;
use crate::error::{Error, Result};
use crate::geometry::{arc_angle, HomotopyClass};
use crate::maslov::crossing_to_phase;
use crate::specfun::{legendre_p_complex, ComplexDegree};
use crate::Sense;

fn sqrt_sin(theta_s: f64) -> Result<f64> {
    if !(theta_s > 0.0 && theta_s < PI) {
        return Err(Error::Singularity(format!(
            "exponential form diverges like 1/sqrt(sin theta) at theta_s = {theta_s}; it needs theta_s in (0, pi)"
        )));
    }
    Ok(theta_s.sin().sqrt())
}

fn check_damped(mode: &CreepingMode) -> Result<()> {
    if !(mode.lambda.im > 0.0) {
        return Err(Error::domain("creeping mode", format!("tour sums need Im lambda > 0, got {}", mode.lambda.im)));
    }
    Ok(())
}

/// Number of caustic crossings, hence quarter-turn phase losses, of the ray
/// with `tours` full orbits: `1 + 2n` counterclockwise, `2 + 2n` clockwise.
pub fn tour_crossings(tours: u32, sense: Sense) -> u64 {
    HomotopyClass::of_ray(tours, sense).crossing
}

/// `exp(-i pi/2 * crossings)` for the ray with `tours` orbits.
pub fn maslov_factor(tours: u32, sense: Sense) -> Complex64 {
    crossing_to_phase(HomotopyClass::of_ray(tours, sense).winding).factor()
}

/// Contribution of one ray: `C exp(i lambda theta0) exp(-i pi/2 m) / sqrt(sin theta_s)`
/// with `theta0` the arc angle and `m` the crossing count.
pub fn mode_amplitude_tour(mode: &CreepingMode, theta_s: f64, tours: u32, sense: Sense) -> Result<Complex64> {
    let root = sqrt_sin(theta_s)?;
    let theta0 = arc_angle(theta_s, tours, sense);
    let wave = (Complex64::i() * mode.lambda * theta0).exp();
    Ok(mode.c * wave * maslov_factor(tours, sense) / root)
}

/// Zero-tour contribution of one sense.
pub fn mode_amplitude_no_tour(mode: &CreepingMode, theta_s: f64, sense: Sense) -> Result<Complex64> {
    mode_amplitude_tour(mode, theta_s, 0, sense)
}

/// Both senses summed over `tours = 0..=max_tours`.
pub fn mode_amplitude_tours(mode: &CreepingMode, theta_s: f64, max_tours: u32) -> Result<Complex64> {
    check_damped(mode)?;
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 0..=max_tours {
        for sense in Sense::BOTH {
            sum += mode_amplitude_tour(mode, theta_s, n, sense)?;
        }
    }
    Ok(sum)
}

/// Relative size of the tours omitted after `max_tours`: `exp(-2 pi (N+1) Im lambda)`.
pub fn tour_tail_bound(mode: &CreepingMode, max_tours: u32) -> f64 {
    (-2.0 * PI * (max_tours as f64 + 1.0) * mode.lambda.im).exp() / (1.0 - (-2.0 * PI * mode.lambda.im).exp())
}

/// All tours in closed form:
/// `-C e^{i pi/4} [e^{-i(a - pi/4)} + e^{i(a - pi/4)}] / (2 cos(pi lambda) sqrt(sin theta_s))`,
/// `a = lambda (pi - theta_s)`.
///
/// Evaluated after multiplying through by `exp(i pi lambda)`, which keeps
/// every exponential bounded for `Im lambda > 0`.
pub fn resummed_amplitude(mode: &CreepingMode, theta_s: f64) -> Result<Complex64> {
    check_damped(mode)?;
    let root = sqrt_sin(theta_s)?;
    let i = Complex64::i();
    let lam = mode.lambda;
    let a = lam * (PI - theta_s) - FRAC_PI_4;
    let half = i * PI * lam;
    let denom = 1.0 + (2.0 * half).exp();
    if denom.norm() < 1e-300 {
        return Err(Error::Pole(format!("cos(pi lambda) = 0 at lambda = {lam}")));
    }
    let numer = (half - i * a).exp() + (half + i * a).exp();
    let pre = -mode.c * Complex64::from_polar(1.0, FRAC_PI_4);
    Ok(pre * numer / (denom * root))
}

/// Legendre form `C e^{i pi/4} (sqrt(pi)/2) sqrt(2 mu + 1) P_mu(-cos theta_s) / sin(pi mu)`,
/// finite at `theta_s = pi`.
pub fn legendre_amplitude(mode: &CreepingMode, theta_s: f64) -> Result<Complex64> {
    if theta_s <= 0.0 {
        return Err(Error::Singularity(format!("Legendre form is singular at theta_s = {theta_s} (forward direction)")));
    }
    if !(theta_s <= PI) {
        return Err(Error::domain("legendre_amplitude", format!("theta_s = {theta_s} is outside (0, pi]")));
    }
    let mu = mode.mu;
    let s = (PI * mu).sin();
    if s.norm() < 1e-300 {
        return Err(Error::Pole(format!("sin(pi mu) = 0 at mu = {mu}")));
    }
    let x = if theta_s == PI { 1.0 } else { -theta_s.cos() };
    let p = legendre_p_complex(ComplexDegree(mu), x)?;
    let pre = mode.c * Complex64::from_polar(1.0, FRAC_PI_4) * (0.5 * PI.sqrt());
    Ok(pre * (2.0 * mu + 1.0).sqrt() * p / s)
}

/// How the tours of each mode are combined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AmplitudeForm {
    /// Explicit rays with `0..=n` orbits, listed per tour and sense.
    Tours(u32),
    Resummed,
    Legendre,
}

/// One entry of a breakdown. `tour` and `sense` are `None` for the closed forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudePart {
    pub mode: usize,
    pub tour: Option<u32>,
    pub sense: Option<Sense>,
    pub value: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeBreakdown {
    pub form: AmplitudeForm,
    pub parts: Vec<AmplitudePart>,
    /// Sum of the parts of mode `i + 1`.
    pub mode_totals: Vec<Complex64>,
    /// Sum of all parts, accumulated in order.
    pub total: Complex64,
}

/// Creeping amplitude from modes `1..=modes` at `(k, R, theta_s)`.
pub fn total_amplitude(
    k: f64,
    radius: f64,
    theta_s: f64,
    modes: usize,
    calibration: f64,
    form: AmplitudeForm,
) -> Result<AmplitudeBreakdown> {
    if modes == 0 {
        return Err(Error::InvalidInput("at least one creeping mode is required".into()));
    }
    let mut parts = Vec::new();
    let mut mode_totals = Vec::with_capacity(modes);
    let mut total = Complex64::new(0.0, 0.0);
    for mode in CreepingMode::first(modes, k, radius, calibration)? {
        let mut mode_sum = Complex64::new(0.0, 0.0);
        let mut push = |tour, sense, value| {
            mode_sum += value;
            total += value;
            parts.push(AmplitudePart { mode: mode.index, tour, sense, value });
        };
        match form {
            AmplitudeForm::Tours(n) => {
                check_damped(&mode)?;
                for tour in 0..=n {
                    for sense in Sense::BOTH {
                        push(Some(tour), Some(sense), mode_amplitude_tour(&mode, theta_s, tour, sense)?);
                    }
                }
            }
            AmplitudeForm::Resummed => push(None, None, resummed_amplitude(&mode, theta_s)?),
            AmplitudeForm::Legendre => push(None, None, legendre_amplitude(&mode, theta_s)?),
        }
        mode_totals.push(mode_sum);
    }
    Ok(AmplitudeBreakdown { form, parts, mode_totals, total })
}
