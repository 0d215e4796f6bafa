//! Maslov phase bookkeeping on the Lagrangian circle of the sphere's
//! geodesic flow.
//!
//! For fixed `p_phi = c1` the invariant curve `p_theta^2 + c1^2 / sin^2 theta = 1`
//! is a circle in the `(p_theta, theta)` plane with vertical-tangent points
//! `(theta0, 0)` and `(pi - theta0, 0)`, `theta0 = asin(c1)`. It is covered by
//! four charts: `U1` (`p_theta < 0`), `U2` (around `(theta0, 0)`), `U3`
//! (`p_theta > 0`) and `U4` (around `(pi - theta0, 0)`). Counterclockwise in that
//! plane, which is also the direction of motion, visits `U1, U2, U3, U4`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::crossing_number;
use crate::Sense;

const CURVE_TOL: f64 = 1e-9;
/// Half-width in `p_theta` of the charts around the singular points.
pub const CHART_BAND: f64 = 0.1;
/// `p_theta` magnitudes below this count as lying on the singular cycle.
const CYCLE_TOL: f64 = 1e-12;

/// A point `(theta, p_theta)` on the invariant curve for `p_phi = c1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LagrangianPoint {
    theta: f64,
    p_theta: f64,
    c1: f64,
}

impl LagrangianPoint {
    pub fn new(theta: f64, p_theta: f64, c1: f64) -> Result<Self> {
        if !(c1 > 0.0 && c1 < 1.0) {
            return Err(Error::domain("LagrangianPoint", format!("c1 = {c1} is outside (0, 1)")));
        }
        if !(theta > 0.0 && theta < PI) {
            return Err(Error::domain("LagrangianPoint", format!("theta = {theta} is outside (0, pi)")));
        }
        let s = theta.sin();
        let residual = p_theta * p_theta + c1 * c1 / (s * s) - 1.0;
        if residual.abs() > CURVE_TOL {
            return Err(Error::InvalidInput(format!("({theta}, {p_theta}) is off the invariant curve by {residual:e}")));
        }
        Ok(LagrangianPoint { theta, p_theta, c1 })
    }

    /// The point at curve parameter `s`: `s = 0` is `(theta0, 0)`, and `s`
    /// increases counterclockwise.
    pub fn on_curve(c1: f64, s: f64) -> Result<Self> {
        if !(c1 > 0.0 && c1 < 1.0) {
            return Err(Error::domain("LagrangianPoint", format!("c1 = {c1} is outside (0, 1)")));
        }
        let (ss, cs) = s.sin_cos();
        let width = (1.0 - c1 * c1).sqrt();
        let p = width * ss;
        let sin_theta = (c1 / (1.0 - width * width * ss * ss).sqrt()).min(1.0);
        let lower = sin_theta.asin();
        let theta = if cs >= 0.0 { lower } else { PI - lower };
        Ok(LagrangianPoint { theta, p_theta: p, c1 })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn p_theta(&self) -> f64 {
        self.p_theta
    }

    pub fn c1(&self) -> f64 {
        self.c1
    }

    /// `theta0 = asin(c1)`, where the curve has its lower vertical tangent.
    pub fn theta0(&self) -> f64 {
        self.c1.asin()
    }

    pub fn chart(&self) -> ChartId {
        let band = CHART_BAND.min(0.5 * (1.0 - self.c1 * self.c1).sqrt());
        if self.p_theta.abs() < band {
            if self.theta < FRAC_PI_2 {
                ChartId::U2
            } else {
                ChartId::U4
            }
        } else if self.p_theta < 0.0 {
            ChartId::U1
        } else {
            ChartId::U3
        }
    }

    /// `d theta / d p_theta` along the curve: the closed form holds on the
    /// lower branch `theta < pi/2` and flips sign on the upper one.
    pub fn branch_derivative(&self) -> Result<f64> {
        let d = dtheta_dptheta(self.p_theta, self.c1)?;
        Ok(if self.theta < FRAC_PI_2 { d } else { -d })
    }
}

/// The four charts covering the invariant curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChartId {
    U1,
    U2,
    U3,
    U4,
}

impl ChartId {
    fn position(self) -> i32 {
        match self {
            ChartId::U1 => 0,
            ChartId::U2 => 1,
            ChartId::U3 => 2,
            ChartId::U4 => 3,
        }
    }

    /// Same chart or neighbours on the circle.
    pub fn adjacent(self, other: ChartId) -> bool {
        let d = (self.position() - other.position()).rem_euclid(4);
        d != 2
    }
}

/// `d theta / d p_theta = c1 p / ((1 - p^2) sqrt(1 - (p^2 + c1^2)))`.
pub fn dtheta_dptheta(p_theta: f64, c1: f64) -> Result<f64> {
    if !(c1 > 0.0 && c1 < 1.0) {
        return Err(Error::domain("dtheta_dptheta", format!("c1 = {c1} is outside (0, 1)")));
    }
    let arg = 1.0 - (p_theta * p_theta + c1 * c1);
    if !(arg > 0.0) || !(p_theta * p_theta < 1.0) {
        return Err(Error::Singularity(format!("p_theta = {p_theta}, c1 = {c1} lies on the singular cycle")));
    }
    Ok(c1 * p_theta / ((1.0 - p_theta * p_theta) * arg.sqrt()))
}

/// Negative inertial index of a nonzero scalar.
pub fn inerdex(value: f64) -> Result<u8> {
    if value == 0.0 || value.is_nan() {
        return Err(Error::Degenerate(format!("Inerdex of the degenerate value {value}")));
    }
    Ok(u8::from(value < 0.0))
}

/// Maslov index of a path on the invariant curve: the total variation of
/// `Inerdex(d theta / d p_theta)` through the focal points (sign changes of
/// `p_theta`).
///
/// Consecutive points must lie in the same or adjacent charts. Passing the
/// equator `theta = pi/2` flips the branch of the derivative but is not a
/// focal point and contributes nothing.
pub fn maslov_index(path: &[LagrangianPoint]) -> Result<i64> {
    let first = path.first().ok_or_else(|| Error::InvalidInput("empty path".into()))?;
    let last = path.last().expect("non-empty");
    for end in [first, last] {
        if end.p_theta.abs() < CYCLE_TOL {
            return Err(Error::Degenerate(format!("path endpoint at theta = {} lies on the singular cycle", end.theta)));
        }
    }
    if path.iter().any(|p| (p.c1 - first.c1).abs() > 1e-12) {
        return Err(Error::InvalidInput("path points lie on different invariant curves".into()));
    }
    for (i, w) in path.windows(2).enumerate() {
        if !w[0].chart().adjacent(w[1].chart()) {
            return Err(Error::InvalidInput(format!(
                "points {i} and {} jump from {:?} to {:?}; refine the path",
                i + 1,
                w[0].chart(),
                w[1].chart()
            )));
        }
    }
    let mut index = 0i64;
    let mut prev: Option<&LagrangianPoint> = None;
    for p in path.iter().filter(|p| p.p_theta.abs() >= CYCLE_TOL) {
        if let Some(q) = prev {
            if q.p_theta.signum() != p.p_theta.signum() {
                if (q.theta < FRAC_PI_2) != (p.theta < FRAC_PI_2) {
                    return Err(Error::InvalidInput("focal crossing straddles the equator; refine the path".into()));
                }
                let before = inerdex(q.branch_derivative()?)? as i64;
                let after = inerdex(p.branch_derivative()?)? as i64;
                index += after - before;
            }
        }
        prev = Some(p);
    }
    Ok(index)
}

/// A phase shift of `-(pi/2) * quarter_turns` added to the phase argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct PhaseShift {
    pub quarter_turns: i64,
}

impl PhaseShift {
    /// Shift in radians, always a multiple of `pi/2`.
    pub fn value(self) -> f64 {
        -FRAC_PI_2 * self.quarter_turns as f64
    }

    /// `exp(i value)`, exact on the four quarter-turn values.
    pub fn factor(self) -> Complex64 {
        match self.quarter_turns.rem_euclid(4) {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, -1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, 1.0),
        }
    }

    /// The factor multiplying a wave `exp(+-ik theta)` travelling in `sense`:
    /// `exp(ik theta) -> exp(i[k theta + value])` and
    /// `exp(-ik theta) -> exp(-i[k theta + value])`.
    pub fn wave_factor(self, sense: Sense) -> Complex64 {
        match sense {
            Sense::Counterclockwise => self.factor(),
            Sense::Clockwise => self.factor().conj(),
        }
    }

    pub fn then(self, other: PhaseShift) -> PhaseShift {
        PhaseShift { quarter_turns: self.quarter_turns + other.quarter_turns }
    }
}

/// Shift acquired by a wave after `crossings` caustic crossings.
///
/// The `c1 -> 0` limit of the connection across a focal point is exact: each
/// crossing subtracts `pi/2` from the bracketed phase for either sense.
pub fn connection_phase(_sense: Sense, crossings: u64) -> PhaseShift {
    PhaseShift { quarter_turns: crossings as i64 }
}

/// Maslov shift of the geodesic with winding number `m`:
/// `-(pi/2) crossing_number(m)`.
pub fn crossing_to_phase(m: i64) -> PhaseShift {
    PhaseShift { quarter_turns: crossing_number(m) as i64 }
}

/// Leading surface wave `|sin theta|^{-1/2} exp(+-ik theta)`, unit constant.
pub fn surface_wave_leading(theta: f64, k: f64, sense: Sense) -> Result<Complex64> {
    let s = theta.sin();
    if s.abs() < 1e-12 * theta.abs().max(1.0) {
        return Err(Error::Caustic(format!("surface wave approximation fails at theta = {theta} (a multiple of pi)")));
    }
    let phase = sense.sign() * k * theta;
    Ok(Complex64::from_polar(s.abs().powf(-0.5), phase))
}
