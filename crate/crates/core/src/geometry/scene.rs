use super::vec3::{self, Vec3};
use crate::error::{Error, Result};

/// Where the incident field comes from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SourceDistance {
    /// Plane-wave incidence, the scattering limit.
    Infinite,
    Finite(f64),
}

/// A sphere of radius `R` centred at the origin, lit along `direction`.
///
/// The incidence direction is the z-axis of the scene frame; the axial
/// caustic lies along it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObstacleScene {
    radius: f64,
    direction: Vec3,
    source: SourceDistance,
}

impl ObstacleScene {
    pub fn new(radius: f64, direction: Vec3, source: SourceDistance) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidInput(format!("radius must be positive, got {radius}")));
        }
        let n = vec3::norm(direction);
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::InvalidInput("incidence direction must be a nonzero finite vector".into()));
        }
        if let SourceDistance::Finite(d) = source {
            if !(d > radius) {
                return Err(Error::InvalidInput(format!("source distance {d} must exceed the radius {radius}")));
            }
        }
        Ok(ObstacleScene { radius, direction: vec3::scale(direction, 1.0 / n), source })
    }

    /// Sphere of radius `R` lit along `+z` from infinity.
    pub fn sphere(radius: f64) -> Result<Self> {
        Self::new(radius, [0.0, 0.0, 1.0], SourceDistance::Infinite)
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn direction(&self) -> Vec3 {
        self.direction
    }

    pub fn source(&self) -> SourceDistance {
        self.source
    }

    /// Orthonormal frame `(e_x, e_y, e_z)` with `e_z` the incidence direction.
    ///
    /// `e_x` is the projection of the world x-axis (or y-axis when the beam
    /// is along x), so the default scene has the identity frame.
    pub fn frame(&self) -> [Vec3; 3] {
        let ez = self.direction;
        let trial = if ez[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
        let ex = vec3::normalize(vec3::axpy(trial, -vec3::dot(trial, ez), ez));
        let ey = vec3::cross(ez, ex);
        [ex, ey, ez]
    }

    /// Maps scene-frame coordinates to world coordinates.
    pub fn to_world(&self, local: Vec3) -> Vec3 {
        let [ex, ey, ez] = self.frame();
        vec3::add(vec3::add(vec3::scale(ex, local[0]), vec3::scale(ey, local[1])), vec3::scale(ez, local[2]))
    }

    /// Maps world coordinates to scene-frame coordinates.
    pub fn to_local(&self, world: Vec3) -> Vec3 {
        let [ex, ey, ez] = self.frame();
        [vec3::dot(world, ex), vec3::dot(world, ey), vec3::dot(world, ez)]
    }
}
