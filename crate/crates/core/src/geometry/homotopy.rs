//! Homotopy classes of paths around a disk in the plane through the axis
//! and the observation point.
//!
//! Planar points are `(u, v)`: `u` along the incidence axis, `v` transverse.
//! Angles are measured as `atan2(v, u)`, so counterclockwise means turning
//! from the forward axis towards positive `v`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::Sense;

pub type Point2 = [f64; 2];

/// Piece of a planar path. Arcs are centred on the disk centre.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PlanarSegment {
    Line { a: Point2, b: Point2 },
    /// `radius (cos t, sin t)` for `t` from `start` to `start + sweep`.
    Arc { radius: f64, start: f64, sweep: f64 },
}

impl PlanarSegment {
    pub fn point(&self, u: f64) -> Point2 {
        match *self {
            PlanarSegment::Line { a, b } => [a[0] + u * (b[0] - a[0]), a[1] + u * (b[1] - a[1])],
            PlanarSegment::Arc { radius, start, sweep } => {
                let t = start + u * sweep;
                [radius * t.cos(), radius * t.sin()]
            }
        }
    }

    /// Net change of `atan2(v, u)` along the segment.
    fn turning(&self) -> f64 {
        match *self {
            PlanarSegment::Line { a, b } => {
                let cross = a[0] * b[1] - a[1] * b[0];
                let dot = a[0] * b[0] + a[1] * b[1];
                cross.atan2(dot)
            }
            PlanarSegment::Arc { sweep, .. } => sweep,
        }
    }

    /// Smallest distance to the centre.
    fn clearance(&self) -> f64 {
        match *self {
            PlanarSegment::Line { a, b } => {
                let d = [b[0] - a[0], b[1] - a[1]];
                let len2 = d[0] * d[0] + d[1] * d[1];
                let t = if len2 > 0.0 { (-(a[0] * d[0] + a[1] * d[1]) / len2).clamp(0.0, 1.0) } else { 0.0 };
                let p = [a[0] + t * d[0], a[1] + t * d[1]];
                p[0].hypot(p[1])
            }
            PlanarSegment::Arc { radius, .. } => radius,
        }
    }
}

/// A continuous chain of planar segments.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanarPath {
    pub segments: Vec<PlanarSegment>,
}

impl PlanarPath {
    pub fn start(&self) -> Point2 {
        self.segments[0].point(0.0)
    }

    pub fn end(&self) -> Point2 {
        self.segments[self.segments.len() - 1].point(1.0)
    }

    /// Net change of the polar angle along the path.
    pub fn turning(&self) -> f64 {
        self.segments.iter().map(PlanarSegment::turning).sum()
    }

    fn check_clear(&self, radius: f64) -> Result<()> {
        if self.segments.is_empty() {
            return Err(Error::InvalidInput("empty planar path".into()));
        }
        for (i, s) in self.segments.iter().enumerate() {
            let c = s.clearance();
            if c < radius * (1.0 - 1e-9) {
                return Err(Error::Geometry(format!("segment {i} passes within {c} of the centre, inside the disk of radius {radius}")));
            }
        }
        Ok(())
    }
}

fn angle(p: Point2) -> f64 {
    p[1].atan2(p[0])
}

fn wrap(a: f64) -> f64 {
    let w = a.rem_euclid(2.0 * PI);
    if w > PI {
        w - 2.0 * PI
    } else {
        w
    }
}

/// The shortest path from `p0` to `q` avoiding the open disk of radius `R`:
/// the straight line when it clears the disk, otherwise tangent line, arc on
/// the shorter side, tangent line.
pub fn minimal_geodesic(p0: Point2, q: Point2, radius: f64) -> Result<PlanarPath> {
    for p in [p0, q] {
        if p[0].hypot(p[1]) < radius {
            return Err(Error::Geometry("endpoint inside the disk".into()));
        }
    }
    let line = PlanarSegment::Line { a: p0, b: q };
    if line.clearance() >= radius {
        return Ok(PlanarPath { segments: vec![line] });
    }
    let d0 = p0[0].hypot(p0[1]);
    let dq = q[0].hypot(q[1]);
    let (b0, bq) = ((radius / d0).acos(), (radius / dq).acos());
    let mut best: Option<(f64, PlanarPath)> = None;
    for dir in [1.0, -1.0] {
        let a0 = angle(p0) + dir * b0;
        let aq = angle(q) - dir * bq;
        let sweep = dir * (dir * (aq - a0)).rem_euclid(2.0 * PI);
        let t0 = [radius * a0.cos(), radius * a0.sin()];
        let tq = [radius * aq.cos(), radius * aq.sin()];
        let len = (d0 * d0 - radius * radius).sqrt() + (dq * dq - radius * radius).sqrt() + radius * sweep.abs();
        let path = PlanarPath {
            segments: vec![
                PlanarSegment::Line { a: p0, b: t0 },
                PlanarSegment::Arc { radius, start: a0, sweep },
                PlanarSegment::Line { a: tq, b: q },
            ],
        };
        if best.as_ref().is_none_or(|(l, _)| len < *l) {
            best = Some((len, path));
        }
    }
    Ok(best.expect("two candidates").1)
}

/// Winding number of `path` relative to `base` around the disk of radius `R`.
///
/// `[path * base^-1] = w [alpha0]` with `alpha0` the counterclockwise loop.
/// The two paths must share their endpoints up to a short connecting arc;
/// the observation point must not lie on the axis.
pub fn winding_number(path: &PlanarPath, base: &PlanarPath, radius: f64) -> Result<i64> {
    path.check_clear(radius)?;
    base.check_clear(radius)?;
    let q = path.end();
    let scale = q[0].hypot(q[1]);
    if q[1].abs() <= 1e-12 * scale {
        return Err(Error::Degenerate("observation point lies on the axis".into()));
    }
    let d_start = wrap(angle(base.start()) - angle(path.start()));
    let d_end = wrap(angle(base.end()) - angle(path.end()));
    if d_start.abs() > PI / 4.0 || d_end.abs() > PI / 4.0 {
        return Err(Error::InvalidInput("path and base do not share their endpoints".into()));
    }
    let w = (path.turning() + d_end - base.turning() - d_start) / (2.0 * PI);
    let rounded = w.round();
    if (w - rounded).abs() > 1e-6 {
        return Err(Error::Accuracy { what: "winding_number", detail: format!("non-integer winding {w}") });
    }
    Ok(rounded as i64)
}

/// Number of axis crossings of the geodesic in class `m`:
/// `2m - 1` for `m > 0`, `-2m` for `m <= 0`.
pub fn crossing_number(m: i64) -> u64 {
    if m > 0 {
        (2 * m - 1) as u64
    } else {
        (-2 * m) as u64
    }
}

/// Homotopy class of a diffracted ray.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HomotopyClass {
    pub winding: i64,
    pub crossing: u64,
    pub sense: Sense,
}

impl HomotopyClass {
    pub fn from_winding(m: i64) -> Self {
        let sense = if m > 0 { Sense::Counterclockwise } else { Sense::Clockwise };
        HomotopyClass { winding: m, crossing: crossing_number(m), sense }
    }

    /// The class of a ray with `tours` full orbits in the given sense.
    pub fn of_ray(tours: u32, sense: Sense) -> Self {
        match sense {
            Sense::Counterclockwise => Self::from_winding(1 + tours as i64),
            Sense::Clockwise => Self::from_winding(-1 - tours as i64),
        }
    }
}

/// The diffracted ray in the `(u, v)` half-plane of the observation point,
/// from `u = -lead` to a distance `exit_len` past the launch point.
pub fn planar_diffracted_ray(theta_s: f64, tours: u32, sense: Sense, radius: f64, lead: f64, exit_len: f64) -> Result<PlanarPath> {
    if !(theta_s > 0.0 && theta_s < PI) {
        return Err(Error::domain("planar_diffracted_ray", format!("scattering angle {theta_s} is outside (0, pi)")));
    }
    let s = sense.sign();
    let theta0 = super::ray::arc_angle(theta_s, tours, sense);
    let start = -s * PI / 2.0;
    let end = start + s * theta0;
    let launch = [radius * end.cos(), radius * end.sin()];
    let dir = [theta_s.cos(), theta_s.sin()];
    Ok(PlanarPath {
        segments: vec![
            PlanarSegment::Line { a: [-lead, -s * radius], b: [0.0, -s * radius] },
            PlanarSegment::Arc { radius, start, sweep: s * theta0 },
            PlanarSegment::Line { a: launch, b: [launch[0] + exit_len * dir[0], launch[1] + exit_len * dir[1]] },
        ],
    })
}
