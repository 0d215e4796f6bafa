//! Diffracted rays of the sphere as chains of straight segments and great
//! circle arcs.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;

use super::scene::ObstacleScene;
use super::vec3::{self, Vec3};
use crate::error::{Error, Result};
use crate::Sense;

const JUNCTION_TOL: f64 = 1e-9;
/// Tolerance on the half-open parameter intervals used for crossing counts.
const CROSSING_EPS: f64 = 1e-12;

/// Part of a ray.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Segment {
    Straight { a: Vec3, b: Vec3 },
    /// Great-circle arc `center + R (cos t e1 + sin t e2)` for `t` from
    /// `ang0` to `ang1`, with `e1 = normalize(z x axis)` and `e2 = axis x e1`.
    Arc { center: Vec3, axis: Vec3, radius: f64, ang0: f64, ang1: f64 },
}

/// In-plane reference directions of an arc about `axis`.
pub fn arc_frame(axis: Vec3) -> (Vec3, Vec3) {
    let r = vec3::cross([0.0, 0.0, 1.0], axis);
    let e1 = if vec3::norm(r) > 1e-12 {
        vec3::normalize(r)
    } else {
        let x = [1.0, 0.0, 0.0];
        vec3::normalize(vec3::axpy(x, -vec3::dot(x, axis), axis))
    };
    (e1, vec3::cross(axis, e1))
}

impl Segment {
    pub fn start(&self) -> Vec3 {
        self.point(0.0)
    }

    pub fn end(&self) -> Vec3 {
        self.point(1.0)
    }

    /// Point at normalized parameter `u` in `[0, 1]`.
    pub fn point(&self, u: f64) -> Vec3 {
        match *self {
            Segment::Straight { a, b } => vec3::axpy(a, u, vec3::sub(b, a)),
            Segment::Arc { center, axis, radius, ang0, ang1 } => {
                let (e1, e2) = arc_frame(axis);
                let t = ang0 + u * (ang1 - ang0);
                vec3::add(center, vec3::add(vec3::scale(e1, radius * t.cos()), vec3::scale(e2, radius * t.sin())))
            }
        }
    }

    /// Unit tangent at normalized parameter `u`.
    pub fn tangent(&self, u: f64) -> Vec3 {
        match *self {
            Segment::Straight { a, b } => vec3::normalize(vec3::sub(b, a)),
            Segment::Arc { axis, ang0, ang1, .. } => {
                let (e1, e2) = arc_frame(axis);
                let t = ang0 + u * (ang1 - ang0);
                let sgn = (ang1 - ang0).signum();
                vec3::scale(vec3::add(vec3::scale(e1, -t.sin()), vec3::scale(e2, t.cos())), sgn)
            }
        }
    }

    pub fn length(&self) -> f64 {
        match *self {
            Segment::Straight { a, b } => vec3::dist(a, b),
            Segment::Arc { radius, ang0, ang1, .. } => radius * (ang1 - ang0).abs(),
        }
    }

    /// Normalized parameters in `[0, 1)` where the coordinate `dot(p, n)`
    /// vanishes, for a segment lying in a plane containing the line
    /// `dot(p, n) = 0`. A straight segment with the whole of it on that line is
    /// degenerate. With `open_end` the final straight segment is treated as a
    /// ray to infinity.
    fn zeros_of(&self, n: Vec3, open_end: bool) -> Result<Vec<f64>> {
        match *self {
            Segment::Straight { a, b } => {
                let fa = vec3::dot(a, n);
                let fb = vec3::dot(b, n);
                let scale = vec3::norm(a).max(vec3::norm(b)).max(1e-300);
                if fa.abs() <= CROSSING_EPS * scale && fb.abs() <= CROSSING_EPS * scale {
                    return Err(Error::Degenerate("straight segment lies on the axis".into()));
                }
                if fa.abs() <= CROSSING_EPS * scale {
                    return Ok(vec![0.0]);
                }
                let slope = fb - fa;
                if slope == 0.0 {
                    return Ok(vec![]);
                }
                let u = -fa / slope;
                let upper = if open_end { f64::INFINITY } else { 1.0 - CROSSING_EPS };
                Ok(if u >= 0.0 && u < upper { vec![u] } else { vec![] })
            }
            Segment::Arc { center, axis, radius, ang0, ang1 } => {
                let (e1, e2) = arc_frame(axis);
                // f(t) = c + A cos t + B sin t
                let c = vec3::dot(center, n);
                let amp_a = radius * vec3::dot(e1, n);
                let amp_b = radius * vec3::dot(e2, n);
                let rho = amp_a.hypot(amp_b);
                if rho == 0.0 {
                    return if c.abs() <= CROSSING_EPS * radius {
                        Err(Error::Degenerate("arc lies on the axis".into()))
                    } else {
                        Ok(vec![])
                    };
                }
                if (c / rho).abs() > 1.0 {
                    return Ok(vec![]);
                }
                let phase = amp_b.atan2(amp_a);
                let delta = (-c / rho).acos();
                let (lo, hi) = (ang0.min(ang1), ang0.max(ang1));
                let span = ang1 - ang0;
                let mut us = Vec::new();
                for base in [phase + delta, phase - delta] {
                    let mut m = ((lo - base) / (2.0 * PI)).floor() - 1.0;
                    loop {
                        let t = base + 2.0 * PI * m;
                        if t > hi + CROSSING_EPS {
                            break;
                        }
                        let u = (t - ang0) / span;
                        if (-CROSSING_EPS..1.0 - CROSSING_EPS).contains(&u) {
                            us.push(u.max(0.0));
                        }
                        m += 1.0;
                    }
                    if delta == 0.0 {
                        break;
                    }
                }
                us.sort_by(f64::total_cmp);
                us.dedup_by(|x, y| (*x - *y).abs() < CROSSING_EPS);
                Ok(us)
            }
        }
    }
}

/// A diffracted ray: entry line, boundary arc, exit line.
#[derive(Debug, Clone, PartialEq)]
pub struct RayPath {
    pub segments: Vec<Segment>,
    /// Axis of the scene (incidence direction) the crossings refer to.
    pub axis: Vec3,
    /// Unit vector in the ray's plane perpendicular to `axis`.
    pub transverse: Vec3,
    pub radius: f64,
}

impl RayPath {
    pub fn total_length(&self) -> f64 {
        self.segments.iter().map(Segment::length).sum()
    }

    /// Checks the C1 junctions and that arcs lie on the sphere.
    pub fn validate(&self) -> Result<()> {
        for (i, seg) in self.segments.iter().enumerate() {
            if let Segment::Arc { center, radius, .. } = seg {
                if vec3::norm(*center) > JUNCTION_TOL * self.radius || (radius - self.radius).abs() > JUNCTION_TOL * self.radius {
                    return Err(Error::Geometry(format!("arc {i} does not lie on the sphere")));
                }
            }
        }
        for (i, w) in self.segments.windows(2).enumerate() {
            let gap = vec3::dist(w[0].end(), w[1].start());
            let turn = vec3::dist(w[0].tangent(1.0), w[1].tangent(0.0));
            if gap > JUNCTION_TOL * self.radius || turn > JUNCTION_TOL {
                return Err(Error::Geometry(format!("junction {i} is not C1: position gap {gap:e}, tangent gap {turn:e}")));
            }
        }
        Ok(())
    }

    /// One line per segment: `L x1 y1 z1 x2 y2 z2` or
    /// `A cx cy cz ax ay az R ang0 ang1`.
    pub fn export(&self) -> String {
        let mut out = String::new();
        for seg in &self.segments {
            match *seg {
                Segment::Straight { a, b } => {
                    writeln!(out, "L {:.16e} {:.16e} {:.16e} {:.16e} {:.16e} {:.16e}", a[0], a[1], a[2], b[0], b[1], b[2]).unwrap();
                }
                Segment::Arc { center: c, axis: x, radius, ang0, ang1 } => {
                    writeln!(
                        out,
                        "A {:.16e} {:.16e} {:.16e} {:.16e} {:.16e} {:.16e} {:.16e} {:.16e} {:.16e}",
                        c[0], c[1], c[2], x[0], x[1], x[2], radius, ang0, ang1
                    )
                    .unwrap();
                }
            }
        }
        out
    }

    /// Segments parsed back from [`RayPath::export`] output.
    pub fn parse_segments(text: &str) -> Result<Vec<Segment>> {
        let mut segs = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            let tag = it.next().unwrap_or_default();
            let nums: std::result::Result<Vec<f64>, _> = it.map(str::parse::<f64>).collect();
            let nums = nums.map_err(|e| Error::InvalidInput(format!("line {}: {e}", ln + 1)))?;
            let seg = match (tag, nums.len()) {
                ("L", 6) => Segment::Straight { a: [nums[0], nums[1], nums[2]], b: [nums[3], nums[4], nums[5]] },
                ("A", 9) => Segment::Arc {
                    center: [nums[0], nums[1], nums[2]],
                    axis: [nums[3], nums[4], nums[5]],
                    radius: nums[6],
                    ang0: nums[7],
                    ang1: nums[8],
                },
                _ => return Err(Error::InvalidInput(format!("line {}: malformed segment `{line}`", ln + 1))),
            };
            segs.push(seg);
        }
        Ok(segs)
    }

    /// Points where the ray crosses the axis, in path order. The last
    /// straight segment is continued to infinity.
    pub fn axis_crossings(&self) -> Result<Vec<Vec3>> {
        let last = self.segments.len().saturating_sub(1);
        let mut pts = Vec::new();
        for (i, seg) in self.segments.iter().enumerate() {
            let open_end = i == last && matches!(seg, Segment::Straight { .. });
            for u in seg.zeros_of(self.transverse, open_end)? {
                pts.push(seg.point(u));
            }
        }
        Ok(pts)
    }
}

fn check_theta(theta_s: f64) -> Result<()> {
    if !(theta_s > 0.0 && theta_s < PI) {
        return Err(Error::domain("sphere_diffracted_ray", format!("scattering angle {theta_s} is outside (0, pi)")));
    }
    Ok(())
}

/// Surface angle travelled by the creeping part of the ray.
pub fn arc_angle(theta_s: f64, tours: u32, sense: Sense) -> f64 {
    let base = match sense {
        Sense::Counterclockwise => theta_s,
        Sense::Clockwise => 2.0 * PI - theta_s,
    };
    base + 2.0 * PI * tours as f64
}

/// The diffracted ray scattered into `theta_s` after `tours` full orbits.
///
/// In the scene frame the ray lies in the xz-plane: the `+` ray grazes the
/// sphere at `(-R, 0, 0)`, the `-` ray at `(R, 0, 0)`. The entry line starts
/// `2R` before the sphere; the exit line runs past its crossing with the
/// axis, if any, by `2R`.
pub fn sphere_diffracted_ray(scene: &ObstacleScene, theta_s: f64, tours: u32, sense: Sense) -> Result<RayPath> {
    check_theta(theta_s)?;
    let r = scene.radius();
    let theta0 = arc_angle(theta_s, tours, sense);
    let s = sense.sign();
    // local frame: grazing point (-sR, 0, 0), rotation axis s*y
    let entry = [-s * r, 0.0, 0.0];
    let exit = [-s * r * theta0.cos(), 0.0, r * theta0.sin()];
    let exit_dir = [theta_s.sin(), 0.0, theta_s.cos()];
    let crossing_tau = r * theta0.cos() / theta0.sin();
    let exit_len = 2.0 * r + crossing_tau.max(0.0);
    let start = [-s * r, 0.0, -2.0 * r];
    let finish = vec3::axpy(exit, exit_len, exit_dir);

    let w = |p: Vec3| scene.to_world(p);
    let axis = w([0.0, s, 0.0]);
    let (e1, e2) = arc_frame(axis);
    let entry_w = w(entry);
    let ang0 = vec3::dot(entry_w, e2).atan2(vec3::dot(entry_w, e1));
    let segments = vec![
        Segment::Straight { a: w(start), b: entry_w },
        Segment::Arc { center: [0.0; 3], axis, radius: r, ang0, ang1: ang0 + theta0 },
        Segment::Straight { a: w(exit), b: w(finish) },
    ];
    Ok(RayPath { segments, axis: scene.direction(), transverse: w([1.0, 0.0, 0.0]), radius: r })
}

/// Number of times the ray crosses the axial caustic.
///
/// Each transversal crossing of the z-axis counts once: on the surface
/// (the poles) and on the exit line, including the lit semi-axis which the
/// clockwise ray meets when it wraps past the front pole. With the exit line
/// taken to infinity this is `1 + 2n` for the `+` family and `2 + 2n` for the
/// `-` family.
pub fn conjugate_point_count(ray: &RayPath, scene: &ObstacleScene) -> Result<u32> {
    let d = vec3::dot(ray.axis, scene.direction());
    if (d - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidInput("ray and scene disagree on the axis".into()));
    }
    Ok(ray.axis_crossings()?.len() as u32)
}

/// Ray-tube Jacobian `J = tau (R cos theta0 - tau sin theta0)` along the exit
/// line, `tau` measured from the launch point.
pub fn ray_jacobian(theta0: f64, tau: f64, radius: f64) -> f64 {
    tau * (radius * theta0.cos() - tau * theta0.sin())
}

/// Geometric amplitude `C / sqrt(J)`.
///
/// The branch of `sqrt(J)` is `i tau sqrt(sin theta0 - R cos theta0 / tau)`,
/// which tends to `i r sqrt(sin theta0)` in the far field.
pub fn ray_spread_amplitude(theta0: f64, tau: f64, radius: f64, c: f64) -> Result<Complex64> {
    let j = ray_jacobian(theta0, tau, radius);
    if j == 0.0 || tau == 0.0 {
        return Err(Error::Caustic(format!("ray Jacobian vanishes at tau = {tau}, theta0 = {theta0}")));
    }
    let inner = Complex64::new(theta0.sin() - radius * theta0.cos() / tau, 0.0).sqrt();
    let root = Complex64::i() * tau * inner;
    Ok(Complex64::new(c, 0.0) / root)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scene() -> ObstacleScene {
        ObstacleScene::sphere(1.5).unwrap()
    }

    #[test]
    fn forward_ray_geometry() {
        let ray = sphere_diffracted_ray(&scene(), PI / 2.0, 0, Sense::Counterclockwise).unwrap();
        ray.validate().unwrap();
        assert_eq!(ray.segments.len(), 3);
        assert!(vec3::dist(ray.segments[0].end(), [-1.5, 0.0, 0.0]) < 1e-15);
        match ray.segments[1] {
            Segment::Arc { ang0, ang1, .. } => assert!((ang1 - ang0 - PI / 2.0).abs() < 1e-15),
            _ => panic!("middle segment is the boundary arc"),
        }
        assert!(vec3::dist(ray.segments[1].end(), [0.0, 0.0, 1.5]) < 1e-14);
    }

    #[test]
    fn arc_angles() {
        assert!((arc_angle(PI / 2.0, 0, Sense::Clockwise) - 1.5 * PI).abs() < 1e-15);
        assert!((arc_angle(PI / 3.0, 2, Sense::Counterclockwise) - (PI / 3.0 + 4.0 * PI)).abs() < 1e-15);
        let ray = sphere_diffracted_ray(&scene(), PI / 2.0, 0, Sense::Clockwise).unwrap();
        assert!(vec3::dist(ray.segments[0].end(), [1.5, 0.0, 0.0]) < 1e-15);
        assert!((ray.segments[1].length() - 1.5 * 1.5 * PI).abs() < 1e-12);
    }

    #[test]
    fn out_of_range_angle() {
        assert!(matches!(sphere_diffracted_ray(&scene(), 0.0, 0, Sense::Counterclockwise), Err(Error::Domain { .. })));
        assert!(sphere_diffracted_ray(&scene(), PI, 1, Sense::Clockwise).is_err());
    }

    #[test]
    fn both_senses_leave_in_the_scattering_direction() {
        for theta in [0.3, 1.2, 2.9] {
            for sense in Sense::BOTH {
                let ray = sphere_diffracted_ray(&scene(), theta, 1, sense).unwrap();
                ray.validate().unwrap();
                let d = ray.segments[2].tangent(0.0);
                assert!(vec3::dist(d, [theta.sin(), 0.0, theta.cos()]) < 1e-12);
            }
        }
    }

    #[test]
    fn caustic_crossings_at_the_anchor_angle() {
        let s = scene();
        let plus = sphere_diffracted_ray(&s, PI / 2.0, 0, Sense::Counterclockwise).unwrap();
        let minus = sphere_diffracted_ray(&s, PI / 2.0, 0, Sense::Clockwise).unwrap();
        assert_eq!(conjugate_point_count(&plus, &s).unwrap(), 1);
        assert_eq!(conjugate_point_count(&minus, &s).unwrap(), 2);
        for n in 0..4 {
            for theta in [0.4, 1.9] {
                let p = sphere_diffracted_ray(&s, theta, n, Sense::Counterclockwise).unwrap();
                let m = sphere_diffracted_ray(&s, theta, n, Sense::Clockwise).unwrap();
                assert_eq!(conjugate_point_count(&p, &s).unwrap(), 1 + 2 * n);
                assert_eq!(conjugate_point_count(&m, &s).unwrap(), 2 + 2 * n);
            }
        }
    }

    #[test]
    fn tilted_scene_gives_the_same_counts() {
        let s = ObstacleScene::new(0.7, [1.0, 2.0, -0.5], crate::geometry::SourceDistance::Infinite).unwrap();
        for sense in Sense::BOTH {
            let ray = sphere_diffracted_ray(&s, 2.2, 2, sense).unwrap();
            ray.validate().unwrap();
            let want = if sense == Sense::Counterclockwise { 5 } else { 6 };
            assert_eq!(conjugate_point_count(&ray, &s).unwrap(), want);
            let d = ray.segments[0].tangent(0.5);
            assert!(vec3::dist(d, s.direction()) < 1e-12);
        }
    }

    #[test]
    fn segment_on_the_axis_is_degenerate() {
        let ray = RayPath {
            segments: vec![Segment::Straight { a: [0.0, 0.0, 2.0], b: [0.0, 0.0, 5.0] }],
            axis: [0.0, 0.0, 1.0],
            transverse: [1.0, 0.0, 0.0],
            radius: 1.0,
        };
        assert!(matches!(conjugate_point_count(&ray, &ObstacleScene::sphere(1.0).unwrap()), Err(Error::Degenerate(_))));
    }

    #[test]
    fn export_round_trip() {
        let ray = sphere_diffracted_ray(&scene(), 1.1, 1, Sense::Clockwise).unwrap();
        let text = ray.export();
        assert_eq!(text.lines().count(), 3);
        assert!(text.lines().next().unwrap().starts_with("L "));
        assert!(text.lines().nth(1).unwrap().starts_with("A "));
        let back = RayPath::parse_segments(&text).unwrap();
        for (a, b) in back.iter().zip(&ray.segments) {
            assert!(vec3::dist(a.start(), b.start()) < 1e-14 && vec3::dist(a.end(), b.end()) < 1e-14);
        }
        assert!(RayPath::parse_segments("Q 1 2 3").is_err());
    }

    #[test]
    fn jacobian_and_spread() {
        assert_eq!(ray_jacobian(0.4, 0.0, 1.0), 0.0);
        let theta0 = 0.4;
        assert!(ray_jacobian(theta0, 1.0 / theta0.tan(), 1.0).abs() < 1e-15);
        assert!((ray_jacobian(PI / 2.0, 1.0, 2.0) + 1.0).abs() < 1e-15);
        assert!(matches!(ray_spread_amplitude(theta0, 0.0, 1.0, 1.0), Err(Error::Caustic(_))));
        let tau = 1e7;
        let a = ray_spread_amplitude(theta0, tau, 1.0, 2.0).unwrap();
        assert!((a.norm() * tau - 2.0 / theta0.sin().sqrt()).abs() < 1e-6);
        assert!((a.arg() + PI / 2.0).abs() < 1e-6);
        // at theta0 = pi/2 the only caustic is the surface
        assert!(ray_spread_amplitude(PI / 2.0, 0.3, 1.0, 1.0).is_ok());
    }
}
