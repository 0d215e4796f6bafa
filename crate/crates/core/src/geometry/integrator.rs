//! Geodesics of the exterior of a ball in geodesic boundary coordinates.
//!
//! Coordinates are `(theta, phi, x_n)` with `x_n = r - R` the distance to the
//! boundary. On boundary segments the normal curvature `chi` cancels the
//! normal acceleration so the motion stays on the sphere; off the boundary
//! `chi = 0` and the system is the flat-space geodesic equation, which is
//! propagated exactly as a straight line.

use super::scene::ObstacleScene;
use super::vec3::{self, Vec3};
use crate::error::{Error, Result};

/// A state is on the boundary when `x_n < BOUNDARY_TOL * R`.
pub const BOUNDARY_TOL: f64 = 1e-10;
const SPEED_TOL: f64 = 1e-9;
/// Below this `sin(theta)` the polar chart is too close to its pole.
const POLE_GUARD: f64 = 1e-6;

/// Coordinates `(x_1, .., x_{n-1}, x_n)` adapted to the boundary, `x_n` being
/// the distance from it.
pub trait BoundaryChart {
    /// Christoffel symbols `Gamma^k_ij`, indexed `[k][i][j]`.
    fn christoffel(&self, x: &[f64; 3]) -> [[[f64; 3]; 3]; 3];
    /// Metric `g_ij`; `g_nn = 1` and `g_in = 0` in boundary coordinates.
    fn metric(&self, x: &[f64; 3]) -> [[f64; 3]; 3];
    fn to_cartesian(&self, x: &[f64; 3], v: &[f64; 3]) -> (Vec3, Vec3);
    fn cartesian_to_chart(&self, p: Vec3, d: Vec3) -> ([f64; 3], [f64; 3]);
    /// Scale for the on-boundary tolerance.
    fn length_scale(&self) -> f64;
}

/// Polar chart on the exterior of a sphere; the pole is the scene's
/// incidence direction.
#[derive(Debug, Clone, Copy)]
pub struct SphereChart {
    radius: f64,
    frame: [Vec3; 3],
}

impl SphereChart {
    pub fn new(scene: &ObstacleScene) -> Self {
        SphereChart { radius: scene.radius(), frame: scene.frame() }
    }
}

impl BoundaryChart for SphereChart {
    fn christoffel(&self, x: &[f64; 3]) -> [[[f64; 3]; 3]; 3] {
        let (s, c) = x[0].sin_cos();
        let r = self.radius + x[2];
        let mut g = [[[0.0; 3]; 3]; 3];
        g[0][1][1] = -s * c;
        g[0][0][2] = 1.0 / r;
        g[0][2][0] = 1.0 / r;
        g[1][0][1] = c / s;
        g[1][1][0] = c / s;
        g[1][1][2] = 1.0 / r;
        g[1][2][1] = 1.0 / r;
        g[2][0][0] = -r;
        g[2][1][1] = -r * s * s;
        g
    }

    fn metric(&self, x: &[f64; 3]) -> [[f64; 3]; 3] {
        let r = self.radius + x[2];
        let s = x[0].sin();
        [[r * r, 0.0, 0.0], [0.0, r * r * s * s, 0.0], [0.0, 0.0, 1.0]]
    }

    fn to_cartesian(&self, x: &[f64; 3], v: &[f64; 3]) -> (Vec3, Vec3) {
        let r = self.radius + x[2];
        let (st, ct) = x[0].sin_cos();
        let (sp, cp) = x[1].sin_cos();
        let e_r = [st * cp, st * sp, ct];
        let e_t = [ct * cp, ct * sp, -st];
        let e_p = [-sp, cp, 0.0];
        let local_p = vec3::scale(e_r, r);
        let local_d = vec3::add(vec3::add(vec3::scale(e_r, v[2]), vec3::scale(e_t, r * v[0])), vec3::scale(e_p, r * st * v[1]));
        (self.rotate_out(local_p), self.rotate_out(local_d))
    }

    fn cartesian_to_chart(&self, p: Vec3, d: Vec3) -> ([f64; 3], [f64; 3]) {
        let lp = self.rotate_in(p);
        let ld = self.rotate_in(d);
        let r = vec3::norm(lp);
        let rho = lp[0].hypot(lp[1]);
        let theta = rho.atan2(lp[2]);
        let phi = lp[1].atan2(lp[0]);
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        let e_r = [st * cp, st * sp, ct];
        let e_t = [ct * cp, ct * sp, -st];
        let e_p = [-sp, cp, 0.0];
        let phidot = if st > 0.0 { vec3::dot(ld, e_p) / (r * st) } else { 0.0 };
        ([theta, phi, r - self.radius], [vec3::dot(ld, e_t) / r, phidot, vec3::dot(ld, e_r)])
    }

    fn length_scale(&self) -> f64 {
        self.radius
    }
}

impl SphereChart {
    fn rotate_out(&self, l: Vec3) -> Vec3 {
        let [ex, ey, ez] = self.frame;
        vec3::add(vec3::add(vec3::scale(ex, l[0]), vec3::scale(ey, l[1])), vec3::scale(ez, l[2]))
    }

    fn rotate_in(&self, w: Vec3) -> Vec3 {
        let [ex, ey, ez] = self.frame;
        [vec3::dot(w, ex), vec3::dot(w, ey), vec3::dot(w, ez)]
    }
}

/// Normal curvature of the boundary in the direction `v`:
/// `chi = -sum_{i,j<n} v_i v_j Gamma_{ijn}`.
pub fn normal_curvature<C: BoundaryChart>(chart: &C, x: &[f64; 3], v: &[f64; 3]) -> f64 {
    let g = chart.christoffel(x);
    // Gamma_{ijn} = g_nn Gamma^n_ij with g_nn = 1
    let mut chi = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            chi -= v[i] * v[j] * g[2][i][j];
        }
    }
    chi
}

/// Right-hand side of the modified geodesic system, `chi` active only when
/// `on_boundary`.
pub fn acceleration<C: BoundaryChart>(chart: &C, x: &[f64; 3], v: &[f64; 3], on_boundary: bool) -> [f64; 3] {
    let g = chart.christoffel(x);
    let mut a = [0.0; 3];
    for k in 0..2 {
        for i in 0..3 {
            for j in 0..3 {
                a[k] -= g[k][i][j] * v[i] * v[j];
            }
        }
    }
    let chi = if on_boundary { normal_curvature(chart, x, v) } else { 0.0 };
    a[2] = -chi;
    for i in 0..2 {
        for j in 0..2 {
            a[2] -= g[2][i][j] * v[i] * v[j];
        }
    }
    a
}

/// Position and velocity in boundary coordinates.
///
/// `on_boundary` selects the branch: `true` keeps the geodesic on the sphere,
/// `false` lets it move freely. At a boundary point with tangent velocity both
/// are valid Cauchy data, which is the bifurcation of diffracted rays.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryGeodesicState {
    pub x: [f64; 3],
    pub v: [f64; 3],
    pub on_boundary: bool,
}

impl BoundaryGeodesicState {
    pub fn x_n(&self) -> f64 {
        self.x[2]
    }

    /// Metric speed `|v|_g`.
    pub fn speed<C: BoundaryChart>(&self, chart: &C) -> f64 {
        let g = chart.metric(&self.x);
        let mut s = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                s += g[i][j] * self.v[i] * self.v[j];
            }
        }
        s.sqrt()
    }

    fn validate<C: BoundaryChart>(&self, chart: &C) -> Result<()> {
        let tol = BOUNDARY_TOL * chart.length_scale();
        if self.x.iter().chain(self.v.iter()).any(|c| !c.is_finite()) {
            return Err(Error::InvalidInput("non-finite geodesic state".into()));
        }
        if self.x[2] < -tol {
            return Err(Error::Geometry(format!("state lies inside the obstacle, x_n = {:e}", self.x[2])));
        }
        if self.on_boundary && (self.x[2] > tol || self.v[2].abs() > SPEED_TOL) {
            return Err(Error::InvalidInput(format!(
                "boundary branch requires x_n = 0 and tangent velocity, got x_n = {:e}, x_n' = {:e}",
                self.x[2], self.v[2]
            )));
        }
        let speed = self.speed(chart);
        if (speed - 1.0).abs() > SPEED_TOL {
            return Err(Error::InvalidInput(format!("metric speed {speed} is not 1")));
        }
        Ok(())
    }
}

/// One sample along an integrated geodesic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectorySample {
    pub s: f64,
    pub state: BoundaryGeodesicState,
    pub position: Vec3,
    pub tangent: Vec3,
}

/// Samples of a geodesic ordered by arclength.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub radius: f64,
    pub samples: Vec<TrajectorySample>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn last(&self) -> &TrajectorySample {
        self.samples.last().expect("trajectories always hold the initial state")
    }

    /// Appends `next`, which must start where `self` ends; arclengths of
    /// `next` are shifted to continue those of `self`.
    pub fn concat(mut self, next: Trajectory) -> Result<Trajectory> {
        let end = *self.last();
        let first = next.samples.first().ok_or_else(|| Error::InvalidInput("empty trajectory".into()))?;
        let gap = vec3::dist(end.position, first.position);
        if gap > 1e-9 * self.radius.max(1.0) {
            return Err(Error::Geometry(format!("trajectories do not join, gap {gap:e}")));
        }
        let offset = end.s - first.s;
        self.samples.extend(next.samples.into_iter().skip(1).map(|mut t| {
            t.s += offset;
            t
        }));
        Ok(self)
    }
}

fn sample<C: BoundaryChart>(chart: &C, s: f64, state: BoundaryGeodesicState) -> TrajectorySample {
    let (position, tangent) = chart.to_cartesian(&state.x, &state.v);
    TrajectorySample { s, state, position, tangent }
}

type Phase = ([f64; 3], [f64; 3]);

fn rk4_step<C: BoundaryChart>(chart: &C, y: Phase, h: f64) -> Phase {
    let f = |(x, v): Phase| -> Phase { (v, acceleration(chart, &x, &v, true)) };
    let shift = |(x, v): Phase, (dx, dv): Phase, c: f64| -> Phase {
        let mut xo = x;
        let mut vo = v;
        for i in 0..3 {
            xo[i] += c * dx[i];
            vo[i] += c * dv[i];
        }
        (xo, vo)
    };
    let k1 = f(y);
    let k2 = f(shift(y, k1, 0.5 * h));
    let k3 = f(shift(y, k2, 0.5 * h));
    let k4 = f(shift(y, k3, h));
    let mut out = y;
    for i in 0..3 {
        out.0[i] += h / 6.0 * (k1.0[i] + 2.0 * k2.0[i] + 2.0 * k3.0[i] + k4.0[i]);
        out.1[i] += h / 6.0 * (k1.1[i] + 2.0 * k2.1[i] + 2.0 * k3.1[i] + k4.1[i]);
    }
    out
}

/// Integrates a unit-speed geodesic for `arclength` with fixed step `step`.
///
/// Boundary branches use RK4 on the modified system; interior branches move
/// on exact straight lines, with bisection on the radial velocity locating
/// points of closest approach inside a step. Reaching into the obstacle is a
/// geometry violation; grazing it records a contact sample.
pub fn geodesic_integrate(
    scene: &ObstacleScene,
    init: BoundaryGeodesicState,
    arclength: f64,
    step: f64,
) -> Result<Trajectory> {
    if !(step > 0.0) || !(arclength >= 0.0) || !step.is_finite() || !arclength.is_finite() {
        return Err(Error::InvalidInput(format!("need step > 0 and arclength >= 0, got {step}, {arclength}")));
    }
    let chart = SphereChart::new(scene);
    init.validate(&chart)?;
    let radius = scene.radius();
    let n_steps = (arclength / step).ceil().max(1.0) as usize;
    let h = arclength / n_steps as f64;
    let mut samples = Vec::with_capacity(n_steps + 2);
    samples.push(sample(&chart, 0.0, init));

    if init.on_boundary {
        let mut y = (init.x, init.v);
        y.0[2] = 0.0;
        y.1[2] = 0.0;
        for n in 1..=n_steps {
            if y.0[0].sin() < POLE_GUARD {
                return Err(Error::Degenerate(format!(
                    "boundary geodesic reached the chart pole at arclength {}",
                    (n - 1) as f64 * h
                )));
            }
            y = rk4_step(&chart, y, h);
            let state = BoundaryGeodesicState { x: y.0, v: y.1, on_boundary: true };
            samples.push(sample(&chart, n as f64 * h, state));
        }
        return Ok(Trajectory { radius, samples });
    }

    let (p0, d0) = chart.to_cartesian(&init.x, &init.v);
    let d0 = vec3::normalize(d0);
    let at = |s: f64| -> TrajectorySample {
        let p = vec3::axpy(p0, s, d0);
        let (x, v) = chart.cartesian_to_chart(p, d0);
        let state = BoundaryGeodesicState { x, v, on_boundary: false };
        TrajectorySample { s, state, position: p, tangent: d0 }
    };
    let tol = BOUNDARY_TOL * radius;
    for n in 1..=n_steps {
        let (a, b) = ((n - 1) as f64 * h, n as f64 * h);
        let radial = |s: f64| vec3::dot(vec3::axpy(p0, s, d0), d0);
        // closest approach to the centre inside (a, b]
        if radial(a) < 0.0 && radial(b) >= 0.0 {
            let (mut lo, mut hi) = (a, b);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if radial(mid) < 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let s_star = 0.5 * (lo + hi);
            let closest = at(s_star);
            if closest.state.x[2] < -tol {
                return Err(Error::Geometry(format!(
                    "straight segment enters the obstacle at arclength {s_star}, x_n = {:e}",
                    closest.state.x[2]
                )));
            }
            if closest.state.x[2] <= tol && s_star > a && s_star < b {
                samples.push(closest);
            }
        }
        let next = at(b);
        if next.state.x[2] < -tol {
            return Err(Error::Geometry(format!("trajectory enters the obstacle at arclength {b}")));
        }
        samples.push(next);
    }
    Ok(Trajectory { radius, samples })
}

/// The four ways a geodesic of the exterior can meet the boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContactClass {
    /// Entirely on the boundary.
    BoundaryOnly,
    /// On the boundary first, then leaves it tangentially.
    Launch,
    /// Arrives tangentially, then stays on the boundary.
    Landing,
    /// Touches the boundary at a single point (or along less than `min_arc`).
    TangentTouch,
}

/// Thresholds for [`classify_contact`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContactConfig {
    /// Contacts shorter than this arclength count as tangent touches.
    pub min_arc: f64,
    /// Relative on-boundary tolerance (times the radius).
    pub tol: f64,
}

impl ContactConfig {
    pub fn for_radius(radius: f64) -> Self {
        ContactConfig { min_arc: 1e-6 * radius, tol: BOUNDARY_TOL }
    }
}

/// Classifies how `trajectory` meets the boundary.
///
/// The contact set must be one interval. Several separate contacts, or a
/// contact interval with free motion on both sides (a full diffracted ray),
/// are reported as uncertain with the offending interval: such trajectories
/// have to be split at their junctions first.
pub fn classify_contact(trajectory: &Trajectory, config: &ContactConfig) -> Result<ContactClass> {
    let tol = config.tol * trajectory.radius;
    let on: Vec<bool> = trajectory.samples.iter().map(|t| t.state.x[2] < tol).collect();
    let mut runs: Vec<(usize, usize)> = Vec::new();
    let mut i = 0;
    while i < on.len() {
        if on[i] {
            let start = i;
            while i + 1 < on.len() && on[i + 1] {
                i += 1;
            }
            runs.push((start, i));
        }
        i += 1;
    }
    let s = |k: usize| trajectory.samples[k].s;
    match runs.len() {
        0 => Err(Error::Geometry("trajectory never touches the boundary".into())),
        1 => {
            let (a, b) = runs[0];
            let before = a > 0;
            let after = b + 1 < on.len();
            let len = s(b) - s(a);
            let window = tol;
            if (len - config.min_arc).abs() <= window {
                return Err(Error::ClassificationUncertain {
                    start: s(a),
                    end: s(b),
                    reason: format!("contact length {len:e} is within tolerance of the minimum arc {:e}", config.min_arc),
                });
            }
            if len < config.min_arc {
                return Ok(ContactClass::TangentTouch);
            }
            match (before, after) {
                (false, false) => Ok(ContactClass::BoundaryOnly),
                (false, true) => Ok(ContactClass::Launch),
                (true, false) => Ok(ContactClass::Landing),
                (true, true) => Err(Error::ClassificationUncertain {
                    start: s(a),
                    end: s(b),
                    reason: "landing followed by launch; classify each junction separately".into(),
                }),
            }
        }
        _ => Err(Error::ClassificationUncertain {
            start: s(runs[0].1),
            end: s(runs[1].0),
            reason: format!("{} separate contact intervals", runs.len()),
        }),
    }
}

/// Splits a tangent boundary point into its two geodesic continuations:
/// `(boundary branch, interior branch)`.
pub fn bifurcate(scene: &ObstacleScene, point: Vec3, tangent: Vec3) -> Result<(BoundaryGeodesicState, BoundaryGeodesicState)> {
    let radius = scene.radius();
    let r = vec3::norm(point);
    if (r - radius).abs() > 1e-9 * radius {
        return Err(Error::InvalidInput(format!("point at distance {r} is not on the sphere of radius {radius}")));
    }
    if (vec3::norm(tangent) - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidInput("tangent must be a unit vector".into()));
    }
    let normal_component = vec3::dot(tangent, point) / r;
    if normal_component < -1e-9 {
        return Err(Error::Geometry(format!("tangent points into the obstacle (normal component {normal_component:e})")));
    }
    if normal_component > 1e-9 {
        return Err(Error::InvalidInput(format!("tangent leaves the boundary transversally (normal component {normal_component:e})")));
    }
    let chart = SphereChart::new(scene);
    let (mut x, mut v) = chart.cartesian_to_chart(point, tangent);
    x[2] = 0.0;
    v[2] = 0.0;
    let boundary = BoundaryGeodesicState { x, v, on_boundary: true };
    let interior = BoundaryGeodesicState { x, v, on_boundary: false };
    Ok((boundary, interior))
}
