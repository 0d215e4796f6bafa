//! Exact partial-wave solution for the sound-soft sphere.
//!
//! With the incident wave `exp(ikz)` and the scattered field
//! `f(theta) exp(ikr)/r`, the Dirichlet condition fixes
//! `tan delta_l = j_l(kR) / y_l(kR)` and
//! `f(theta) = (1/k) sum (2l+1) exp(i delta_l) sin delta_l P_l(cos theta)`.
//! Nothing here touches the creeping-wave amplitude code.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::{airy_zero, legendre_p_int_array, spherical_bessel_array};
use crate::sweep::{self, Execution};

/// `ceil(kR + 10 (kR)^{1/3} + 20)`.
pub fn default_lmax(k: f64, radius: f64) -> usize {
    let x = k * radius;
    (x + 10.0 * x.cbrt() + 20.0).ceil() as usize
}

/// Smallest accepted truncation, `kR + 10 (kR)^{1/3} + 10`.
pub fn min_lmax(k: f64, radius: f64) -> f64 {
    let x = k * radius;
    x + 10.0 * x.cbrt() + 10.0
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseShiftTable {
    pub k: f64,
    pub radius: f64,
    pub delta: Vec<f64>,
}

impl PhaseShiftTable {
    pub fn l_max(&self) -> usize {
        self.delta.len() - 1
    }

    /// `(4 pi / k^2) sum (2l+1) sin^2 delta_l`.
    pub fn sigma_total(&self) -> f64 {
        let s: f64 = self.delta.iter().enumerate().map(|(l, d)| (2 * l + 1) as f64 * d.sin().powi(2)).sum();
        4.0 * PI / (self.k * self.k) * s
    }
}

pub fn phase_shifts(k: f64, radius: f64, l_max: usize) -> Result<PhaseShiftTable> {
    if !(k > 0.0 && radius > 0.0) || !k.is_finite() || !radius.is_finite() {
        return Err(Error::domain("phase_shifts", format!("need k > 0 and R > 0, got k = {k}, R = {radius}")));
    }
    if (l_max as f64) < min_lmax(k, radius) {
        return Err(Error::domain(
            "phase_shifts",
            format!("l_max = {l_max} is below kR + 10 (kR)^(1/3) + 10 = {:.2}", min_lmax(k, radius)),
        ));
    }
    let b = spherical_bessel_array(l_max, k * radius)?;
    // y_l overflowing to -inf gives delta_l = -0, which is the right limit
    let delta = (0..=l_max).map(|l| (b.j[l] / b.y[l]).atan()).collect();
    Ok(PhaseShiftTable { k, radius, delta })
}

/// Phase shifts with the default truncation.
pub fn phase_shifts_default(k: f64, radius: f64) -> Result<PhaseShiftTable> {
    phase_shifts(k, radius, default_lmax(k, radius))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExactAmplitude {
    pub k: f64,
    pub radius: f64,
    pub thetas: Vec<f64>,
    pub f: Vec<Complex64>,
    /// `f(0)`, summed with `P_l(1)` from the recurrence.
    pub forward: Complex64,
    pub sigma_total: f64,
    /// `(1/k) sum (2l+1) |sin delta_l|` over the last five retained terms;
    /// bounds the size of the dropped tail, which decays faster still.
    pub tail_bound: f64,
}

impl ExactAmplitude {
    /// `(4 pi / k) Im f(0)`.
    pub fn sigma_optical(&self) -> f64 {
        4.0 * PI / self.k * self.forward.im
    }
}

fn series_at(coef: &[Complex64], theta: f64) -> Complex64 {
    let p = legendre_p_int_array(coef.len() - 1, theta.cos());
    coef.iter().zip(&p).map(|(c, p)| c * p).sum()
}

pub fn exact_amplitude(table: &PhaseShiftTable, thetas: &[f64]) -> ExactAmplitude {
    exact_amplitude_with(table, thetas, Execution::Sequential)
}

/// [`exact_amplitude`] with the angular grid distributed according to `exec`.
pub fn exact_amplitude_with(table: &PhaseShiftTable, thetas: &[f64], exec: Execution) -> ExactAmplitude {
    let k = table.k;
    let coef: Vec<Complex64> = table
        .delta
        .iter()
        .enumerate()
        .map(|(l, &d)| (2 * l + 1) as f64 / k * Complex64::from_polar(d.sin(), d))
        .collect();
    let f = sweep::map(exec, thetas, |&t| series_at(&coef, t));
    let forward = series_at(&coef, 0.0);
    let n = table.delta.len();
    let tail_bound = table.delta[n.saturating_sub(5)..]
        .iter()
        .enumerate()
        .map(|(j, d)| (2 * (n.saturating_sub(5) + j) + 1) as f64 * d.sin().abs())
        .sum::<f64>()
        / k;
    ExactAmplitude {
        k,
        radius: table.radius,
        thetas: thetas.to_vec(),
        f,
        forward,
        sigma_total: table.sigma_total(),
        tail_bound,
    }
}

/// Leading-order Regge pole `lambda_n = kR + exp(i pi/3) (kR/2)^{1/3} |q_n|`.
pub fn regge_pole_asymptotic(n: usize, k: f64, radius: f64) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::domain("regge_pole_asymptotic", "mode index starts at 1"));
    }
    let x = k * radius;
    let q = airy_zero(n)?;
    Ok(x + Complex64::from_polar((0.5 * x).cbrt() * q.abs(), PI / 3.0))
}

/// Geometric-optics backscatter from the illuminated pole, `-(R/2) exp(-2ikR)`.
pub fn specular_backscatter(k: f64, radius: f64) -> Complex64 {
    -0.5 * radius * Complex64::from_polar(1.0, -2.0 * k * radius)
}

/// Higher-order specular terms `exp(-2ikR) / (kR)^p`, `p = 1..=order`.
///
/// Their coefficients are not modelled here; they serve as nuisance columns
/// when the creeping part is isolated from `f - specular_backscatter`.
pub fn specular_corrections(ks: &[f64], radius: f64, order: u32) -> Vec<Vec<Complex64>> {
    (1..=order as i32)
        .map(|p| ks.iter().map(|&k| Complex64::from_polar((k * radius).powi(-p), -2.0 * k * radius)).collect())
        .collect()
}

/// Exact backscatter amplitude `f(k, pi)` along a `k` grid.
pub fn backscatter_series(ks: &[f64], radius: f64, exec: Execution) -> Result<Vec<Complex64>> {
    sweep::try_map(exec, ks, |&k| {
        let t = phase_shifts_default(k, radius)?;
        Ok(exact_amplitude(&t, &[PI]).f[0])
    })
}

/// Outcome of [`backward_interference_probe`].
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeResult {
    pub delta_k: f64,
    /// `2 pi / ((pi + 2) R)`.
    pub predicted: f64,
    pub relative_error: f64,
    /// Spectral peak over the median of the periodogram.
    pub peak_to_floor: f64,
    /// RMS of the detrended signal in the first and last thirds of the window.
    pub envelope: (f64, f64),
}

/// Minimum peak-to-median ratio for an oscillation to count as detected.
pub const PROBE_DETECTION_RATIO: f64 = 10.0;

/// Detrended oscillations smaller than this fraction of the intensity are
/// indistinguishable from series truncation and rounding.
pub const PROBE_AMPLITUDE_FLOOR: f64 = 1e-8;

/// Period in `k` of the oscillation of `|f(k, pi)|^2`.
///
/// The intensity is detrended with a least-squares cubic, tapered with a Hann
/// window and scanned with a fine-grid periodogram between two cycles per
/// window and the grid's Nyquist frequency.
pub fn backward_interference_probe(ks: &[f64], radius: f64, exec: Execution) -> Result<ProbeResult> {
    if ks.len() < 512 {
        return Err(Error::InvalidInput(format!("probe needs at least 512 k points, got {}", ks.len())));
    }
    if !(radius > 0.0) || ks.windows(2).any(|w| !(w[1] > w[0])) || !(ks[0] > 0.0) {
        return Err(Error::InvalidInput("probe needs R > 0 and a strictly increasing positive k grid".into()));
    }
    let f = backscatter_series(ks, radius, exec)?;
    let intensity: Vec<f64> = f.iter().map(|v| v.norm_sqr()).collect();
    probe_signal(ks, &intensity, radius)
}

/// The spectral part of the probe, on an already computed intensity series.
pub fn probe_signal(ks: &[f64], intensity: &[f64], radius: f64) -> Result<ProbeResult> {
    let n = ks.len();
    let (k0, k1) = (ks[0], ks[n - 1]);
    let span = k1 - k0;
    let t: Vec<f64> = ks.iter().map(|k| 2.0 * (k - k0) / span - 1.0).collect();
    let trend = cubic_fit(&t, intensity)?;
    let resid: Vec<f64> = t
        .iter()
        .zip(intensity)
        .map(|(&x, &y)| y - (trend[0] + x * (trend[1] + x * (trend[2] + x * trend[3]))))
        .collect();

    let third = n / 3;
    let rms = |s: &[f64]| (s.iter().map(|v| v * v).sum::<f64>() / s.len() as f64).sqrt();
    let envelope = (rms(&resid[..third]), rms(&resid[n - third..]));
    let floor = PROBE_AMPLITUDE_FLOOR * rms(intensity);
    if !(rms(&resid) > floor) {
        return Err(Error::Inconclusive { reason: "detrended intensity is at the numerical floor".into(), floor });
    }

    let tapered: Vec<f64> = resid
        .iter()
        .enumerate()
        .map(|(j, r)| r * (0.5 - 0.5 * (2.0 * PI * j as f64 / (n - 1) as f64).cos()))
        .collect();
    let dk = span / (n - 1) as f64;
    let w_lo = 2.0 * 2.0 * PI / span;
    let w_hi = PI / dk;
    let dw = 2.0 * PI / span / 32.0;
    let steps = ((w_hi - w_lo) / dw) as usize;
    let mut power = Vec::with_capacity(steps + 1);
    for s in 0..=steps {
        let w = w_lo + s as f64 * dw;
        let z: Complex64 = ks.iter().zip(&tapered).map(|(k, r)| Complex64::from_polar(*r, -w * k)).sum();
        power.push((w, z.norm_sqr()));
    }
    let (w_peak, p_peak) = power.iter().copied().fold((0.0, f64::NEG_INFINITY), |a, b| if b.1 > a.1 { b } else { a });
    let mut sorted: Vec<f64> = power.iter().map(|p| p.1).collect();
    sorted.sort_by(f64::total_cmp);
    let median = sorted[sorted.len() / 2];
    let ratio = p_peak / median;
    if !(ratio >= PROBE_DETECTION_RATIO) || !(p_peak > 0.0) {
        return Err(Error::Inconclusive {
            reason: format!("spectral peak only {ratio:.2} times the median periodogram level"),
            floor: median.sqrt(),
        });
    }
    let delta_k = 2.0 * PI / w_peak;
    let predicted = 2.0 * PI / ((PI + 2.0) * radius);
    Ok(ProbeResult { delta_k, predicted, relative_error: (delta_k - predicted) / predicted, peak_to_floor: ratio, envelope })
}

/// Least-squares coefficients `c0 + c1 t + c2 t^2 + c3 t^3`.
fn cubic_fit(t: &[f64], y: &[f64]) -> Result<[f64; 4]> {
    let mut a = [[0.0; 5]; 4];
    for (&x, &v) in t.iter().zip(y) {
        let pw = [1.0, x, x * x, x * x * x];
        for r in 0..4 {
            for c in 0..4 {
                a[r][c] += pw[r] * pw[c];
            }
            a[r][4] += pw[r] * v;
        }
    }
    for col in 0..4 {
        let piv = (col..4).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())).unwrap();
        if a[piv][col].abs() < 1e-300 {
            return Err(Error::Degenerate("cubic detrend is singular".into()));
        }
        a.swap(col, piv);
        for r in 0..4 {
            if r != col {
                let m = a[r][col] / a[col][col];
                for c in col..5 {
                    a[r][c] -= m * a[col][c];
                }
            }
        }
    }
    Ok([a[0][4] / a[0][0], a[1][4] / a[1][1], a[2][4] / a[2][2], a[3][4] / a[3][3]])
}
