//! Spherical Bessel functions of real argument.
//!
//! `j_l` comes from Miller's downward recurrence normalized with the sum rule
//! `sum_l (2l+1) j_l(x)^2 = 1`; `y_l` from upward recurrence, where it is the
//! dominant solution.

use crate::error::{Error, Result};

const RESCALE_ABOVE: f64 = 1e100;

/// `j_l(x)` and `y_l(x)` for `l = 0..=l_max` at a single argument.
#[derive(Debug, Clone, PartialEq)]
pub struct SphericalBessel {
    pub x: f64,
    pub j: Vec<f64>,
    pub y: Vec<f64>,
}

impl SphericalBessel {
    pub fn l_max(&self) -> usize {
        self.j.len() - 1
    }

    /// `j_l'(x) = j_{l-1}(x) - (l+1)/x j_l(x)`, with `j_0' = -j_1`.
    pub fn dj(&self, l: usize) -> f64 {
        derivative(&self.j, l, self.x)
    }

    /// `y_l'(x)`, same recurrence as [`SphericalBessel::dj`].
    pub fn dy(&self, l: usize) -> f64 {
        derivative(&self.y, l, self.x)
    }
}

fn derivative(f: &[f64], l: usize, x: f64) -> f64 {
    if l == 0 {
        -f[1]
    } else {
        f[l - 1] - (l as f64 + 1.0) / x * f[l]
    }
}

/// Starting order for the downward recurrence.
///
/// The recurrence only picks out `j_l` once it runs through the region
/// `n > x`, so the margin is added to `max(l, x)`.
pub fn miller_start(l_max: usize, x: f64) -> usize {
    let margin = 20usize.max((10.0 * x.cbrt()).ceil() as usize);
    l_max.max(x.ceil() as usize) + margin
}

/// `j_l(x)`, `y_l(x)` for all `l <= l_max`.
pub fn spherical_bessel_array(l_max: usize, x: f64) -> Result<SphericalBessel> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("spherical_bessel", format!("x must be positive and finite, got {x}")));
    }
    // l_max >= 1 internally so the derivative helpers always have j_1.
    let n_keep = l_max.max(1);

    let start = miller_start(n_keep, x);
    let mut j = vec![0.0; n_keep + 1];
    let mut f_next = 0.0; // f_{n+1}
    let mut f = 1.0; // f_n
    let mut sum = 0.0;
    for n in (0..=start).rev() {
        if n <= n_keep {
            j[n] = f;
        }
        sum += (2 * n + 1) as f64 * f * f;
        if n == 0 {
            break;
        }
        let f_prev = (2 * n + 1) as f64 / x * f - f_next;
        f_next = f;
        f = f_prev;
        if f.abs() > RESCALE_ABOVE {
            let s = 1.0 / RESCALE_ABOVE;
            f *= s;
            f_next *= s;
            sum *= s * s;
            for v in j.iter_mut().skip(n) {
                *v *= s;
            }
        }
    }
    let (sin, cos) = x.sin_cos();
    let j0 = sin / x;
    let j1 = sin / (x * x) - cos / x;
    let norm = sum.sqrt();
    let reference_sign = if j0.abs() >= j1.abs() { j0.signum() * j[0].signum() } else { j1.signum() * j[1].signum() };
    let scale = reference_sign / norm;
    for v in &mut j {
        *v *= scale;
    }

    let mut y = vec![0.0; n_keep + 1];
    y[0] = -cos / x;
    y[1] = -cos / (x * x) - sin / x;
    for n in 1..n_keep {
        y[n + 1] = (2 * n + 1) as f64 / x * y[n] - y[n - 1];
    }

    Ok(SphericalBessel { x, j, y })
}

/// `(j_l(x), y_l(x))` for a single order.
pub fn spherical_bessel(l: usize, x: f64) -> Result<(f64, f64)> {
    let table = spherical_bessel_array(l, x)?;
    Ok((table.j[l], table.y[l]))
}
