//! Creeping modes of the sound-soft sphere.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::{airy_pair_real, airy_zero};

/// `sqrt(3) 2^{-4/3}`.
///
/// The imaginary part of the first-order phase correction on a sphere is
/// `-(1/2) q_i sin(pi/3) (2/R)^{2/3} l` along an arc of length `l`; through
/// `exp(ik (Theta0 + k^{-2/3} Theta1))` this damps the mode as
/// `exp(-beta_i l)` with `beta_i = (sqrt(3)/4) 2^{2/3} |q_i| k^{1/3} R^{-2/3}`.
pub const DAMPING_CONSTANT: f64 = 0.687_364_818_499_301_3;

fn check_kr(what: &'static str, k: f64, radius: f64) -> Result<()> {
    if !(k > 0.0) || !(radius > 0.0) || !k.is_finite() || !radius.is_finite() {
        return Err(Error::domain(what, format!("need k > 0 and R > 0, got k = {k}, R = {radius}")));
    }
    Ok(())
}

/// Damping exponent `beta_i = sqrt(3) 2^{-4/3} |q_i| k^{1/3} R^{-2/3}`
/// (per unit arclength).
pub fn damping_exponent(i: usize, k: f64, radius: f64) -> Result<f64> {
    check_kr("damping_exponent", k, radius)?;
    if i == 0 {
        return Err(Error::domain("damping_exponent", "mode index starts at 1"));
    }
    let q = airy_zero(i)?;
    Ok(DAMPING_CONSTANT * q.abs() * k.cbrt() * radius.powf(-2.0 / 3.0))
}

/// Diffraction coefficient `C_i = calibration (kR)^{1/3} / Ai'(q_i)^2`.
pub fn diffraction_coefficient(i: usize, k: f64, radius: f64, calibration: f64) -> Result<Complex64> {
    check_kr("diffraction_coefficient", k, radius)?;
    if !(calibration > 0.0) || !calibration.is_finite() {
        return Err(Error::domain("diffraction_coefficient", format!("calibration must be positive, got {calibration}")));
    }
    if i == 0 {
        return Err(Error::domain("diffraction_coefficient", "mode index starts at 1"));
    }
    let (_, aip) = airy_pair_real(airy_zero(i)?)?;
    Ok(Complex64::new(calibration * (k * radius).cbrt() / (aip * aip), 0.0))
}

/// One creeping mode at fixed `k` and `R`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CreepingMode {
    pub index: usize,
    pub q: f64,
    pub beta: f64,
    /// `lambda = R (k + i beta)`.
    pub lambda: Complex64,
    /// `mu = lambda - 1/2`.
    pub mu: Complex64,
    pub c: Complex64,
    pub k: f64,
    pub radius: f64,
}

impl CreepingMode {
    pub fn new(index: usize, k: f64, radius: f64, calibration: f64) -> Result<Self> {
        let beta = damping_exponent(index, k, radius)?;
        let c = diffraction_coefficient(index, k, radius, calibration)?;
        let lambda = Complex64::new(radius * k, radius * beta);
        Ok(CreepingMode { index, q: airy_zero(index)?, beta, lambda, mu: lambda - 0.5, c, k, radius })
    }

    /// Modes `1..=count`.
    pub fn first(count: usize, k: f64, radius: f64, calibration: f64) -> Result<Vec<Self>> {
        (1..=count).map(|i| Self::new(i, k, radius, calibration)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_matches_closed_form() {
        assert!((DAMPING_CONSTANT - 3f64.sqrt() * 2f64.powf(-4.0 / 3.0)).abs() < 1e-16);
    }

    #[test]
    fn damping_values() {
        // sqrt(3) 2^{-4/3} |q_i|, mpmath
        assert!((damping_exponent(1, 1.0, 1.0).unwrap() - 1.607_132_775_822_549).abs() < 1e-12);
        assert!((damping_exponent(2, 1.0, 1.0).unwrap() - 2.809_912_627_699_404).abs() < 1e-12);
        let r = damping_exponent(1, 8.0, 1.7).unwrap() / damping_exponent(1, 1.0, 1.7).unwrap();
        assert!((r - 2.0).abs() < 1e-14);
        let ratio = damping_exponent(2, 3.0, 2.0).unwrap() / damping_exponent(1, 3.0, 2.0).unwrap();
        assert!((ratio - 4.087_949_444_130_970_6 / 2.338_107_410_459_767).abs() < 1e-12);
        assert!(damping_exponent(0, 1.0, 1.0).is_err());
        assert!(damping_exponent(1, -1.0, 1.0).is_err());
    }

    #[test]
    fn diffraction_coefficient_scaling() {
        let c1 = diffraction_coefficient(1, 5.0, 2.0, 1.0).unwrap();
        assert!((diffraction_coefficient(1, 40.0, 2.0, 1.0).unwrap() / c1 - 2.0).norm() < 1e-14);
        assert!((diffraction_coefficient(1, 5.0, 2.0, 2.0).unwrap() / c1 - 2.0).norm() < 1e-15);
        let c2 = diffraction_coefficient(2, 5.0, 2.0, 1.0).unwrap();
        assert!((c2.re / c1.re - 0.762_334_672_004_646_9).abs() < 1e-10);
        assert!(diffraction_coefficient(1, 5.0, 2.0, 0.0).is_err());
    }

    #[test]
    fn mode_fields() {
        let m = CreepingMode::new(1, 10.0, 2.0, 1.0).unwrap();
        assert!(m.lambda.im > 0.0 && m.beta > 0.0);
        assert_eq!(m.lambda.re, 20.0);
        assert!((m.lambda.im - 2.0 * m.beta).abs() < 1e-15);
        assert_eq!(m.mu, m.lambda - 0.5);
        let ms = CreepingMode::first(4, 10.0, 2.0, 1.0).unwrap();
        assert!(ms.windows(2).all(|w| w[0].beta < w[1].beta));
    }
}
