//! Uniform asymptotics for two coalescing saddle points.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::airy_pair_real;

/// Two saddle-point phases mapped onto the cubic normal form
/// `F(xi) = -xi^3/3 + rho0 xi`, whose saddles `xi = +-sqrt(rho0)` carry the
/// phases `theta0 +- (2/3) rho0^{3/2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaddlePair {
    pub phi1: f64,
    pub phi2: f64,
    pub theta0: f64,
    pub rho0: f64,
}

/// `theta0 = (phi1 + phi2)/2`, `rho0 = (3 |phi1 - phi2| / 4)^{2/3}`.
pub fn cfu_map(phi1: f64, phi2: f64) -> SaddlePair {
    let theta0 = 0.5 * (phi1 + phi2);
    let rho0 = (0.75 * (phi1 - phi2).abs()).powf(2.0 / 3.0);
    SaddlePair { phi1, phi2, theta0, rho0 }
}

/// `exp(ik theta0) [g0 Ai(-k^{2/3} rho0) + i k^{-1/3} h0 Ai'(-k^{2/3} rho0)]`.
pub fn uniform_airy_eval(pair: &SaddlePair, g0: Complex64, h0: Complex64, k: f64) -> Result<Complex64> {
    if !(k > 0.0) || !k.is_finite() {
        return Err(Error::domain("uniform_airy_eval", format!("wavenumber must be positive, got {k}")));
    }
    let (ai, aip) = airy_pair_real(-k.powf(2.0 / 3.0) * pair.rho0)?;
    let bracket = g0 * ai + Complex64::i() * k.powf(-1.0 / 3.0) * h0 * aip;
    Ok(Complex64::from_polar(1.0, k * pair.theta0) * bracket)
}

/// Leading stationary-phase term of `int A exp(ik Phi) d beta` at an
/// isolated saddle: `A |Phi''|^{-1/2} sqrt(2 pi / k) exp(ik Phi + i pi/4 sgn Phi'')`.
pub fn stationary_phase_leading(amplitude: Complex64, phase: f64, second_deriv: f64, k: f64) -> Result<Complex64> {
    if second_deriv == 0.0 {
        return Err(Error::Coalescence);
    }
    if !(k > 0.0) {
        return Err(Error::domain("stationary_phase_leading", format!("wavenumber must be positive, got {k}")));
    }
    let arg = k * phase + PI / 4.0 * second_deriv.signum();
    Ok(amplitude * second_deriv.abs().powf(-0.5) * (2.0 * PI / k).sqrt() * Complex64::from_polar(1.0, arg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::AI0;

    #[test]
    fn map_examples() {
        let p = cfu_map(2.0, 2.0);
        assert_eq!((p.theta0, p.rho0), (2.0, 0.0));
        let p = cfu_map(5.0, 3.0);
        assert_eq!(p.theta0, 4.0);
        assert!((p.rho0 - 1.310_370_697_104_448_3).abs() < 1e-15);
        assert_eq!(cfu_map(0.7, -0.7).theta0, 0.0);
        // (2/3) rho0^{3/2} = (phi1 - phi2)/2
        let p = cfu_map(1.9, -0.4);
        assert!((2.0 / 3.0 * p.rho0.powf(1.5) - 0.5 * (p.phi1 - p.phi2)).abs() < 1e-15);
    }

    #[test]
    fn coalescence_limit() {
        let p = cfu_map(0.0, 0.0);
        let v = uniform_airy_eval(&p, Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), 40.0).unwrap();
        assert!((v.re - AI0).abs() < 1e-15 && v.im.abs() < 1e-15);
        assert!(uniform_airy_eval(&p, Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), 0.0).is_err());
    }

    #[test]
    fn stationary_phase_properties() {
        let one = Complex64::new(1.0, 0.0);
        let a = stationary_phase_leading(one, 0.3, 2.0, 50.0).unwrap();
        let b = stationary_phase_leading(one, 0.3, -2.0, 50.0).unwrap();
        let base = Complex64::from_polar(1.0, 50.0 * 0.3);
        assert!(((a / base) - (b / base).conj()).norm() < 1e-14);
        let c = stationary_phase_leading(Complex64::new(0.0, 3.0), 0.3, 2.0, 50.0).unwrap();
        assert!((c - Complex64::new(0.0, 3.0) * a).norm() < 1e-14);
        assert_eq!(stationary_phase_leading(one, 0.0, 0.0, 1.0), Err(Error::Coalescence));
    }
}
