//! Complex-degree Legendre functions against the Mehler-Dirichlet integral
//! `P_nu(cos t) = (sqrt(2)/pi) int_0^t cos((nu + 1/2) phi) / sqrt(cos phi - cos t) dphi`.

use std::f64::consts::PI;

use creepwave::specfun::{legendre_p_complex, ComplexDegree};
use creepwave::Complex64;

fn mehler_dirichlet(nu: Complex64, t: f64) -> Complex64 {
    // phi = t - s^2 removes the inverse square root at phi = t
    let f = |s: f64| {
        let phi = t - s * s;
        let gap = 2.0 * (t - 0.5 * s * s).sin() * (0.5 * s * s).sin();
        if s == 0.0 {
            return 2.0 * ((nu + 0.5) * t).cos() / t.sin().sqrt();
        }
        2.0 * s * ((nu + 0.5) * phi).cos() / gap.sqrt()
    };
    numcheck::integrate(f, 0.0, t.sqrt(), 1e-14, 1e-12) * (2f64.sqrt() / PI)
}

#[test]
fn complex_degrees_match_quadrature() {
    let degrees = [
        Complex64::new(0.5, 0.0),
        Complex64::new(3.7, 0.4),
        Complex64::new(10.2, 1.3),
        Complex64::new(25.0, 2.5),
        Complex64::new(-2.3, 0.8),
    ];
    for nu in degrees {
        for t in [0.3f64, 1.0, 1.8, 2.6, 3.0] {
            let q = mehler_dirichlet(nu, t);
            let p = legendre_p_complex(ComplexDegree(nu), t.cos()).unwrap();
            assert!(numcheck::rel_err(p, q) < 1e-8, "nu = {nu}, t = {t}: {p} vs quadrature {q}");
        }
    }
}

#[test]
fn backward_argument_used_by_the_amplitude() {
    // P_mu(-cos theta) for creeping-mode degrees
    let mu = Complex64::new(39.5, 4.2);
    for theta in [1.6f64, 2.2, 2.9] {
        let x = -theta.cos();
        let q = mehler_dirichlet(mu, x.acos());
        let p = legendre_p_complex(ComplexDegree(mu), x).unwrap();
        assert!(numcheck::rel_err(p, q) < 1e-8, "theta = {theta}: {p} vs {q}");
    }
}
