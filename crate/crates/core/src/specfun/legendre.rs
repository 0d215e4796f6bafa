//! Legendre functions on the cut `-1 < x <= 1`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_SERIES_TERMS: usize = 200_000;

/// Degree of a Legendre function, allowed to be complex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexDegree(pub Complex64);

impl ComplexDegree {
    pub fn new(re: f64, im: f64) -> Self {
        ComplexDegree(Complex64::new(re, im))
    }

    pub fn value(self) -> Complex64 {
        self.0
    }
}

impl From<Complex64> for ComplexDegree {
    fn from(v: Complex64) -> Self {
        ComplexDegree(v)
    }
}

impl From<f64> for ComplexDegree {
    fn from(v: f64) -> Self {
        ComplexDegree(Complex64::new(v, 0.0))
    }
}

/// `P_l(x)` by the three-term recurrence.
pub fn legendre_p_int(l: usize, x: f64) -> f64 {
    if l == 0 {
        return 1.0;
    }
    let (mut p0, mut p1) = (1.0, x);
    for n in 1..l {
        let nf = n as f64;
        let p2 = ((2.0 * nf + 1.0) * x * p1 - nf * p0) / (nf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    p1
}

/// All `P_l(x)` for `l = 0..=l_max`.
pub fn legendre_p_int_array(l_max: usize, x: f64) -> Vec<f64> {
    let mut p = Vec::with_capacity(l_max + 1);
    p.push(1.0);
    if l_max == 0 {
        return p;
    }
    p.push(x);
    for n in 1..l_max {
        let nf = n as f64;
        p.push(((2.0 * nf + 1.0) * x * p[n] - nf * p[n - 1]) / (nf + 1.0));
    }
    p
}

/// `2F1(-nu, nu+1; 1; (1-x)/2)`, summed until the geometric tail bound of the
/// remaining terms drops below double precision.
fn hypergeometric(nu: Complex64, x: f64) -> Result<Complex64> {
    let z = 0.5 * (1.0 - x);
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    if z == 0.0 {
        return Ok(sum);
    }
    let settled = nu.norm() + 2.0;
    for n in 0..MAX_SERIES_TERMS {
        let nf = n as f64;
        term *= (nf - nu) * (nf + nu + 1.0) / ((nf + 1.0) * (nf + 1.0)) * z;
        sum += term;
        if term == Complex64::new(0.0, 0.0) {
            return Ok(sum);
        }
        if nf > settled {
            // beyond n ~ |nu| the term ratio is below z(1 + O(1/n))
            let ratio = z * (1.0 + 2.0 / (nf + 1.0));
            let tail = if ratio < 1.0 { term.norm() * ratio / (1.0 - ratio) } else { f64::INFINITY };
            if tail <= 1e-17 * sum.norm() {
                return Ok(sum);
            }
        }
    }
    Err(Error::accuracy(
        "legendre_p_complex",
        format!("hypergeometric series for degree {nu} at x = {x} did not converge in {MAX_SERIES_TERMS} terms"),
    ))
}

/// `P_mu(x)` for complex degree on `-1 < x <= 1`.
///
/// The hypergeometric series is only used at degrees with real part in
/// `[-1/2, 3/2)`, where it has no cancellation; larger degrees are reached by
/// the upward recurrence `(nu+1) P_{nu+1} = (2nu+1) x P_nu - nu P_{nu-1}`,
/// which is neutrally stable on the cut.
pub fn legendre_p_complex(mu: ComplexDegree, x: f64) -> Result<Complex64> {
    if !(x > -1.0 && x <= 1.0) {
        return Err(Error::domain(
            "legendre_p_complex",
            format!("x = {x} is outside (-1, 1]; P_mu has a logarithmic singularity at -1"),
        ));
    }
    let mut nu = mu.value();
    if !nu.re.is_finite() || !nu.im.is_finite() {
        return Err(Error::domain("legendre_p_complex", format!("non-finite degree {nu}")));
    }
    // P_{-nu-1} = P_nu
    if nu.re < -0.5 {
        nu = -nu - 1.0;
    }
    let steps = (nu.re + 0.5).floor() as i64;
    if steps <= 1 {
        return hypergeometric(nu, x);
    }
    let base = nu - steps as f64;
    let mut p_prev = hypergeometric(base, x)?;
    let mut p = hypergeometric(base + 1.0, x)?;
    let mut deg = base + 1.0;
    for _ in 1..steps {
        let next = ((2.0 * deg + 1.0) * x * p - deg * p_prev) / (deg + 1.0);
        p_prev = p;
        p = next;
        deg += 1.0;
    }
    Ok(p)
}

/// Large-degree form of `sqrt(2 pi lambda) P_{lambda-1/2}(-cos theta)`:
///
/// `[exp(-i(lambda(pi-theta) - pi/4)) + exp(i(lambda(pi-theta) - pi/4))] / sqrt(sin theta)`.
///
/// Valid when `|lambda| (pi - theta) >> 1`; the caller is responsible for that.
pub fn legendre_backward_asymptotic(lambda: Complex64, theta: f64) -> Complex64 {
    let i = Complex64::i();
    let phase = lambda * (PI - theta) - PI / 4.0;
    ((-i * phase).exp() + (i * phase).exp()) / theta.sin().sqrt()
}
