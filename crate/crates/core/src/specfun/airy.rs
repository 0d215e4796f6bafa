//! Airy function Ai, its derivative, and the zeros of both.
//!
//! Evaluation strategy for complex `z`:
//!
//! * `|z| >= ASYMPTOTIC_RADIUS`: Poincaré expansions, the single exponential
//!   form for `|arg z| <= 2pi/3` and the oscillatory two-term form beyond.
//!   At radius 9 the optimally truncated series is below 2e-17 relative.
//! * `|z| <= MACLAURIN_RADIUS`, or `|arg z| >= pi/3`: Taylor continuation of
//!   the Airy equation starting from the closed-form values at the origin.
//!   In this sector Ai is not recessive outward, so forward stepping is stable.
//! * otherwise (`|arg z| < pi/3`, moderate modulus): Ai decays outward, so the
//!   continuation runs inward from the asymptotic value on the same ray.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Ai(0) = 3^{-2/3} / Gamma(2/3).
pub const AI0: f64 = 0.355_028_053_887_817_24;
/// Ai'(0) = -3^{-1/3} / Gamma(1/3).
pub const AIP0: f64 = -0.258_819_403_792_806_8;

const ASYMPTOTIC_RADIUS: f64 = 9.0;
const MACLAURIN_RADIUS: f64 = 2.0;
const MAX_STEP: f64 = 0.5;
const EXPONENT_LIMIT: f64 = 700.0;
const N_COEFF: usize = 48;

/// Coefficients u_k and v_k of the Airy asymptotic expansions.
fn expansion_coefficients() -> ([f64; N_COEFF], [f64; N_COEFF]) {
    let mut u = [0.0; N_COEFF];
    let mut v = [0.0; N_COEFF];
    u[0] = 1.0;
    v[0] = 1.0;
    for k in 1..N_COEFF {
        let kf = k as f64;
        u[k] = u[k - 1] * (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
            / ((2.0 * kf - 1.0) * 216.0 * kf);
        v[k] = -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u[k];
    }
    (u, v)
}

/// Sums `sum_k (-1)^k c[start + 2k] / zeta^(start + 2k)` (stride 2) or the
/// plain alternating series (stride 1), stopping at the smallest term.
fn asymptotic_sum(c: &[f64], zeta: Complex64, start: usize, stride: usize) -> Complex64 {
    let inv = 1.0 / zeta;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut last = f64::INFINITY;
    let mut k = start;
    let mut alt = 1.0;
    while k < c.len() {
        let term = alt * c[k] * inv.powu(k as u32);
        let mag = term.norm();
        if mag > last {
            break;
        }
        sum += term;
        if mag <= 1e-18 * sum.norm() {
            break;
        }
        last = mag;
        k += stride;
        alt = -alt;
    }
    sum
}

fn asymptotic(z: Complex64) -> (Complex64, Complex64) {
    let (u, v) = expansion_coefficients();
    let sqrt_pi = PI.sqrt();
    if z.arg().abs() <= 2.0 * PI / 3.0 {
        let zeta = 2.0 / 3.0 * z * z.sqrt();
        let e = (-zeta).exp();
        let q = z.powf(0.25);
        let ai = e / (2.0 * sqrt_pi * q) * asymptotic_sum(&u, zeta, 0, 1);
        let aip = -q * e / (2.0 * sqrt_pi) * asymptotic_sum(&v, zeta, 0, 1);
        (ai, aip)
    } else {
        let w = -z;
        let xi = 2.0 / 3.0 * w * w.sqrt();
        let q = w.powf(0.25);
        let phase = xi - PI / 4.0;
        let (c, s) = (phase.cos(), phase.sin());
        let pu = asymptotic_sum(&u, xi, 0, 2);
        let qu = asymptotic_sum(&u, xi, 1, 2);
        let pv = asymptotic_sum(&v, xi, 0, 2);
        let qv = asymptotic_sum(&v, xi, 1, 2);
        let ai = (c * pu + s * qu) / (sqrt_pi * q);
        // d/dz Ai(z) = -d/dw Ai(-w)
        let aip = q / sqrt_pi * (s * pv - c * qv);
        (ai, aip)
    }
}

/// One Taylor step of y'' = z y from `z0` to `z0 + h`.
///
/// With y = sum a_n t^n about z0 the recurrence is
/// a_{n+2} = (z0 a_n + a_{n-1}) / ((n+2)(n+1)), a_{-1} = 0.
fn taylor_step(z0: Complex64, y0: Complex64, dy0: Complex64, h: Complex64) -> (Complex64, Complex64) {
    let zero = Complex64::new(0.0, 0.0);
    // a[n-1], a[n], a[n+1] as we advance
    let (mut am1, mut a0, mut a1) = (zero, y0, dy0);
    let mut y = y0 + dy0 * h;
    let mut dy = dy0;
    let mut hn = h; // h^{n+1} for the current a1
    let mut quiet = 0;
    for n in 0..400 {
        let nf = n as f64;
        let a2 = (z0 * a0 + am1) / ((nf + 2.0) * (nf + 1.0));
        let dy_term = a2 * (nf + 2.0) * hn;
        hn *= h;
        let y_term = a2 * hn;
        y += y_term;
        dy += dy_term;
        if y_term.norm() <= 1e-18 * y.norm().max(1e-300) && dy_term.norm() <= 1e-18 * dy.norm().max(1e-300) {
            quiet += 1;
            if quiet >= 3 {
                break;
            }
        } else {
            quiet = 0;
        }
        am1 = a0;
        a0 = a1;
        a1 = a2;
    }
    (y, dy)
}

/// Continues (y, y') from `from` to `to` along a straight line.
fn continue_along(from: Complex64, to: Complex64, mut y: Complex64, mut dy: Complex64) -> (Complex64, Complex64) {
    let span = to - from;
    let steps = (span.norm() / MAX_STEP).ceil().max(1.0) as usize;
    let h = span / steps as f64;
    let mut z = from;
    for _ in 0..steps {
        let (ny, ndy) = taylor_step(z, y, dy, h);
        y = ny;
        dy = ndy;
        z += h;
    }
    (y, dy)
}

/// Returns `(Ai(z), Ai'(z))`.
pub fn airy_pair(z: Complex64) -> Result<(Complex64, Complex64)> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::domain("airy_ai", format!("non-finite argument {z}")));
    }
    let r = z.norm();
    if r > 1.0 {
        let zeta = 2.0 / 3.0 * z * z.sqrt();
        if zeta.re.abs() > EXPONENT_LIMIT {
            return Err(Error::Range {
                what: "airy_ai",
                detail: format!("|Re zeta| = {:.1} exceeds the representable exponent at z = {z}", zeta.re.abs()),
            });
        }
    }
    if r >= ASYMPTOTIC_RADIUS {
        return Ok(asymptotic(z));
    }
    let origin = Complex64::new(0.0, 0.0);
    if r <= MACLAURIN_RADIUS || z.arg().abs() >= PI / 3.0 {
        Ok(continue_along(origin, z, Complex64::new(AI0, 0.0), Complex64::new(AIP0, 0.0)))
    } else {
        let z0 = z * (ASYMPTOTIC_RADIUS / r);
        let (y0, dy0) = asymptotic(z0);
        Ok(continue_along(z0, z, y0, dy0))
    }
}

/// Ai(z).
pub fn airy_ai(z: Complex64) -> Result<Complex64> {
    airy_pair(z).map(|p| p.0)
}

/// Ai'(z).
pub fn airy_ai_prime(z: Complex64) -> Result<Complex64> {
    airy_pair(z).map(|p| p.1)
}

/// Real-axis `(Ai(x), Ai'(x))`.
pub fn airy_pair_real(x: f64) -> Result<(f64, f64)> {
    airy_pair(Complex64::new(x, 0.0)).map(|(a, b)| (a.re, b.re))
}

/// The first zeros `q_1 > q_2 > ...` of Ai on the negative real axis.
#[derive(Debug, Clone, PartialEq)]
pub struct AiryZeroTable {
    zeros: Vec<f64>,
}

impl AiryZeroTable {
    /// `q_i` with the 1-based index used throughout the literature.
    pub fn q(&self, i: usize) -> f64 {
        assert!(i >= 1 && i <= self.zeros.len(), "Airy zero index {i} out of range 1..={}", self.zeros.len());
        self.zeros[i - 1]
    }

    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.zeros
    }
}

/// Asymptotic zero location T(t) (for Ai) or U(t) (for Ai').
fn zero_seed(t: f64, derivative: bool) -> f64 {
    let t2 = t.powi(-2);
    let series = if derivative {
        1.0 - 7.0 / 48.0 * t2 + 35.0 / 288.0 * t2 * t2 - 181_223.0 / 207_360.0 * t2 * t2 * t2
    } else {
        1.0 + 5.0 / 48.0 * t2 - 5.0 / 36.0 * t2 * t2 + 77_125.0 / 82_944.0 * t2 * t2 * t2
    };
    -t.powf(2.0 / 3.0) * series
}

/// Safeguarded Newton iteration on a bracketed sign change.
fn refine_root<F: Fn(f64) -> Result<(f64, f64)>>(f: F, mut lo: f64, mut hi: f64, what: &'static str) -> Result<f64> {
    let (mut flo, _) = f(lo)?;
    let (fhi, _) = f(hi)?;
    if flo.signum() == fhi.signum() {
        return Err(Error::accuracy(what, format!("no sign change in [{lo}, {hi}]")));
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..200 {
        let (fx, dfx) = f(x)?;
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == flo.signum() {
            lo = x;
            flo = fx;
        } else {
            hi = x;
        }
        let newton = x - fx / dfx;
        let next = if newton > lo.min(hi) && newton < lo.max(hi) { newton } else { 0.5 * (lo + hi) };
        if (next - x).abs() < 1e-14 * x.abs().max(1.0) {
            return Ok(next);
        }
        x = next;
    }
    Err(Error::accuracy(what, format!("no convergence in [{lo}, {hi}]")))
}

fn bracket_zero<F: Fn(f64) -> Result<(f64, f64)>>(f: &F, seed: f64, what: &'static str) -> Result<(f64, f64)> {
    let mut delta = 1e-3;
    let (fs, _) = f(seed)?;
    if fs == 0.0 {
        return Ok((seed, seed));
    }
    while delta <= 1.0 {
        for cand in [seed - delta, seed + delta] {
            let (fc, _) = f(cand)?;
            if fc.signum() != fs.signum() {
                return Ok((seed.min(cand), seed.max(cand)));
            }
        }
        delta *= 2.0;
    }
    Err(Error::accuracy(what, format!("could not bracket a zero near {seed}")))
}

fn zeros_of<F: Fn(f64) -> Result<(f64, f64)>>(count: usize, derivative: bool, f: F, what: &'static str) -> Result<Vec<f64>> {
    if count == 0 {
        return Err(Error::domain(what, "count must be at least 1"));
    }
    let mut zeros = Vec::with_capacity(count);
    for i in 1..=count {
        let offset = if derivative { 3.0 } else { 1.0 };
        let t = 3.0 * PI * (4.0 * i as f64 - offset) / 8.0;
        let seed = zero_seed(t, derivative);
        let (lo, hi) = bracket_zero(&f, seed, what)?;
        let z = if lo == hi { lo } else { refine_root(&f, lo, hi, what)? };
        if let Some(&prev) = zeros.last() {
            if z >= prev {
                return Err(Error::accuracy(what, format!("zero {i} at {z} does not lie below zero {} at {prev}", i - 1)));
            }
        }
        zeros.push(z);
    }
    Ok(zeros)
}

/// First `count` zeros of Ai.
pub fn airy_zeros(count: usize) -> Result<AiryZeroTable> {
    let zeros = zeros_of(count, false, airy_pair_real, "airy_zeros")?;
    Ok(AiryZeroTable { zeros })
}

/// First `count` zeros of Ai' (all negative), using Ai'' = x Ai.
pub fn airy_prime_zeros(count: usize) -> Result<Vec<f64>> {
    zeros_of(
        count,
        true,
        |x| {
            let (a, ap) = airy_pair_real(x)?;
            Ok((ap, x * a))
        },
        "airy_prime_zeros",
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn origin_matches_gamma_forms() {
        let (a, ap) = airy_pair_real(0.0).unwrap();
        assert_eq!(a, AI0);
        assert_eq!(ap, AIP0);
    }

    #[test]
    fn real_axis_reference_values() {
        // mpmath airyai(x), airyai(x, 1)
        let cases = [
            (-20.0, -0.176_406_127_077_984_69, 0.892_862_856_736_471_24),
            (-15.0, 0.278_217_490_870_828_93, 0.272_374_204_308_642_02),
            (-12.5, -0.276_274_561_381_160_25, -0.419_331_330_419_505_16),
            (-9.5, 0.319_103_247_719_128_2, -0.108_095_318_811_871_24),
            (-8.0, -0.052_705_050_356_386_203, 0.935_560_938_198_306_55),
            (-7.0, 0.184_280_835_250_505_64, -0.771_008_168_410_126_55),
            (-6.0, -0.329_145_173_629_823_11, 0.345_935_487_281_342_89),
            (-5.5, 0.017_781_541_276_574_976, 0.864_197_217_771_398_39),
            (-4.0, -0.070_265_532_949_289_515, -0.790_628_575_368_581_38),
            (-3.0, -0.378_814_293_677_658_07, 0.314_583_769_216_598_81),
            (-1.0, 0.535_560_883_292_352_12, -0.010_160_567_116_645_209),
            (-0.5, 0.475_728_091_610_539_59, -0.204_081_670_339_547_39),
            (0.5, 0.231_693_606_480_833_49, -0.224_910_532_664_683_89),
            (1.0, 0.135_292_416_312_881_42, -0.159_147_441_296_793_21),
            (2.0, 0.034_924_130_423_274_379, -0.053_090_384_433_653_632),
            (3.0, 0.006_591_139_357_460_719_1, -0.011_912_976_705_951_318),
            (3.7, 0.001_745_572_000_609_978_5, -0.003_466_940_749_027_627_1),
            (4.5, 0.000_330_250_323_514_308_98, -0.000_717_866_567_557_508_89),
            (5.0, 0.000_108_344_428_136_074_42, -0.000_247_413_890_868_462_48),
        ];
        for (x, a, ap) in cases {
            let (ga, gap) = airy_pair_real(x).unwrap();
            assert!(((ga - a) / a).abs() < 1e-10, "Ai({x}) = {ga}, want {a}");
            assert!(((gap - ap) / ap).abs() < 1e-10, "Ai'({x}) = {gap}, want {ap}");
        }
    }

    #[test]
    fn complex_reference_values() {
        let cases = [
            (c(1.0, 1.0), c(0.060_458_308_371_838_149, -0.151_889_565_877_181_4), c(-0.130_627_953_499_647_52, 0.163_067_596_449_323_92)),
            (c(-3.0, 2.0), c(-4.419_689_554_264_167_3, 5.454_622_517_782_667_4), c(11.878_523_564_741_867, 5.209_351_847_883_973_7)),
            (c(4.0, -3.0), c(0.002_696_054_364_882_532_4, -3.114_418_328_596_973_8e-6), c(-0.005_824_526_497_077_212_8, 0.001_839_196_123_148_136_9)),
            (c(-10.0, 1.0), c(0.677_372_403_110_850_86, 3.681_496_143_527_532_6), c(11.600_693_107_997_137, -2.625_588_924_790_821_9)),
            (c(2.0, 7.0), c(19.104_409_808_707_74, 0.564_154_510_820_261_12), c(-40.455_959_268_872_674, -31.631_376_412_290_452)),
            (c(0.3, -0.2), c(0.277_102_569_275_876_66, 0.049_302_117_253_468_18), c(-0.249_230_583_350_504_5, -0.017_350_467_779_168_919)),
        ];
        for (z, a, ap) in cases {
            let (ga, gap) = airy_pair(z).unwrap();
            assert!(rel(ga, a) < 1e-10, "Ai({z}) = {ga}, want {a}");
            assert!(rel(gap, ap) < 1e-10, "Ai'({z}) = {gap}, want {ap}");
        }
    }

    #[test]
    fn overflow_is_a_range_error() {
        assert!(matches!(airy_ai(c(120.0, 0.0)), Err(Error::Range { .. })));
        assert!(matches!(airy_ai(c(f64::NAN, 0.0)), Err(Error::Domain { .. })));
    }

    #[test]
    fn finite_difference_derivative() {
        let h = 1e-5;
        let fd = (airy_pair_real(-1.0 + h).unwrap().0 - airy_pair_real(-1.0 - h).unwrap().0) / (2.0 * h);
        assert!((fd - airy_pair_real(-1.0).unwrap().1).abs() < 1e-8);
    }

    #[test]
    fn ode_residual_on_real_axis() {
        // fourth-order stencil: at |x| ~ 10 the three-point rule cannot beat
        // ~3e-7 for any h, since Ai'''' ~ x^2 Ai is large there
        let h = 5e-3;
        for n in 0..20 {
            let x = -10.0 + 12.0 * n as f64 / 19.0;
            let f = |t: f64| airy_pair_real(t).unwrap().0;
            let d2 = (-f(x + 2.0 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) - f(x - 2.0 * h)) / (12.0 * h * h);
            let r = (d2 - x * f(x)).abs();
            assert!(r < 1e-7, "residual {r:e} at {x}");
        }
    }

    #[test]
    fn zeros_reference_values() {
        let t = airy_zeros(100).unwrap();
        let want = [
            (1, -2.338_107_410_459_767, 0.701_210_822_720_691_36),
            (2, -4.087_949_444_130_970_6, -0.803_111_369_654_863_96),
            (3, -5.520_559_828_095_551_1, 0.865_204_025_894_151_93),
            (4, -6.786_708_090_071_759, -0.910_850_737_049_601_8),
            (5, -7.944_133_587_120_853_1, 0.947_335_709_441_567_77),
            (10, -12.828_776_752_865_757, -1.067_793_859_157_427_8),
            (50, -38.021_008_677_255_254, -1.400_978_883_949_769),
            (100, -60.455_557_274_116_699, -1.573_201_219_568_069_3),
        ];
        for (i, q, aip) in want {
            assert!((t.q(i) - q).abs() < 1e-12, "q_{i} = {}, want {q}", t.q(i));
            let (_, d) = airy_pair_real(t.q(i)).unwrap();
            assert!(((d - aip) / aip).abs() < 1e-10);
        }
        assert_eq!(t.len(), 100);
    }

    #[test]
    fn derivative_zeros_interleave() {
        let q = airy_zeros(30).unwrap();
        let qp = airy_prime_zeros(31).unwrap();
        assert!((qp[0] + 1.018_792_971_647_471_1).abs() < 1e-12);
        assert!((qp[1] + 3.248_197_582_179_836_5).abs() < 1e-12);
        assert!((qp[2] + 4.820_099_211_178_735_6).abs() < 1e-12);
        for i in 0..30 {
            assert!(qp[i] > q.as_slice()[i] && q.as_slice()[i] > qp[i + 1]);
        }
    }

    #[test]
    fn many_zeros_still_converge() {
        let t = airy_zeros(400).unwrap();
        assert!(t.as_slice().windows(2).all(|w| w[1] < w[0]));
        assert!(airy_zeros(0).is_err());
    }
}
