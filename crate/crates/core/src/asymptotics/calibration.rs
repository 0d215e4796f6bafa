use num_complex::Complex64;

use crate::error::{Error, Result};

/// Result of the least-squares fit
/// `target ~ c * model + sum_j b_j * background_j`, `c` real, `b_j` complex.
#[derive(Debug, Clone, PartialEq)]
pub struct CalibrationFit {
    pub calibration: f64,
    pub background: Vec<Complex64>,
    /// `sqrt(mean |target - fit|^2)`.
    pub rms_residual: f64,
    /// `rms_residual / sqrt(mean |target|^2)`.
    pub relative_rms: f64,
    /// RMS residual of the background-only fit; the gap to `rms_residual`
    /// is what the creeping model explains.
    pub rms_without_model: f64,
}

/// Real least squares over complex data: column `j` gets a real coefficient.
fn solve_real(cols: &[Vec<Complex64>], target: &[Complex64]) -> Result<(Vec<f64>, f64)> {
    let n = cols.len();
    if n == 0 {
        let rss = target.iter().map(|t| t.norm_sqr()).sum();
        return Ok((Vec::new(), rss));
    }
    let dot = |a: &[Complex64], b: &[Complex64]| a.iter().zip(b).map(|(x, y)| (x.conj() * y).re).sum::<f64>();
    let mut m: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut row: Vec<f64> = (0..n).map(|j| dot(&cols[i], &cols[j])).collect();
            row.push(dot(&cols[i], target));
            row
        })
        .collect();
    let scale = (0..n).map(|i| m[i][i]).fold(0.0, f64::max);
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| m[i][c].abs().total_cmp(&m[j][c].abs())).unwrap();
        if !(m[p][c].abs() > 1e-13 * scale) {
            return Err(Error::Degenerate("calibration columns are linearly dependent or vanish".into()));
        }
        m.swap(c, p);
        for r in 0..n {
            if r != c {
                let f = m[r][c] / m[c][c];
                for k in c..=n {
                    m[r][k] -= f * m[c][k];
                }
            }
        }
    }
    let x: Vec<f64> = (0..n).map(|i| m[i][n] / m[i][i]).collect();
    let rss = target
        .iter()
        .enumerate()
        .map(|(j, t)| (t - cols.iter().zip(&x).map(|(col, c)| *c * col[j]).sum::<Complex64>()).norm_sqr())
        .sum();
    Ok((x, rss))
}

/// Fits the real scale of the creeping `model` (evaluated with unit
/// calibration) to `target`, with complex nuisance coefficients on each
/// `background` series. An empty `background` gives the plain one-parameter fit.
pub fn fit_calibration(model: &[Complex64], target: &[Complex64], background: &[Vec<Complex64>]) -> Result<CalibrationFit> {
    let len = target.len();
    if len == 0 || model.len() != len || background.iter().any(|b| b.len() != len) {
        return Err(Error::InvalidInput("calibration needs equal-length, non-empty series".into()));
    }
    let mut bg_cols = Vec::with_capacity(2 * background.len());
    for b in background {
        bg_cols.push(b.clone());
        bg_cols.push(b.iter().map(|v| Complex64::i() * v).collect());
    }
    let mut cols = vec![model.to_vec()];
    cols.extend(bg_cols.iter().cloned());
    let (x, rss) = solve_real(&cols, target)?;
    let (_, rss_bg) = solve_real(&bg_cols, target)?;
    let n = len as f64;
    let scale: f64 = target.iter().map(|t| t.norm_sqr()).sum::<f64>() / n;
    let rms = (rss / n).sqrt();
    Ok(CalibrationFit {
        calibration: x[0],
        background: x[1..].chunks(2).map(|p| Complex64::new(p[0], p[1])).collect(),
        rms_residual: rms,
        relative_rms: if scale > 0.0 { rms / scale.sqrt() } else { 0.0 },
        rms_without_model: (rss_bg / n).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(f: impl Fn(f64) -> Complex64) -> Vec<Complex64> {
        (0..40).map(|j| f(1.0 + 0.1 * j as f64)).collect()
    }

    #[test]
    fn recovers_exact_scale() {
        let model = series(|k| Complex64::from_polar(1.0 / k, 3.0 * k));
        let target: Vec<_> = model.iter().map(|m| 2.5 * m).collect();
        let fit = fit_calibration(&model, &target, &[]).unwrap();
        assert!((fit.calibration - 2.5).abs() < 1e-14);
        assert!(fit.rms_residual < 1e-14);
        assert!(fit.background.is_empty());
    }

    #[test]
    fn separates_model_from_background() {
        let model = series(|k| Complex64::from_polar(1.0 / k, 3.0 * k));
        let bg = series(|k| Complex64::from_polar(1.0 / k, -2.0 * k));
        let b = Complex64::new(0.1, -0.25);
        let target: Vec<_> = model.iter().zip(&bg).map(|(m, g)| 0.7 * m + b * g).collect();
        let fit = fit_calibration(&model, &target, &[bg]).unwrap();
        assert!((fit.calibration - 0.7).abs() < 1e-12);
        assert!((fit.background[0] - b).norm() < 1e-12);
        assert!(fit.rms_without_model > 0.1 && fit.rms_residual < 1e-13);
    }

    #[test]
    fn imaginary_part_is_not_absorbed() {
        let model = vec![Complex64::new(1.0, 0.0); 4];
        let target = vec![Complex64::new(0.0, 1.0); 4];
        let fit = fit_calibration(&model, &target, &[]).unwrap();
        assert_eq!(fit.calibration, 0.0);
        assert!((fit.relative_rms - 1.0).abs() < 1e-15);
        assert!(fit_calibration(&model, &target[..2], &[]).is_err());
        assert!(matches!(fit_calibration(&model, &target, std::slice::from_ref(&model)), Err(Error::Degenerate(_))));
    }
}
