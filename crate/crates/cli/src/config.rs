//! Run configuration: a flat `key = value` file, overridden by command-line
//! flags, over built-in defaults.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use creepwave::oracle::min_lmax;
use creepwave::Sense;

use crate::error::CliError;

/// Every recognised key, in echo order.
pub const KEYS: &[&str] = &[
    "k",
    "k-min",
    "k-max",
    "k-steps",
    "radius",
    "theta",
    "theta-min",
    "theta-max",
    "theta-steps",
    "modes",
    "tours",
    "sense",
    "form",
    "boundary",
    "calibration",
    "fit-calibration",
    "period-tol",
    "lmax",
    "seed",
    "out",
    "svg",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Modes,
    Amplitude,
    Compare,
    Raytrace,
    Selftest,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Modes => "modes",
            Command::Amplitude => "amplitude",
            Command::Compare => "compare",
            Command::Raytrace => "raytrace",
            Command::Selftest => "selftest",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Form {
    Legendre,
    Resummed,
    Tours,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub k: f64,
    pub k_min: f64,
    pub k_max: f64,
    pub k_steps: usize,
    pub radius: f64,
    pub theta: f64,
    pub theta_min: f64,
    pub theta_max: f64,
    pub theta_steps: usize,
    pub modes: usize,
    pub tours: u32,
    pub senses: Vec<Sense>,
    pub form: Form,
    pub calibration: f64,
    pub fit_calibration: bool,
    pub period_tol: f64,
    pub lmax: Option<usize>,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub svg: Option<PathBuf>,
    pub workers: Option<usize>,
    /// `(key, value)` for every key, as given or defaulted.
    pub echo: Vec<(String, String)>,
}

impl RunConfig {
    pub fn k_grid(&self) -> Vec<f64> {
        grid(self.k_min, self.k_max, self.k_steps)
    }

    pub fn theta_grid(&self) -> Vec<f64> {
        grid(self.theta_min, self.theta_max, self.theta_steps)
    }
}

fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n).map(|j| if j == n - 1 { hi } else { lo + (hi - lo) * j as f64 / (n - 1) as f64 }).collect()
}

/// Parses `key = value` lines; `#` starts a comment.
pub fn parse_file(text: &str, origin: &Path) -> Result<Vec<(String, String)>, CliError> {
    let mut out: Vec<(String, String)> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::Config(format!("{}:{}: expected key = value, got `{line}`", origin.display(), n + 1)));
        };
        let (key, value) = (key.trim(), value.trim());
        if !KEYS.contains(&key) {
            return Err(CliError::Config(format!("{}:{}: unknown key `{key}`", origin.display(), n + 1)));
        }
        if out.iter().any(|(k, _)| k == key) {
            return Err(CliError::Config(format!("{}:{}: duplicate key `{key}`", origin.display(), n + 1)));
        }
        out.push((key.to_string(), value.to_string()));
    }
    Ok(out)
}

struct Values(BTreeMap<String, String>);

impl Values {
    fn raw(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    fn parse<T: std::str::FromStr>(&self, key: &str, default: T) -> Result<T, CliError>
    where
        T::Err: std::fmt::Display,
    {
        match self.raw(key) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|e| CliError::Config(format!("{key} = `{v}`: {e}"))),
        }
    }
}

fn positive(key: &str, v: f64) -> Result<f64, CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::Config(format!("{key} must be positive and finite, got {v}")))
    }
}

fn fmt_default(v: f64) -> String {
    format!("{v}")
}

/// Resolves the configuration: `file` entries first, then `flags` on top.
pub fn resolve(
    command: Command,
    file: Vec<(String, String)>,
    flags: Vec<(String, String)>,
    workers: Option<usize>,
) -> Result<RunConfig, CliError> {
    let mut map = BTreeMap::new();
    for (k, v) in file.into_iter().chain(flags) {
        map.insert(k, v);
    }
    let vals = Values(map);

    let radius = positive("radius", vals.parse("radius", 1.0)?)?;
    let k = positive("k", vals.parse("k", 10.0)?)?;
    let k_min = positive("k-min", vals.parse("k-min", 4.0 / radius)?)?;
    let k_max = positive("k-max", vals.parse("k-max", 10.0 / radius)?)?;
    let k_steps: usize = vals.parse("k-steps", 512)?;
    if k_steps == 0 || (k_steps > 1 && !(k_max > k_min)) {
        return Err(CliError::Config(format!("k range needs k-steps >= 1 and k-max > k-min, got [{k_min}, {k_max}] x {k_steps}")));
    }
    let theta: f64 = vals.parse("theta", PI / 2.0)?;
    let theta_min: f64 = vals.parse("theta-min", PI / 2.0)?;
    let theta_max: f64 = vals.parse("theta-max", PI)?;
    let theta_steps: usize = vals.parse("theta-steps", 19)?;
    for (key, v) in [("theta", theta), ("theta-min", theta_min), ("theta-max", theta_max)] {
        if !(0.0..=PI).contains(&v) {
            return Err(CliError::Config(format!("{key} = {v} is outside [0, pi]")));
        }
    }
    if theta_steps == 0 || (theta_steps > 1 && !(theta_max > theta_min)) {
        return Err(CliError::Config(format!(
            "theta range needs theta-steps >= 1 and theta-max > theta-min, got [{theta_min}, {theta_max}] x {theta_steps}"
        )));
    }
    let modes: usize = vals.parse("modes", 3)?;
    if !(1..=100).contains(&modes) {
        return Err(CliError::Config(format!("modes must be in 1..=100, got {modes}")));
    }
    let tours: u32 = vals.parse("tours", 2)?;
    let senses = match vals.raw("sense").unwrap_or("both") {
        "both" => Sense::BOTH.to_vec(),
        "+" | "ccw" => vec![Sense::Counterclockwise],
        "-" | "cw" => vec![Sense::Clockwise],
        other => return Err(CliError::Config(format!("sense must be +, - or both, got `{other}`"))),
    };
    let form = match vals.raw("form").unwrap_or("legendre") {
        "legendre" => Form::Legendre,
        "resummed" => Form::Resummed,
        "tours" => Form::Tours,
        other => return Err(CliError::Config(format!("form must be legendre, resummed or tours, got `{other}`"))),
    };
    match vals.raw("boundary").unwrap_or("dirichlet") {
        "dirichlet" => {}
        other => return Err(CliError::Config(format!("only the dirichlet boundary condition is supported, got `{other}`"))),
    }
    let calibration = positive("calibration", vals.parse("calibration", 1.0)?)?;
    let fit_calibration: bool = vals.parse("fit-calibration", false)?;
    let period_tol = positive("period-tol", vals.parse("period-tol", 0.10)?)?;
    let lmax = match vals.raw("lmax") {
        None | Some("auto") => None,
        Some(v) => Some(v.parse::<usize>().map_err(|e| CliError::Config(format!("lmax = `{v}`: {e}")))?),
    };
    if let Some(l) = lmax {
        let k_top = match command {
            Command::Compare => k_max.max(k_min),
            _ => k,
        };
        let need = min_lmax(k_top, radius);
        if (l as f64) < need {
            return Err(CliError::Config(format!("lmax = {l} is below kR + 10 (kR)^(1/3) + 10 = {need:.1} at k = {k_top}")));
        }
    }
    let seed: u64 = vals.parse("seed", 1)?;

    let defaults: BTreeMap<&str, String> = [
        ("k", fmt_default(k)),
        ("k-min", fmt_default(k_min)),
        ("k-max", fmt_default(k_max)),
        ("k-steps", k_steps.to_string()),
        ("radius", fmt_default(radius)),
        ("theta", fmt_default(theta)),
        ("theta-min", fmt_default(theta_min)),
        ("theta-max", fmt_default(theta_max)),
        ("theta-steps", theta_steps.to_string()),
        ("modes", modes.to_string()),
        ("tours", tours.to_string()),
        ("sense", "both".into()),
        ("form", "legendre".into()),
        ("boundary", "dirichlet".into()),
        ("calibration", fmt_default(calibration)),
        ("fit-calibration", fit_calibration.to_string()),
        ("period-tol", fmt_default(period_tol)),
        ("lmax", "auto".into()),
        ("seed", seed.to_string()),
        ("out", "-".into()),
        ("svg", "-".into()),
    ]
    .into_iter()
    .collect();
    let echo = KEYS
        .iter()
        .map(|&key| (key.to_string(), vals.raw(key).map(str::to_string).unwrap_or_else(|| defaults[key].clone())))
        .collect();

    Ok(RunConfig {
        command,
        k,
        k_min,
        k_max,
        k_steps,
        radius,
        theta,
        theta_min,
        theta_max,
        theta_steps,
        modes,
        tours,
        senses,
        form,
        calibration,
        fit_calibration,
        period_tol,
        lmax,
        seed,
        out: vals.raw("out").map(PathBuf::from),
        svg: vals.raw("svg").map(PathBuf::from),
        workers,
        echo,
    })
}

/// `--workers`, else `CREEPWAVE_WORKERS`, else all cores.
pub fn workers(flag: Option<&str>, env: Option<&str>) -> Result<Option<usize>, CliError> {
    let (source, raw) = match (flag, env) {
        (Some(v), _) => ("--workers", v),
        (None, Some(v)) if !v.trim().is_empty() => ("CREEPWAVE_WORKERS", v),
        _ => return Ok(None),
    };
    match raw.trim().parse::<usize>() {
        Ok(n) if n > 0 => Ok(Some(n)),
        _ => Err(CliError::Config(format!("{source} must be a positive integer, got `{raw}`"))),
    }
}
