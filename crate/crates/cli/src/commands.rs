use std::f64::consts::{FRAC_PI_2, PI};

use creepwave::asymptotics::{
    fit_calibration, resummed_amplitude, total_amplitude, AmplitudeForm, CreepingMode,
};
use creepwave::geometry::{conjugate_point_count, crossing_number, sphere_diffracted_ray, HomotopyClass, ObstacleScene};
use creepwave::maslov::{crossing_to_phase, maslov_index, LagrangianPoint};
use creepwave::oracle::{
    exact_amplitude, phase_shifts, phase_shifts_default, probe_signal, specular_backscatter, specular_corrections,
    ProbeResult,
};
use creepwave::specfun::{airy_pair_real, airy_zero, legendre_p_complex, legendre_p_int, ComplexDegree};
use creepwave::sweep::{self, Execution};
use creepwave::{Complex64, Error, Sense};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{Form, RunConfig};
use crate::error::CliError;
use crate::svg::{self, DrawnRay};
use crate::table::{write_file, Cell, OutputTable};

/// What a command produced, besides files it already wrote.
pub struct Report {
    pub table: Option<OutputTable>,
    /// Human-readable lines for stderr.
    pub summary: Vec<String>,
}

fn execution(cfg: &RunConfig) -> Result<Execution, CliError> {
    Execution::with_workers(cfg.workers).map_err(|e| CliError::Config(e.to_string()))
}

/// Version line and config echo. The worker count is left out: it cannot
/// change any value.
pub fn provenance(cfg: &RunConfig) -> Vec<String> {
    let mut p = vec![format!(
        "creepwave-cli {} (creepwave {}) command={} boundary=dirichlet",
        env!("CARGO_PKG_VERSION"),
        creepwave::VERSION,
        cfg.command.name()
    )];
    p.extend(cfg.echo.iter().map(|(k, v)| format!("{k}={v}")));
    p
}

pub fn run_modes(cfg: &RunConfig) -> Result<Report, CliError> {
    let mut t = OutputTable::new(
        provenance(cfg),
        &["i", "q", "beta", "lambda_re", "lambda_im", "mu_re", "mu_im", "c_re", "c_im"],
    );
    for m in CreepingMode::first(cfg.modes, cfg.k, cfg.radius, cfg.calibration)? {
        t.push(vec![
            Cell::Int(m.index as i64),
            Cell::Real(m.q),
            Cell::Real(m.beta),
            Cell::Real(m.lambda.re),
            Cell::Real(m.lambda.im),
            Cell::Real(m.mu.re),
            Cell::Real(m.mu.im),
            Cell::Real(m.c.re),
            Cell::Real(m.c.im),
        ]);
    }
    Ok(Report { table: Some(t), summary: vec![] })
}

pub fn run_amplitude(cfg: &RunConfig) -> Result<Report, CliError> {
    let form = match cfg.form {
        Form::Legendre => AmplitudeForm::Legendre,
        Form::Resummed => AmplitudeForm::Resummed,
        Form::Tours => AmplitudeForm::Tours(cfg.tours),
    };
    let thetas = cfg.theta_grid();
    let results = sweep::map(execution(cfg)?, &thetas, |&t| {
        total_amplitude(cfg.k, cfg.radius, t, cfg.modes, cfg.calibration, form)
    });
    let mut columns = vec!["theta".to_string(), "re_f".into(), "im_f".into(), "abs_f".into()];
    for i in 1..=cfg.modes {
        columns.push(format!("mode{i}_re"));
        columns.push(format!("mode{i}_im"));
    }
    let names: Vec<&str> = columns.iter().map(String::as_str).collect();
    let mut t = OutputTable::new(provenance(cfg), &names);
    for (row, (theta, r)) in thetas.iter().zip(results).enumerate() {
        let b = r.map_err(|e| CliError::Numerical(format!("row {row} (theta = {theta}): {e}")))?;
        let mut cells = vec![Cell::Real(*theta), Cell::Real(b.total.re), Cell::Real(b.total.im), Cell::Real(b.total.norm())];
        for m in &b.mode_totals {
            cells.push(Cell::Real(m.re));
            cells.push(Cell::Real(m.im));
        }
        t.push(cells);
    }
    Ok(Report { table: Some(t), summary: vec![] })
}

fn describe_probe(label: &str, r: &Result<ProbeResult, Error>) -> String {
    match r {
        Ok(p) => format!(
            "{label} period: extracted dk = {:.6}, predicted 2 pi/((pi+2) R) = {:.6}, relative error {:+.2}%, peak/floor {:.1}",
            p.delta_k,
            p.predicted,
            100.0 * p.relative_error,
            p.peak_to_floor
        ),
        Err(e) => format!("{label} period: {e}"),
    }
}

pub fn run_compare(cfg: &RunConfig) -> Result<Report, CliError> {
    let ks = cfg.k_grid();
    let r = cfg.radius;
    let values = sweep::try_map(execution(cfg)?, &ks, |&k| {
        let table = match cfg.lmax {
            Some(l) => phase_shifts(k, r, l)?,
            None => phase_shifts_default(k, r)?,
        };
        let exact = exact_amplitude(&table, &[PI]).f[0];
        let creeping = total_amplitude(k, r, PI, cfg.modes, cfg.calibration, AmplitudeForm::Legendre)?.total;
        Ok((exact, creeping))
    })?;

    let mut t = OutputTable::new(
        vec![],
        &[
            "k",
            "exact_re",
            "exact_im",
            "exact_abs",
            "specular_re",
            "specular_im",
            "creeping_re",
            "creeping_im",
            "asymptotic_re",
            "asymptotic_im",
            "asymptotic_abs",
        ],
    );
    let mut exact_int = Vec::with_capacity(ks.len());
    let mut asym_int = Vec::with_capacity(ks.len());
    for (&k, &(exact, creeping)) in ks.iter().zip(&values) {
        let specular = specular_backscatter(k, r);
        let asym = specular + creeping;
        exact_int.push(exact.norm_sqr());
        asym_int.push(asym.norm_sqr());
        t.push(
            [k, exact.re, exact.im, exact.norm(), specular.re, specular.im, creeping.re, creeping.im, asym.re, asym.im, asym.norm()]
                .into_iter()
                .map(Cell::Real)
                .collect(),
        );
    }

    let mut summary = Vec::new();
    let mut failed = Vec::new();
    if ks.len() >= 512 {
        let exact_probe = probe_signal(&ks, &exact_int, r);
        summary.push(describe_probe("exact", &exact_probe));
        match &exact_probe {
            Ok(p) => {
                let ok = p.relative_error.abs() <= cfg.period_tol;
                summary.push(format!(
                    "{} period check: |{:.2}%| vs tolerance {:.2}%",
                    if ok { "PASS" } else { "FAIL" },
                    100.0 * p.relative_error,
                    100.0 * cfg.period_tol
                ));
                if !ok {
                    failed.push("interference period");
                }
            }
            Err(Error::Inconclusive { .. }) => summary.push("INCONCLUSIVE period check (not counted as a failure)".into()),
            Err(e) => return Err(CliError::Numerical(e.to_string())),
        }
        summary.push(describe_probe("asymptotic", &probe_signal(&ks, &asym_int, r)));
    } else {
        summary.push(format!("period check skipped: the probe needs at least 512 k points, got {}", ks.len()));
    }
    if cfg.fit_calibration {
        let model: Vec<Complex64> = values.iter().map(|v| v.1 / cfg.calibration).collect();
        let target: Vec<Complex64> = ks.iter().zip(&values).map(|(&k, v)| v.0 - specular_backscatter(k, r)).collect();
        let fit = fit_calibration(&model, &target, &specular_corrections(&ks, r, 2))?;
        summary.push(format!(
            "calibration fit: {:.6} (rms residual {:.3e} with the creeping term, {:.3e} without; specular corrections {})",
            fit.calibration,
            fit.rms_residual,
            fit.rms_without_model,
            fit.background.iter().map(|b| format!("{:.4}{:+.4}i", b.re, b.im)).collect::<Vec<_>>().join(", ")
        ));
    }

    let mut prov = provenance(cfg);
    prov.extend(summary.iter().map(|s| format!("summary: {s}")));
    t.provenance = prov;
    if failed.is_empty() {
        Ok(Report { table: Some(t), summary })
    } else {
        // the table is still written before the failure status is reported
        t.write(cfg.out.as_deref())?;
        for s in &summary {
            eprintln!("{s}");
        }
        Err(CliError::Comparison(failed.join(", ")))
    }
}

pub fn run_raytrace(cfg: &RunConfig) -> Result<Report, CliError> {
    if !(cfg.theta > 0.0 && cfg.theta < PI) {
        return Err(CliError::Config(format!("raytrace needs theta in (0, pi), got {}", cfg.theta)));
    }
    let scene = ObstacleScene::sphere(cfg.radius)?;
    let mut rays = Vec::new();
    for tours in 0..=cfg.tours {
        for &sense in &cfg.senses {
            let ray = sphere_diffracted_ray(&scene, cfg.theta, tours, sense)?;
            ray.validate()?;
            let count = conjugate_point_count(&ray, &scene)?;
            let crossings = ray.axis_crossings()?;
            debug_assert_eq!(crossings.len() as u32, count);
            rays.push((sense, tours, ray, crossings));
        }
    }
    let mut text: String = provenance(cfg).iter().map(|p| format!("# {p}\n")).collect();
    let mut summary = Vec::new();
    for (sense, tours, ray, crossings) in &rays {
        let line = format!(
            "ray sense={} tours={} segments={} crossings={} length={:.16e}",
            sense.symbol(),
            tours,
            ray.segments.len(),
            crossings.len(),
            ray.total_length()
        );
        text.push_str(&format!("# {line}\n"));
        text.push_str(&ray.export());
        summary.push(line);
    }
    match &cfg.out {
        Some(p) => write_file(p, &text)?,
        None => print!("{text}"),
    }
    if let Some(p) = &cfg.svg {
        let drawn: Vec<DrawnRay> = rays
            .iter()
            .map(|(sense, tours, ray, crossings)| DrawnRay { ray, sense: *sense, tours: *tours, crossings: crossings.clone() })
            .collect();
        write_file(p, &svg::render(&scene, &drawn))?;
    }
    Ok(Report { table: None, summary })
}

type Check = (&'static str, Result<String, String>);

fn check(name: &'static str, ok: bool, detail: String) -> Check {
    (name, if ok { Ok(detail) } else { Err(detail) })
}

fn selftest_checks(seed: u64) -> Result<Vec<Check>, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();

    let path: Vec<LagrangianPoint> =
        (0..=64).map(|i| LagrangianPoint::on_curve(0.5, -1.0 + 2.0 * i as f64 / 64.0)).collect::<Result<_, _>>()?;
    let m = maslov_index(&path)?;
    out.push(check("maslov anchor", m == -1, format!("U1 -> U3 index {m}")));

    let mut seen = vec![false; 2001];
    let mut ok = true;
    for w in -1000i64..=1000 {
        let c = crossing_number(w) as usize;
        ok &= !seen[c] && crossing_to_phase(w).value() == -FRAC_PI_2 * c as f64;
        seen[c] = true;
    }
    out.push(check("crossing bijection", ok && seen.iter().all(|&s| s), "m in [-1000, 1000]".into()));

    let scene = ObstacleScene::sphere(1.0)?;
    let mut ok = true;
    for theta in [0.5, 1.5, 2.5] {
        for n in 0..=2 {
            for sense in Sense::BOTH {
                let c = conjugate_point_count(&sphere_diffracted_ray(&scene, theta, n, sense)?, &scene)?;
                ok &= c as u64 == HomotopyClass::of_ray(n, sense).crossing;
            }
        }
    }
    out.push(check("conjugate points", ok, "1+2n (+), 2+2n (-) for 18 rays".into()));

    let mut worst: f64 = 0.0;
    for i in 1..=10 {
        let q = airy_zero(i)?;
        let (ai, aip) = airy_pair_real(q)?;
        worst = worst.max((ai / aip).abs());
    }
    out.push(check("airy zeros", worst < 1e-12, format!("Newton step at q_1..q_10 below {worst:.1e}")));

    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let lam = Complex64::new(rng.gen_range(0.0..60.0), rng.gen_range(0.1..6.0));
        let q = -(2.0 * PI * Complex64::i() * lam).exp();
        let mut term = (PI * Complex64::i() * lam).exp();
        let mut sum = Complex64::new(0.0, 0.0);
        while term.norm() > 1e-18 * sum.norm().max(1e-300) {
            sum += term;
            term *= q;
        }
        let closed = 1.0 / (2.0 * (PI * lam).cos());
        worst = worst.max((sum - closed).norm() / closed.norm());
    }
    out.push(check("resummation identity", worst < 1e-13, format!("200 random lambda, worst {worst:.1e}")));

    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let (k, r) = (rng.gen_range(0.5..200.0), rng.gen_range(0.1..10.0));
        for i in 1..=5 {
            let mode = CreepingMode::new(i, k, r, 1.0)?;
            let closed = (PI / 3.0).sin() * (0.5 * k * r).cbrt() * airy_zero(i)?.abs();
            worst = worst.max((mode.lambda.im - closed).abs() / closed);
        }
    }
    out.push(check("damping identity", worst < 1e-12, format!("worst {worst:.1e}")));

    let mut worst: f64 = 0.0;
    for kr in [1.0, 10.0, 50.0] {
        let a = exact_amplitude(&phase_shifts_default(kr, 1.0)?, &[]);
        worst = worst.max((a.sigma_optical() - a.sigma_total).abs() / a.sigma_total);
    }
    out.push(check("optical theorem", worst < 1e-8, format!("kR = 1, 10, 50, worst {worst:.1e}")));

    let mut worst: f64 = 0.0;
    for l in 0..=50 {
        let x = rng.gen_range(-0.95..0.99);
        let c = legendre_p_complex(ComplexDegree::new(l as f64, 0.0), x)?;
        worst = worst.max((c.re - legendre_p_int(l, x)).abs().max(c.im.abs()));
    }
    out.push(check("legendre integer degrees", worst < 1e-10, format!("l <= 50, worst {worst:.1e}")));

    let mode = CreepingMode::new(1, 40.0, 1.0, 1.0)?;
    let a = resummed_amplitude(&mode, 2.0)?;
    let b = creepwave::asymptotics::legendre_amplitude(&mode, 2.0)?;
    let rel = (a - b).norm() / b.norm();
    out.push(check("exponential vs legendre form", rel < 0.02, format!("kR = 40, theta = 2: {:.2}%", 100.0 * rel)));
    Ok(out)
}

pub fn run_selftest(cfg: &RunConfig) -> Result<Report, CliError> {
    let checks = selftest_checks(cfg.seed)?;
    let mut failed = 0;
    for (name, r) in &checks {
        match r {
            Ok(d) => println!("PASS {name}: {d}"),
            Err(d) => {
                failed += 1;
                println!("FAIL {name}: {d}");
            }
        }
    }
    println!("{} of {} checks passed (seed {})", checks.len() - failed, checks.len(), cfg.seed);
    if failed > 0 {
        return Err(CliError::Comparison(format!("{failed} self-test checks failed")));
    }
    Ok(Report { table: None, summary: vec![] })
}
