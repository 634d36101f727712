//! One runner per experiment kind. Each returns the CSV files it produced
//! (relative to the output directory) and a one-line summary.

use crate::config::{ExperimentConfig, PhysicsConfig};
use crate::output::Csv;
use anyhow::{anyhow, Context, Result};
use shaperecon::asymptotic_forward::{
    dipole_from_circle, far_field_helmholtz, far_field_laplace, pattern_from_circle,
};
use shaperecon::dtn::expanded_dtn;
use shaperecon::forward_oracle::{solve_exterior_dirichlet_series, SolverParams};
use shaperecon::fourier::node;
use shaperecon::scattering_inversion::{
    acoustic_measurements, electric_measurements, reconstruct_acoustic, reconstruct_electric,
    MeasurementParams, ReconstructionResult,
};
use shaperecon::{Execution, PerturbedDisk, Physics, RealTrigSeries, SampledPeriodicFn};
use std::fs;
use std::path::{Path, PathBuf};

pub struct Produced {
    pub files: Vec<PathBuf>,
    pub summary: String,
}

/// Boundary nodes used when tabulating boundary quantities.
const BOUNDARY_NODES: usize = 256;
/// Pattern order extracted from oracle far fields.
const PATTERN_ORDER: usize = 12;

pub(crate) struct RunContext<'a> {
    pub config: &'a ExperimentConfig,
    pub solver: SolverParams,
    pub out_dir: &'a Path,
    pub execution: Execution,
}

fn disk(config: &ExperimentConfig, eps: f64) -> Result<PerturbedDisk> {
    Ok(PerturbedDisk::new(eps, config.shape.series())?)
}

fn measurement(config: &ExperimentConfig) -> MeasurementParams {
    MeasurementParams {
        radius: config.measurement_radius(),
        samples: config.measurement.samples,
        noise: config.measurement.noise,
        seed: config.measurement.seed,
    }
}

/// Least-squares slope of `log err` against `log ε`; NaN when undefined.
pub fn loglog_slope(eps: &[f64], err: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = eps
        .iter()
        .zip(err)
        .filter(|(e, r)| **e > 0.0 && **r > 0.0)
        .map(|(e, r)| (e.ln(), r.ln()))
        .collect();
    if pts.len() < 2 {
        return f64::NAN;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

fn write(ctx: &RunContext, name: &str, csv: &Csv, files: &mut Vec<PathBuf>) -> Result<()> {
    csv.write(&ctx.out_dir.join(name))?;
    files.push(PathBuf::from(name));
    Ok(())
}

pub(crate) fn forward(ctx: &RunContext) -> Result<Produced> {
    let cfg = ctx.config;
    let physics = cfg.physics();
    let eps = cfg.shape.epsilon;
    let d = disk(cfg, eps)?;
    let psi = cfg.data_series();
    let sol = solve_exterior_dirichlet_series(physics, &d, &psi, &ctx.solver)?;
    let expansion = expanded_dtn(physics, &d, &psi)?;

    let mut files = Vec::new();
    let mut summary = Csv::new(&["epsilon", "n_trunc", "m_colloc", "boundary_residual", "condition_estimate"]);
    summary.row(vec![
        eps.into(),
        ctx.solver.n_trunc.into(),
        ctx.solver.m_colloc.into(),
        sol.boundary_residual().into(),
        sol.condition_estimate().into(),
    ]);
    write(ctx, "forward.csv", &summary, &mut files)?;

    let mut boundary = Csv::new(&[
        "theta",
        "radius",
        "normal_derivative_re",
        "normal_derivative_im",
        "expansion_re",
        "expansion_im",
    ]);
    let rows = ctx.execution.try_map(BOUNDARY_NODES, |j| {
        let t = node(j, BOUNDARY_NODES);
        sol.normal_derivative_on_boundary(t).map(|dn| (t, dn))
    })?;
    for (t, dn) in rows {
        let e = expansion.eval(t);
        boundary.row(vec![t.into(), d.radius(t).into(), dn.re.into(), dn.im.into(), e.re.into(), e.im.into()]);
    }
    write(ctx, "forward_boundary.csv", &boundary, &mut files)?;
    Ok(Produced {
        files,
        summary: format!(
            "boundary residual {:.3e}, condition estimate {:.3e}",
            sol.boundary_residual(),
            sol.condition_estimate()
        ),
    })
}

/// `max_j |∂u/∂N(θ_j) - (N0 + εN¹)Ψ(θ_j)|` for each amplitude.
pub(crate) fn dtn_order(ctx: &RunContext) -> Result<Produced> {
    let cfg = ctx.config;
    let physics = cfg.physics();
    let psi = cfg.data_series();
    let errors = ctx.execution.try_map(cfg.epsilons.len(), |i| -> Result<f64> {
        let d = disk(cfg, cfg.epsilons[i])?;
        let sol = solve_exterior_dirichlet_series(physics, &d, &psi, &ctx.solver)?;
        let expansion = expanded_dtn(physics, &d, &psi)?;
        let mut err = 0.0f64;
        for j in 0..BOUNDARY_NODES {
            let t = node(j, BOUNDARY_NODES);
            err = err.max((sol.normal_derivative_on_boundary(t)? - expansion.eval(t)).norm());
        }
        Ok(err)
    })?;
    order_table(ctx, "dtn_order.csv", &errors)
}

/// Oracle far field of `u_ε - u_0` against the first-order prediction.
pub(crate) fn farfield(ctx: &RunContext) -> Result<Produced> {
    let cfg = ctx.config;
    let physics = cfg.physics();
    let psi = cfg.data_series();
    let radius = cfg.measurement_radius();
    let samples = cfg.measurement.samples;
    let base = solve_exterior_dirichlet_series(physics, &PerturbedDisk::unit_disk(), &psi, &ctx.solver)?;
    let u0 = base.sample_circle(radius, samples)?;
    let errors = ctx.execution.try_map(cfg.epsilons.len(), |i| -> Result<f64> {
        let d = disk(cfg, cfg.epsilons[i])?;
        let sol = solve_exterior_dirichlet_series(physics, &d, &psi, &ctx.solver)?;
        let u = sol.sample_circle(radius, samples)?;
        let diff = SampledPeriodicFn::new(u.iter().zip(&u0).map(|(a, b)| a - b).collect())?;
        Ok(match physics {
            Physics::Laplace => {
                let (alpha, beta) = dipole_from_circle(&diff, radius)?;
                let pred = far_field_laplace(&d, &psi)?;
                (alpha - pred.dipole_cos).norm().max((beta - pred.dipole_sin).norm())
            }
            Physics::Helmholtz { k } => {
                let order = PATTERN_ORDER.min(samples / 2 - 1);
                let oracle = pattern_from_circle(&diff, k, radius, order)?;
                let pred = far_field_helmholtz(&d, &psi, k)?;
                let n = pred.pattern.order().max(order);
                (&oracle.resized(n) - &pred.pattern.resized(n)).max_abs()
            }
        })
    })?;
    order_table(ctx, "farfield.csv", &errors)
}

fn order_table(ctx: &RunContext, name: &str, errors: &[f64]) -> Result<Produced> {
    let eps = &ctx.config.epsilons;
    let slope = loglog_slope(eps, errors);
    let mut csv = Csv::new(&["epsilon", "error", "slope"]);
    for (e, err) in eps.iter().zip(errors) {
        csv.row(vec![(*e).into(), (*err).into(), slope.into()]);
    }
    let mut files = Vec::new();
    write(ctx, name, &csv, &mut files)?;
    Ok(Produced {
        files,
        summary: format!("log-log slope {slope:.3}"),
    })
}

fn reconstruct_at(ctx: &RunContext, eps: f64) -> Result<ReconstructionResult> {
    let cfg = ctx.config;
    let d = disk(cfg, eps)?;
    let mp = measurement(cfg);
    let probes = cfg.probe_list();
    match cfg.physics {
        PhysicsConfig::Electric {} => {
            let probes: Vec<usize> = probes
                .iter()
                .map(|&p| usize::try_from(p).map_err(|_| anyhow!("electric probe {p} is negative")))
                .collect::<Result<_>>()?;
            let meas = electric_measurements(&d, &probes, &ctx.solver, &mp)?;
            Ok(reconstruct_electric(&meas)?)
        }
        PhysicsConfig::Acoustic { k } => {
            let meas = acoustic_measurements(&d, k, &probes, &ctx.solver, &mp)?;
            Ok(reconstruct_acoustic(&meas, k, cfg.stability_threshold)?)
        }
    }
}

/// Coefficient table plus the largest absolute coefficient error.
fn coefficient_table(truth: &RealTrigSeries, rec: &ReconstructionResult) -> (Csv, f64) {
    let est = &rec.f_hat;
    let order = truth.order().max(est.order());
    let mut csv = Csv::new(&["mode", "true_a", "true_b", "est_a", "est_b", "residual"]);
    let mut worst = 0.0f64;
    for n in 0..=order {
        let residual = rec.residuals.get(n).copied().unwrap_or(0.0);
        // Modes beyond the probed range are not estimated.
        if n <= est.order() {
            worst = worst.max((truth.a(n) - est.a(n)).abs()).max((truth.b(n) - est.b(n)).abs());
        }
        csv.row(vec![
            n.into(),
            truth.a(n).into(),
            truth.b(n).into(),
            est.a(n).into(),
            est.b(n).into(),
            residual.into(),
        ]);
    }
    (csv, worst)
}

pub(crate) fn reconstruct(ctx: &RunContext) -> Result<Produced> {
    let cfg = ctx.config;
    let rec = reconstruct_at(ctx, cfg.shape.epsilon)?;
    let (csv, worst) = coefficient_table(&cfg.shape.series(), &rec);
    let mut files = Vec::new();
    write(ctx, "reconstruct.csv", &csv, &mut files)?;
    if !rec.stability.is_empty() {
        let mut st = Csv::new(&["probe", "stability_factor", "stable"]);
        for s in &rec.stability {
            st.row(vec![s.m.into(), s.factor.into(), s.stable.into()]);
        }
        write(ctx, "stability.csv", &st, &mut files)?;
    }
    let unstable = rec.stability.iter().filter(|s| !s.stable).count();
    Ok(Produced {
        files,
        summary: format!(
            "recovered modes 0..={}, worst coefficient error {worst:.3e}, {unstable} unstable probes",
            rec.f_hat.order()
        ),
    })
}

/// Reconstruction at every amplitude in `epsilons`. Points run concurrently
/// and each writes its own file, so results do not depend on scheduling.
pub(crate) fn sweep(ctx: &RunContext) -> Result<Produced> {
    let cfg = ctx.config;
    let dir = ctx.out_dir.join("sweep");
    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    let truth = cfg.shape.series();
    let points = ctx.execution.try_map(cfg.epsilons.len(), |i| -> Result<(PathBuf, f64, f64)> {
        let rec = reconstruct_at(ctx, cfg.epsilons[i])?;
        let (csv, worst) = coefficient_table(&truth, &rec);
        let name = PathBuf::from("sweep").join(format!("point_{i:03}.csv"));
        csv.write(&ctx.out_dir.join(&name))?;
        let spread = rec.residuals.iter().copied().fold(0.0, f64::max);
        Ok((name, worst, spread))
    })?;
    let mut summary = Csv::new(&["point", "epsilon", "worst_error", "max_residual"]);
    let mut files = Vec::new();
    for (i, (name, worst, spread)) in points.iter().enumerate() {
        summary.row(vec![i.into(), cfg.epsilons[i].into(), (*worst).into(), (*spread).into()]);
        files.push(name.clone());
    }
    write(ctx, "sweep.csv", &summary, &mut files)?;
    let errs: Vec<f64> = points.iter().map(|p| p.1).collect();
    Ok(Produced {
        files,
        summary: format!(
            "{} points, error slope {:.3}",
            points.len(),
            loglog_slope(&cfg.epsilons, &errs)
        ),
    })
}
