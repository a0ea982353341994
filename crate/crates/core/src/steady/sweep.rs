//! Parameter sweeps: trapping rate with coupling co-optimisation, the
//! (Δε, J) enhancement surface, deviations from the dark-state condition and
//! the reaction-centre phase.

use rayon::prelude::*;

use crate::model::{
    dark_z_for_coupling, diagonalize_dimer, fix_lower_exciton, optical_rates, ModelKind,
    PhotocellParams,
};
use crate::{Error, Result};

use super::power::{check_grid, log_grid, maximize_power_with, ratio, PowerSearch, RateEquations};
use super::{OptimizationResult, SteadyStateSolver};

/// Whether independent sweep points are evaluated on the rayon pool.
/// Results are identical either way.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    #[default]
    Serial,
    Parallel,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepOptions {
    pub execution: Execution,
    pub search: PowerSearch,
    /// Log-grid size for the coupling scan, over [cap/1000, cap].
    pub coupling_points: usize,
    /// Bracket width in log₁₀ J at which coupling refinement stops.
    pub coupling_log_tolerance: f64,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            execution: Execution::Serial,
            search: PowerSearch::default(),
            coupling_points: 25,
            coupling_log_tolerance: 1e-4,
        }
    }
}

/// One evaluated parameter point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepPoint {
    pub model: ModelKind,
    /// Primary axis value (γ₁α, Δε, Δ, J or θ_RC depending on the sweep).
    pub x: f64,
    /// Secondary axis for two-dimensional sweeps.
    pub y: Option<f64>,
    pub j12: f64,
    pub z: f64,
    pub delta_eps: f64,
    pub tan2_phi: f64,
    pub model_power: f64,
    pub benchmark_power: f64,
    pub enhancement: f64,
    pub gamma_alphabeta: f64,
    pub benchmark_gamma_alphabeta: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SweepResult {
    pub points: Vec<SweepPoint>,
    /// Comparison curve (the symmetric model on the enhancement surface).
    pub reference: Vec<SweepPoint>,
    /// Points (Δε, J) where the asymmetric and symmetric enhancements are
    /// equal, interpolated between grid neighbours.
    pub contour: Vec<(f64, f64)>,
}

impl SweepResult {
    pub fn best(&self) -> Option<&SweepPoint> {
        self.points
            .iter()
            .max_by(|a, b| a.enhancement.total_cmp(&b.enhancement))
    }
}

pub(crate) fn map_points<T, R, F>(items: Vec<T>, execution: Execution, f: F) -> Result<Vec<R>>
where
    T: Send,
    R: Send,
    F: Fn(T) -> Result<R> + Sync + Send,
{
    match execution {
        Execution::Serial => items.into_iter().map(f).collect(),
        Execution::Parallel => items.into_par_iter().map(f).collect(),
    }
}

/// Re-targets `base` to a model, detuning and coupling while holding the
/// lower exciton energy and γ₁g + γ₂g fixed. The asymmetric dipole ratio
/// follows the dark-state condition unless `z` is given.
pub fn configure(
    base: &PhotocellParams,
    model: ModelKind,
    delta_eps: f64,
    j12: f64,
    z: Option<f64>,
) -> PhotocellParams {
    let eps_minus = diagonalize_dimer(base).eps_minus;
    if model == ModelKind::Independent {
        return base.benchmark();
    }
    let mut p = PhotocellParams {
        model,
        eps1: 0.0,
        eps2: delta_eps,
        j12,
        ..base.clone()
    };
    p.z = match (model, z) {
        (ModelKind::Symmetric, _) => 1.0,
        (_, Some(z)) => z,
        (_, None) => dark_z_for_coupling(p.coupling(), delta_eps),
    };
    p.set_optical_total(base.optical_total());
    fix_lower_exciton(&p, eps_minus)
}

pub fn tan2_phi(params: &PhotocellParams) -> f64 {
    let (bright, dark) = optical_rates(params, &diagonalize_dimer(params));
    if bright > 0.0 {
        dark / bright
    } else {
        f64::NAN
    }
}

fn point_from(
    params: &PhotocellParams,
    x: f64,
    y: Option<f64>,
    model: &OptimizationResult,
    benchmark: &OptimizationResult,
) -> Result<SweepPoint> {
    Ok(SweepPoint {
        model: params.model,
        x,
        y,
        j12: params.j12,
        z: params.z,
        delta_eps: params.delta_eps(),
        tan2_phi: tan2_phi(params),
        model_power: model.best_point.power,
        benchmark_power: benchmark.best_point.power,
        enhancement: ratio(model, benchmark)?,
        gamma_alphabeta: model.best_gamma_alphabeta,
        benchmark_gamma_alphabeta: benchmark.best_gamma_alphabeta,
    })
}

/// Maximises both the model and its matched benchmark and packs the result.
pub fn evaluate_point_with<S: SteadyStateSolver + ?Sized>(
    solver: &S,
    params: &PhotocellParams,
    x: f64,
    y: Option<f64>,
    search: &PowerSearch,
) -> Result<SweepPoint> {
    let model = maximize_power_with(solver, params, search)?;
    let benchmark = maximize_power_with(solver, &params.benchmark(), search)?;
    point_from(params, x, y, &model, &benchmark)
}

pub fn evaluate_point(
    params: &PhotocellParams,
    x: f64,
    y: Option<f64>,
    search: &PowerSearch,
) -> Result<SweepPoint> {
    evaluate_point_with(&RateEquations, params, x, y, search)
}

/// Maximum power over J ∈ (0, cap] (and γ_αβ), log-grid plus golden section.
pub fn co_optimize_coupling(
    base: &PhotocellParams,
    model: ModelKind,
    delta_eps: f64,
    j12_cap: f64,
    options: &SweepOptions,
) -> Result<(PhotocellParams, OptimizationResult)> {
    if !(j12_cap > 0.0) {
        return Err(Error::InvalidGrid(format!(
            "coupling cap must be positive, got {j12_cap}"
        )));
    }
    let eval = |log_j: f64| -> Result<(PhotocellParams, OptimizationResult)> {
        let p = configure(base, model, delta_eps, 10f64.powf(log_j), None);
        let r = maximize_power_with(&RateEquations, &p, &options.search)?;
        Ok((p, r))
    };
    let power = |r: &OptimizationResult| {
        if r.zero_power {
            0.0
        } else {
            r.best_point.power
        }
    };

    let logs: Vec<f64> = log_grid(j12_cap * 1e-3, j12_cap, options.coupling_points.max(2))
        .iter()
        .map(|j| j.log10())
        .collect();
    let mut best: Option<(PhotocellParams, OptimizationResult)> = None;
    let mut best_idx = 0;
    for (i, &lj) in logs.iter().enumerate() {
        let probe = eval(lj)?;
        if best.as_ref().is_none_or(|b| power(&probe.1) > power(&b.1)) {
            best = Some(probe);
            best_idx = i;
        }
    }
    let mut best = best.expect("coupling grid is never empty");

    let mut a = logs[best_idx.saturating_sub(1)];
    let mut b = logs[(best_idx + 1).min(logs.len() - 1)];
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = eval(c)?;
    let mut fd = eval(d)?;
    while b - a > options.coupling_log_tolerance {
        if power(&fc.1) >= power(&fd.1) {
            b = d;
            d = c;
            fd = fc.clone();
            c = b - inv_phi * (b - a);
            fc = eval(c)?;
        } else {
            a = c;
            c = d;
            fc = fd.clone();
            d = a + inv_phi * (b - a);
            fd = eval(d)?;
        }
        for probe in [&fc, &fd] {
            if power(&probe.1) > power(&best.1) {
                best = probe.clone();
            }
        }
    }
    Ok(best)
}

/// Enhancement against the trapping rate γ₁α. At each point the coupling
/// (and, for the asymmetric model, the dark-state `z`) and γ_αβ are
/// optimised; the benchmark re-optimises its own γ_αβ.
pub fn sweep_trapping(
    base: &PhotocellParams,
    model: ModelKind,
    gamma_1alpha_grid: &[f64],
    j12_cap: f64,
    options: &SweepOptions,
) -> Result<SweepResult> {
    check_grid(gamma_1alpha_grid, true)?;
    let delta_eps = match model {
        ModelKind::Asymmetric => base.delta_eps(),
        _ => 0.0,
    };
    let points = map_points(gamma_1alpha_grid.to_vec(), options.execution, |g1a| {
        let p = PhotocellParams {
            gamma_1alpha: g1a,
            ..base.clone()
        };
        let benchmark = maximize_power_with(&RateEquations, &p.benchmark(), &options.search)?;
        if model == ModelKind::Independent {
            return point_from(&p.benchmark(), g1a, None, &benchmark, &benchmark);
        }
        let (best, result) = co_optimize_coupling(&p, model, delta_eps, j12_cap, options)?;
        point_from(&best, g1a, None, &result, &benchmark)
    })?;
    Ok(SweepResult {
        points,
        ..SweepResult::default()
    })
}

/// Asymmetric enhancement over a (Δε, J) grid with `z` on the dark-state
/// condition, plus the symmetric model over the same couplings.
pub fn enhancement_surface(
    base: &PhotocellParams,
    delta_eps_grid: &[f64],
    j12_grid: &[f64],
    options: &SweepOptions,
) -> Result<SweepResult> {
    check_grid(delta_eps_grid, true)?;
    check_grid(j12_grid, true)?;
    let benchmark = maximize_power_with(&RateEquations, &base.benchmark(), &options.search)?;

    let cells: Vec<(f64, f64)> = delta_eps_grid
        .iter()
        .flat_map(|&de| j12_grid.iter().map(move |&j| (de, j)))
        .collect();
    let points = map_points(cells, options.execution, |(de, j)| {
        let p = configure(base, ModelKind::Asymmetric, de, j, None);
        let r = maximize_power_with(&RateEquations, &p, &options.search)?;
        point_from(&p, de, Some(j), &r, &benchmark)
    })?;
    let reference = map_points(j12_grid.to_vec(), options.execution, |j| {
        let p = configure(base, ModelKind::Symmetric, 0.0, j, None);
        let r = maximize_power_with(&RateEquations, &p, &options.search)?;
        point_from(&p, j, None, &r, &benchmark)
    })?;

    let nj = j12_grid.len();
    let diff = |i: usize, k: usize| points[i * nj + k].enhancement - reference[k].enhancement;
    let mut contour = Vec::new();
    for (i, &de) in delta_eps_grid.iter().enumerate() {
        for k in 0..nj.saturating_sub(1) {
            let (d0, d1) = (diff(i, k), diff(i, k + 1));
            if d0 == 0.0 {
                contour.push((de, j12_grid[k]));
            } else if d0 * d1 < 0.0 {
                let t = d0 / (d0 - d1);
                contour.push((de, j12_grid[k] + t * (j12_grid[k + 1] - j12_grid[k])));
            }
        }
    }
    for (k, &j) in j12_grid.iter().enumerate() {
        for i in 0..delta_eps_grid.len().saturating_sub(1) {
            let (d0, d1) = (diff(i, k), diff(i + 1, k));
            if d0 * d1 < 0.0 {
                let t = d0 / (d0 - d1);
                let de = delta_eps_grid[i] + t * (delta_eps_grid[i + 1] - delta_eps_grid[i]);
                contour.push((de, j));
            }
        }
    }
    contour.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    contour.dedup();

    Ok(SweepResult {
        points,
        reference,
        contour,
    })
}

/// Detunes the dimer by Δ away from the dark-state condition: the
/// asymmetric model keeps its Δ = 0 dark-state `z` while ε₂ − ε₁ becomes
/// (ε₂ − ε₁) + Δ; the symmetric model (same coupling) gets ε₂ − ε₁ = Δ.
/// Both models are reported at every Δ.
pub fn deviation_sweep(
    base: &PhotocellParams,
    delta_grid: &[f64],
    options: &SweepOptions,
) -> Result<SweepResult> {
    check_grid(delta_grid, false)?;
    let delta0 = base.delta_eps();
    let z0 = dark_z_for_coupling(base.coupling(), delta0);
    let jobs: Vec<(ModelKind, f64)> = [ModelKind::Asymmetric, ModelKind::Symmetric]
        .into_iter()
        .flat_map(|m| delta_grid.iter().map(move |&d| (m, d)))
        .collect();
    let points = map_points(jobs, options.execution, |(model, d)| {
        let p = match model {
            ModelKind::Asymmetric => configure(base, model, delta0 + d, base.j12, Some(z0)),
            _ => configure(base, model, d, base.j12, None),
        };
        evaluate_point(&p, d, None, &options.search)
    })?;
    Ok(SweepResult {
        points,
        ..SweepResult::default()
    })
}

/// Symmetric-model enhancement against the reaction-centre phase θ_RC.
pub fn theta_rc_sweep(
    base: &PhotocellParams,
    theta_grid: &[f64],
    options: &SweepOptions,
) -> Result<SweepResult> {
    check_grid(theta_grid, false)?;
    if base.model != ModelKind::Symmetric {
        return Err(Error::InvalidParams(format!(
            "reaction-centre phase sweep needs the symmetric model, got {}",
            base.model
        )));
    }
    let points = map_points(theta_grid.to_vec(), options.execution, |theta| {
        let p = PhotocellParams {
            theta_rc: theta,
            ..base.clone()
        };
        evaluate_point(&p, theta, None, &options.search)
    })?;
    Ok(SweepResult {
        points,
        ..SweepResult::default()
    })
}
