use crate::model::{ModelKind, PhotocellParams};
use crate::steady::{
    check_grid, co_optimize_coupling, configure, map_points, maximize_power_with, PowerSearch,
    RateEquations, SteadyStateSolver, SweepOptions,
};
use crate::Result;

use super::RedfieldSolver;

/// Enhancement of one parameter point under two steady-state solvers.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverComparison {
    pub model: ModelKind,
    pub x: f64,
    pub y: Option<f64>,
    pub j12: f64,
    pub z: f64,
    pub reference_enhancement: f64,
    pub candidate_enhancement: f64,
}

impl SolverComparison {
    /// `candidate − reference`.
    pub fn difference(&self) -> f64 {
        self.candidate_enhancement - self.reference_enhancement
    }

    /// `(reference − candidate) / reference`.
    pub fn relative_reduction(&self) -> f64 {
        (self.reference_enhancement - self.candidate_enhancement) / self.reference_enhancement
    }
}

fn enhancement<S: SteadyStateSolver + ?Sized>(
    solver: &S,
    params: &PhotocellParams,
    search: &PowerSearch,
) -> Result<f64> {
    let m = maximize_power_with(solver, params, search)?;
    let b = maximize_power_with(solver, &params.benchmark(), search)?;
    crate::steady::ratio(&m, &b)
}

/// Runs the full power maximisation (model and benchmark) under both
/// solvers.
pub fn compare_solvers<R, C>(
    params: &PhotocellParams,
    reference: &R,
    candidate: &C,
    search: &PowerSearch,
) -> Result<SolverComparison>
where
    R: SteadyStateSolver + ?Sized,
    C: SteadyStateSolver + ?Sized,
{
    Ok(SolverComparison {
        model: params.model,
        x: 0.0,
        y: None,
        j12: params.j12,
        z: params.z,
        reference_enhancement: enhancement(reference, params, search)?,
        candidate_enhancement: enhancement(candidate, params, search)?,
    })
}

/// Rate equations (reference) against the Redfield solver (candidate).
pub fn compare_with_rates(
    params: &PhotocellParams,
    solver: &RedfieldSolver,
    search: &PowerSearch,
) -> Result<SolverComparison> {
    compare_solvers(params, &RateEquations, solver, search)
}

/// Trapping-rate sweep under two solvers. The coupling at each γ₁α is the
/// rate-equation optimum, so both solvers see the same dimer.
pub fn compare_trapping<R, C>(
    base: &PhotocellParams,
    model: ModelKind,
    gamma_1alpha_grid: &[f64],
    j12_cap: f64,
    reference: &R,
    candidate: &C,
    options: &SweepOptions,
) -> Result<Vec<SolverComparison>>
where
    R: SteadyStateSolver + ?Sized,
    C: SteadyStateSolver + ?Sized,
{
    check_grid(gamma_1alpha_grid, true)?;
    let delta_eps = match model {
        ModelKind::Asymmetric => base.delta_eps(),
        _ => 0.0,
    };
    map_points(gamma_1alpha_grid.to_vec(), options.execution, |g1a| {
        let p = PhotocellParams {
            gamma_1alpha: g1a,
            ..base.clone()
        };
        let p = match model {
            ModelKind::Independent => p.benchmark(),
            _ => co_optimize_coupling(&p, model, delta_eps, j12_cap, options)?.0,
        };
        let c = compare_solvers(&p, reference, candidate, &options.search)?;
        Ok(SolverComparison { x: g1a, ..c })
    })
}

/// Asymmetric (Δε, J) surface plus the symmetric model at each J, under two
/// solvers. The symmetric rows come last with `y = None` and `x = J`.
pub fn compare_surface<R, C>(
    base: &PhotocellParams,
    delta_eps_grid: &[f64],
    j12_grid: &[f64],
    reference: &R,
    candidate: &C,
    options: &SweepOptions,
) -> Result<Vec<SolverComparison>>
where
    R: SteadyStateSolver + ?Sized,
    C: SteadyStateSolver + ?Sized,
{
    check_grid(delta_eps_grid, true)?;
    check_grid(j12_grid, true)?;
    let mut jobs: Vec<(ModelKind, f64, f64)> = delta_eps_grid
        .iter()
        .flat_map(|&de| {
            j12_grid
                .iter()
                .map(move |&j| (ModelKind::Asymmetric, de, j))
        })
        .collect();
    jobs.extend(j12_grid.iter().map(|&j| (ModelKind::Symmetric, 0.0, j)));
    map_points(jobs, options.execution, |(model, de, j)| {
        let p = configure(base, model, de, j, None);
        let c = compare_solvers(&p, reference, candidate, &options.search)?;
        Ok(match model {
            ModelKind::Asymmetric => SolverComparison {
                x: de,
                y: Some(j),
                ..c
            },
            _ => SolverComparison { x: j, ..c },
        })
    })
}
