use crate::model::{build_rate_matrix, PhotocellParams};
use crate::units::K_B;
use crate::{Error, Result};

use super::{solve_steady_state, SteadyState};

/// Trap current, photochemical voltage and their product.
///
/// Current is reported with e = 1, so it carries units of eV (a rate) and
/// power units of eV².
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OperatingPoint {
    pub current: f64,
    pub voltage: f64,
    pub power: f64,
}

/// `I = γ_αβ P_α`, `V = ε_α − ε_β + k_B T_c ln(P_α / P_β)`, `P = I V`.
///
/// The log term enters with a plus sign: at thermal equilibrium with the
/// phonon bath `P_α / P_β = exp(−(ε_α − ε_β) / k_B T_c)` and the voltage is
/// exactly zero.
pub fn operating_point(state: &SteadyState, params: &PhotocellParams) -> Result<OperatingPoint> {
    let (p_alpha, p_beta) = (state.p_alpha(), state.p_beta());
    if !(p_alpha > 0.0 && p_beta > 0.0) {
        return Err(Error::UndefinedVoltage { p_alpha, p_beta });
    }
    let current = params.gamma_alphabeta * p_alpha;
    let voltage =
        params.eps_alpha - params.eps_beta + K_B * params.t_cold * (p_alpha / p_beta).ln();
    Ok(OperatingPoint {
        current,
        voltage,
        power: current * voltage,
    })
}

/// Anything that can turn parameters into steady-state populations.
pub trait SteadyStateSolver: Sync {
    fn steady_state(&self, params: &PhotocellParams) -> Result<SteadyState>;
}

/// The Pauli rate equations.
#[derive(Clone, Copy, Debug, Default)]
pub struct RateEquations;

impl SteadyStateSolver for RateEquations {
    fn steady_state(&self, params: &PhotocellParams) -> Result<SteadyState> {
        solve_steady_state(&build_rate_matrix(params)?)
    }
}

pub fn evaluate_with<S: SteadyStateSolver + ?Sized>(
    solver: &S,
    params: &PhotocellParams,
) -> Result<OperatingPoint> {
    let state = solver.steady_state(params)?;
    operating_point(&state, params)
}

/// Operating points along a trapping-rate grid, everything else frozen.
pub fn iv_curve(
    params: &PhotocellParams,
    gamma_grid: &[f64],
) -> Result<Vec<(f64, OperatingPoint)>> {
    iv_curve_with(&RateEquations, params, gamma_grid)
}

pub fn iv_curve_with<S: SteadyStateSolver + ?Sized>(
    solver: &S,
    params: &PhotocellParams,
    gamma_grid: &[f64],
) -> Result<Vec<(f64, OperatingPoint)>> {
    check_grid(gamma_grid, true)?;
    gamma_grid
        .iter()
        .map(|&g| {
            evaluate_with(solver, &params.with_gamma_alphabeta(g))
                .map(|op| (g, op))
                .map_err(|e| at_rate(g, e))
        })
        .collect()
}

fn at_rate(gamma_alphabeta: f64, e: Error) -> Error {
    Error::AtTrappingRate {
        gamma_alphabeta,
        source: Box::new(e),
    }
}

pub(crate) fn check_grid(grid: &[f64], positive: bool) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidGrid("grid is empty".into()));
    }
    if grid
        .iter()
        .any(|v| !v.is_finite() || (positive && *v <= 0.0))
    {
        return Err(Error::InvalidGrid(format!(
            "grid values must be finite{}",
            if positive { " and positive" } else { "" }
        )));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidGrid("grid must be strictly ascending".into()));
    }
    Ok(())
}

/// `n` log-spaced values from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.log10(), hi.log10());
    match n {
        0 => vec![],
        1 => vec![lo],
        _ => (0..n)
            .map(|i| 10f64.powf(a + (b - a) * i as f64 / (n - 1) as f64))
            .collect(),
    }
}

/// `n` evenly spaced values from `lo` to `hi` inclusive.
pub fn lin_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![lo],
        _ => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// Trapping-rate optimisation settings.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PowerSearch {
    pub lo: f64,
    pub hi: f64,
    pub grid_points: usize,
    /// Bracket width in log₁₀ γ_αβ at which golden-section refinement stops.
    pub log_tolerance: f64,
}

impl Default for PowerSearch {
    fn default() -> Self {
        PowerSearch {
            lo: 1e-12,
            hi: 1.0,
            grid_points: 200,
            log_tolerance: 1e-6,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OptimizationResult {
    pub best_gamma_alphabeta: f64,
    pub best_point: OperatingPoint,
    pub evaluations: usize,
    /// Set when no probed trapping rate delivers positive power.
    pub zero_power: bool,
}

/// Maximises power over γ_αβ with the rate equations.
pub fn maximize_power(params: &PhotocellParams) -> Result<OptimizationResult> {
    maximize_power_with(&RateEquations, params, &PowerSearch::default())
}

/// Log-grid scan followed by golden-section refinement (in log γ_αβ)
/// inside the bracket around the best grid point. The result is the best
/// of every probe.
pub fn maximize_power_with<S: SteadyStateSolver + ?Sized>(
    solver: &S,
    params: &PhotocellParams,
    search: &PowerSearch,
) -> Result<OptimizationResult> {
    params.validate()?;
    let eval = |log_g: f64| -> Result<(f64, OperatingPoint)> {
        let g = 10f64.powf(log_g);
        evaluate_with(solver, &params.with_gamma_alphabeta(g))
            .map(|op| (g, op))
            .map_err(|e| at_rate(g, e))
    };

    let grid = log_grid(search.lo, search.hi, search.grid_points);
    let logs: Vec<f64> = grid.iter().map(|g| g.log10()).collect();
    let mut evaluations = 0;
    let mut best: Option<(f64, OperatingPoint)> = None;
    let mut best_idx = 0;
    for (i, &lg) in logs.iter().enumerate() {
        let probe = eval(lg)?;
        evaluations += 1;
        if best.is_none_or(|(_, b)| probe.1.power > b.power) {
            best = Some(probe);
            best_idx = i;
        }
    }
    let mut best = best.ok_or_else(|| Error::InvalidGrid("empty trapping-rate grid".into()))?;

    if logs.len() >= 2 {
        let mut a = logs[best_idx.saturating_sub(1)];
        let mut b = logs[(best_idx + 1).min(logs.len() - 1)];
        let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
        let mut c = b - inv_phi * (b - a);
        let mut d = a + inv_phi * (b - a);
        let mut fc = eval(c)?;
        let mut fd = eval(d)?;
        evaluations += 2;
        while (b - a) > search.log_tolerance {
            if fc.1.power >= fd.1.power {
                b = d;
                d = c;
                fd = fc;
                c = b - inv_phi * (b - a);
                fc = eval(c)?;
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + inv_phi * (b - a);
                fd = eval(d)?;
            }
            evaluations += 1;
            for probe in [fc, fd] {
                if probe.1.power > best.1.power {
                    best = probe;
                }
            }
        }
    }

    let zero_power = !(best.1.power > 0.0) || params.optical_total() == 0.0;
    Ok(OptimizationResult {
        best_gamma_alphabeta: best.0,
        best_point: best.1,
        evaluations,
        zero_power,
    })
}

/// Ratio of maximised powers, model over benchmark.
pub fn enhancement_ratio(model: &PhotocellParams, benchmark: &PhotocellParams) -> Result<f64> {
    enhancement_ratio_with(&RateEquations, model, benchmark, &PowerSearch::default())
}

pub fn enhancement_ratio_with<S: SteadyStateSolver + ?Sized>(
    solver: &S,
    model: &PhotocellParams,
    benchmark: &PhotocellParams,
    search: &PowerSearch,
) -> Result<f64> {
    let m = maximize_power_with(solver, model, search)?;
    let b = maximize_power_with(solver, benchmark, search)?;
    ratio(&m, &b)
}

pub(crate) fn ratio(model: &OptimizationResult, benchmark: &OptimizationResult) -> Result<f64> {
    if benchmark.zero_power {
        return Err(Error::ZeroBenchmark);
    }
    let m = if model.zero_power {
        0.0
    } else {
        model.best_point.power
    };
    Ok(m / benchmark.best_point.power)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::Vector5;

    fn state(p_alpha: f64, p_beta: f64) -> SteadyState {
        let rest = 1.0 - p_alpha - p_beta;
        SteadyState {
            populations: Vector5::new(0.0, 0.0, p_alpha, p_beta, rest),
        }
    }

    #[test]
    fn voltage_is_the_gap_for_equal_trap_populations() {
        let p = PhotocellParams::default();
        let op = operating_point(&state(0.1, 0.1), &p).unwrap();
        assert!((op.voltage - 1.6).abs() < 1e-15);
    }

    #[test]
    fn current_is_rate_times_population() {
        let p = PhotocellParams::default().with_gamma_alphabeta(1e-3);
        let op = operating_point(&state(0.1, 0.2), &p).unwrap();
        assert!((op.current - 1e-4).abs() < 1e-18);
        assert_eq!(op.power, op.current * op.voltage);
    }

    #[test]
    fn empty_trap_has_no_voltage() {
        let p = PhotocellParams::default();
        assert!(matches!(
            operating_point(&state(0.0, 0.1), &p),
            Err(Error::UndefinedVoltage { .. })
        ));
    }

    #[test]
    fn dark_cell_has_zero_voltage() {
        let mut p = PhotocellParams::default();
        p.set_optical_total(0.0);
        for g in [1e-9, 1e-5, 1e-2] {
            let op = evaluate_with(&RateEquations, &p.with_gamma_alphabeta(g)).unwrap();
            assert!(op.voltage.abs() < 1e-9, "{}", op.voltage);
        }
    }

    #[test]
    fn grids() {
        let g = log_grid(1e-12, 1.0, 200);
        assert_eq!(g.len(), 200);
        assert!((g[0] - 1e-12).abs() < 1e-24 && (g[199] - 1.0).abs() < 1e-14);
        assert!(check_grid(&g, true).is_ok());
        assert!(check_grid(&[1.0, 1.0], true).is_err());
        assert!(check_grid(&[-1.0, 1.0], true).is_err());
        assert!(check_grid(&[], true).is_err());
        assert_eq!(lin_grid(0.0, 1.0, 3), vec![0.0, 0.5, 1.0]);
    }

    #[test]
    fn single_point_iv_curve_is_the_composition() {
        let p = PhotocellParams::default();
        let curve = iv_curve(&p, &[2e-6]).unwrap();
        let q = build_rate_matrix(&p.with_gamma_alphabeta(2e-6)).unwrap();
        let s = solve_steady_state(&q).unwrap();
        let op = operating_point(&s, &p.with_gamma_alphabeta(2e-6)).unwrap();
        assert_eq!(curve, vec![(2e-6, op)]);
    }

    #[test]
    fn no_light_no_power() {
        let mut p = PhotocellParams::default();
        p.set_optical_total(0.0);
        let r = maximize_power(&p).unwrap();
        assert!(r.zero_power);
    }

    #[test]
    fn optimum_dominates_the_grid_and_is_deterministic() {
        let p = PhotocellParams::default();
        let r = maximize_power(&p).unwrap();
        assert!(!r.zero_power);
        let curve = iv_curve(&p, &log_grid(1e-12, 1.0, 200)).unwrap();
        assert!(curve.iter().all(|(_, op)| op.power <= r.best_point.power));
        assert_eq!(r, maximize_power(&p).unwrap());
    }

    #[test]
    fn self_enhancement_is_one() {
        let p = PhotocellParams::default();
        assert_eq!(enhancement_ratio(&p, &p).unwrap(), 1.0);
    }

    #[test]
    fn zero_benchmark_is_an_error() {
        let p = PhotocellParams::default();
        let mut dark = p.benchmark();
        dark.set_optical_total(0.0);
        assert!(matches!(
            enhancement_ratio(&p, &dark),
            Err(Error::ZeroBenchmark)
        ));
    }
}
