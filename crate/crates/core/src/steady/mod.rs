//! Steady states, operating points, power maximisation and sweeps.

mod power;
mod solve;
mod sweep;

pub use power::{
    enhancement_ratio, enhancement_ratio_with, evaluate_with, iv_curve, iv_curve_with, lin_grid,
    log_grid, maximize_power, maximize_power_with, operating_point, OperatingPoint,
    OptimizationResult, PowerSearch, RateEquations, SteadyStateSolver,
};
pub use solve::{integrate_rate_ode, solve_steady_state, SteadyState};
pub use sweep::{
    co_optimize_coupling, configure, deviation_sweep, enhancement_surface, evaluate_point,
    evaluate_point_with, sweep_trapping, tan2_phi, theta_rc_sweep, Execution, SweepOptions,
    SweepPoint, SweepResult,
};

pub(crate) use power::{check_grid, ratio};
pub(crate) use solve::gth_stationary_signed;
pub(crate) use sweep::map_points;
