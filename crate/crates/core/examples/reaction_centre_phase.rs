//! Symmetric dimer: sensitivity to the phase of the reaction-centre
//! coupling around the fully antisymmetric arrangement.

use std::f64::consts::PI;

use photocell::presets;
use photocell::steady::{lin_grid, theta_rc_sweep, SweepOptions};

fn main() -> photocell::Result<()> {
    let grid = lin_grid(0.5 * PI, 1.5 * PI, 9);
    let r = theta_rc_sweep(&presets::fig8_params(), &grid, &SweepOptions::default())?;
    let peak = r.best().map(|p| p.enhancement).unwrap_or(f64::NAN);
    for p in &r.points {
        println!(
            "theta = {:5.3} pi  enhancement {:.4}  ({:+.2}% of peak)",
            p.x / PI,
            p.enhancement,
            100.0 * (p.enhancement / peak - 1.0)
        );
    }
    Ok(())
}
