//! Current-voltage and power-voltage trace of the asymmetric photocell as
//! the trapping rate sweeps from open circuit to short circuit.

use photocell::presets;
use photocell::steady::{iv_curve, log_grid, maximize_power};

fn main() -> photocell::Result<()> {
    let p = presets::ivpv_params();
    let curve = iv_curve(&p, &log_grid(1e-10, 1e-2, 25))?;
    println!(
        "{:>12} {:>12} {:>9} {:>12}",
        "g_ab (eV)", "I (eV)", "V (eV)", "P (eV^2)"
    );
    for (g, op) in &curve {
        println!(
            "{g:12.3e} {:12.4e} {:9.5} {:12.4e}",
            op.current, op.voltage, op.power
        );
    }
    let best = maximize_power(&p)?;
    let bench = maximize_power(&p.benchmark())?;
    println!(
        "\nmax power {:.5e} at g_ab = {:.4e} (V = {:.4} eV)",
        best.best_point.power, best.best_gamma_alphabeta, best.best_point.voltage
    );
    println!("independent benchmark {:.5e}", bench.best_point.power);
    println!(
        "enhancement {:.4}",
        best.best_point.power / bench.best_point.power
    );
    Ok(())
}
