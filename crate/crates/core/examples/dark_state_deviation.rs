//! How much detuning away from the dark-state condition costs, for the
//! asymmetric dimer at three nominal detunings and the symmetric dimer.

use photocell::model::ModelKind;
use photocell::presets;
use photocell::steady::{deviation_sweep, lin_grid, SweepOptions, SweepPoint};

fn main() -> photocell::Result<()> {
    let grid = lin_grid(-0.03, 0.03, 7);
    let opts = SweepOptions::default();
    for de in presets::FIG5_DELTA_EPS {
        let r = deviation_sweep(&presets::fig5_params(de), &grid, &opts)?;
        println!("nominal detuning {de} eV");
        println!(
            "{:>8} {:>10} {:>10} {:>10}",
            "shift", "asym Q", "tan2", "sym Q"
        );
        let (asym, sym): (Vec<&SweepPoint>, Vec<&SweepPoint>) = r
            .points
            .iter()
            .partition(|p| p.model == ModelKind::Asymmetric);
        for (a, s) in asym.iter().zip(&sym) {
            println!(
                "{:8.3} {:10.4} {:10.2e} {:10.4}",
                a.x, a.enhancement, a.tan2_phi, s.enhancement
            );
        }
    }
    Ok(())
}
