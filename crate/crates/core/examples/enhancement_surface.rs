//! Asymmetric enhancement over detuning and coupling, the symmetric curve
//! for comparison, and where the two are equal.

use photocell::presets;
use photocell::steady::{enhancement_surface, lin_grid, Execution, SweepOptions};

fn main() -> photocell::Result<()> {
    let base = presets::fig4_params();
    let de = lin_grid(0.01, 0.2, 20);
    let js = lin_grid(0.005, 0.1, 20);
    let opts = SweepOptions {
        execution: Execution::Parallel,
        ..SweepOptions::default()
    };
    let r = enhancement_surface(&base, &de, &js, &opts)?;

    print!("{:>7}", "de\\J");
    for j in js.iter().step_by(3) {
        print!("{:>7.3}", j);
    }
    println!();
    for (i, d) in de.iter().enumerate().step_by(2) {
        print!("{d:7.3}");
        for k in (0..js.len()).step_by(3) {
            print!("{:7.3}", r.points[i * js.len() + k].enhancement);
        }
        println!();
    }
    print!("{:>7}", "sym");
    for k in (0..js.len()).step_by(3) {
        print!("{:7.3}", r.reference[k].enhancement);
    }
    println!();

    let best = r.best().expect("non-empty surface");
    println!(
        "\npeak {:.4} at de = {:.3} eV, J = {:.3} eV",
        best.enhancement, best.delta_eps, best.j12
    );
    println!("equal-enhancement contour: {} points", r.contour.len());
    for (x, y) in r.contour.iter().take(5) {
        println!("  de = {x:.4}, J = {y:.4}");
    }
    Ok(())
}
