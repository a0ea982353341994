//! Cross-check of the rate equations against the full Bloch-Redfield
//! generator, and the cost of extra site dephasing.

use photocell::model::ModelKind;
use photocell::presets;
use photocell::redfield::{compare_solvers, compare_with_rates, RedfieldSolver};
use photocell::steady::{configure, PowerSearch};

fn main() -> photocell::Result<()> {
    let base = presets::fig3_params();
    let search = PowerSearch::default();
    let full = RedfieldSolver::default();
    let secular = RedfieldSolver {
        secular: true,
        ..full
    };

    let gen = full.generator(&base)?;
    println!("trace defect of the generator: {:.1e}", gen.trace_defect());
    let rho = full.density_matrix(&base)?;
    println!("steady state populations:");
    for i in 0..5 {
        println!("  {i}: {:.6e}", rho[(i, i)].re);
    }

    let sym = configure(&base, ModelKind::Symmetric, 0.0, 0.02, None);
    for (name, p) in [("asymmetric", &base), ("symmetric", &sym)] {
        let s = compare_with_rates(p, &secular, &search)?;
        let f = compare_with_rates(p, &full, &search)?;
        println!(
            "{name}: rates {:.8}, secular {:+.1e}, full {:+.1e}",
            s.reference_enhancement,
            s.difference(),
            f.difference()
        );
    }

    let dephased = RedfieldSolver {
        dephasing: Some(0.1 * base.gamma_11),
        ..full
    };
    for (name, p) in [("asymmetric", &base), ("symmetric", &sym)] {
        let c = compare_solvers(p, &full, &dephased, &search)?;
        println!(
            "{name}: dephasing 0.1 g11 lowers enhancement {:.4} -> {:.4} ({:.1}%)",
            c.reference_enhancement,
            c.candidate_enhancement,
            100.0 * c.relative_reduction()
        );
    }
    Ok(())
}
