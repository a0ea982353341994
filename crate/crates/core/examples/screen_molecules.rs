//! Donor/acceptor screening of a small molecule table, with the photocell
//! enhancement of every surviving pair.
//!
//! `cargo run --example screen_molecules [molecules.csv]`

use std::path::PathBuf;

use photocell::presets;
use photocell::screening::{
    evaluate_candidates, read_molecule_db, screen, write_candidates, ScreeningCriteria,
};
use photocell::steady::{Execution, PowerSearch};

fn main() -> photocell::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| {
            PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data/molecules.csv")
        });
    let (records, report) = read_molecule_db(&path)?;
    println!(
        "{} molecules, {} rows skipped",
        records.len(),
        report.skipped.len()
    );

    let criteria = ScreeningCriteria {
        tan2_max: 0.075,
        ..ScreeningCriteria::default()
    };
    let mut found = screen(&records, &criteria, Execution::Parallel)?;
    found.truncate(10);
    let failed = evaluate_candidates(
        &mut found,
        &presets::screening_defaults(),
        &PowerSearch::default(),
        Execution::Parallel,
    );
    for (i, e) in &failed {
        eprintln!("no Q for pair {i}: {e}");
    }
    write_candidates(&found, std::io::stdout().lock())?;
    Ok(())
}
