//! How many acceptors in a synthetic molecule library would make a dark
//! dimer with a fixed donor.

use photocell::screening::{
    partner_histogram, Geometry, MoleculeRecord, PartnerRole, ScreeningCriteria,
};
use photocell::steady::lin_grid;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> photocell::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let library: Vec<MoleculeRecord> = (0..20_000)
        .map(|i| {
            let e_g = rng.random_range(1.8..3.6);
            let mu_g: f64 = rng.random_range(0.0..4.0);
            let stokes = rng.random_range(0.0..0.5);
            MoleculeRecord::new(
                format!("m{i}"),
                e_g,
                mu_g,
                e_g - stokes,
                mu_g * rng.random_range(0.5..1.1),
            )
        })
        .collect();
    let donor = MoleculeRecord::new("donor", 2.9, 3.5, 2.6, 3.4);
    let edges = lin_grid(0.0, 0.2, 11);
    let h = partner_histogram(
        &library,
        &donor,
        PartnerRole::Donor,
        Geometry::Ground,
        &edges,
        &ScreeningCriteria::default(),
    )?;
    for (k, n) in h.counts.iter().enumerate() {
        println!(
            "{:.2}-{:.2} {:6} {}",
            edges[k],
            edges[k + 1],
            n,
            "#".repeat(n / 20)
        );
    }
    println!(
        "{} more partners above {:.2}",
        h.outside,
        edges[edges.len() - 1]
    );
    Ok(())
}
