//! Donor/acceptor screening over tabulated molecular transition energies
//! and dipoles: point-dipole Förster coupling, darkness at the ground and
//! relaxed excited geometries, ranking, partner histograms and photocell
//! enhancement for the surviving pairs.

mod db;
mod score;

pub use db::{
    load_molecule_db, read_molecule_db, write_molecule_db, MoleculeRecord, ParseReport, DB_COLUMNS,
};
pub use score::{
    candidate_order, candidate_params, evaluate_candidates, evaluate_enhancement, forster_coupling,
    partner_histogram, score_pair, screen, write_candidates, DimerCandidate, ExcitedCoupling,
    Geometry, Histogram, PartnerRole, Rejection, ScreeningCriteria, CANDIDATE_COLUMNS,
    FORSTER_CONSTANT,
};
