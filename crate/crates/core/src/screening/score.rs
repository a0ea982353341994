use std::cmp::Ordering;
use std::io::Write;

use rayon::prelude::*;

use crate::model::{darkness_angle, fix_lower_exciton, ModelKind, PhotocellParams};
use crate::output::{fmt_opt, fmt_sig};
use crate::steady::{configure, enhancement_ratio_with, Execution, PowerSearch, RateEquations};
use crate::units::{BOHR_ANGSTROM, COULOMB_EV_ANGSTROM};
use crate::{Error, Result};

use super::MoleculeRecord;

/// Point-dipole prefactor for dipoles in atomic units (e·a₀) and distances
/// in nm: `(e²/4πε₀)·a₀² / (10 Å/nm)³` ≈ 4.0323×10⁻³ eV·nm³.
pub const FORSTER_CONSTANT: f64 = COULOMB_EV_ANGSTROM * BOHR_ANGSTROM * BOHR_ANGSTROM * 1e-3;

/// `J = κ C μ_d μ_a / r³` in eV.
pub fn forster_coupling(mu_donor: f64, mu_acceptor: f64, r_nm: f64, kappa: f64) -> Result<f64> {
    if !(r_nm > 0.0) || !r_nm.is_finite() {
        return Err(Error::InvalidParams(format!(
            "separation must be positive, got {r_nm} nm"
        )));
    }
    Ok(kappa * FORSTER_CONSTANT * mu_donor * mu_acceptor / r_nm.powi(3))
}

/// How the excited-geometry coupling is estimated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ExcitedCoupling {
    /// Donor excited dipole paired with an acceptor dipole of `z_g μ2e`,
    /// i.e. `J_e = κ C μ2e² z_g / r³`. Reproduces the reference table.
    #[default]
    GroundRatio,
    /// Both excited dipoles: `J_e = κ C μ2e μ1e / r³`.
    ExcitedDipoles,
}

impl ExcitedCoupling {
    pub fn as_str(self) -> &'static str {
        match self {
            ExcitedCoupling::GroundRatio => "ground_ratio",
            ExcitedCoupling::ExcitedDipoles => "excited_dipoles",
        }
    }
}

impl std::str::FromStr for ExcitedCoupling {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "ground_ratio" => Ok(ExcitedCoupling::GroundRatio),
            "excited_dipoles" => Ok(ExcitedCoupling::ExcitedDipoles),
            other => Err(Error::InvalidParams(format!(
                "unknown excited coupling `{other}`"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScreeningCriteria {
    /// Minimum donor ground-geometry dipole (a.u.).
    pub donor_mu_min: f64,
    /// Donor ground-geometry energy window (eV), inclusive.
    pub donor_energy: (f64, f64),
    /// Largest accepted ground-geometry dipole ratio.
    pub z_max: f64,
    /// Largest accepted tan²Φ, applied to both geometries.
    pub tan2_max: f64,
    pub separation_nm: f64,
    pub kappa: f64,
    pub excited_coupling: ExcitedCoupling,
}

impl Default for ScreeningCriteria {
    fn default() -> Self {
        ScreeningCriteria {
            donor_mu_min: 3.0,
            donor_energy: (2.5, 3.5),
            z_max: 0.4,
            tan2_max: 0.05,
            separation_nm: 1.0,
            kappa: 1.0,
            excited_coupling: ExcitedCoupling::GroundRatio,
        }
    }
}

impl ScreeningCriteria {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("donor_mu_min", self.donor_mu_min),
            ("donor_e_min", self.donor_energy.0),
            ("donor_e_max", self.donor_energy.1),
            ("z_max", self.z_max),
            ("tan2_max", self.tan2_max),
            ("separation_nm", self.separation_nm),
            ("kappa", self.kappa),
        ];
        for (name, v) in fields {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidParams(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        if self.donor_energy.0 > self.donor_energy.1 {
            return Err(Error::InvalidParams(format!(
                "empty donor energy window [{}, {}]",
                self.donor_energy.0, self.donor_energy.1
            )));
        }
        Ok(())
    }

    fn is_donor(&self, m: &MoleculeRecord) -> bool {
        m.mu_g >= self.donor_mu_min && m.e_g >= self.donor_energy.0 && m.e_g <= self.donor_energy.1
    }
}

/// A scored donor (site 2) / acceptor (site 1) pair.
#[derive(Clone, Debug, PartialEq)]
pub struct DimerCandidate {
    pub donor: MoleculeRecord,
    pub acceptor: MoleculeRecord,
    pub z_g: f64,
    pub z_e: f64,
    pub j_g: f64,
    pub j_e: f64,
    pub tan2_g: f64,
    pub tan2_e: f64,
    /// The acceptor emits above the donor at the excited geometry.
    pub excited_order_flipped: bool,
    pub q: Option<f64>,
}

impl DimerCandidate {
    pub fn delta_eps_g(&self) -> f64 {
        self.donor.e_g - self.acceptor.e_g
    }

    pub fn delta_eps_e(&self) -> f64 {
        self.donor.e_e - self.acceptor.e_e
    }

    pub fn worst_tan2(&self) -> f64 {
        self.tan2_g.max(self.tan2_e)
    }
}

/// Why a pair cannot form an asymmetric dimer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rejection {
    /// The acceptor does not sit below the donor at the ground geometry.
    Ordering,
    /// The acceptor dipole exceeds the donor dipole, or the donor is dark.
    DipoleRatio,
    /// tan²Φ is undefined (no splitting).
    Undefined,
}

/// Dipole ratio, Förster coupling and darkness at both geometries, with
/// parallel dipoles. The excited-geometry coupling follows
/// `criteria.excited_coupling`.
pub fn score_pair(
    donor: &MoleculeRecord,
    acceptor: &MoleculeRecord,
    criteria: &ScreeningCriteria,
) -> std::result::Result<DimerCandidate, Rejection> {
    if !(acceptor.e_g < donor.e_g) {
        return Err(Rejection::Ordering);
    }
    if !(donor.mu_g > 0.0) || acceptor.mu_g > donor.mu_g {
        return Err(Rejection::DipoleRatio);
    }
    let coupling = |a: f64, b: f64| {
        forster_coupling(a, b, criteria.separation_nm, criteria.kappa)
            .map_err(|_| Rejection::Undefined)
    };
    let z_g = acceptor.mu_g / donor.mu_g;
    let j_g = coupling(donor.mu_g, acceptor.mu_g)?;
    let tan2_g = darkness_angle(donor.e_g - acceptor.e_g, z_g, j_g, 0.0)
        .map_err(|_| Rejection::Undefined)?;

    let z_e = if donor.mu_e > 0.0 {
        acceptor.mu_e / donor.mu_e
    } else {
        return Err(Rejection::DipoleRatio);
    };
    let j_e = match criteria.excited_coupling {
        ExcitedCoupling::GroundRatio => coupling(donor.mu_e, z_g * donor.mu_e)?,
        ExcitedCoupling::ExcitedDipoles => coupling(donor.mu_e, acceptor.mu_e)?,
    };
    let de_e = donor.e_e - acceptor.e_e;
    let tan2_e = darkness_angle(de_e, z_e, j_e, 0.0).map_err(|_| Rejection::Undefined)?;

    Ok(DimerCandidate {
        donor: donor.clone(),
        acceptor: acceptor.clone(),
        z_g,
        z_e,
        j_g,
        j_e,
        tan2_g,
        tan2_e,
        excited_order_flipped: !(de_e > 0.0),
        q: None,
    })
}

/// Ranking order: darkest worst-geometry first, then stronger coupling,
/// then donor and acceptor ids.
pub fn candidate_order(a: &DimerCandidate, b: &DimerCandidate) -> Ordering {
    a.worst_tan2()
        .total_cmp(&b.worst_tan2())
        .then(b.j_g.total_cmp(&a.j_g))
        .then_with(|| a.donor.id.cmp(&b.donor.id))
        .then_with(|| a.acceptor.id.cmp(&b.acceptor.id))
}

fn passes(c: &DimerCandidate, criteria: &ScreeningCriteria) -> bool {
    c.z_g <= criteria.z_max && c.tan2_g <= criteria.tan2_max && c.tan2_e <= criteria.tan2_max
}

/// All donor/acceptor pairs passing the criteria, ranked by
/// [`candidate_order`].
pub fn screen(
    records: &[MoleculeRecord],
    criteria: &ScreeningCriteria,
    execution: Execution,
) -> Result<Vec<DimerCandidate>> {
    criteria.validate()?;
    let donors: Vec<usize> = (0..records.len())
        .filter(|&i| criteria.is_donor(&records[i]))
        .collect();
    let pairs_for = |d: usize| -> Vec<DimerCandidate> {
        records
            .iter()
            .enumerate()
            .filter(|&(a, _)| a != d)
            .filter_map(|(_, acc)| score_pair(&records[d], acc, criteria).ok())
            .filter(|c| passes(c, criteria))
            .collect()
    };
    let mut out: Vec<DimerCandidate> = match execution {
        Execution::Serial => donors.into_iter().flat_map(pairs_for).collect(),
        Execution::Parallel => donors.into_par_iter().flat_map_iter(pairs_for).collect(),
    };
    out.sort_by(candidate_order);
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartnerRole {
    /// The anchor is the donor; partners are acceptors.
    Donor,
    /// The anchor is the acceptor; partners are donors.
    Acceptor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Geometry {
    Ground,
    Excited,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Histogram {
    pub edges: Vec<f64>,
    /// `counts[i]` covers `[edges[i], edges[i+1])`; the last bin is closed.
    pub counts: Vec<usize>,
    /// Valid partners whose tan²Φ falls outside the edges.
    pub outside: usize,
}

impl Histogram {
    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }
}

/// Bin index of `x` for ascending `edges`, last bin closed.
pub(crate) fn bin_of(edges: &[f64], x: f64) -> Option<usize> {
    let n = edges.len();
    if n < 2 || !(x >= edges[0] && x <= edges[n - 1]) {
        return None;
    }
    let k = edges.partition_point(|&e| e <= x);
    Some((k - 1).min(n - 2))
}

/// tan²Φ abundance of valid partners of `anchor`. A partner is valid when
/// the pair passes the ordering and dipole-ratio checks with the anchor in
/// the given role.
pub fn partner_histogram(
    records: &[MoleculeRecord],
    anchor: &MoleculeRecord,
    role: PartnerRole,
    geometry: Geometry,
    edges: &[f64],
    criteria: &ScreeningCriteria,
) -> Result<Histogram> {
    if edges.len() < 2 || edges.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidGrid(
            "histogram edges must be strictly ascending with at least two entries".into(),
        ));
    }
    let mut counts = vec![0; edges.len() - 1];
    let mut outside = 0;
    for other in records {
        if other.id == anchor.id && other == anchor {
            continue;
        }
        let scored = match role {
            PartnerRole::Donor => score_pair(anchor, other, criteria),
            PartnerRole::Acceptor => score_pair(other, anchor, criteria),
        };
        let Ok(c) = scored else { continue };
        let t = match geometry {
            Geometry::Ground => c.tan2_g,
            Geometry::Excited => c.tan2_e,
        };
        match bin_of(edges, t) {
            Some(k) => counts[k] += 1,
            None => outside += 1,
        }
    }
    Ok(Histogram {
        edges: edges.to_vec(),
        counts,
        outside,
    })
}

/// The photocell for a candidate's ground-geometry columns: asymmetric
/// (symmetric if z = 1 and Δε = 0), with trap and bath settings from
/// `defaults` and the lower exciton placed at the acceptor's ground-state
/// transition energy.
pub fn candidate_params(candidate: &DimerCandidate, defaults: &PhotocellParams) -> PhotocellParams {
    let de = candidate.delta_eps_g();
    let model = if candidate.z_g == 1.0 && de == 0.0 {
        ModelKind::Symmetric
    } else {
        ModelKind::Asymmetric
    };
    let p = configure(defaults, model, de, candidate.j_g, Some(candidate.z_g));
    fix_lower_exciton(&p, candidate.acceptor.e_g)
}

/// Q: maximised power over the matched independent benchmark.
pub fn evaluate_enhancement(
    candidate: &DimerCandidate,
    defaults: &PhotocellParams,
    search: &PowerSearch,
) -> Result<f64> {
    let p = candidate_params(candidate, defaults);
    enhancement_ratio_with(&RateEquations, &p, &p.benchmark(), search)
}

/// Fills `q` on every candidate. Candidates whose photocell cannot be
/// evaluated (e.g. the lower exciton falls below the trap) keep `q = None`
/// and are returned with the error, by index.
pub fn evaluate_candidates(
    candidates: &mut [DimerCandidate],
    defaults: &PhotocellParams,
    search: &PowerSearch,
    execution: Execution,
) -> Vec<(usize, Error)> {
    let eval = |c: &DimerCandidate| evaluate_enhancement(c, defaults, search);
    let qs: Vec<Result<f64>> = match execution {
        Execution::Serial => candidates.iter().map(eval).collect(),
        Execution::Parallel => candidates.par_iter().map(eval).collect(),
    };
    let mut failures = Vec::new();
    for (i, (c, q)) in candidates.iter_mut().zip(qs).enumerate() {
        match q {
            Ok(q) => c.q = Some(q),
            Err(e) => {
                c.q = None;
                failures.push((i, e));
            }
        }
    }
    failures
}

pub const CANDIDATE_COLUMNS: [&str; 17] = [
    "donor_id",
    "acceptor_id",
    "E2g",
    "mu2g",
    "E2e",
    "mu2e",
    "E1g",
    "mu1g",
    "E1e",
    "mu1e",
    "z_g",
    "z_e",
    "J_g",
    "J_e",
    "tan2_g",
    "tan2_e",
    "Q",
];

/// Table-shaped candidate output, 12 significant digits.
pub fn write_candidates<W: Write>(candidates: &[DimerCandidate], sink: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(CANDIDATE_COLUMNS)?;
    for c in candidates {
        let (d, a) = (&c.donor, &c.acceptor);
        let mut row = vec![d.id.clone(), a.id.clone()];
        row.extend(
            [
                d.e_g, d.mu_g, d.e_e, d.mu_e, a.e_g, a.mu_g, a.e_e, a.mu_e, c.z_g, c.z_e, c.j_g,
                c.j_e, c.tan2_g, c.tan2_e,
            ]
            .map(fmt_sig),
        );
        row.push(fmt_opt(c.q));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}
