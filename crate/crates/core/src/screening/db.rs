use std::io::{Read, Write};
use std::path::Path;

use crate::{Error, Result};

/// One molecule: transition energies (eV) and transition dipoles (atomic
/// units) at the ground (`g`) and relaxed excited (`e`) geometries.
#[derive(Clone, Debug, PartialEq)]
pub struct MoleculeRecord {
    pub id: String,
    pub e_g: f64,
    pub mu_g: f64,
    pub e_e: f64,
    pub mu_e: f64,
}

impl MoleculeRecord {
    pub fn new(id: impl Into<String>, e_g: f64, mu_g: f64, e_e: f64, mu_e: f64) -> Self {
        MoleculeRecord {
            id: id.into(),
            e_g,
            mu_g,
            e_e,
            mu_e,
        }
    }

    /// Emission above absorption (negative Stokes shift).
    pub fn anti_stokes(&self) -> bool {
        self.e_e > self.e_g
    }

    fn check(&self) -> std::result::Result<(), String> {
        let all = [self.e_g, self.mu_g, self.e_e, self.mu_e];
        if all.iter().any(|v| !v.is_finite()) {
            return Err("non-finite value".into());
        }
        if !(self.e_g > 0.0 && self.e_e > 0.0) {
            return Err("energies must be positive".into());
        }
        if self.mu_g < 0.0 || self.mu_e < 0.0 {
            return Err("dipoles must be non-negative".into());
        }
        Ok(())
    }
}

/// What happened to each data row while loading.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ParseReport {
    pub rows: usize,
    pub accepted: usize,
    /// (1-based line number, reason) for every excluded row.
    pub skipped: Vec<(u64, String)>,
    /// Ids of accepted records with e_e > e_g.
    pub anti_stokes: Vec<String>,
}

pub const DB_COLUMNS: [&str; 5] = ["id", "e_g", "mu_g", "e_e", "mu_e"];

/// Reads `id,e_g,mu_g,e_e,mu_e` rows (header required, column order free,
/// extra columns ignored). Malformed rows are skipped and reported; a
/// header with no rows is an empty database.
pub fn load_molecule_db<R: Read>(source: R) -> Result<(Vec<MoleculeRecord>, ParseReport)> {
    let mut reader = csv::ReaderBuilder::new()
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(source);
    let headers = reader.headers()?.clone();
    if headers.is_empty() || (headers.len() == 1 && headers[0].is_empty()) {
        return Err(Error::Format("empty molecule database".into()));
    }
    let mut idx = [0usize; 5];
    for (slot, name) in idx.iter_mut().zip(DB_COLUMNS) {
        *slot = headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::Format(format!("missing column `{name}`")))?;
    }

    let mut records = Vec::new();
    let mut report = ParseReport::default();
    for row in reader.records() {
        report.rows += 1;
        let row = match row {
            Ok(r) => r,
            Err(e) => {
                let line = e.position().map_or(0, |p| p.line());
                report.skipped.push((line, e.to_string()));
                continue;
            }
        };
        let line = row.position().map_or(0, |p| p.line());
        let parsed = (|| -> std::result::Result<MoleculeRecord, String> {
            let field = |k: usize| {
                row.get(idx[k])
                    .ok_or(format!("missing `{}`", DB_COLUMNS[k]))
            };
            let num = |k: usize| -> std::result::Result<f64, String> {
                let s = field(k)?;
                s.parse::<f64>()
                    .map_err(|_| format!("`{}` is not a number: `{s}`", DB_COLUMNS[k]))
            };
            let id = field(0)?;
            if id.is_empty() {
                return Err("empty id".into());
            }
            let rec = MoleculeRecord::new(id, num(1)?, num(2)?, num(3)?, num(4)?);
            rec.check()?;
            Ok(rec)
        })();
        match parsed {
            Ok(rec) => {
                if rec.anti_stokes() {
                    report.anti_stokes.push(rec.id.clone());
                }
                records.push(rec);
            }
            Err(reason) => report.skipped.push((line, reason)),
        }
    }
    report.accepted = records.len();
    Ok((records, report))
}

pub fn read_molecule_db(path: &Path) -> Result<(Vec<MoleculeRecord>, ParseReport)> {
    load_molecule_db(std::fs::File::open(path)?)
}

/// Writes records with shortest round-trip float formatting, so reading
/// the output back reproduces every value bit for bit.
pub fn write_molecule_db<W: Write>(records: &[MoleculeRecord], sink: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(DB_COLUMNS)?;
    for r in records {
        w.write_record([
            r.id.clone(),
            r.e_g.to_string(),
            r.mu_g.to_string(),
            r.e_e.to_string(),
            r.mu_e.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
