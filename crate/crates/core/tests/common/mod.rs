#![allow(dead_code)]

use std::f64::consts::PI;

use photocell::model::{fix_lower_exciton, ModelKind, PhotocellParams};
use photocell::screening::MoleculeRecord;
use rand::Rng;

/// Maps 16 numbers in [0, 1) onto a valid photocell of the given model.
/// Rates span several decades unless `narrow`, which keeps every base rate
/// within a factor of ten (for explicit time integration).
pub fn params_from_unit(model: ModelKind, u: &[f64; 16], narrow: bool) -> PhotocellParams {
    let lerp = |t: f64, a: f64, b: f64| a + t * (b - a);
    let logr = |t: f64, a: f64, b: f64| 10f64.powf(lerp(t, a.log10(), b.log10()));
    let rate = |t: f64, a: f64, b: f64| {
        if narrow {
            logr(t, 1e-3, 1e-2)
        } else {
            logr(t, a, b)
        }
    };

    let eps_minus = lerp(u[0], 1.5, 2.5);
    let eps_alpha = eps_minus - lerp(u[1], 0.05, 0.4);
    let eps_beta = eps_alpha * lerp(u[2], 0.05, 0.8);
    let (delta_eps, j12, z) = match model {
        ModelKind::Independent => (0.0, 0.0, 1.0),
        ModelKind::Symmetric => (0.0, lerp(u[3], 0.001, 0.05), 1.0),
        ModelKind::Asymmetric => (
            lerp(u[4], 0.005, 0.3),
            lerp(u[3], 0.001, 0.05),
            lerp(u[5], 0.02, 1.0),
        ),
    };
    let mut p = PhotocellParams {
        model,
        eps1: 0.0,
        eps2: delta_eps,
        eps_alpha,
        eps_beta,
        j12,
        phi: lerp(u[6], -1.0, 1.0),
        z,
        gamma_1g: 0.0,
        gamma_2g: 0.0,
        gamma_11: rate(u[7], 1e-4, 1e-2),
        gamma_22: rate(u[8], 1e-4, 1e-2),
        gamma_1alpha: rate(u[9], 1e-8, 1e-3),
        gamma_alphabeta: rate(u[10], 1e-8, 1e-3),
        gamma_betag: rate(u[11], 1e-3, 1e-1),
        chi: lerp(u[12], 0.0, 0.5),
        theta_rc: lerp(u[13], 0.5 * PI, 1.5 * PI),
        t_hot: lerp(u[14], 3000.0, 8000.0),
        t_cold: lerp(u[15], 250.0, 350.0),
    };
    p.set_optical_total(rate(u[14].mul_add(0.5, 0.5 * u[15]), 1e-7, 1e-5));
    let p = fix_lower_exciton(&p, eps_minus);
    p.validate().expect("generated parameters are valid");
    p
}

pub fn random_params<R: Rng>(rng: &mut R, model: ModelKind, narrow: bool) -> PhotocellParams {
    let u: [f64; 16] = std::array::from_fn(|_| rng.random::<f64>());
    params_from_unit(model, &u, narrow)
}

pub fn unit_array() -> impl proptest::strategy::Strategy<Value = [f64; 16]> {
    proptest::array::uniform16(0.0..1.0f64)
}

pub fn any_model() -> impl proptest::strategy::Strategy<Value = ModelKind> {
    proptest::sample::select(ModelKind::ALL.to_vec())
}

pub fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

/// One row of the reference donor/acceptor table: molecule 2 is the donor,
/// molecule 1 the acceptor, both geometries.
#[derive(Clone, Debug)]
pub struct TableRow {
    pub row: String,
    pub donor: MoleculeRecord,
    pub acceptor: MoleculeRecord,
    pub z_g: f64,
    pub z_e: f64,
    pub j_g: f64,
    pub j_e: f64,
    pub tan2_g: f64,
    pub tan2_e: f64,
    pub q: f64,
}

pub fn table_rows() -> Vec<TableRow> {
    let path = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/tests/fixtures/reference_dimers.csv"
    );
    let mut reader = csv::Reader::from_path(path).expect("table fixture");
    let headers = reader.headers().unwrap().clone();
    reader
        .records()
        .map(|r| {
            let r = r.unwrap();
            let get = |name: &str| -> f64 {
                let k = headers.iter().position(|h| h == name).unwrap();
                r[k].parse().unwrap()
            };
            let row = r[0].to_string();
            TableRow {
                donor: MoleculeRecord::new(
                    format!("d{row}"),
                    get("E2g"),
                    get("mu2g"),
                    get("E2e"),
                    get("mu2e"),
                ),
                acceptor: MoleculeRecord::new(
                    format!("a{row}"),
                    get("E1g"),
                    get("mu1g"),
                    get("E1e"),
                    get("mu1e"),
                ),
                z_g: get("z_g"),
                z_e: get("z_e"),
                j_g: get("J_g"),
                j_e: get("J_e"),
                tan2_g: get("tan2_g"),
                tan2_e: get("tan2_e"),
                q: get("Q"),
                row,
            }
        })
        .collect()
}

/// Exit status, CSV bytes and summary text of one binary run writing to
/// `dir/<tag>.csv`.
pub fn run_cli(args: &[&str], dir: &std::path::Path, tag: &str) -> (i32, Vec<u8>, String) {
    let out = dir.join(format!("{tag}.csv"));
    let status = std::process::Command::new(env!("CARGO_BIN_EXE_photocell"))
        .args(args)
        .arg("--out")
        .arg(&out)
        .output()
        .expect("binary runs");
    let code = status.status.code().unwrap_or(-1);
    let csv = std::fs::read(&out).unwrap_or_default();
    let summary = std::fs::read_to_string(out.with_extension("summary.txt")).unwrap_or_default();
    (code, csv, summary)
}

pub fn example_db() -> String {
    concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/molecules.csv").to_string()
}

/// Every subcommand on small grids.
pub fn command_matrix() -> Vec<(&'static str, Vec<String>)> {
    let db = example_db();
    let v = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    vec![
        ("iv", v(&["iv", "--preset", "ivpv"])),
        ("optimize", v(&["optimize", "--preset", "fig4"])),
        (
            "sweep-trapping",
            v(&[
                "sweep-trapping",
                "--preset",
                "fig3",
                "--set",
                "gamma_1alpha_grid=log(1e-10, 1e-2, 5)",
            ]),
        ),
        (
            "surface",
            v(&[
                "surface",
                "--preset",
                "fig4",
                "--set",
                "delta_eps_grid=lin(0.01, 0.2, 4)",
                "--set",
                "j12_grid=lin(0.005, 0.1, 4)",
            ]),
        ),
        (
            "deviation",
            v(&[
                "deviation",
                "--preset",
                "fig5",
                "--set",
                "deviation_grid=lin(-0.03, 0.03, 5)",
            ]),
        ),
        (
            "theta-rc",
            v(&[
                "theta-rc",
                "--preset",
                "fig8",
                "--set",
                "theta_rc_grid=lin(2.4, 3.9, 5)",
            ]),
        ),
        (
            "redfield-compare",
            v(&[
                "redfield-compare",
                "--preset",
                "fig3",
                "--set",
                "gamma_1alpha_grid=1e-9, 1e-4",
            ]),
        ),
        (
            "dephasing",
            v(&[
                "dephasing",
                "--preset",
                "fig4",
                "--set",
                "dephasing_delta_eps_grid=0.05, 0.1",
                "--set",
                "dephasing_j12_grid=0.01, 0.03",
            ]),
        ),
        (
            "screen",
            v(&["screen", "--db", &db, "--set", "tan2_max=0.075"]),
        ),
        (
            "histogram",
            v(&["histogram", "--db", &db, "--set", "anchor=d10"]),
        ),
        ("show-config", v(&["show-config", "--preset", "fig5"])),
    ]
}
