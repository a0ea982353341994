//! Command dispatcher behind the `photocell` binary.
//!
//! Each command writes one CSV table (header row, fixed row order, numbers
//! at 12 significant digits) and a plain-text summary. With `--out FILE`
//! the table goes to `FILE` and the summary to `FILE` with its extension
//! replaced by `summary.txt`; otherwise the table goes to stdout and the
//! summary to stderr.
//!
//! Exit status: 0 on success, 2 for configuration errors, 3 for numerical
//! or data failures.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::config::{parse_config_over, RunConfig};
use crate::model::ModelKind;
use crate::output::{fmt_opt, fmt_sig};
use crate::presets::Preset;
use crate::redfield::{compare_surface, compare_trapping, RedfieldSolver, SolverComparison};
use crate::screening::{
    evaluate_candidates, partner_histogram, read_molecule_db, screen, write_candidates,
    MoleculeRecord, ParseReport,
};
use crate::steady::{
    deviation_sweep, enhancement_surface, iv_curve, maximize_power, sweep_trapping, tan2_phi,
    theta_rc_sweep, Execution, RateEquations, SweepOptions, SweepPoint,
};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "photocell",
    version,
    about = "Dark-state photocell simulations and dimer screening"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Config file of `key = value` lines.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Start from a named parameter set (fig3, fig4, fig5, fig8, ivpv).
    #[arg(long, global = true)]
    pub preset: Option<String>,

    /// Output CSV path; the summary goes next to it.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Molecule database (screen, histogram).
    #[arg(long, global = true)]
    pub db: Option<PathBuf>,

    /// Secular Redfield generator.
    #[arg(long, global = true, conflicts_with = "nonsecular")]
    pub secular: bool,

    /// Full (non-secular) Redfield generator [default].
    #[arg(long, global = true)]
    pub nonsecular: bool,

    /// Site-basis pure dephasing rate in eV.
    #[arg(long, global = true)]
    pub dephase: Option<f64>,

    /// Evaluate sweep points on all cores.
    #[arg(long, global = true)]
    pub parallel: bool,

    /// Extra `key=value` overrides, applied after the config file.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    pub set: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Current, voltage and power along the trapping-rate grid.
    Iv,
    /// Maximum power of the configured model and its benchmark.
    Optimize,
    /// Enhancement against γ₁α with co-optimised coupling.
    SweepTrapping,
    /// Asymmetric (Δε, J) enhancement map plus the symmetric curve.
    Surface,
    /// Enhancement and darkness under detuning from the dark-state point.
    Deviation,
    /// Symmetric enhancement against the reaction-centre phase.
    ThetaRc,
    /// Rate equations against the Redfield generator over γ₁α.
    RedfieldCompare,
    /// Redfield enhancement map with and without pure dephasing.
    Dephasing,
    /// Rank donor/acceptor pairs from a molecule database.
    Screen,
    /// tan²Φ abundance of partners for one anchor molecule.
    Histogram,
    /// Print the resolved configuration.
    ShowConfig,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Iv => "iv",
            Command::Optimize => "optimize",
            Command::SweepTrapping => "sweep-trapping",
            Command::Surface => "surface",
            Command::Deviation => "deviation",
            Command::ThetaRc => "theta-rc",
            Command::RedfieldCompare => "redfield-compare",
            Command::Dephasing => "dephasing",
            Command::Screen => "screen",
            Command::Histogram => "histogram",
            Command::ShowConfig => "show-config",
        }
    }
}

/// A command's table and summary.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Artifacts {
    pub csv: Vec<u8>,
    pub summary: String,
}

/// Entry point for the binary: parses `args` and runs, returning the exit
/// status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    let outcome = std::panic::catch_unwind(|| run_cli(&cli));
    match outcome {
        Ok(Ok(())) => EXIT_OK,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
        Err(_) => {
            eprintln!("error: internal failure");
            EXIT_NUMERIC
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_config() {
        EXIT_CONFIG
    } else {
        EXIT_NUMERIC
    }
}

fn config_error(key: &str, message: impl Into<String>) -> Error {
    Error::Config {
        line: 0,
        key: key.into(),
        message: message.into(),
    }
}

/// Resolves the configuration from preset, config file, `--set` and flags.
pub fn resolve_config(cli: &Cli) -> Result<RunConfig> {
    let base = match &cli.preset {
        Some(name) => RunConfig::from_preset(
            name.parse::<Preset>()
                .map_err(|e| config_error("--preset", e.to_string()))?,
        ),
        None => RunConfig::default(),
    };
    let mut text = match &cli.config {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| config_error("--config", format!("{}: {e}", path.display())))?,
        None => String::new(),
    };
    if !text.is_empty() && !text.ends_with('\n') {
        text.push('\n');
    }
    for kv in &cli.set {
        if !kv.contains('=') {
            return Err(config_error(
                "--set",
                format!("expected KEY=VALUE, got `{kv}`"),
            ));
        }
        text.push_str(kv);
        text.push('\n');
    }
    let mut flags: Vec<(&str, String)> = Vec::new();
    if let Some(p) = &cli.out {
        flags.push(("out", p.display().to_string()));
    }
    if let Some(p) = &cli.db {
        flags.push(("db", p.display().to_string()));
    }
    if cli.secular {
        flags.push(("secular", "true".into()));
    }
    if cli.nonsecular {
        flags.push(("secular", "false".into()));
    }
    if let Some(d) = cli.dephase {
        flags.push(("dephase", d.to_string()));
    }
    if cli.parallel {
        flags.push(("parallel", "true".into()));
    }
    for (k, v) in flags {
        let _ = writeln!(text, "{k} = {v}");
    }
    parse_config_over(base, &text)
}

fn run_cli(cli: &Cli) -> Result<()> {
    let cfg = resolve_config(cli)?;
    let art = run_command(cli.command, &cfg)?;
    emit(&art, cfg.out.as_deref())
}

/// Sidecar path for a summary: `out.csv` → `out.summary.txt`.
pub fn summary_path(out: &Path) -> PathBuf {
    out.with_extension("summary.txt")
}

fn emit(art: &Artifacts, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, &art.csv)?;
            std::fs::write(summary_path(path), &art.summary)?;
        }
        None => {
            std::io::stdout().write_all(&art.csv)?;
            eprint!("{}", art.summary);
        }
    }
    Ok(())
}

fn options(cfg: &RunConfig) -> SweepOptions {
    SweepOptions {
        execution: if cfg.parallel {
            Execution::Parallel
        } else {
            Execution::Serial
        },
        ..SweepOptions::default()
    }
}

/// Runs one command on a resolved configuration.
pub fn run_command(command: Command, cfg: &RunConfig) -> Result<Artifacts> {
    match command {
        Command::Iv => cmd_iv(cfg),
        Command::Optimize => cmd_optimize(cfg),
        Command::SweepTrapping => cmd_sweep_trapping(cfg),
        Command::Surface => cmd_surface(cfg),
        Command::Deviation => cmd_deviation(cfg),
        Command::ThetaRc => cmd_theta_rc(cfg),
        Command::RedfieldCompare => cmd_redfield_compare(cfg),
        Command::Dephasing => cmd_dephasing(cfg),
        Command::Screen => cmd_screen(cfg),
        Command::Histogram => cmd_histogram(cfg),
        Command::ShowConfig => {
            // execution settings would make the listing depend on the invocation
            let shown = RunConfig {
                out: None,
                parallel: false,
                ..cfg.clone()
            };
            Ok(Artifacts {
                csv: shown.to_config_text().into_bytes(),
                summary: String::new(),
            })
        }
    }
}

struct Table {
    w: csv::Writer<Vec<u8>>,
}

impl Table {
    fn new(header: &[&str]) -> Result<Self> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(header)?;
        Ok(Table { w })
    }

    fn row(&mut self, fields: &[String]) -> Result<()> {
        self.w.write_record(fields)?;
        Ok(())
    }

    fn finish(self) -> Result<Vec<u8>> {
        self.w.into_inner().map_err(|e| Error::Io(e.into_error()))
    }
}

fn header_line(summary: &mut String, command: Command, cfg: &RunConfig) {
    let _ = writeln!(summary, "command: {}", command.name());
    let _ = writeln!(
        summary,
        "preset: {}",
        cfg.preset.map_or("none", |p| p.name())
    );
    let _ = writeln!(summary, "model: {}", cfg.model);
}

fn cmd_iv(cfg: &RunConfig) -> Result<Artifacts> {
    let p = cfg.params()?;
    let grid = cfg.grids.gamma_alphabeta.values();
    let curve = iv_curve(&p, &grid)?;
    let mut t = Table::new(&["gamma_alphabeta", "current", "voltage", "power"])?;
    for (g, op) in &curve {
        t.row(&[g, &op.current, &op.voltage, &op.power].map(|v| fmt_sig(*v)))?;
    }
    let best = maximize_power(&p)?;
    let bench = maximize_power(&p.benchmark())?;
    let mut s = String::new();
    header_line(&mut s, Command::Iv, cfg);
    let _ = writeln!(s, "points: {}", curve.len());
    let _ = writeln!(
        s,
        "best_gamma_alphabeta: {}",
        fmt_sig(best.best_gamma_alphabeta)
    );
    let _ = writeln!(s, "max_power: {}", fmt_sig(best.best_point.power));
    let _ = writeln!(s, "current_at_max: {}", fmt_sig(best.best_point.current));
    let _ = writeln!(s, "voltage_at_max: {}", fmt_sig(best.best_point.voltage));
    let _ = writeln!(
        s,
        "benchmark_max_power: {}",
        fmt_sig(bench.best_point.power)
    );
    let _ = writeln!(
        s,
        "enhancement: {}",
        fmt_opt(crate::steady::ratio(&best, &bench).ok())
    );
    Ok(Artifacts {
        csv: t.finish()?,
        summary: s,
    })
}

fn cmd_optimize(cfg: &RunConfig) -> Result<Artifacts> {
    let p = cfg.params()?;
    let b = p.benchmark();
    let rm = maximize_power(&p)?;
    let rb = maximize_power(&b)?;
    let enhancement = crate::steady::ratio(&rm, &rb)?;
    let mut t = Table::new(&[
        "model",
        "gamma_alphabeta",
        "current",
        "voltage",
        "power",
        "tan2_phi",
    ])?;
    for (params, r) in [(&p, &rm), (&b, &rb)] {
        let mut row = vec![params.model.to_string()];
        row.extend(
            [
                r.best_gamma_alphabeta,
                r.best_point.current,
                r.best_point.voltage,
                r.best_point.power,
                tan2_phi(params),
            ]
            .map(fmt_sig),
        );
        t.row(&row)?;
    }
    let mut s = String::new();
    header_line(&mut s, Command::Optimize, cfg);
    let _ = writeln!(s, "max_power: {}", fmt_sig(rm.best_point.power));
    let _ = writeln!(s, "benchmark_max_power: {}", fmt_sig(rb.best_point.power));
    let _ = writeln!(s, "enhancement: {}", fmt_sig(enhancement));
    let _ = writeln!(s, "tan2_phi: {}", fmt_sig(tan2_phi(&p)));
    Ok(Artifacts {
        csv: t.finish()?,
        summary: s,
    })
}

const POINT_COLUMNS: [&str; 10] = [
    "delta_eps",
    "j12",
    "z",
    "tan2_phi",
    "power",
    "benchmark_power",
    "enhancement",
    "gamma_alphabeta",
    "benchmark_gamma_alphabeta",
    "",
];

fn point_table(axis: Option<&str>, points: &[&SweepPoint]) -> Result<Vec<u8>> {
    let mut header = vec!["model"];
    header.extend(axis);
    header.extend(&POINT_COLUMNS[..9]);
    let mut t = Table::new(&header)?;
    for p in points {
        let mut row = vec![p.model.to_string()];
        if axis.is_some() {
            row.push(fmt_sig(p.x));
        }
        row.extend(
            [
                p.delta_eps,
                p.j12,
                p.z,
                p.tan2_phi,
                p.model_power,
                p.benchmark_power,
                p.enhancement,
                p.gamma_alphabeta,
                p.benchmark_gamma_alphabeta,
            ]
            .map(fmt_sig),
        );
        t.row(&row)?;
    }
    t.finish()
}

fn extremes<'a>(
    points: impl Iterator<Item = &'a SweepPoint>,
) -> Option<(&'a SweepPoint, &'a SweepPoint)> {
    let v: Vec<&SweepPoint> = points.collect();
    let lo = v
        .iter()
        .copied()
        .min_by(|a, b| a.enhancement.total_cmp(&b.enhancement))?;
    let hi = v
        .iter()
        .copied()
        .max_by(|a, b| a.enhancement.total_cmp(&b.enhancement))?;
    Some((lo, hi))
}

fn cmd_sweep_trapping(cfg: &RunConfig) -> Result<Artifacts> {
    let p = cfg.params()?;
    let opts = options(cfg);
    let grid = cfg.grids.gamma_1alpha.values();
    let mut all = Vec::new();
    let mut s = String::new();
    header_line(&mut s, Command::SweepTrapping, cfg);
    let _ = writeln!(s, "j12_cap: {}", fmt_sig(cfg.j12_cap));
    for model in [ModelKind::Symmetric, ModelKind::Asymmetric] {
        let r = sweep_trapping(&p, model, &grid, cfg.j12_cap, &opts)?;
        if let Some((lo, hi)) = extremes(r.points.iter()) {
            let _ = writeln!(
                s,
                "{model}: max_enhancement {} at gamma_1alpha {}; min {} at {}",
                fmt_sig(hi.enhancement),
                fmt_sig(hi.x),
                fmt_sig(lo.enhancement),
                fmt_sig(lo.x)
            );
        }
        all.extend(r.points);
    }
    Ok(Artifacts {
        csv: point_table(Some("gamma_1alpha"), &all.iter().collect::<Vec<_>>())?,
        summary: s,
    })
}

fn cmd_surface(cfg: &RunConfig) -> Result<Artifacts> {
    let p = cfg.params()?;
    let de = cfg.grids.delta_eps.values();
    let js = cfg.grids.j12.values();
    let r = enhancement_surface(&p, &de, &js, &options(cfg))?;
    let rows: Vec<&SweepPoint> = r.points.iter().chain(&r.reference).collect();
    let mut s = String::new();
    header_line(&mut s, Command::Surface, cfg);
    if let Some(b) = r.best() {
        let _ = writeln!(
            s,
            "asymmetric_max: {} at delta_eps {} j12 {}",
            fmt_sig(b.enhancement),
            fmt_sig(b.delta_eps),
            fmt_sig(b.j12)
        );
    }
    if let Some((_, hi)) = extremes(r.reference.iter()) {
        let _ = writeln!(
            s,
            "symmetric_max: {} at j12 {}",
            fmt_sig(hi.enhancement),
            fmt_sig(hi.j12)
        );
    }
    let nj = js.len();
    let wins = r
        .points
        .iter()
        .enumerate()
        .filter(|(i, q)| q.enhancement > r.reference[i % nj].enhancement)
        .count();
    let _ = writeln!(
        s,
        "cells_asymmetric_above_symmetric: {wins} of {}",
        r.points.len()
    );
    let edge = r
        .points
        .iter()
        .step_by(nj)
        .map(|q| q.enhancement)
        .fold(f64::NEG_INFINITY, f64::max);
    let _ = writeln!(s, "max_enhancement_at_smallest_j12: {}", fmt_sig(edge));
    let _ = writeln!(s, "equal_enhancement_contour:");
    for (x, y) in &r.contour {
        let _ = writeln!(s, "  {} {}", fmt_sig(*x), fmt_sig(*y));
    }
    Ok(Artifacts {
        csv: point_table(None, &rows)?,
        summary: s,
    })
}

fn cmd_deviation(cfg: &RunConfig) -> Result<Artifacts> {
    let p = cfg.params()?;
    let r = deviation_sweep(&p, &cfg.grids.deviation.values(), &options(cfg))?;
    let mut s = String::new();
    header_line(&mut s, Command::Deviation, cfg);
    for model in [ModelKind::Asymmetric, ModelKind::Symmetric] {
        let pts: Vec<&SweepPoint> = r.points.iter().filter(|q| q.model == model).collect();
        if let Some((lo, hi)) = extremes(pts.iter().copied()) {
            let tmax = pts.iter().map(|q| q.tan2_phi).fold(0.0, f64::max);
            let _ = writeln!(
                s,
                "{model}: enhancement {} to {}; max tan2_phi {}",
                fmt_sig(lo.enhancement),
                fmt_sig(hi.enhancement),
                fmt_sig(tmax)
            );
        }
    }
    Ok(Artifacts {
        csv: point_table(Some("deviation"), &r.points.iter().collect::<Vec<_>>())?,
        summary: s,
    })
}

fn cmd_theta_rc(cfg: &RunConfig) -> Result<Artifacts> {
    let p = cfg.params()?;
    let r = theta_rc_sweep(&p, &cfg.grids.theta_rc.values(), &options(cfg))?;
    let mut s = String::new();
    header_line(&mut s, Command::ThetaRc, cfg);
    if let Some((lo, hi)) = extremes(r.points.iter()) {
        let _ = writeln!(
            s,
            "max_enhancement: {} at theta_rc {}",
            fmt_sig(hi.enhancement),
            fmt_sig(hi.x)
        );
        let _ = writeln!(
            s,
            "min_enhancement: {} at theta_rc {}",
            fmt_sig(lo.enhancement),
            fmt_sig(lo.x)
        );
        let _ = writeln!(
            s,
            "relative_drop: {}",
            fmt_sig((hi.enhancement - lo.enhancement) / hi.enhancement)
        );
    }
    Ok(Artifacts {
        csv: point_table(Some("theta_rc"), &r.points.iter().collect::<Vec<_>>())?,
        summary: s,
    })
}

fn redfield(cfg: &RunConfig, dephasing: Option<f64>) -> RedfieldSolver {
    RedfieldSolver {
        secular: cfg.secular,
        dephasing,
        ..RedfieldSolver::default()
    }
}

fn cmd_redfield_compare(cfg: &RunConfig) -> Result<Artifacts> {
    let p = cfg.params()?;
    let opts = options(cfg);
    let grid = cfg.grids.gamma_1alpha.values();
    let solver = redfield(cfg, cfg.dephase);
    let mut t = Table::new(&[
        "model",
        "gamma_1alpha",
        "j12",
        "z",
        "rate_enhancement",
        "redfield_enhancement",
        "difference",
    ])?;
    let mut s = String::new();
    header_line(&mut s, Command::RedfieldCompare, cfg);
    let _ = writeln!(s, "secular: {}", cfg.secular);
    let _ = writeln!(s, "dephase: {}", fmt_opt(cfg.dephase));
    for model in [ModelKind::Symmetric, ModelKind::Asymmetric] {
        let rows = compare_trapping(
            &p,
            model,
            &grid,
            cfg.j12_cap,
            &RateEquations,
            &solver,
            &opts,
        )?;
        let worst = rows
            .iter()
            .map(|c| c.difference().abs())
            .fold(0.0, f64::max);
        let _ = writeln!(s, "{model}: max_abs_difference {}", fmt_sig(worst));
        for c in &rows {
            let mut row = vec![model.to_string()];
            row.extend(
                [
                    c.x,
                    c.j12,
                    c.z,
                    c.reference_enhancement,
                    c.candidate_enhancement,
                    c.difference(),
                ]
                .map(fmt_sig),
            );
            t.row(&row)?;
        }
    }
    Ok(Artifacts {
        csv: t.finish()?,
        summary: s,
    })
}

/// Relative drop of the peak enhancement per model.
pub fn peak_reduction(rows: &[SolverComparison], model: ModelKind) -> Option<f64> {
    let sel = rows.iter().filter(|c| c.model == model);
    let r = sel
        .clone()
        .map(|c| c.reference_enhancement)
        .reduce(f64::max)?;
    let c = sel.map(|c| c.candidate_enhancement).reduce(f64::max)?;
    Some((r - c) / r)
}

fn cmd_dephasing(cfg: &RunConfig) -> Result<Artifacts> {
    let p = cfg.params()?;
    let gd = cfg.dephase.unwrap_or(0.1 * p.gamma_11);
    let rows = compare_surface(
        &p,
        &cfg.grids.dephasing_delta_eps.values(),
        &cfg.grids.dephasing_j12.values(),
        &redfield(cfg, None),
        &redfield(cfg, Some(gd)),
        &options(cfg),
    )?;
    let mut t = Table::new(&[
        "model",
        "delta_eps",
        "j12",
        "z",
        "coherent_enhancement",
        "dephased_enhancement",
        "relative_reduction",
    ])?;
    for c in &rows {
        let de = if c.model == ModelKind::Asymmetric {
            c.x
        } else {
            0.0
        };
        let mut row = vec![c.model.to_string()];
        row.extend(
            [
                de,
                c.j12,
                c.z,
                c.reference_enhancement,
                c.candidate_enhancement,
                c.relative_reduction(),
            ]
            .map(fmt_sig),
        );
        t.row(&row)?;
    }
    let mut s = String::new();
    header_line(&mut s, Command::Dephasing, cfg);
    let _ = writeln!(s, "secular: {}", cfg.secular);
    let _ = writeln!(s, "dephase: {}", fmt_sig(gd));
    for model in [ModelKind::Asymmetric, ModelKind::Symmetric] {
        let _ = writeln!(
            s,
            "{model}: peak_reduction {}",
            fmt_opt(peak_reduction(&rows, model))
        );
    }
    Ok(Artifacts {
        csv: t.finish()?,
        summary: s,
    })
}

fn load_db(cfg: &RunConfig) -> Result<(Vec<MoleculeRecord>, ParseReport)> {
    let path = cfg
        .db
        .as_deref()
        .ok_or_else(|| config_error("db", "no molecule database given (--db)"))?;
    if !path.is_file() {
        return Err(config_error(
            "db",
            format!("{} is not a readable file", path.display()),
        ));
    }
    read_molecule_db(path)
}

fn report_lines(s: &mut String, rep: &ParseReport) {
    let _ = writeln!(s, "rows: {}", rep.rows);
    let _ = writeln!(s, "accepted: {}", rep.accepted);
    let _ = writeln!(s, "skipped: {}", rep.skipped.len());
    for (line, why) in &rep.skipped {
        let _ = writeln!(s, "  line {line}: {why}");
    }
    let _ = writeln!(s, "anti_stokes: {}", rep.anti_stokes.join(" "));
}

fn cmd_screen(cfg: &RunConfig) -> Result<Artifacts> {
    let (records, rep) = load_db(cfg)?;
    let opts = options(cfg);
    let mut found = screen(&records, &cfg.screening, opts.execution)?;
    let mut s = String::new();
    let _ = writeln!(s, "command: screen");
    report_lines(&mut s, &rep);
    let _ = writeln!(s, "candidates: {}", found.len());
    if cfg.evaluate_q && !found.is_empty() {
        let defaults = cfg.params()?;
        let failed = evaluate_candidates(&mut found, &defaults, &opts.search, opts.execution);
        let _ = writeln!(s, "q_failures: {}", failed.len());
        for (i, e) in failed {
            let c = &found[i];
            let _ = writeln!(s, "  {} / {}: {e}", c.donor.id, c.acceptor.id);
        }
    }
    let flipped: Vec<String> = found
        .iter()
        .filter(|c| c.excited_order_flipped)
        .map(|c| format!("{}/{}", c.donor.id, c.acceptor.id))
        .collect();
    let _ = writeln!(s, "excited_order_flipped: {}", flipped.join(" "));
    let mut csv = Vec::new();
    write_candidates(&found, &mut csv)?;
    Ok(Artifacts { csv, summary: s })
}

fn cmd_histogram(cfg: &RunConfig) -> Result<Artifacts> {
    let (records, rep) = load_db(cfg)?;
    let id = cfg
        .anchor
        .as_deref()
        .ok_or_else(|| config_error("anchor", "histogram needs an anchor molecule id"))?;
    let anchor = records
        .iter()
        .find(|m| m.id == id)
        .ok_or_else(|| config_error("anchor", format!("no molecule `{id}` in the database")))?;
    let edges = cfg.grids.tan2_edges.values();
    let h = partner_histogram(
        &records,
        anchor,
        cfg.role,
        cfg.geometry,
        &edges,
        &cfg.screening,
    )?;
    let mut t = Table::new(&["tan2_lo", "tan2_hi", "count"])?;
    for (k, n) in h.counts.iter().enumerate() {
        t.row(&[fmt_sig(h.edges[k]), fmt_sig(h.edges[k + 1]), n.to_string()])?;
    }
    let mut s = String::new();
    let _ = writeln!(s, "command: histogram");
    report_lines(&mut s, &rep);
    let _ = writeln!(s, "anchor: {id}");
    let _ = writeln!(s, "partners_binned: {}", h.total());
    let _ = writeln!(s, "partners_outside_edges: {}", h.outside);
    Ok(Artifacts {
        csv: t.finish()?,
        summary: s,
    })
}
