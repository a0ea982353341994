//! `key = value` run configuration.
//!
//! A config names an optional preset and overrides individual keys on top
//! of it. Dimer energies are given through the lower exciton energy
//! `eps_minus`, the detuning `delta_eps = eps2 - eps1` and the bare
//! coupling `j12`; the site energies follow from those.
//!
//! ```text
//! preset = fig4
//! # move to a stronger coupling
//! j12 = 0.02
//! delta_eps_grid = lin(0.01, 0.2, 20)
//! ```
//!
//! `gamma_1g` and `gamma_2g` obey `gamma_1g = z^2 gamma_2g` in the coupled
//! models. Setting only one of them fixes the other through that relation;
//! setting neither keeps the inherited total `gamma_1g + gamma_2g` and splits
//! it according to the current `z`.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::model::{dark_z_for_coupling, fix_lower_exciton, ModelKind, PhotocellParams};
use crate::presets::Preset;
use crate::screening::{Geometry, PartnerRole, ScreeningCriteria};
use crate::steady::{lin_grid, log_grid};
use crate::{Error, Result};

/// A one-dimensional sweep grid.
#[derive(Clone, Debug, PartialEq)]
pub enum GridSpec {
    /// `log(lo, hi, n)`: log-spaced, endpoints included.
    Log(f64, f64, usize),
    /// `lin(lo, hi, n)`: evenly spaced, endpoints included.
    Lin(f64, f64, usize),
    /// Comma-separated explicit values.
    List(Vec<f64>),
}

impl GridSpec {
    pub fn values(&self) -> Vec<f64> {
        match *self {
            GridSpec::Log(lo, hi, n) => log_grid(lo, hi, n),
            GridSpec::Lin(lo, hi, n) => lin_grid(lo, hi, n),
            GridSpec::List(ref v) => v.clone(),
        }
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GridSpec::Log(a, b, n) => write!(f, "log({}, {}, {n})", fmt_num(*a), fmt_num(*b)),
            GridSpec::Lin(a, b, n) => write!(f, "lin({}, {}, {n})", fmt_num(*a), fmt_num(*b)),
            GridSpec::List(v) => {
                let parts: Vec<String> = v.iter().map(|x| fmt_num(*x)).collect();
                f.write_str(&parts.join(", "))
            }
        }
    }
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        for (name, log) in [("log", true), ("lin", false)] {
            let Some(rest) = s.strip_prefix(name) else {
                continue;
            };
            let inner = rest
                .trim()
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| format!("expected {name}(lo, hi, n)"))?;
            let args: Vec<&str> = inner.split(',').map(str::trim).collect();
            if args.len() != 3 {
                return Err(format!("expected {name}(lo, hi, n)"));
            }
            let lo = parse_f64(args[0])?;
            let hi = parse_f64(args[1])?;
            let n: usize = args[2]
                .parse()
                .map_err(|_| format!("`{}` is not a point count", args[2]))?;
            if n == 0 || !(hi >= lo) || (n > 1 && hi == lo) {
                return Err(format!("empty or reversed range in `{s}`"));
            }
            if log && !(lo > 0.0) {
                return Err("log grid needs positive bounds".into());
            }
            return Ok(if log {
                GridSpec::Log(lo, hi, n)
            } else {
                GridSpec::Lin(lo, hi, n)
            });
        }
        let v = s
            .split(',')
            .map(parse_f64)
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if v.windows(2).any(|w| !(w[0] < w[1])) {
            return Err("grid values must be strictly ascending".into());
        }
        Ok(GridSpec::List(v))
    }
}

/// The asymmetric dipole ratio: fixed, or tied to the dark-state condition.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DipoleRatio {
    Dark,
    Value(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Grids {
    /// Trapping-rate axis for `iv`.
    pub gamma_alphabeta: GridSpec,
    /// γ₁α axis for `sweep-trapping` and `redfield-compare`.
    pub gamma_1alpha: GridSpec,
    /// Surface axes for `surface`.
    pub delta_eps: GridSpec,
    pub j12: GridSpec,
    /// Coarser surface axes for `dephasing` (Redfield solves).
    pub dephasing_delta_eps: GridSpec,
    pub dephasing_j12: GridSpec,
    /// Detuning offsets for `deviation`.
    pub deviation: GridSpec,
    pub theta_rc: GridSpec,
    /// tan²Φ bin edges for `histogram`.
    pub tan2_edges: GridSpec,
}

impl Default for Grids {
    fn default() -> Self {
        Grids {
            gamma_alphabeta: GridSpec::Log(1e-12, 1.0, 121),
            gamma_1alpha: GridSpec::Log(1e-10, 1e-2, 33),
            delta_eps: GridSpec::Lin(0.005, 0.2, 40),
            j12: GridSpec::Lin(0.002, 0.1, 50),
            dephasing_delta_eps: GridSpec::Lin(0.01, 0.2, 8),
            dephasing_j12: GridSpec::Lin(0.005, 0.1, 8),
            deviation: GridSpec::Lin(-0.03, 0.03, 13),
            theta_rc: GridSpec::Lin(0.75 * PI, 1.25 * PI, 21),
            tan2_edges: GridSpec::Lin(0.0, 0.5, 51),
        }
    }
}

/// Everything a CLI command needs: the photocell, sweep grids, solver
/// switches and screening settings.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub preset: Option<Preset>,
    pub model: ModelKind,
    pub eps_minus: f64,
    pub delta_eps: f64,
    pub j12: f64,
    pub z: DipoleRatio,
    pub phi: f64,
    pub eps_alpha: f64,
    pub eps_beta: f64,
    pub gamma_1g: f64,
    pub gamma_2g: f64,
    pub gamma_11: f64,
    pub gamma_22: f64,
    pub gamma_1alpha: f64,
    pub gamma_alphabeta: f64,
    pub gamma_betag: f64,
    pub chi: f64,
    pub theta_rc: f64,
    pub t_hot: f64,
    pub t_cold: f64,
    pub grids: Grids,
    /// Upper bound of the coupling search in trapping sweeps (eV).
    pub j12_cap: f64,
    /// Site-basis pure dephasing rate for the Redfield solver (eV).
    pub dephase: Option<f64>,
    pub secular: bool,
    pub parallel: bool,
    pub screening: ScreeningCriteria,
    pub evaluate_q: bool,
    pub anchor: Option<String>,
    pub role: PartnerRole,
    pub geometry: Geometry,
    pub db: Option<PathBuf>,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    /// The surface preset without the preset tag.
    fn default() -> Self {
        RunConfig {
            preset: None,
            ..RunConfig::from_preset(Preset::Fig4)
        }
    }
}

impl RunConfig {
    pub fn from_preset(preset: Preset) -> Self {
        // (model, delta_eps, gamma_1g + gamma_2g)
        let (model, delta_eps, optical) = match preset {
            Preset::Fig3 | Preset::Fig4 => (ModelKind::Asymmetric, 0.09, 1.24e-6),
            Preset::Fig5 => (ModelKind::Asymmetric, 0.1, 1.2e-6),
            Preset::Fig8 => (ModelKind::Symmetric, 0.0, 1.2e-6),
            Preset::Ivpv => (ModelKind::Asymmetric, 0.1, 1.24e-6),
        };
        let mut c = RunConfig {
            preset: Some(preset),
            model,
            eps_minus: 2.0,
            delta_eps,
            j12: 0.01,
            z: DipoleRatio::Dark,
            phi: 0.0,
            eps_alpha: 1.8,
            eps_beta: 0.2,
            gamma_1g: optical,
            gamma_2g: 0.0,
            gamma_11: 0.005,
            gamma_22: 0.005,
            gamma_1alpha: 6e-7,
            gamma_alphabeta: 1e-6,
            gamma_betag: 0.0248,
            chi: 0.2,
            theta_rc: PI,
            t_hot: 6000.0,
            t_cold: 300.0,
            grids: Grids::default(),
            j12_cap: 0.03,
            dephase: None,
            secular: false,
            parallel: false,
            screening: ScreeningCriteria::default(),
            evaluate_q: true,
            anchor: None,
            role: PartnerRole::Donor,
            geometry: Geometry::Ground,
            db: None,
            out: None,
        };
        c.split_optical(false, false);
        c
    }

    /// Numeric dipole ratio for the current model and coupling.
    pub fn z_value(&self) -> f64 {
        match (self.model, self.z) {
            (ModelKind::Asymmetric, DipoleRatio::Dark) => {
                dark_z_for_coupling(self.j12 * self.phi.cos(), self.delta_eps)
            }
            (_, DipoleRatio::Dark) => 1.0,
            (_, DipoleRatio::Value(z)) => z,
        }
    }

    fn split_optical(&mut self, set_1g: bool, set_2g: bool) {
        let z2 = self.z_value().powi(2);
        let coupled = self.model.is_coupled();
        match (set_1g, set_2g) {
            (true, true) => {}
            (false, true) => {
                self.gamma_1g = if coupled {
                    z2 * self.gamma_2g
                } else {
                    self.gamma_2g
                }
            }
            (true, false) => {
                self.gamma_2g = if !coupled {
                    self.gamma_1g
                } else if z2 > 0.0 {
                    self.gamma_1g / z2
                } else {
                    self.gamma_2g
                }
            }
            (false, false) => {
                let total = self.gamma_1g + self.gamma_2g;
                if coupled {
                    self.gamma_2g = total / (1.0 + z2);
                    self.gamma_1g = z2 * self.gamma_2g;
                } else {
                    self.gamma_1g = total / 2.0;
                    self.gamma_2g = total / 2.0;
                }
            }
        }
    }

    /// The photocell described by this config, validated.
    pub fn params(&self) -> Result<PhotocellParams> {
        let p = PhotocellParams {
            model: self.model,
            eps1: 0.0,
            eps2: self.delta_eps,
            eps_alpha: self.eps_alpha,
            eps_beta: self.eps_beta,
            j12: self.j12,
            phi: self.phi,
            z: self.z_value(),
            gamma_1g: self.gamma_1g,
            gamma_2g: self.gamma_2g,
            gamma_11: self.gamma_11,
            gamma_22: self.gamma_22,
            gamma_1alpha: self.gamma_1alpha,
            gamma_alphabeta: self.gamma_alphabeta,
            gamma_betag: self.gamma_betag,
            chi: self.chi,
            theta_rc: self.theta_rc,
            t_hot: self.t_hot,
            t_cold: self.t_cold,
        };
        let p = fix_lower_exciton(&p, self.eps_minus);
        p.validate()?;
        Ok(p)
    }

    /// Applies one `key = value` assignment.
    pub fn set(&mut self, key: &str, value: &str) -> std::result::Result<(), String> {
        let num = || parse_f64(value);
        let nonneg = || {
            let v = parse_f64(value)?;
            if v < 0.0 {
                Err(format!("must be non-negative, got {v}"))
            } else {
                Ok(v)
            }
        };
        let positive = || {
            let v = parse_f64(value)?;
            if !(v > 0.0) {
                Err(format!("must be positive, got {v}"))
            } else {
                Ok(v)
            }
        };
        let grid = || value.parse::<GridSpec>();
        let path = || -> std::result::Result<PathBuf, String> {
            if value.is_empty() {
                Err("empty path".into())
            } else {
                Ok(PathBuf::from(value))
            }
        };
        match key {
            "preset" => {
                let p: Preset = value.parse().map_err(|e: Error| e.to_string())?;
                *self = RunConfig::from_preset(p);
            }
            "model" => self.model = value.parse().map_err(|e: Error| e.to_string())?,
            "eps_minus" => self.eps_minus = num()?,
            "delta_eps" => self.delta_eps = num()?,
            "j12" => self.j12 = nonneg()?,
            "z" => {
                self.z = if value.eq_ignore_ascii_case("dark") {
                    DipoleRatio::Dark
                } else {
                    let z = num()?;
                    if !(0.0..=1.0).contains(&z) {
                        return Err(format!("must lie in [0, 1] or be `dark`, got {z}"));
                    }
                    DipoleRatio::Value(z)
                }
            }
            "phi" => self.phi = num()?,
            "eps_alpha" => self.eps_alpha = num()?,
            "eps_beta" => self.eps_beta = num()?,
            "gamma_1g" => self.gamma_1g = nonneg()?,
            "gamma_2g" => self.gamma_2g = nonneg()?,
            "gamma_11" => self.gamma_11 = nonneg()?,
            "gamma_22" => self.gamma_22 = nonneg()?,
            "gamma_1alpha" => self.gamma_1alpha = nonneg()?,
            "gamma_alphabeta" => self.gamma_alphabeta = nonneg()?,
            "gamma_betag" => self.gamma_betag = nonneg()?,
            "chi" => self.chi = nonneg()?,
            "theta_rc" => self.theta_rc = num()?,
            "t_hot" => self.t_hot = positive()?,
            "t_cold" => self.t_cold = positive()?,
            "gamma_alphabeta_grid" => self.grids.gamma_alphabeta = grid()?,
            "gamma_1alpha_grid" => self.grids.gamma_1alpha = grid()?,
            "delta_eps_grid" => self.grids.delta_eps = grid()?,
            "j12_grid" => self.grids.j12 = grid()?,
            "dephasing_delta_eps_grid" => self.grids.dephasing_delta_eps = grid()?,
            "dephasing_j12_grid" => self.grids.dephasing_j12 = grid()?,
            "deviation_grid" => self.grids.deviation = grid()?,
            "theta_rc_grid" => self.grids.theta_rc = grid()?,
            "tan2_edges" => self.grids.tan2_edges = grid()?,
            "j12_cap" => self.j12_cap = positive()?,
            "dephase" => {
                self.dephase = if value.eq_ignore_ascii_case("none") {
                    None
                } else {
                    Some(nonneg()?)
                }
            }
            "secular" => self.secular = parse_bool(value)?,
            "parallel" => self.parallel = parse_bool(value)?,
            "donor_mu_min" => self.screening.donor_mu_min = positive()?,
            "donor_e_min" => self.screening.donor_energy.0 = positive()?,
            "donor_e_max" => self.screening.donor_energy.1 = positive()?,
            "z_max" => self.screening.z_max = positive()?,
            "tan2_max" => self.screening.tan2_max = positive()?,
            "separation_nm" => self.screening.separation_nm = positive()?,
            "kappa" => self.screening.kappa = positive()?,
            "excited_coupling" => {
                self.screening.excited_coupling = value.parse().map_err(|e: Error| e.to_string())?
            }
            "evaluate_q" => self.evaluate_q = parse_bool(value)?,
            "anchor" => {
                self.anchor = if value.is_empty() {
                    None
                } else {
                    Some(value.to_string())
                }
            }
            "role" => {
                self.role = match value {
                    "donor" => PartnerRole::Donor,
                    "acceptor" => PartnerRole::Acceptor,
                    _ => return Err("expected `donor` or `acceptor`".into()),
                }
            }
            "geometry" => {
                self.geometry = match value {
                    "ground" => Geometry::Ground,
                    "excited" => Geometry::Excited,
                    _ => return Err("expected `ground` or `excited`".into()),
                }
            }
            "db" => self.db = Some(path()?),
            "out" => self.out = Some(path()?),
            _ => return Err("unknown key".into()),
        }
        Ok(())
    }

    /// Emits every key; parsing the result reproduces `self` exactly.
    pub fn to_config_text(&self) -> String {
        let mut lines: Vec<(&str, String)> = Vec::new();
        if let Some(p) = self.preset {
            lines.push(("preset", p.name().into()));
        }
        let z = match self.z {
            DipoleRatio::Dark => "dark".to_string(),
            DipoleRatio::Value(v) => fmt_num(v),
        };
        let g = &self.grids;
        let s = &self.screening;
        lines.extend([
            ("model", self.model.as_str().to_string()),
            ("eps_minus", fmt_num(self.eps_minus)),
            ("delta_eps", fmt_num(self.delta_eps)),
            ("j12", fmt_num(self.j12)),
            ("z", z),
            ("phi", fmt_num(self.phi)),
            ("eps_alpha", fmt_num(self.eps_alpha)),
            ("eps_beta", fmt_num(self.eps_beta)),
            ("gamma_1g", fmt_num(self.gamma_1g)),
            ("gamma_2g", fmt_num(self.gamma_2g)),
            ("gamma_11", fmt_num(self.gamma_11)),
            ("gamma_22", fmt_num(self.gamma_22)),
            ("gamma_1alpha", fmt_num(self.gamma_1alpha)),
            ("gamma_alphabeta", fmt_num(self.gamma_alphabeta)),
            ("gamma_betag", fmt_num(self.gamma_betag)),
            ("chi", fmt_num(self.chi)),
            ("theta_rc", fmt_num(self.theta_rc)),
            ("t_hot", fmt_num(self.t_hot)),
            ("t_cold", fmt_num(self.t_cold)),
            ("gamma_alphabeta_grid", g.gamma_alphabeta.to_string()),
            ("gamma_1alpha_grid", g.gamma_1alpha.to_string()),
            ("delta_eps_grid", g.delta_eps.to_string()),
            ("j12_grid", g.j12.to_string()),
            (
                "dephasing_delta_eps_grid",
                g.dephasing_delta_eps.to_string(),
            ),
            ("dephasing_j12_grid", g.dephasing_j12.to_string()),
            ("deviation_grid", g.deviation.to_string()),
            ("theta_rc_grid", g.theta_rc.to_string()),
            ("tan2_edges", g.tan2_edges.to_string()),
            ("j12_cap", fmt_num(self.j12_cap)),
            ("dephase", self.dephase.map_or("none".into(), fmt_num)),
            ("secular", self.secular.to_string()),
            ("parallel", self.parallel.to_string()),
            ("donor_mu_min", fmt_num(s.donor_mu_min)),
            ("donor_e_min", fmt_num(s.donor_energy.0)),
            ("donor_e_max", fmt_num(s.donor_energy.1)),
            ("z_max", fmt_num(s.z_max)),
            ("tan2_max", fmt_num(s.tan2_max)),
            ("separation_nm", fmt_num(s.separation_nm)),
            ("kappa", fmt_num(s.kappa)),
            ("excited_coupling", s.excited_coupling.as_str().to_string()),
            ("evaluate_q", self.evaluate_q.to_string()),
            (
                "role",
                match self.role {
                    PartnerRole::Donor => "donor".into(),
                    PartnerRole::Acceptor => "acceptor".into(),
                },
            ),
            (
                "geometry",
                match self.geometry {
                    Geometry::Ground => "ground".into(),
                    Geometry::Excited => "excited".into(),
                },
            ),
        ]);
        if let Some(a) = &self.anchor {
            lines.push(("anchor", a.clone()));
        }
        if let Some(p) = &self.db {
            lines.push(("db", p.display().to_string()));
        }
        if let Some(p) = &self.out {
            lines.push(("out", p.display().to_string()));
        }
        lines
            .into_iter()
            .map(|(k, v)| format!("{k} = {v}\n"))
            .collect()
    }
}

/// Parses config text over the default (or a preset named in the text).
pub fn parse_config(text: &str) -> Result<RunConfig> {
    parse_config_over(RunConfig::default(), text)
}

/// Parses config text on top of `base`. A `preset` line resets everything
/// set before it. The result is validated as a photocell.
pub fn parse_config_over(base: RunConfig, text: &str) -> Result<RunConfig> {
    let mut cfg = base;
    let mut seen: HashMap<String, usize> = HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(Error::Config {
                line,
                key: content.to_string(),
                message: "expected `key = value`".into(),
            });
        };
        let (key, value) = (key.trim(), value.trim());
        cfg.set(key, value).map_err(|message| Error::Config {
            line,
            key: key.to_string(),
            message,
        })?;
        if key == "preset" {
            seen.clear();
        }
        seen.insert(key.to_string(), line);
    }
    cfg.split_optical(seen.contains_key("gamma_1g"), seen.contains_key("gamma_2g"));
    check(&cfg, &seen)?;
    Ok(cfg)
}

/// Cross-field validation, blamed on the first set key the failure names.
fn check(cfg: &RunConfig, seen: &HashMap<String, usize>) -> Result<()> {
    let blame = |message: String| {
        let mut hits: Vec<(&String, &usize)> = seen
            .iter()
            .filter(|(k, _)| {
                message
                    .split(|c: char| !(c.is_alphanumeric() || c == '_'))
                    .any(|w| w == k.as_str())
            })
            .collect();
        hits.sort_by_key(|(_, &l)| l);
        let (key, line) = hits
            .first()
            .map_or(("params".to_string(), 0), |(k, &l)| (k.to_string(), l));
        Error::Config { line, key, message }
    };
    match cfg.params() {
        Ok(_) => {}
        Err(Error::InvalidParams(m)) => return Err(blame(m)),
        Err(e) => return Err(blame(e.to_string())),
    }
    if let Err(e) = cfg.screening.validate() {
        return Err(blame(e.to_string()));
    }
    if let Some(d) = cfg.dephase {
        if !d.is_finite() {
            return Err(blame("dephase must be finite".into()));
        }
    }
    Ok(())
}

fn parse_f64(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| format!("`{}` is not a number", s.trim()))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{}` is not finite", s.trim()))
    }
}

fn parse_bool(s: &str) -> std::result::Result<bool, String> {
    match s {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(format!("`{s}` is not a boolean")),
    }
}

/// Shortest round-trip text for a float.
fn fmt_num(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || (1e-4..1e6).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}
