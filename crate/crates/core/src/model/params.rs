use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// Ground-state energy reference.
pub const EPS_G: f64 = 0.0;

/// Which dimer geometry the five-level model describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelKind {
    /// Two identical, uncoupled absorbers, each feeding the trap. The
    /// benchmark every other model is compared against.
    Independent,
    /// Two identical absorbers with dipolar coupling and antiphase coupling
    /// to the reaction centre.
    Symmetric,
    /// A bright donor (site 2) and a dim acceptor (site 1, dipole `z` times
    /// the donor's); only the acceptor couples to the reaction centre.
    Asymmetric,
}

impl ModelKind {
    pub const ALL: [ModelKind; 3] = [
        ModelKind::Independent,
        ModelKind::Symmetric,
        ModelKind::Asymmetric,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::Independent => "independent",
            ModelKind::Symmetric => "symmetric",
            ModelKind::Asymmetric => "asymmetric",
        }
    }

    pub fn is_coupled(self) -> bool {
        !matches!(self, ModelKind::Independent)
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "independent" => Ok(ModelKind::Independent),
            "symmetric" => Ok(ModelKind::Symmetric),
            "asymmetric" => Ok(ModelKind::Asymmetric),
            other => Err(Error::InvalidParams(format!("unknown model `{other}`"))),
        }
    }
}

/// Every parameter of the five-level photocell.
///
/// Site 1 is the acceptor (lower site energy, dipole `z·μ`), site 2 the
/// donor. `j12` is the coupling for parallel dipoles; the Hamiltonian sees
/// `j12·cos(phi)` on the off-diagonal (halved, as `J/2 (|1⟩⟨2| + h.c.)`).
#[derive(Clone, Debug, PartialEq)]
pub struct PhotocellParams {
    pub model: ModelKind,
    pub eps1: f64,
    pub eps2: f64,
    pub eps_alpha: f64,
    pub eps_beta: f64,
    pub j12: f64,
    pub phi: f64,
    pub z: f64,
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
}

impl Default for PhotocellParams {
    /// The asymmetric dimer of the I-V example: ε₂-ε₁ = 0.1 eV,
    /// J = 10 meV at the dark-state `z`, lower exciton at 2 eV.
    fn default() -> Self {
        let mut p = PhotocellParams {
            model: ModelKind::Asymmetric,
            eps1: 2.0,
            eps2: 2.1,
            eps_alpha: 1.8,
            eps_beta: 0.2,
            j12: 0.01,
            phi: 0.0,
            z: 0.0,
            gamma_1g: 0.0,
            gamma_2g: 0.0,
            gamma_11: 0.005,
            gamma_22: 0.005,
            gamma_1alpha: 6e-7,
            gamma_alphabeta: 1e-6,
            gamma_betag: 0.0248,
            chi: 0.2,
            theta_rc: std::f64::consts::PI,
            t_hot: 6000.0,
            t_cold: 300.0,
        };
        p.z = crate::model::dark_z_for_coupling(0.01, 0.1);
        p.set_optical_total(1.24e-6);
        p = crate::model::fix_lower_exciton(&p, 2.0);
        p
    }
}

impl PhotocellParams {
    /// Effective dipolar coupling `J12⁰ cos φ`. Zero for the independent model.
    pub fn coupling(&self) -> f64 {
        match self.model {
            ModelKind::Independent => 0.0,
            _ => self.j12 * self.phi.cos(),
        }
    }

    pub fn delta_eps(&self) -> f64 {
        self.eps2 - self.eps1
    }

    /// γ₁g + γ₂g, the quantity held fixed across models.
    pub fn optical_total(&self) -> f64 {
        self.gamma_1g + self.gamma_2g
    }

    /// Redistributes a total optical rate over the two sites. Coupled models
    /// use γ₁g = z²γ₂g; the independent model splits evenly.
    pub fn set_optical_total(&mut self, total: f64) {
        match self.model {
            ModelKind::Independent => {
                self.gamma_1g = total / 2.0;
                self.gamma_2g = total / 2.0;
            }
            _ => {
                let z2 = self.z * self.z;
                self.gamma_2g = total / (1.0 + z2);
                self.gamma_1g = z2 * self.gamma_2g;
            }
        }
    }

    pub fn with_gamma_alphabeta(&self, gamma_alphabeta: f64) -> Self {
        PhotocellParams {
            gamma_alphabeta,
            ..self.clone()
        }
    }

    /// The independent-dimer benchmark matched to these parameters: same
    /// γ₊g + γ₋g, same lower exciton energy, same γ₁α.
    pub fn benchmark(&self) -> Self {
        let eps_minus = crate::model::diagonalize_dimer(self).eps_minus;
        let mut b = PhotocellParams {
            model: ModelKind::Independent,
            eps1: eps_minus,
            eps2: eps_minus,
            j12: 0.0,
            phi: 0.0,
            z: 1.0,
            theta_rc: std::f64::consts::PI,
            ..self.clone()
        };
        b.set_optical_total(self.optical_total());
        b
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("eps1", self.eps1),
            ("eps2", self.eps2),
            ("eps_alpha", self.eps_alpha),
            ("eps_beta", self.eps_beta),
            ("j12", self.j12),
            ("phi", self.phi),
            ("z", self.z),
            ("gamma_1g", self.gamma_1g),
            ("gamma_2g", self.gamma_2g),
            ("gamma_11", self.gamma_11),
            ("gamma_22", self.gamma_22),
            ("gamma_1alpha", self.gamma_1alpha),
            ("gamma_alphabeta", self.gamma_alphabeta),
            ("gamma_betag", self.gamma_betag),
            ("chi", self.chi),
            ("theta_rc", self.theta_rc),
            ("t_hot", self.t_hot),
            ("t_cold", self.t_cold),
        ];
        if let Some((name, v)) = fields.iter().find(|(_, v)| !v.is_finite()) {
            return Err(invalid(format!("{name} must be finite, got {v}")));
        }
        let rates = [
            ("gamma_1g", self.gamma_1g),
            ("gamma_2g", self.gamma_2g),
            ("gamma_11", self.gamma_11),
            ("gamma_22", self.gamma_22),
            ("gamma_1alpha", self.gamma_1alpha),
            ("gamma_alphabeta", self.gamma_alphabeta),
            ("gamma_betag", self.gamma_betag),
            ("chi", self.chi),
        ];
        if let Some((name, v)) = rates.iter().find(|(_, v)| *v < 0.0) {
            return Err(invalid(format!("{name} must be non-negative, got {v}")));
        }
        if self.t_hot <= 0.0 || self.t_cold <= 0.0 {
            return Err(invalid("temperatures must be positive".into()));
        }
        if !(0.0..=1.0).contains(&self.z) {
            return Err(invalid(format!("z must lie in [0, 1], got {}", self.z)));
        }
        match self.model {
            ModelKind::Independent => {
                if (self.eps1 - self.eps2).abs() > 1e-12 {
                    return Err(invalid(
                        "independent model needs degenerate sites (eps1 = eps2)".into(),
                    ));
                }
            }
            ModelKind::Symmetric => {
                if self.z != 1.0 {
                    return Err(invalid(format!(
                        "symmetric model needs identical dipoles (z = 1), got {}",
                        self.z
                    )));
                }
            }
            ModelKind::Asymmetric => {
                if self.eps1 > self.eps2 {
                    return Err(invalid(format!(
                        "asymmetric model needs eps1 <= eps2, got {} > {}",
                        self.eps1, self.eps2
                    )));
                }
            }
        }
        if self.model.is_coupled() {
            let expected = self.z * self.z * self.gamma_2g;
            let scale = self.gamma_1g.abs().max(self.gamma_2g.abs());
            if (self.gamma_1g - expected).abs() > 1e-9 * scale {
                return Err(invalid(format!(
                    "gamma_1g must equal z^2 gamma_2g = {expected:e}, got {:e}",
                    self.gamma_1g
                )));
            }
        }
        let basis = crate::model::diagonalize_dimer(self);
        if !(self.eps_beta > EPS_G) {
            return Err(invalid(format!(
                "eps_beta must lie above the ground state, got {}",
                self.eps_beta
            )));
        }
        if !(self.eps_alpha > self.eps_beta) {
            return Err(invalid(format!(
                "eps_alpha ({}) must lie above eps_beta ({})",
                self.eps_alpha, self.eps_beta
            )));
        }
        if !(basis.eps_minus > self.eps_alpha) {
            return Err(invalid(format!(
                "lower exciton ({}) must lie above eps_alpha ({})",
                basis.eps_minus, self.eps_alpha
            )));
        }
        Ok(())
    }
}

fn invalid(msg: String) -> Error {
    Error::InvalidParams(msg)
}
