//! Named parameter sets for the trapping-rate sweep (`fig3`), the
//! enhancement surface (`fig4`), the dark-state deviation study (`fig5`),
//! the reaction-centre phase study (`fig8`) and the I-V example (`ivpv`).

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::model::{ModelKind, PhotocellParams};
use crate::steady::configure;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Preset {
    Fig3,
    Fig4,
    Fig5,
    Fig8,
    Ivpv,
}

impl Preset {
    pub const ALL: [Preset; 5] = [
        Preset::Fig3,
        Preset::Fig4,
        Preset::Fig5,
        Preset::Fig8,
        Preset::Ivpv,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig3 => "fig3",
            Preset::Fig4 => "fig4",
            Preset::Fig5 => "fig5",
            Preset::Fig8 => "fig8",
            Preset::Ivpv => "ivpv",
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s.trim())
            .ok_or_else(|| Error::InvalidParams(format!("unknown preset `{s}`")))
    }
}

/// Trap, bath and optical settings shared by every preset.
fn common(optical_total: f64, gamma_1alpha: f64) -> PhotocellParams {
    let mut p = PhotocellParams {
        model: ModelKind::Asymmetric,
        eps1: 2.0,
        eps2: 2.0,
        eps_alpha: 1.8,
        eps_beta: 0.2,
        j12: 0.0,
        phi: 0.0,
        z: 1.0,
        gamma_1g: 0.0,
        gamma_2g: 0.0,
        gamma_11: 0.005,
        gamma_22: 0.005,
        gamma_1alpha,
        gamma_alphabeta: 1e-6,
        gamma_betag: 0.0248,
        chi: 0.2,
        theta_rc: PI,
        t_hot: 6000.0,
        t_cold: 300.0,
    };
    p.set_optical_total(optical_total);
    p
}

/// Trapping-rate sweep base: asymmetric, ε₂ − ε₁ = 90 meV, J = 10 meV on
/// the dark-state condition, ε₋ = 2 eV.
pub fn fig3_params() -> PhotocellParams {
    configure(
        &common(1.24e-6, 6e-7),
        ModelKind::Asymmetric,
        0.09,
        0.01,
        None,
    )
}

/// Symmetric dimer with the trapping-sweep bath settings.
pub fn symmetric_fig3(j12: f64) -> PhotocellParams {
    configure(&fig3_params(), ModelKind::Symmetric, 0.0, j12, None)
}

/// Surface preset: the trapping-sweep settings at γ₁α = 6×10⁻⁷ eV.
pub fn fig4_params() -> PhotocellParams {
    fig3_params()
}

/// Deviation-study base for a given nominal ε₂ − ε₁ (J = 10 meV,
/// γ₁g + γ₂g = 1.2×10⁻⁶ eV).
pub fn fig5_params(delta_eps: f64) -> PhotocellParams {
    configure(
        &common(1.2e-6, 6e-7),
        ModelKind::Asymmetric,
        delta_eps,
        0.01,
        None,
    )
}

/// The nominal detunings of the asymmetric deviation curves.
pub const FIG5_DELTA_EPS: [f64; 3] = [0.05, 0.1, 0.15];

/// Reaction-centre phase study: symmetric, J = 10 meV, ε₋ = 2 eV.
pub fn fig8_params() -> PhotocellParams {
    configure(&common(1.2e-6, 6e-7), ModelKind::Symmetric, 0.0, 0.01, None)
}

/// Detuning axis of the enhancement surface (eV). The range runs past
/// the 30 meV coupling cap so the optimum sits inside the map.
pub fn fig4_delta_eps_grid(n: usize) -> Vec<f64> {
    crate::steady::lin_grid(0.005, 0.2, n)
}

/// Coupling axis of the enhancement surface (eV).
pub fn fig4_j12_grid(n: usize) -> Vec<f64> {
    crate::steady::lin_grid(0.002, 0.1, n)
}

/// Photocell defaults for scoring screened dimers: the surface bath and
/// trap settings; the lower exciton is re-placed per candidate.
pub fn screening_defaults() -> PhotocellParams {
    fig4_params()
}

/// I-V example: asymmetric, ε₂ − ε₁ = 0.1 eV, J = 10 meV.
pub fn ivpv_params() -> PhotocellParams {
    configure(
        &common(1.24e-6, 6e-7),
        ModelKind::Asymmetric,
        0.1,
        0.01,
        None,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::diagonalize_dimer;

    #[test]
    fn presets_are_valid() {
        for p in [
            fig3_params(),
            fig4_params(),
            fig5_params(0.05),
            fig8_params(),
            ivpv_params(),
            symmetric_fig3(0.02),
        ] {
            p.validate().unwrap();
            assert!((diagonalize_dimer(&p).eps_minus - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn fig3_caption_values() {
        let p = fig3_params();
        assert!((p.optical_total() - 1.24e-6).abs() < 1e-20);
        assert_eq!((p.gamma_11, p.gamma_22), (0.005, 0.005));
        assert_eq!(p.gamma_betag, 0.0248);
        assert_eq!((p.t_hot, p.t_cold), (6000.0, 300.0));
        assert_eq!((p.eps_alpha, p.eps_beta, p.chi), (1.8, 0.2, 0.2));
    }

    #[test]
    fn names_round_trip() {
        for p in Preset::ALL {
            assert_eq!(p.name().parse::<Preset>().unwrap(), p);
        }
    }
}
