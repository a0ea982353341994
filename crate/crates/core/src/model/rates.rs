use nalgebra::Matrix5;

use super::{
    diagonalize_dimer, exciton_relaxation_rate, optical_rates, trap_transfer_rates,
    PhotocellParams, EPS_G,
};
use crate::units::bose_occupation;
use crate::Result;

/// Index of each level in population vectors and rate matrices.
pub mod level {
    pub const PLUS: usize = 0;
    pub const MINUS: usize = 1;
    pub const ALPHA: usize = 2;
    pub const BETA: usize = 3;
    pub const GROUND: usize = 4;
    pub const COUNT: usize = 5;
    pub const NAMES: [&str; COUNT] = ["+", "-", "alpha", "beta", "g"];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bath {
    /// Solar photons at `t_hot`.
    Photon,
    /// Vibrational environment at `t_cold`.
    Phonon,
}

/// One thermal transition between two levels, oriented so that `upper`
/// lies above `lower`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Transition {
    pub upper: usize,
    pub lower: usize,
    pub bath: Bath,
    pub temperature: f64,
    /// ε_upper − ε_lower, eV.
    pub omega: f64,
    pub base_rate: f64,
    /// γ (N + 1)
    pub down: f64,
    /// γ N
    pub up: f64,
}

/// Pauli generator 𝒬 of `dP/dt = 𝒬 P` over levels (+, −, α, β, g).
#[derive(Clone, Debug, PartialEq)]
pub struct RateMatrix {
    pub q: Matrix5<f64>,
    pub transitions: Vec<Transition>,
}

impl RateMatrix {
    /// Builds 𝒬 from a list of transitions; diagonal entries are the
    /// negated column sums of the off-diagonal ones.
    pub fn from_transitions(transitions: Vec<Transition>) -> Self {
        let mut q = Matrix5::zeros();
        for t in &transitions {
            q[(t.lower, t.upper)] += t.down;
            q[(t.upper, t.lower)] += t.up;
        }
        for col in 0..level::COUNT {
            let outflow: f64 = (0..level::COUNT)
                .filter(|&row| row != col)
                .map(|row| q[(row, col)])
                .sum();
            q[(col, col)] = -outflow;
        }
        RateMatrix { q, transitions }
    }

    pub fn max_abs(&self) -> f64 {
        self.q.amax()
    }

    /// Largest |column sum| of 𝒬.
    pub fn column_sum_defect(&self) -> f64 {
        (0..level::COUNT)
            .map(|c| self.q.column(c).sum().abs())
            .fold(0.0, f64::max)
    }
}

/// Level energies in basis order (+, −, α, β, g).
pub fn level_energies(params: &PhotocellParams) -> [f64; level::COUNT] {
    let b = diagonalize_dimer(params);
    [
        b.eps_plus,
        b.eps_minus,
        params.eps_alpha,
        params.eps_beta,
        EPS_G,
    ]
}

/// Assembles the full rate matrix: optical ±↔g at the hot temperature,
/// everything else at the cold one, each with `γ(N+1)` down and `γN` up.
pub fn build_rate_matrix(params: &PhotocellParams) -> Result<RateMatrix> {
    use level::*;
    params.validate()?;
    let basis = diagonalize_dimer(params);
    let energies = level_energies(params);
    let (g_pg, g_mg) = optical_rates(params, &basis);
    let (g_pa, g_ma) = trap_transfer_rates(params, &basis);
    let g_pm = exciton_relaxation_rate(params, &basis);

    let links = [
        (PLUS, GROUND, Bath::Photon, g_pg),
        (MINUS, GROUND, Bath::Photon, g_mg),
        (PLUS, MINUS, Bath::Phonon, g_pm),
        (PLUS, ALPHA, Bath::Phonon, g_pa),
        (MINUS, ALPHA, Bath::Phonon, g_ma),
        (ALPHA, BETA, Bath::Phonon, params.gamma_alphabeta),
        (
            ALPHA,
            GROUND,
            Bath::Phonon,
            params.chi * params.gamma_alphabeta,
        ),
        (BETA, GROUND, Bath::Phonon, params.gamma_betag),
    ];

    let mut transitions = Vec::with_capacity(links.len());
    for (upper, lower, bath, base_rate) in links {
        if base_rate == 0.0 {
            continue;
        }
        let temperature = match bath {
            Bath::Photon => params.t_hot,
            Bath::Phonon => params.t_cold,
        };
        let omega = energies[upper] - energies[lower];
        if !(omega > 0.0) {
            return Err(crate::Error::InvalidParams(format!(
                "transition {} -> {} has non-positive frequency {omega} eV but rate {base_rate:e}",
                NAMES[upper], NAMES[lower]
            )));
        }
        let n = bose_occupation(omega, temperature)?;
        transitions.push(Transition {
            upper,
            lower,
            bath,
            temperature,
            omega,
            base_rate,
            down: base_rate * (n + 1.0),
            up: base_rate * n,
        });
    }
    Ok(RateMatrix::from_transitions(transitions))
}
