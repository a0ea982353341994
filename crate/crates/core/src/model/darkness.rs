//! Darkness metric, dark-state condition and the per-transition base rates.

use super::{rabi_splitting, ExcitonBasis, ModelKind, PhotocellParams};
use crate::{Error, Result};

/// tan²Φ = γ₋g / γ₊g for a dimer with detuning `delta_eps`, dipole ratio `z`,
/// parallel-dipole coupling `j12_bare` and inter-dipole angle `phi`.
///
/// The coupling entering the Hamiltonian is `J = J⁰ cos φ`, and the optical
/// interference term carries one further `cos φ` from the dipole
/// directions, so the cross term is `2 z J cos φ`.
pub fn darkness_angle(delta_eps: f64, z: f64, j12_bare: f64, phi: f64) -> Result<f64> {
    let cos_phi = phi.cos();
    let coupling = j12_bare * cos_phi;
    let omega_r = rabi_splitting(delta_eps, coupling);
    if omega_r == 0.0 {
        return Err(Error::UndefinedRatio);
    }
    let z2 = z * z;
    let sum = omega_r * (1.0 + z2);
    let rest = delta_eps * (1.0 - z2) + 2.0 * z * coupling * cos_phi;
    let den = sum + rest;
    if den == 0.0 {
        return Err(Error::UndefinedRatio);
    }
    Ok(((sum - rest) / den).max(0.0))
}

/// Coupling `2z Δε / (1 − z²)` at which the lower exciton is fully dark.
pub fn dark_state_coupling(z: f64, delta_eps: f64) -> Result<f64> {
    if z >= 1.0 {
        return Err(Error::DivergentCoupling);
    }
    if z < 0.0 {
        return Err(Error::InvalidParams(format!(
            "z must be in [0, 1), got {z}"
        )));
    }
    Ok(2.0 * z * delta_eps / (1.0 - z * z))
}

/// Inverse of [`dark_state_coupling`]: the dipole ratio that makes the
/// lower exciton dark for a given coupling, `z = J / (Ω_R + Δε)`.
pub fn dark_z_for_coupling(coupling: f64, delta_eps: f64) -> f64 {
    let omega_r = rabi_splitting(delta_eps, coupling);
    if omega_r + delta_eps == 0.0 {
        return 1.0;
    }
    coupling / (omega_r + delta_eps)
}

/// Optical rates of the exciton states: `|z⟨±|1⟩ e₁ + ⟨±|2⟩ e₂|² γ₂g` for unit
/// dipole directions at angle `phi`. Always sums to `(1 + z²) γ₂g`.
pub fn exciton_optical_rates(basis: &ExcitonBasis, z: f64, phi: f64, gamma_2g: f64) -> (f64, f64) {
    let (sin_phi, cos_phi) = snapped_sin_cos(phi);
    let rate = |a: f64, b: f64| {
        let scale = (z * a).abs() + b.abs();
        // amplitudes cancelling to round-off are exactly dark
        let snap = |v: f64| if v.abs() < 1e-14 * scale { 0.0 } else { v };
        let x = snap(z * a * cos_phi + b);
        let y = snap(z * a * sin_phi);
        (x * x + y * y) * gamma_2g
    };
    (
        rate(basis.ovl_p1, basis.ovl_p2).max(0.0),
        rate(basis.ovl_m1, basis.ovl_m2).max(0.0),
    )
}

/// (γ₊g, γ₋g) for any model. The independent benchmark splits the total
/// evenly between its two states.
pub fn optical_rates(params: &PhotocellParams, basis: &ExcitonBasis) -> (f64, f64) {
    match params.model {
        ModelKind::Independent => {
            let half = 0.5 * params.optical_total();
            (half, half)
        }
        _ => exciton_optical_rates(basis, params.z, params.phi, params.gamma_2g),
    }
}

/// (γ₊α, γ₋α), the transfer rates from the exciton states into the trap.
///
/// - symmetric: `(1 ± (J/Ω_R) cos θ_RC) γ₁α`
/// - asymmetric: `|⟨±|1⟩|² γ₁α = ½(1 ∓ Δε/Ω_R) γ₁α`
/// - independent: `γ₁α` each
pub fn trap_transfer_rates(params: &PhotocellParams, basis: &ExcitonBasis) -> (f64, f64) {
    let g = params.gamma_1alpha;
    match params.model {
        ModelKind::Independent => (g, g),
        ModelKind::Asymmetric => (basis.ovl_p1.powi(2) * g, basis.ovl_m1.powi(2) * g),
        ModelKind::Symmetric => {
            // |a + b cos θ|² + |b sin θ|² = 1 + 2ab cos θ, with 2ab = ±J/Ω_R
            let (_, c) = snapped_sin_cos(params.theta_rc);
            let s2 = if basis.omega_r > 0.0 {
                params.coupling() / basis.omega_r
            } else {
                0.0
            };
            (((1.0 + s2 * c) * g).max(0.0), ((1.0 - s2 * c) * g).max(0.0))
        }
    }
}

/// `sin_cos` with results within 1e-15 of 0 or ±1 rounded there, so that
/// θ = π gives an exactly decoupled state.
pub(crate) fn snapped_sin_cos(x: f64) -> (f64, f64) {
    let snap = |v: f64| {
        if v.abs() < 1e-15 {
            0.0
        } else if (v.abs() - 1.0).abs() < 1e-15 {
            v.signum()
        } else {
            v
        }
    };
    let (s, c) = x.sin_cos();
    (snap(s), snap(c))
}

/// Phonon-induced rate between the two exciton states,
/// `|⟨+|1⟩|²|⟨−|1⟩|² γ₁₁ + |⟨+|2⟩|²|⟨−|2⟩|² γ₂₂`.
pub fn exciton_relaxation_rate(params: &PhotocellParams, basis: &ExcitonBasis) -> f64 {
    match params.model {
        ModelKind::Independent => 0.0,
        _ => {
            (basis.ovl_p1 * basis.ovl_m1).powi(2) * params.gamma_11
                + (basis.ovl_p2 * basis.ovl_m2).powi(2) * params.gamma_22
        }
    }
}
