use nalgebra::Matrix5;

use crate::model::{diagonalize_dimer, snapped_sin_cos, Bath, ModelKind, PhotocellParams};
use crate::units::bose_occupation;
use crate::Result;

/// Indices of the site (local) basis. The two dimer sites share slots 0
/// and 1 with the exciton states `+` and `−`; the trap and ground levels are
/// the same in both bases.
pub mod site {
    pub const SITE1: usize = 0;
    pub const SITE2: usize = 1;
    pub const ALPHA: usize = 2;
    pub const BETA: usize = 3;
    pub const GROUND: usize = 4;
}

/// Default reorganisation shift as a fraction of each phonon rate.
pub const PHONON_SHIFT_FRACTION: f64 = 0.1;

/// One system operator coupled to its own bath.
#[derive(Clone, Debug, PartialEq)]
pub struct CouplingChannel {
    pub label: &'static str,
    /// Real symmetric operator in the site basis.
    pub operator: Matrix5<f64>,
    pub bath: Bath,
    pub temperature: f64,
    pub base_rate: f64,
    /// Reorganisation shift λ / γ; zero for the photon bath.
    pub shift_fraction: f64,
}

impl CouplingChannel {
    /// The operator in the exciton basis, `U A Uᵀ`.
    pub fn exciton_operator(&self, u: &Matrix5<f64>) -> Matrix5<f64> {
        u * self.operator * u.transpose()
    }
}

/// Half-sided Fourier transform of a flat-spectrum bath correlation at one
/// Bohr frequency.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BathLine {
    pub omega: f64,
    pub real: f64,
    pub imag: f64,
}

/// `Re Γ(ω) = ½γ(N+1)` for ω > 0, `½γN(|ω|)` for ω < 0, and 0 at ω = 0;
/// `Im Γ = λ` on phonon channels.
pub fn half_fourier_rate(channel: &CouplingChannel, omega: f64) -> Result<BathLine> {
    let gamma = channel.base_rate;
    let real = if omega == 0.0 || gamma == 0.0 {
        0.0
    } else {
        let n = bose_occupation(omega.abs(), channel.temperature)?;
        if omega > 0.0 {
            0.5 * gamma * (n + 1.0)
        } else {
            0.5 * gamma * n
        }
    };
    let imag = match channel.bath {
        Bath::Photon => 0.0,
        Bath::Phonon => channel.shift_fraction * gamma,
    };
    Ok(BathLine { omega, real, imag })
}

/// Site-to-exciton rotation: rows are (+, −, α, β, g), columns are
/// (1, 2, α, β, g).
pub fn exciton_transform(params: &PhotocellParams) -> Matrix5<f64> {
    let b = diagonalize_dimer(params);
    let mut u = Matrix5::identity();
    u[(0, 0)] = b.ovl_p1;
    u[(0, 1)] = b.ovl_p2;
    u[(1, 0)] = b.ovl_m1;
    u[(1, 1)] = b.ovl_m2;
    u
}

/// `|a⟩⟨b| + |b⟩⟨a|` in the site basis.
fn hop(a: usize, b: usize) -> Matrix5<f64> {
    let mut m = Matrix5::zeros();
    m[(a, b)] += 1.0;
    m[(b, a)] += 1.0;
    m
}

fn projector(a: usize) -> Matrix5<f64> {
    let mut m = Matrix5::zeros();
    m[(a, a)] = 1.0;
    m
}

/// The interaction catalogue of the five-level photocell. Operators carry
/// unit couplings and the rates live in `base_rate`, normalised so that
/// the secular population dynamics reproduce the rate equations exactly.
/// Channels with zero rate are omitted.
pub fn build_coupling_operators(params: &PhotocellParams) -> Vec<CouplingChannel> {
    use site::*;
    let photon = |label, operator, base_rate| CouplingChannel {
        label,
        operator,
        bath: Bath::Photon,
        temperature: params.t_hot,
        base_rate,
        shift_fraction: 0.0,
    };
    let phonon = |label, operator, base_rate| CouplingChannel {
        label,
        operator,
        bath: Bath::Phonon,
        temperature: params.t_cold,
        base_rate,
        shift_fraction: PHONON_SHIFT_FRACTION,
    };

    let mut out = Vec::new();
    match params.model {
        ModelKind::Independent => {
            let half = 0.5 * params.optical_total();
            out.push(photon("optical-1", hop(SITE1, GROUND), half));
            out.push(photon("optical-2", hop(SITE2, GROUND), half));
            out.push(phonon("trap-1", hop(SITE1, ALPHA), params.gamma_1alpha));
            out.push(phonon("trap-2", hop(SITE2, ALPHA), params.gamma_1alpha));
        }
        model => {
            // Both dipoles radiate into one field; the component of dipole 1
            // perpendicular to dipole 2 couples to the other polarisation.
            let (s, c) = params.phi.sin_cos();
            let parallel = hop(SITE1, GROUND) * (params.z * c) + hop(SITE2, GROUND);
            out.push(photon("optical-x", parallel, params.gamma_2g));
            if s != 0.0 {
                out.push(photon(
                    "optical-y",
                    hop(SITE1, GROUND) * (params.z * s),
                    params.gamma_2g,
                ));
            }
            out.push(phonon("phonon-1", projector(SITE1), params.gamma_11));
            out.push(phonon("phonon-2", projector(SITE2), params.gamma_22));
            if model == ModelKind::Symmetric {
                let (s, c) = snapped_sin_cos(params.theta_rc);
                let in_phase = hop(SITE1, ALPHA) + hop(SITE2, ALPHA) * c;
                out.push(phonon("trap-c", in_phase, params.gamma_1alpha));
                if s != 0.0 {
                    out.push(phonon("trap-s", hop(SITE2, ALPHA) * s, params.gamma_1alpha));
                }
            } else {
                out.push(phonon("trap-1", hop(SITE1, ALPHA), params.gamma_1alpha));
            }
        }
    }
    out.push(phonon("extract", hop(ALPHA, BETA), params.gamma_alphabeta));
    out.push(phonon(
        "leak",
        hop(ALPHA, GROUND),
        params.chi * params.gamma_alphabeta,
    ));
    out.push(phonon("recycle", hop(BETA, GROUND), params.gamma_betag));
    out.retain(|ch| ch.base_rate != 0.0);
    out
}

/// Site-basis pure-dephasing operator `√γ_d (|1⟩⟨1| − |2⟩⟨2|) / √2`.
pub fn dephasing_operator(gamma_dephase: f64) -> Matrix5<f64> {
    (projector(site::SITE1) - projector(site::SITE2)) * (0.5 * gamma_dephase).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{dark_state_coupling, fix_lower_exciton, level};
    use crate::presets;

    #[test]
    fn symmetric_optical_operator_misses_the_dark_state() {
        let p = presets::symmetric_fig3(0.01);
        let u = exciton_transform(&p);
        let ch = &build_coupling_operators(&p)[0];
        assert_eq!(ch.label, "optical-x");
        let a = ch.exciton_operator(&u);
        assert!(a[(level::MINUS, level::GROUND)].abs() < 1e-15);
        assert!((a[(level::PLUS, level::GROUND)] - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn asymmetric_dark_condition_decouples_lower_exciton() {
        for (z, de) in [(0.2, 0.09), (0.5, 0.02), (0.05, 0.3)] {
            let mut p = PhotocellParams {
                z,
                eps1: 2.0,
                eps2: 2.0 + de,
                j12: dark_state_coupling(z, de).unwrap(),
                ..PhotocellParams::default()
            };
            p.set_optical_total(1e-6);
            let p = fix_lower_exciton(&p, 2.0);
            let a = build_coupling_operators(&p)[0].exciton_operator(&exciton_transform(&p));
            assert!(a[(level::MINUS, level::GROUND)].abs() < 1e-12);
        }
    }

    #[test]
    fn zero_rates_leave_no_channels() {
        let mut p = PhotocellParams::default();
        p.set_optical_total(0.0);
        p.gamma_11 = 0.0;
        p.gamma_22 = 0.0;
        p.gamma_1alpha = 0.0;
        p.gamma_alphabeta = 0.0;
        p.gamma_betag = 0.0;
        assert!(build_coupling_operators(&p).is_empty());
    }

    #[test]
    fn bath_lines() {
        let ch = CouplingChannel {
            label: "t",
            operator: Matrix5::zeros(),
            bath: Bath::Photon,
            temperature: 6000.0,
            base_rate: 1.24e-6,
            shift_fraction: 0.0,
        };
        let n = bose_occupation(2.0, 6000.0).unwrap();
        let up = half_fourier_rate(&ch, -2.0).unwrap();
        assert!((up.real - 0.5 * 1.24e-6 * n).abs() < 1e-22);
        assert_eq!(up.imag, 0.0);
        let down = half_fourier_rate(&ch, 2.0).unwrap();
        assert!((down.real / up.real - (n + 1.0) / n).abs() < 1e-10);
        assert_eq!(half_fourier_rate(&ch, 0.0).unwrap().real, 0.0);

        let cold = CouplingChannel {
            temperature: 1e-3,
            ..ch.clone()
        };
        assert_eq!(half_fourier_rate(&cold, 0.3).unwrap().real, 0.5 * 1.24e-6);
        assert_eq!(half_fourier_rate(&cold, -0.3).unwrap().real, 0.0);

        let ph = CouplingChannel {
            bath: Bath::Phonon,
            base_rate: 0.005,
            shift_fraction: PHONON_SHIFT_FRACTION,
            temperature: 300.0,
            ..ch
        };
        assert!((half_fourier_rate(&ph, 0.05).unwrap().imag - 5e-4).abs() < 1e-18);
    }
}
