use super::PhotocellParams;

/// Eigenstates of the two-site block `[[ε₁, J/2], [J/2, ε₂]]`.
///
/// `|+⟩ = sin θ |1⟩ + cos θ |2⟩` is the upper state and
/// `|−⟩ = cos θ |1⟩ − sin θ |2⟩` the lower one, with `tan 2θ = J / (ε₂ − ε₁)`.
/// "+" always labels the higher energy, whichever state is brighter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExcitonBasis {
    pub eps_plus: f64,
    pub eps_minus: f64,
    /// ⟨+|1⟩
    pub ovl_p1: f64,
    /// ⟨+|2⟩
    pub ovl_p2: f64,
    /// ⟨−|1⟩
    pub ovl_m1: f64,
    /// ⟨−|2⟩
    pub ovl_m2: f64,
    pub omega_r: f64,
}

impl ExcitonBasis {
    /// Rows are exciton states (+, −), columns are sites (1, 2).
    pub fn overlaps(&self) -> [[f64; 2]; 2] {
        [[self.ovl_p1, self.ovl_p2], [self.ovl_m1, self.ovl_m2]]
    }
}

/// Rabi splitting `√(Δε² + J²)`.
pub fn rabi_splitting(delta_eps: f64, coupling: f64) -> f64 {
    delta_eps.hypot(coupling)
}

/// Diagonalises the dimer block using the effective coupling `J⁰ cos φ`.
pub fn diagonalize_dimer(params: &PhotocellParams) -> ExcitonBasis {
    diagonalize_block(params.eps1, params.eps2, params.coupling())
}

pub(crate) fn diagonalize_block(eps1: f64, eps2: f64, coupling: f64) -> ExcitonBasis {
    let delta = eps2 - eps1;
    let omega_r = rabi_splitting(delta, coupling);
    let mean = 0.5 * (eps1 + eps2);
    // θ ∈ [-π/2, π/2] keeps cos θ = ⟨+|2⟩ non-negative.
    let theta = 0.5 * coupling.atan2(delta);
    let (s, c) = theta.sin_cos();
    ExcitonBasis {
        eps_plus: mean + 0.5 * omega_r,
        eps_minus: mean - 0.5 * omega_r,
        ovl_p1: s,
        ovl_p2: c,
        ovl_m1: c,
        ovl_m2: -s,
        omega_r,
    }
}

/// Shifts both site energies rigidly so that the lower exciton sits at
/// `target_eps_minus`, keeping ε₂ − ε₁ and the coupling fixed.
pub fn fix_lower_exciton(params: &PhotocellParams, target_eps_minus: f64) -> PhotocellParams {
    let delta = params.delta_eps();
    let omega_r = rabi_splitting(delta, params.coupling());
    let eps1 = target_eps_minus - 0.5 * delta + 0.5 * omega_r;
    PhotocellParams {
        eps1,
        eps2: eps1 + delta,
        ..params.clone()
    }
}
