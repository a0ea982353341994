//! The five-level photocell: parameters, exciton basis, darkness metric and
//! the Pauli rate matrix.

mod basis;
mod darkness;
mod params;
mod rates;

pub use basis::{diagonalize_dimer, fix_lower_exciton, rabi_splitting, ExcitonBasis};
pub(crate) use darkness::snapped_sin_cos;
pub use darkness::{
    dark_state_coupling, dark_z_for_coupling, darkness_angle, exciton_optical_rates,
    exciton_relaxation_rate, optical_rates, trap_transfer_rates,
};
pub use params::{ModelKind, PhotocellParams, EPS_G};
pub use rates::{build_rate_matrix, level, level_energies, Bath, RateMatrix, Transition};
