//! Second-order (Bloch-Redfield) generator in Liouville space, with a
//! secular switch, phonon reorganisation shifts and optional site-basis
//! pure dephasing, used to cross-check the rate equations.

mod channels;
mod compare;
mod generator;

pub use channels::{
    build_coupling_operators, dephasing_operator, exciton_transform, half_fourier_rate, site,
    BathLine, CouplingChannel, PHONON_SHIFT_FRACTION,
};
pub use compare::{
    compare_solvers, compare_surface, compare_trapping, compare_with_rates, SolverComparison,
};
pub use generator::{
    build_redfield_generator, generator_from_channels, lindblad_superoperator,
    steady_state_liouville, vec_index, DensityMatrix, LiouvilleGenerator, RedfieldSolver,
    Superoperator, C64, SECULAR_TOLERANCE,
};
