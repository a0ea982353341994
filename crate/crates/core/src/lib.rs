//! Dark-state-protected molecular photocells.
//!
//! A five-level quantum heat engine (two coupled chromophores, an abstract
//! two-level reaction centre and a shared ground state) driven by a hot
//! photon bath and drained through a load by cold phonon baths. The crate
//! covers:
//!
//! - [`model`]: parameters, exciton basis, darkness metric and the Pauli
//!   rate matrix for the independent, symmetric and asymmetric dimers.
//! - [`steady`]: steady states, current/voltage/power, power maximisation
//!   over the trapping rate and the parameter sweeps built on top of it.
//! - [`redfield`]: the full second-order Bloch-Redfield generator in
//!   Liouville space, used to validate the rate equations.
//! - [`screening`]: Förster coupling estimates and donor/acceptor ranking
//!   over tabulated molecular properties.
//! - [`config`] and [`cli`]: the `key = value` run configuration, named
//!   presets and the command dispatcher behind the `photocell` binary.
//!
//! Energies and rates are in eV (ħ = 1), temperatures in Kelvin.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod config;
pub mod error;
pub mod model;
pub mod output;
pub mod presets;
pub mod redfield;
pub mod screening;
pub mod steady;
pub mod units;

pub use error::{Error, Result};
pub use model::{ExcitonBasis, ModelKind, PhotocellParams, RateMatrix};
pub use steady::{OperatingPoint, OptimizationResult, SteadyState};
