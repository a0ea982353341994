//! Physical constants and thermal occupation.

use crate::{Error, Result};

/// Boltzmann constant in eV/K.
pub const K_B: f64 = 8.617_333_262e-5;

/// Coulomb constant e²/4πε₀ in eV·Å.
pub const COULOMB_EV_ANGSTROM: f64 = 14.3996;

/// Bohr radius in Å.
pub const BOHR_ANGSTROM: f64 = 0.529_177;

/// Bose-Einstein occupation `1 / (exp(ω / k_B T) - 1)`.
///
/// `ω = 0` returns 0; it only appears on transitions whose base rate is
/// also zero. Negative frequencies are rejected.
pub fn bose_occupation(omega: f64, temperature: f64) -> Result<f64> {
    if omega < 0.0 {
        return Err(Error::NegativeFrequency(omega));
    }
    if !(temperature > 0.0) {
        return Err(Error::InvalidParams(format!(
            "temperature must be positive, got {temperature}"
        )));
    }
    if omega == 0.0 {
        return Ok(0.0);
    }
    Ok(1.0 / (omega / (K_B * temperature)).exp_m1())
}
