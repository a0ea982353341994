use nalgebra::{Matrix5, Vector5};

use crate::model::{level, RateMatrix};
use crate::{Error, Result};

/// Steady populations (P₊, P₋, P_α, P_β, P_g).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SteadyState {
    pub populations: Vector5<f64>,
}

impl SteadyState {
    pub fn p_alpha(&self) -> f64 {
        self.populations[level::ALPHA]
    }

    pub fn p_beta(&self) -> f64 {
        self.populations[level::BETA]
    }
}

/// Stationary distribution of 𝒬 by Grassmann-Taksar-Heyman elimination.
///
/// GTH only ever adds and multiplies non-negative off-diagonal rates, so
/// populations many orders of magnitude below P_g keep full relative
/// precision; the trap voltage takes a logarithm of exactly such ratios.
pub fn solve_steady_state(q: &RateMatrix) -> Result<SteadyState> {
    let populations = gth_stationary(&q.q)?;
    Ok(SteadyState { populations })
}

/// GTH on a column-convention generator (`q[(i, j)]` = rate j → i).
pub(crate) fn gth_stationary(q: &Matrix5<f64>) -> Result<Vector5<f64>> {
    gth_core(q, false)
}

/// GTH that tolerates signed off-diagonals, as produced by eliminating
/// coherences from a Redfield generator. Still exact in exact arithmetic;
/// only the subtraction-free guarantee is lost.
pub(crate) fn gth_stationary_signed(q: &Matrix5<f64>) -> Result<Vector5<f64>> {
    gth_core(q, true)
}

fn gth_core(q: &Matrix5<f64>, allow_negative: bool) -> Result<Vector5<f64>> {
    const N: usize = level::COUNT;
    // r[i][j]: rate i -> j; the ground state is placed first so it is
    // eliminated last.
    let order = [
        level::GROUND,
        level::PLUS,
        level::MINUS,
        level::ALPHA,
        level::BETA,
    ];
    let mut r = [[0.0f64; N]; N];
    for (a, &i) in order.iter().enumerate() {
        for (b, &j) in order.iter().enumerate() {
            if a != b {
                let v = q[(j, i)];
                if v < 0.0 && !allow_negative {
                    return Err(Error::InvalidParams(format!(
                        "negative off-diagonal rate {v:e}"
                    )));
                }
                r[a][b] = v;
            }
        }
    }
    for n in (1..N).rev() {
        let s: f64 = r[n][..n].iter().sum();
        if !(s > 0.0) {
            return Err(Error::DegenerateNetwork { state: order[n] });
        }
        for row in r.iter_mut().take(n) {
            row[n] /= s;
        }
        let last = r[n];
        for (i, row) in r.iter_mut().enumerate().take(n) {
            let rin = row[n];
            if rin == 0.0 {
                continue;
            }
            for (j, x) in row.iter_mut().enumerate().take(n) {
                if i != j {
                    *x += rin * last[j];
                }
            }
        }
    }
    let mut pi = [0.0f64; N];
    pi[0] = 1.0;
    for n in 1..N {
        pi[n] = (0..n).map(|i| pi[i] * r[i][n]).sum();
    }
    let total: f64 = pi.iter().sum();
    let mut out = Vector5::zeros();
    for (a, &i) in order.iter().enumerate() {
        out[i] = pi[a] / total;
    }
    Ok(out)
}

/// Fixed-step RK4 integration of `dP/dt = 𝒬P` up to `horizon`.
///
/// The step is `min(max_step, 0.1 / max|𝒬|)`, shrunk so that an integer
/// number of steps lands exactly on the horizon.
pub fn integrate_rate_ode(
    q: &RateMatrix,
    p0: &Vector5<f64>,
    horizon: f64,
    max_step: Option<f64>,
) -> Result<Vector5<f64>> {
    if !(horizon > 0.0) {
        return Err(Error::InvalidIntegration(format!(
            "horizon must be positive, got {horizon}"
        )));
    }
    if let Some(h) = max_step {
        if !(h > 0.0) {
            return Err(Error::InvalidIntegration(format!(
                "step must be positive, got {h}"
            )));
        }
    }
    let m = &q.q;
    let scale = q.max_abs();
    if scale == 0.0 {
        return Ok(*p0);
    }
    let stable = 0.1 / scale;
    let h_max = max_step.map_or(stable, |h| h.min(stable));
    let steps = (horizon / h_max).ceil() as u64;
    let h = horizon / steps as f64;
    let mut p = *p0;
    for _ in 0..steps {
        let k1 = m * p;
        let k2 = m * (p + k1 * (0.5 * h));
        let k3 = m * (p + k2 * (0.5 * h));
        let k4 = m * (p + k3 * h);
        p += (k1 + (k2 + k3) * 2.0 + k4) * (h / 6.0);
    }
    Ok(p)
}
