use nalgebra::{Complex, Matrix5, SMatrix};

use crate::model::{level::COUNT, level_energies, PhotocellParams};
use crate::steady::{gth_stationary_signed, SteadyState, SteadyStateSolver};
use crate::{Error, Result};

use super::channels::{
    build_coupling_operators, dephasing_operator, exciton_transform, half_fourier_rate,
    CouplingChannel, PHONON_SHIFT_FRACTION,
};

pub type C64 = Complex<f64>;
pub type DensityMatrix = Matrix5<C64>;
/// Superoperator on vectorised 5×5 matrices, `|i⟩⟨j| → i·5 + j`.
pub type Superoperator = SMatrix<C64, 25, 25>;

const LDIM: usize = COUNT * COUNT;

/// Bohr-frequency differences below this count as degenerate in the
/// secular filter (eV).
pub const SECULAR_TOLERANCE: f64 = 1e-9;

pub fn vec_index(i: usize, j: usize) -> usize {
    i * COUNT + j
}

fn unvec(rs: usize) -> (usize, usize) {
    (rs / COUNT, rs % COUNT)
}

/// Bloch-Redfield generator in the exciton eigenbasis.
#[derive(Clone, Debug, PartialEq)]
pub struct LiouvilleGenerator {
    pub matrix: Superoperator,
    /// Level energies (+, −, α, β, g) defining the Bohr frequencies.
    pub energies: [f64; COUNT],
    pub secular: bool,
}

impl LiouvilleGenerator {
    pub fn apply(&self, rho: &DensityMatrix) -> DensityMatrix {
        let mut v = SMatrix::<C64, LDIM, 1>::zeros();
        for rs in 0..LDIM {
            let (r, s) = unvec(rs);
            v[rs] = rho[(r, s)];
        }
        let w = self.matrix * v;
        DensityMatrix::from_fn(|i, j| w[vec_index(i, j)])
    }

    /// Real part of the population-to-population block, in the column
    /// convention of the rate matrix.
    pub fn population_block(&self) -> Matrix5<f64> {
        Matrix5::from_fn(|i, j| self.matrix[(vec_index(i, i), vec_index(j, j))].re)
    }

    /// Largest modulus of the trace row `Σᵢ ⟨ii|𝓛`.
    pub fn trace_defect(&self) -> f64 {
        (0..LDIM)
            .map(|col| {
                (0..COUNT)
                    .map(|i| self.matrix[(vec_index(i, i), col)])
                    .sum::<C64>()
                    .norm()
            })
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.matrix.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Superoperator of `ρ ↦ A ρ A − ½{A², ρ}` for a Hermitian `A`.
pub fn lindblad_superoperator(op: &Matrix5<f64>) -> Superoperator {
    let a = op.map(C64::from);
    let a2 = a * a;
    let mut out = Superoperator::zeros();
    for rs in 0..LDIM {
        let (r, s) = unvec(rs);
        let mut e = DensityMatrix::zeros();
        e[(r, s)] = C64::new(1.0, 0.0);
        let d = a * e * a - (a2 * e + e * a2) * C64::from(0.5);
        for ij in 0..LDIM {
            let (i, j) = unvec(ij);
            out[(ij, rs)] = d[(i, j)];
        }
    }
    out
}

/// `𝓛ρ = −i[H, ρ] − Σ_ν [A_ν, Λ_ν ρ − ρ Λ_ν†]` with `(Λ_ν)_ab = Γ_ν(ε_b − ε_a) (A_ν)_ab`,
/// optionally secularised, plus an optional Lindblad term. `u` rotates the
/// channel operators into the eigenbasis of `energies`.
pub fn generator_from_channels(
    energies: [f64; COUNT],
    u: &Matrix5<f64>,
    channels: &[CouplingChannel],
    secular: bool,
    lindblad: Option<&Matrix5<f64>>,
) -> Result<LiouvilleGenerator> {
    let mut bath_ops = Vec::with_capacity(channels.len());
    for ch in channels {
        if !(ch.base_rate >= 0.0) || !ch.base_rate.is_finite() {
            return Err(Error::InvalidParams(format!(
                "channel {} has rate {}",
                ch.label, ch.base_rate
            )));
        }
        let mut a = ch.exciton_operator(u);
        // rotation round-off on exactly dark matrix elements
        let floor = 1e-14 * a.amax();
        a.apply(|v| {
            if v.abs() < floor {
                *v = 0.0
            }
        });
        let mut lambda = DensityMatrix::zeros();
        for x in 0..COUNT {
            for y in 0..COUNT {
                if a[(x, y)] != 0.0 {
                    let line = half_fourier_rate(ch, energies[y] - energies[x])?;
                    lambda[(x, y)] = C64::new(line.real, line.imag) * a[(x, y)];
                }
            }
        }
        bath_ops.push((a.map(C64::from), lambda, lambda.adjoint()));
    }

    let i_unit = C64::new(0.0, 1.0);
    let mut m = Superoperator::zeros();
    for rs in 0..LDIM {
        let (r, s) = unvec(rs);
        let mut e = DensityMatrix::zeros();
        e[(r, s)] = C64::new(1.0, 0.0);
        let mut out = DensityMatrix::zeros();
        out[(r, s)] = -i_unit * (energies[r] - energies[s]);
        for (a, lambda, lambda_dag) in &bath_ops {
            let x = lambda * e - e * lambda_dag;
            out -= a * x - x * a;
        }
        for ij in 0..LDIM {
            let (i, j) = unvec(ij);
            m[(ij, rs)] = out[(i, j)];
        }
    }

    if secular {
        for ij in 0..LDIM {
            let (i, j) = unvec(ij);
            for rs in 0..LDIM {
                let (r, s) = unvec(rs);
                let gap = (energies[i] - energies[j]) - (energies[r] - energies[s]);
                if gap.abs() >= SECULAR_TOLERANCE {
                    m[(ij, rs)] = C64::new(0.0, 0.0);
                }
            }
        }
    }
    if let Some(op) = lindblad {
        m += lindblad_superoperator(&(u * op * u.transpose()));
    }
    Ok(LiouvilleGenerator {
        matrix: m,
        energies,
        secular,
    })
}

/// Full second-order generator for `params` with the default reorganisation
/// shifts; `dephasing` adds site-basis pure dephasing at that rate.
pub fn build_redfield_generator(
    params: &PhotocellParams,
    secular: bool,
    dephasing: Option<f64>,
) -> Result<LiouvilleGenerator> {
    RedfieldSolver {
        secular,
        dephasing,
        shift_fraction: PHONON_SHIFT_FRACTION,
    }
    .generator(params)
}

/// Steady state of a generator by eliminating the coherences:
/// `c = −𝓛_cc⁻¹ 𝓛_cp p`, leaving an effective 5×5 population generator
/// that is solved by (signed) GTH elimination.
pub fn steady_state_liouville(generator: &LiouvilleGenerator) -> Result<DensityMatrix> {
    let m = &generator.matrix;
    let pops: Vec<usize> = (0..COUNT).map(|i| vec_index(i, i)).collect();
    let cohs: Vec<usize> = (0..LDIM).filter(|k| !pops.contains(k)).collect();
    const NC: usize = LDIM - COUNT;

    let l_cc = SMatrix::<C64, NC, NC>::from_fn(|a, b| m[(cohs[a], cohs[b])]);
    let l_cp = SMatrix::<C64, NC, COUNT>::from_fn(|a, b| m[(cohs[a], pops[b])]);
    let l_pc = SMatrix::<C64, COUNT, NC>::from_fn(|a, b| m[(pops[a], cohs[b])]);
    let l_pp = Matrix5::<C64>::from_fn(|a, b| m[(pops[a], pops[b])]);

    let x = if l_cp.iter().all(|z| *z == C64::new(0.0, 0.0)) {
        SMatrix::<C64, NC, COUNT>::zeros()
    } else {
        l_cc.lu()
            .solve(&l_cp)
            .ok_or_else(|| Error::DegenerateNullSpace("coherence block is singular".into()))?
    };
    if x.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::DegenerateNullSpace(
            "coherence elimination overflowed".into(),
        ));
    }
    let q_eff = (l_pp - l_pc * x).map(|z| z.re);
    let p = gth_stationary_signed(&q_eff).map_err(|e| match e {
        Error::DegenerateNetwork { state } => Error::DegenerateNullSpace(format!(
            "effective population generator has no path out of level {state}"
        )),
        other => other,
    })?;
    let pc = p.map(C64::from);
    let c = -(x * pc);

    let mut rho = DensityMatrix::zeros();
    for i in 0..COUNT {
        rho[(i, i)] = pc[i];
    }
    for (a, &k) in cohs.iter().enumerate() {
        let (i, j) = unvec(k);
        rho[(i, j)] = c[a];
    }
    Ok(rho)
}

/// Steady-state solver backed by the Bloch-Redfield generator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RedfieldSolver {
    pub secular: bool,
    /// Pure-dephasing rate γ_dephase (eV), if any.
    pub dephasing: Option<f64>,
    /// Phonon reorganisation shift λ / γ.
    pub shift_fraction: f64,
}

impl Default for RedfieldSolver {
    fn default() -> Self {
        RedfieldSolver {
            secular: false,
            dephasing: None,
            shift_fraction: PHONON_SHIFT_FRACTION,
        }
    }
}

impl RedfieldSolver {
    pub fn generator(&self, params: &PhotocellParams) -> Result<LiouvilleGenerator> {
        params.validate()?;
        if !(self.shift_fraction >= 0.0 && self.shift_fraction.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "shift fraction must be non-negative, got {}",
                self.shift_fraction
            )));
        }
        let deph = match self.dephasing {
            Some(g) if !(g >= 0.0 && g.is_finite()) => {
                return Err(Error::InvalidParams(format!(
                    "dephasing rate must be non-negative, got {g}"
                )))
            }
            Some(g) if g > 0.0 => Some(dephasing_operator(g)),
            _ => None,
        };
        let mut channels = build_coupling_operators(params);
        for ch in channels.iter_mut().filter(|c| c.shift_fraction != 0.0) {
            ch.shift_fraction = self.shift_fraction;
        }
        generator_from_channels(
            level_energies(params),
            &exciton_transform(params),
            &channels,
            self.secular,
            deph.as_ref(),
        )
    }

    pub fn density_matrix(&self, params: &PhotocellParams) -> Result<DensityMatrix> {
        steady_state_liouville(&self.generator(params)?)
    }
}

impl SteadyStateSolver for RedfieldSolver {
    fn steady_state(&self, params: &PhotocellParams) -> Result<SteadyState> {
        let rho = self.density_matrix(params)?;
        Ok(SteadyState {
            populations: rho.diagonal().map(|z| z.re),
        })
    }
}
