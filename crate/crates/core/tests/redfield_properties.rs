mod common;

use common::{any_model, params_from_unit, unit_array};
use nalgebra::SMatrix;
use photocell::model::build_rate_matrix;
use photocell::redfield::{
    build_redfield_generator, dephasing_operator, exciton_transform, lindblad_superoperator,
    vec_index, DensityMatrix, RedfieldSolver, C64,
};
use photocell::steady::solve_steady_state;
use proptest::prelude::*;

fn random_state(u: &[f64]) -> DensityMatrix {
    let a = DensityMatrix::from_fn(|i, j| C64::new(u[5 * i + j] - 0.5, u[25 + 5 * i + j] - 0.5));
    let rho = a * a.adjoint();
    rho / rho.trace()
}

fn dephasing() -> impl Strategy<Value = Option<f64>> {
    prop_oneof![Just(None), (1e-5..1e-2f64).prop_map(Some)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generator_preserves_trace_and_hermiticity(
        model in any_model(),
        u in unit_array(),
        secular in any::<bool>(),
        deph in dephasing(),
        w in prop::collection::vec(0.0..1.0f64, 50),
    ) {
        let p = params_from_unit(model, &u, false);
        let g = build_redfield_generator(&p, secular, deph).unwrap();
        prop_assert!(g.trace_defect() <= 1e-12 * g.max_abs().max(1.0), "{:e}", g.trace_defect());
        let rho = random_state(&w);
        let d = g.apply(&rho);
        prop_assert!((d - d.adjoint()).norm() <= 1e-12 * g.max_abs().max(1e-300));
        prop_assert!(d.trace().norm() <= 1e-12 * g.max_abs().max(1e-300));
    }

    #[test]
    fn secular_population_block_is_the_rate_matrix(model in any_model(), u in unit_array()) {
        let p = params_from_unit(model, &u, false);
        let g = build_redfield_generator(&p, true, None).unwrap();
        let q = build_rate_matrix(&p).unwrap().q;
        let block = g.population_block();
        for i in 0..5 {
            for j in 0..5 {
                let (a, b) = (block[(i, j)], q[(i, j)]);
                prop_assert!((a - b).abs() <= 1e-12 * b.abs(), "({i},{j}): {a:e} vs {b:e}");
            }
        }
    }

    #[test]
    fn secular_steady_state_matches_rate_equations(model in any_model(), u in unit_array()) {
        let p = params_from_unit(model, &u, false);
        let rho = RedfieldSolver { secular: true, ..RedfieldSolver::default() }
            .density_matrix(&p)
            .unwrap();
        let rates = solve_steady_state(&build_rate_matrix(&p).unwrap()).unwrap();
        for i in 0..5 {
            let (a, b) = (rho[(i, i)].re, rates.populations[i]);
            prop_assert!((a - b).abs() <= 1e-9 * b.max(1e-12), "{i}: {a:e} vs {b:e}");
        }
    }

    #[test]
    fn steady_state_is_a_valid_stationary_density_matrix(
        model in any_model(),
        u in unit_array(),
        secular in any::<bool>(),
        deph in dephasing(),
    ) {
        let p = params_from_unit(model, &u, false);
        let solver = RedfieldSolver { secular, dephasing: deph, ..RedfieldSolver::default() };
        let g = solver.generator(&p).unwrap();
        let rho = solver.density_matrix(&p).unwrap();
        prop_assert!((rho - rho.adjoint()).norm() < 1e-10);
        prop_assert!((rho.trace() - C64::new(1.0, 0.0)).norm() < 1e-12);
        let resid = g.apply(&rho).iter().map(|z| z.norm()).fold(0.0, f64::max);
        prop_assert!(resid <= 1e-10 * g.max_abs(), "{resid:e}");
        let eig = rho.symmetric_eigen();
        prop_assert!(eig.eigenvalues.iter().all(|&x| x >= -1e-8), "{:?}", eig.eigenvalues);
    }

    #[test]
    fn dephasing_map_is_completely_positive(
        model in any_model(),
        u in unit_array(),
        rate in 1e-5..1e-2f64,
        t in 0.1..10.0f64,
    ) {
        let p = params_from_unit(model, &u, false);
        let x = exciton_transform(&p);
        let d = lindblad_superoperator(&(x * dephasing_operator(rate) * x.transpose()));
        let step = (d * C64::from(t / rate)).exp();
        // Choi matrix: ⟨i a| C |j b⟩ = Φ(|i⟩⟨j|)_ab
        let choi = SMatrix::<C64, 25, 25>::from_fn(|row, col| {
            let (i, a) = (row / 5, row % 5);
            let (j, b) = (col / 5, col % 5);
            step[(vec_index(a, b), vec_index(i, j))]
        });
        let min = choi.symmetric_eigen().eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
        prop_assert!(min >= -1e-10, "{min:e}");
    }
}
