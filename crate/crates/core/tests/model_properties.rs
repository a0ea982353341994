mod common;

use common::{any_model, params_from_unit, rel, unit_array};
use nalgebra::{Matrix2, Vector5};
use photocell::model::{
    build_rate_matrix, dark_state_coupling, darkness_angle, diagonalize_dimer,
    exciton_optical_rates, level, optical_rates, trap_transfer_rates, Bath, ModelKind,
    PhotocellParams,
};
use photocell::steady::{
    enhancement_ratio, integrate_rate_ode, log_grid, maximize_power, operating_point,
    solve_steady_state, PowerSearch, RateEquations, SteadyStateSolver,
};
use photocell::units::K_B;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rate_matrix_is_a_detailed_balance_generator(model in any_model(), u in unit_array()) {
        let p = params_from_unit(model, &u, false);
        let q = build_rate_matrix(&p).unwrap();
        prop_assert!(q.column_sum_defect() <= 1e-15 * q.max_abs());
        for r in 0..5 {
            for c in 0..5 {
                if r != c {
                    prop_assert!(q.q[(r, c)] >= 0.0);
                }
            }
        }
        for t in &q.transitions {
            let temp = match t.bath {
                Bath::Photon => p.t_hot,
                Bath::Phonon => p.t_cold,
            };
            prop_assert_eq!(t.temperature, temp);
            if t.down > 0.0 {
                let want = (-t.omega / (K_B * temp)).exp();
                prop_assert!(rel(t.up / t.down, want) < 1e-12, "{} vs {}", t.up / t.down, want);
            }
        }
    }

    #[test]
    fn optical_sum_rule(model in prop::sample::select(vec![ModelKind::Symmetric, ModelKind::Asymmetric]), u in unit_array()) {
        let p = params_from_unit(model, &u, false);
        let (bright, dark) = optical_rates(&p, &diagonalize_dimer(&p));
        prop_assert!(rel(bright + dark, p.gamma_1g + p.gamma_2g) < 1e-14);
    }

    #[test]
    fn asymmetric_trap_sum_rule(u in unit_array()) {
        let p = params_from_unit(ModelKind::Asymmetric, &u, false);
        let (plus, minus) = trap_transfer_rates(&p, &diagonalize_dimer(&p));
        prop_assert!(rel(plus + minus, p.gamma_1alpha) < 1e-14);
    }

    #[test]
    fn dark_state_condition_closes(z in 1e-3..0.999f64, de in 1e-4..1.0f64) {
        let j = dark_state_coupling(z, de).unwrap();
        prop_assert!(darkness_angle(de, z, j, 0.0).unwrap() < 1e-12);
    }

    #[test]
    fn darkness_is_a_ratio(de in 0.0..0.5f64, z in 0.0..1.0f64, j in 0.0..0.1f64,
                           phi in -std::f64::consts::FRAC_PI_2..std::f64::consts::FRAC_PI_2) {
        prop_assume!(de > 0.0 || j * phi.cos() > 1e-9);
        let t = darkness_angle(de, z, j, phi).unwrap();
        prop_assert!((-1e-15..=1.0 + 1e-12).contains(&t), "{t}");
    }

    #[test]
    fn uncoupled_identical_dipoles_are_equally_bright(de in 1e-4..1.0f64) {
        prop_assert!((darkness_angle(de, 1.0, 0.0, 0.0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn dimer_eigenproblem_matches_dense_solver(e1 in 1.0..3.0f64, de in 0.0..0.5f64,
                                               j in -0.1..0.1f64) {
        let p = PhotocellParams {
            model: ModelKind::Asymmetric,
            eps1: e1,
            eps2: e1 + de,
            j12: j,
            ..PhotocellParams::default()
        };
        let b = diagonalize_dimer(&p);
        let eig = Matrix2::new(e1, 0.5 * j, 0.5 * j, e1 + de).symmetric_eigen();
        let (lo, hi) = if eig.eigenvalues[0] < eig.eigenvalues[1] { (0, 1) } else { (1, 0) };
        prop_assert!((b.eps_minus - eig.eigenvalues[lo]).abs() < 1e-12);
        prop_assert!((b.eps_plus - eig.eigenvalues[hi]).abs() < 1e-12);
        // eigenvectors up to sign, where they are unique
        prop_assume!(b.omega_r > 1e-6);
        let vm = eig.eigenvectors.column(lo);
        let dot = (b.ovl_m1 * vm[0] + b.ovl_m2 * vm[1]).abs();
        prop_assert!((dot - 1.0).abs() < 1e-12);
    }

    #[test]
    fn steady_state_is_a_null_vector(model in any_model(), u in unit_array()) {
        let p = params_from_unit(model, &u, false);
        let q = build_rate_matrix(&p).unwrap();
        let s = solve_steady_state(&q).unwrap();
        let resid = (q.q * s.populations).amax();
        prop_assert!(resid < 1e-12 * q.max_abs(), "{resid:e}");
        prop_assert!((s.populations.sum() - 1.0).abs() < 1e-14);
        prop_assert!(s.populations.iter().all(|&x| x >= -1e-12));
    }

    #[test]
    fn darkness_kills_bright_emission(z in 0.01..0.99f64, de in 1e-3..0.5f64) {
        let j = dark_state_coupling(z, de).unwrap();
        let p = PhotocellParams {
            model: ModelKind::Asymmetric,
            eps1: 2.0,
            eps2: 2.0 + de,
            j12: j,
            z,
            ..PhotocellParams::default()
        };
        let b = diagonalize_dimer(&p);
        let (_, minus) = exciton_optical_rates(&b, z, 0.0, 1.0);
        prop_assert!(minus / (1.0 + z * z) < 1e-12);
    }

    #[test]
    fn no_light_no_voltage(model in any_model(), u in unit_array()) {
        let mut p = params_from_unit(model, &u, false);
        p.gamma_1g = 0.0;
        p.gamma_2g = 0.0;
        let s = RateEquations.steady_state(&p).unwrap();
        let op = operating_point(&s, &p).unwrap();
        prop_assert!(op.voltage.abs() < 1e-9, "V = {:e}", op.voltage);
    }

    #[test]
    fn self_comparison_is_exactly_one(model in any_model(), u in unit_array()) {
        let p = params_from_unit(model, &u, false);
        prop_assert_eq!(enhancement_ratio(&p, &p).unwrap(), 1.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn maximum_dominates_coarse_grid(model in any_model(), u in unit_array()) {
        let p = params_from_unit(model, &u, false);
        let r = maximize_power(&p).unwrap();
        prop_assert_eq!(maximize_power(&p).unwrap(), r);
        let search = PowerSearch::default();
        for g in log_grid(search.lo, search.hi, 41) {
            let q = p.with_gamma_alphabeta(g);
            let s = RateEquations.steady_state(&q).unwrap();
            if let Ok(op) = operating_point(&s, &q) {
                prop_assert!(op.power <= r.best_point.power * (1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn steady_state_matches_long_time_integration(model in any_model(), u in unit_array()) {
        let p = params_from_unit(model, &u, true);
        let q = build_rate_matrix(&p).unwrap();
        let gap = q
            .q
            .complex_eigenvalues()
            .iter()
            .map(|l| -l.re)
            .filter(|&r| r > 1e-12 * q.max_abs())
            .fold(f64::INFINITY, f64::min);
        prop_assume!(q.max_abs() / gap < 2e3);
        let mut p0 = Vector5::zeros();
        p0[level::GROUND] = 1.0;
        let late = integrate_rate_ode(&q, &p0, 40.0 / gap, None).unwrap();
        let s = solve_steady_state(&q).unwrap();
        prop_assert!((late - s.populations).amax() < 1e-8);
    }
}
