use proptest::prelude::*;

use nsf_relent::reference::ReferenceSolution;
use nsf_relent::relent::{bands_for, relative_entropy_ledger, ess_res_mask, relative_entropy_density, split, ReferenceSample};
use nsf_relent::solver::{integrate, FieldState, Grid1D, RunOptions, Trajectory};
use nsf_relent::thermo::GasModel;

/// Kinetic and thermal densities of one cell against `(1, 1, big_u)`.
fn cell_density(m: &GasModel, rho: f64, u: f64, theta: f64, big_u: f64) -> (f64, f64) {
    let refs = ReferenceSample {
        t: 0.0,
        rho: vec![1.0],
        theta: vec![1.0],
        u: vec![big_u],
    };
    let (k, e) = relative_entropy_density(m, &[rho], &[u], &[theta], &refs).unwrap();
    (k[0], e[0])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn relative_entropy_is_nonnegative(
        rho in 0.05f64..12.0, theta in 0.05f64..12.0, r in 0.2f64..5.0, big in 0.2f64..5.0,
    ) {
        let m = GasModel::default();
        let e = m.relative_entropy(rho, theta, r, big).unwrap();
        prop_assert!(e >= -1e-12 * (1.0 + m.energy_density(rho, theta).unwrap()));
    }

    #[test]
    fn integrand_nonnegative_with_velocity(
        rho in 0.1f64..10.0, theta in 0.1f64..10.0, u in -2.0f64..2.0, big_u in -2.0f64..2.0,
    ) {
        let m = GasModel::default();
        let (kin, ent) = cell_density(&m, rho, u, theta, big_u);
        prop_assert!(kin >= 0.0);
        prop_assert!(ent >= -1e-12 * (1.0 + rho + theta.powi(4)));
    }

    #[test]
    fn temperature_inversion_roundtrip(rho in 0.1f64..10.0, theta in 0.1f64..10.0) {
        let m = GasModel::default();
        let e = m.internal_energy(rho, theta).unwrap();
        let back = m.temperature_from_internal_energy(rho, e).unwrap();
        prop_assert!((back - theta).abs() <= 1e-10 * theta);
    }

    #[test]
    fn pressure_homogeneity(z in 0.01f64..50.0, theta in 0.2f64..5.0, lambda in 0.5f64..2.0) {
        let m = GasModel::default();
        let cold = |t: f64| m.pressure(z * t.powf(1.5), t).unwrap() - m.a / 3.0 * t.powi(4);
        let ratio = cold(lambda * theta) / cold(theta);
        prop_assert!((ratio - lambda.powf(2.5)).abs() <= 1e-10 * ratio);
    }

    #[test]
    fn split_partitions_the_integrand(vals in prop::collection::vec(0.0f64..1.0, 16), flags in prop::collection::vec(any::<bool>(), 16)) {
        let (a, b) = split(&vals, &flags);
        for k in 0..vals.len() {
            prop_assert_eq!(a[k] + b[k], vals[k]);
            prop_assert!(a[k] == 0.0 || b[k] == 0.0);
        }
    }
}

#[test]
fn mask_flags_cells_outside_bands() {
    let reference = ReferenceSolution::default();
    let bands = bands_for(&reference, 1.0).unwrap();
    let mask = ess_res_mask(&[1.0, 1e-3, 1.0], &[1.0, 1.0, 1e3], &bands);
    assert_eq!(mask, vec![true, false, false]);
}

#[test]
fn coercivity_on_essential_cells() {
    use nsf_relent::thermo::{stability_audit, AuditConfig};
    let m = GasModel::default();
    let report = stability_audit(&m, &AuditConfig { samples: 2000, ..AuditConfig::default() }).unwrap();
    let c = report.coercivity_ess.value;
    assert!(c > 0.0);
    let b = report.bands;
    for k in 0..400 {
        let rho = b.rho_lo + (b.rho_hi - b.rho_lo) * ((k * 37 % 400) as f64 + 0.5) / 400.0;
        let theta = b.theta_lo + (b.theta_hi - b.theta_lo) * (k as f64 + 0.5) / 400.0;
        let (u, big_u) = (0.3, -0.1);
        let (kin, ent) = cell_density(&m, rho, u, theta, big_u);
        let quad = (rho - 1.0).powi(2) + (theta - 1.0).powi(2) + rho * (u - big_u).powi(2) / 2.0;
        assert!(kin + ent >= c.min(1.0) * quad * (1.0 - 1e-9), "({rho}, {theta})");
    }
}

#[test]
fn identical_trajectories_have_zero_ledger() {
    let m = GasModel::default();
    let reference = ReferenceSolution::default();
    let grid = Grid1D::periodic(32, 1.0).unwrap();
    let init = FieldState::sample(&m, &grid, 0.0, |x| {
        let p = reference.eval(0.0, x);
        (p.rho.v, p.u.v, p.theta.v)
    })
    .unwrap();
    let opts = RunOptions { t_end: 0.1, output_every: 5, ..RunOptions::default() };
    let numeric = integrate(&m, &grid, init, Some(&reference), &opts).unwrap();
    // the reference sampled at the stored times plays the numeric solution
    let sampled = Trajectory {
        states: numeric
            .states
            .iter()
            .map(|s| {
                FieldState::sample(&m, &grid, s.t, |x| {
                    let p = reference.eval(s.t, x);
                    (p.rho.v, p.u.v, p.theta.v)
                })
                .unwrap()
            })
            .collect(),
        ..numeric
    };
    let bands = bands_for(&reference, 0.1).unwrap();
    for rep in relative_entropy_ledger(&m, &sampled, &reference, Some(&reference), &bands).unwrap() {
        assert_eq!(rep.i, 0.0);
        assert_eq!(rep.dissipation_acc, 0.0);
        assert!(rep.rhs_terms.iter().all(|(_, v)| *v == 0.0));
        assert_eq!(rep.excess_margin, 0.0);
    }
}
