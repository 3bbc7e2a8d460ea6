mod common;

use common::{entropy_oracle, gauss_legendre, p_default, random_points, rel_err};
use nsf_relent::thermo::{GasModel, MonatomicDegenerate, StructuralPressure};

#[test]
fn quadrature_rule_is_exact_for_polynomials() {
    let (x, w) = gauss_legendre(24);
    let int: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(46)).sum();
    assert!((int - 2.0 / 47.0).abs() < 1e-14);
}

#[test]
fn entropy_closed_form_matches_quadrature() {
    let fam = MonatomicDegenerate::default();
    for z in [0.1, 1.0, 10.0, 100.0] {
        let (closed, oracle) = (fam.entropy_integral(z), entropy_oracle(z));
        assert!((closed - oracle).abs() <= 1e-8, "Z={z}: {closed} vs {oracle}");
    }
    assert!((entropy_oracle(1.0) - 2.8131209717260166).abs() < 1e-9);
}

#[test]
fn unit_state_values() {
    let m = GasModel::default();
    let p1 = 2f64.powf(2.0 / 3.0);
    assert!((m.pressure(1.0, 1.0).unwrap() - (p1 + 1.0 / 3.0)).abs() < 1e-14);
    assert!((m.internal_energy(1.0, 1.0).unwrap() - (1.5 * p1 + 1.0)).abs() < 1e-14);
    let s = entropy_oracle(1.0) + 4.0 / 3.0;
    assert!((m.entropy(1.0, 1.0).unwrap() - s).abs() < 1e-9);
    let h = m.ballistic_free_energy(1.0, 1.0, 1.0).unwrap();
    assert!((h - (1.5 * p1 + 1.0 - s)).abs() < 1e-9);
    // chain rule by hand: (3/2)(5/2 P - 3/2 P' Z) + 4 a theta^3 / rho
    let (p, dp) = p_default(1.0);
    let de = m.thermo_eval(1.0, 1.0).unwrap().de_dtheta;
    assert!((de - (1.5 * (2.5 * p - 1.5 * dp) + 4.0)).abs() < 1e-13);
}

#[test]
fn gibbs_relation_against_central_differences() {
    let m = GasModel::default();
    for (rho, theta) in random_points(1000, 0.1, 10.0, 11) {
        let (hr, ht) = (1e-4 * rho, 1e-4 * theta);
        let s = |r, t| m.entropy(r, t).unwrap();
        let e = |r, t| m.internal_energy(r, t).unwrap();
        let ds_dt = (s(rho, theta + ht) - s(rho, theta - ht)) / (2.0 * ht);
        let de_dt = (e(rho, theta + ht) - e(rho, theta - ht)) / (2.0 * ht);
        let ds_dr = (s(rho + hr, theta) - s(rho - hr, theta)) / (2.0 * hr);
        let de_dr = (e(rho + hr, theta) - e(rho - hr, theta)) / (2.0 * hr);
        let p = m.pressure(rho, theta).unwrap();
        assert!(rel_err(ds_dt, de_dt / theta) <= 1e-6, "({rho}, {theta})");
        let rhs = (de_dr - p / (rho * rho)) / theta;
        let scale = ds_dr.abs().max(de_dr.abs() / theta).max(p / (rho * rho * theta));
        assert!((ds_dr - rhs).abs() <= 1e-6 * scale, "({rho}, {theta})");
    }
}

#[test]
fn analytic_partials_match_differences() {
    let m = GasModel::default();
    for (rho, theta) in random_points(200, 0.1, 10.0, 12) {
        let ev = m.thermo_eval(rho, theta).unwrap();
        let h = 1e-5 * theta;
        let dp = (m.pressure(rho, theta + h).unwrap() - m.pressure(rho, theta - h).unwrap()) / (2.0 * h);
        assert!(rel_err(ev.dp_dtheta, dp) < 1e-7);
        let h = 1e-5 * rho;
        let dp = (m.pressure(rho + h, theta).unwrap() - m.pressure(rho - h, theta).unwrap()) / (2.0 * h);
        assert!(rel_err(ev.dp_drho, dp) < 1e-7);
    }
}

#[test]
fn inversion_roundtrip_and_monotonicity() {
    let m = GasModel::default();
    let e = m.internal_energy(0.7, 1.3).unwrap();
    assert!((m.temperature_from_internal_energy(0.7, e).unwrap() - 1.3).abs() < 1e-10);
    let t1 = m.temperature_from_internal_energy(1.0, 3.0).unwrap();
    let t2 = m.temperature_from_internal_energy(1.0, 3.1).unwrap();
    assert!(t1 < t2);
    let unit = m.temperature_from_internal_energy(1.0, 3.3811).unwrap();
    assert!((unit - 1.0).abs() < 1e-4);
}

#[test]
fn relative_entropy_second_order_taylor() {
    let m = GasModel::default();
    let d = m.ballistic_derivatives(1.0, 1.0, 1.0).unwrap();
    let dp = m.thermo_eval(1.0, 1.0).unwrap().dp_drho;
    assert!(rel_err(d.d_rho_rho, dp) < 1e-12);
    for delta in [1e-1, 1e-2, 1e-3] {
        let e = m.relative_entropy(1.0 + delta, 1.0, 1.0, 1.0).unwrap();
        let taylor = 0.5 * dp * delta * delta;
        assert!(rel_err(e, taylor) < 2.0 * delta, "delta={delta}: {e} vs {taylor}");
    }
}

#[test]
fn ballistic_minimum_in_temperature() {
    let m = GasModel::default();
    for (rho, big) in random_points(50, 0.2, 5.0, 13) {
        let grid: Vec<f64> = (1..=2000).map(|k| big * k as f64 / 1000.0).collect();
        let best = grid
            .iter()
            .copied()
            .min_by(|a, b| {
                let ha = m.ballistic_free_energy(rho, *a, big).unwrap();
                let hb = m.ballistic_free_energy(rho, *b, big).unwrap();
                ha.total_cmp(&hb)
            })
            .unwrap();
        assert!((best - big).abs() <= big / 1000.0 + 1e-12);
    }
}
