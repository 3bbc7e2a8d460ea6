use super::grid::Grid1D;
use super::integrate::Trajectory;
use super::state::{recover_primitives_near, FieldState, PrimitiveFields};
use crate::error::Result;
use crate::reference::{mms_sources, ReferenceSolution};
use crate::thermo::GasModel;

/// Global balances of a stored trajectory, tested against `phi = 1`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BudgetReport {
    pub times: Vec<f64>,
    /// `max_t |M(t) - M(0)| / M(0)`.
    pub mass_drift: f64,
    /// `max_t |E(t) - E(0)| / |E(0)|`.
    pub energy_drift: f64,
    /// `int rho s (t) - int rho s (0) - int_0^t (int sigma + forcing)`, per
    /// output time. Zero for an exact smooth solution; the continuous
    /// inequality asks for `>= 0`.
    pub entropy_residual: Vec<f64>,
    pub max_entropy_residual: f64,
    /// Smallest cell value of `sigma` over the trajectory.
    pub min_sigma: f64,
}

/// Entropy supplied by the manufactured forcing, per unit volume:
/// `(f_E - u f_m + u^2 f_rho / 2 - g f_rho) / theta` with the Gibbs function
/// `g = e + p/rho - theta s`.
pub fn forcing_entropy_rate(
    model: &GasModel,
    grid: &Grid1D,
    state: &FieldState,
    prims: &PrimitiveFields,
    reference: &ReferenceSolution,
) -> Result<Vec<f64>> {
    (0..grid.n)
        .map(|i| {
            let f = mms_sources(model, reference, state.t, grid.x(i))?;
            let (r, u, th) = (state.rho[i], prims.u[i], prims.theta[i]);
            let e = model.internal_energy(r, th)?;
            let g = e + prims.p[i] / r - th * prims.s[i];
            let internal = f.energy - u * f.momentum + 0.5 * u * u * f.mass;
            Ok((internal - g * f.mass) / th)
        })
        .collect()
}

/// Mass, total energy and entropy balances of `trajectory`. Wall and
/// periodic boundaries contribute no flux to any of them.
pub fn budget_residuals(
    model: &GasModel,
    trajectory: &Trajectory,
    forcing: Option<&ReferenceSolution>,
) -> Result<BudgetReport> {
    let grid = &trajectory.grid;
    let mut mass = Vec::new();
    let mut energy = Vec::new();
    let mut entropy = Vec::new();
    let mut production = Vec::new();
    let mut min_sigma = f64::INFINITY;
    let mut hint: Option<Vec<f64>> = None;
    for state in &trajectory.states {
        let prims = recover_primitives_near(model, grid, state, hint.as_deref())?;
        hint = Some(prims.theta.clone());
        mass.push(state.total_mass(grid));
        energy.push(state.total_energy(grid));
        let rho_s: Vec<f64> = state.rho.iter().zip(&prims.s).map(|(r, s)| r * s).collect();
        entropy.push(grid.integrate(&rho_s));
        let mut rate = grid.integrate(&prims.sigma);
        if let Some(reference) = forcing {
            rate += grid.integrate(&forcing_entropy_rate(model, grid, state, &prims, reference)?);
        }
        production.push(rate);
        min_sigma = prims.sigma.iter().copied().fold(min_sigma, f64::min);
    }

    let times = trajectory.times();
    let mut residual = vec![0.0];
    let mut accumulated = 0.0;
    for k in 1..times.len() {
        accumulated += 0.5 * (times[k] - times[k - 1]) * (production[k] + production[k - 1]);
        residual.push(entropy[k] - entropy[0] - accumulated);
    }
    let drift = |v: &[f64]| v.iter().map(|x| (x - v[0]).abs()).fold(0.0, f64::max) / v[0].abs();
    Ok(BudgetReport {
        mass_drift: drift(&mass),
        energy_drift: drift(&energy),
        max_entropy_residual: residual.iter().map(|r| r.abs()).fold(0.0, f64::max),
        entropy_residual: residual,
        min_sigma,
        times,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{integrate, RunOptions};
    use std::f64::consts::PI;

    #[test]
    fn unforced_periodic_run_conserves() {
        let model = GasModel::default();
        let grid = Grid1D::periodic(32, 1.0).unwrap();
        let init = FieldState::sample(&model, &grid, 0.0, |x| {
            (1.0 + 0.1 * (2.0 * PI * x).sin(), 0.05, 1.0 + 0.05 * (2.0 * PI * x).cos())
        })
        .unwrap();
        let opts = RunOptions {
            t_end: 0.1,
            output_every: 1,
            ..RunOptions::default()
        };
        let traj = integrate(&model, &grid, init, None, &opts).unwrap();
        let report = budget_residuals(&model, &traj, None).unwrap();
        assert!(report.mass_drift <= 1e-13);
        assert!(report.energy_drift <= 1e-13);
        assert!(report.min_sigma >= 0.0);
        assert!(report.max_entropy_residual < 1e-3);
    }
}
