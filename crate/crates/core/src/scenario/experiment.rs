use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::reference::ReferenceSolution;
use crate::relent::{bands_for, relative_entropy_ledger, RelEntReport};
use crate::solver::{
    budget_residuals, integrate, recover_primitives, stable_time_step, BudgetReport, FieldState, Grid1D,
    PrimitiveFields, RunOptions,
};
use crate::thermo::GasModel;

use super::config::TimeConfig;

/// Ledger samples per run when `time.output_every = 0`.
pub const DEFAULT_SAMPLES: usize = 100;

/// Initial data of a twin run: the reference at `t = 0` with a smooth
/// relative perturbation of size `eps` in each field,
///
/// ```text
/// rho   = r     (1 + eps sin(k x + 0.3))
/// u     = U     +   eps sin(2 k x)
/// theta = Theta (1 + eps cos(3 k x + 1.1))
/// ```
///
/// with `k = 2 pi / L`. `eps = 0` reproduces the reference.
pub fn perturbed_initial(model: &GasModel, reference: &ReferenceSolution, grid: &Grid1D, eps: f64) -> Result<FieldState> {
    let k = 2.0 * PI / reference.length;
    FieldState::sample(model, grid, 0.0, |x| {
        let p = reference.eval(0.0, x);
        (
            p.rho.v * (1.0 + eps * (k * x + 0.3).sin()),
            p.u.v + eps * (2.0 * k * x).sin(),
            p.theta.v * (1.0 + eps * (3.0 * k * x + 1.1).cos()),
        )
    })
}

/// Everything measured in one forced run against the reference.
#[derive(Clone, Debug)]
pub struct TwinOutcome {
    pub grid: Grid1D,
    pub eps: f64,
    pub steps: usize,
    pub dt: f64,
    pub ledger: Vec<RelEntReport>,
    /// Balances over every step.
    pub budget: BudgetReport,
    /// Discrete L2 norm of `(rho, u, theta)` minus the reference at `t_end`.
    pub final_error: f64,
    pub final_state: FieldState,
    pub final_prims: PrimitiveFields,
}

impl TwinOutcome {
    pub fn times(&self) -> Vec<f64> {
        self.ledger.iter().map(|r| r.t).collect()
    }

    pub fn distances(&self) -> Vec<f64> {
        self.ledger.iter().map(|r| r.i).collect()
    }

    pub fn max_distance(&self) -> f64 {
        self.ledger.iter().map(|r| r.i).fold(0.0, f64::max)
    }

    /// `max_t |margin|`.
    pub fn margin_tolerance(&self) -> f64 {
        self.ledger.iter().map(|r| r.margin.abs()).fold(0.0, f64::max)
    }

    pub fn excess_margin_tolerance(&self) -> f64 {
        self.ledger.iter().map(|r| r.excess_margin.abs()).fold(0.0, f64::max)
    }

    pub fn max_residual_fraction(&self) -> f64 {
        self.ledger.iter().map(|r| r.res_fraction).fold(0.0, f64::max)
    }
}

/// Integrates the system forced by the reference's manufactured sources
/// from [`perturbed_initial`] data and evaluates the relative entropy
/// ledger along the way.
///
/// The step is fixed by the CFL limit of the unperturbed data, so runs that
/// differ only in `eps` share their time stamps.
pub fn twin_run(
    model: &GasModel,
    reference: &ReferenceSolution,
    grid: &Grid1D,
    time: &TimeConfig,
    eps: f64,
) -> Result<TwinOutcome> {
    if !grid.is_periodic() {
        return Err(Error::config("grid.bc", "twin runs need a periodic grid"));
    }
    let unperturbed = perturbed_initial(model, reference, grid, 0.0)?;
    let dt = stable_time_step(model, grid, &unperturbed, time.cfl)?;
    let init = perturbed_initial(model, reference, grid, eps)?;
    let opts = RunOptions {
        t_end: time.t_end,
        cfl: time.cfl,
        output_every: 1,
        dt: Some(dt),
    };
    let trajectory = integrate(model, grid, init, Some(reference), &opts)?;
    let budget = budget_residuals(model, &trajectory, Some(reference))?;

    let every = match time.output_every {
        0 => (trajectory.steps / DEFAULT_SAMPLES).max(1),
        k => k,
    };
    let sampled = trajectory.subsample(every);
    let bands = bands_for(reference, time.t_end)?;
    let ledger = relative_entropy_ledger(model, &sampled, reference, Some(reference), &bands)?;

    let final_state = trajectory.last().clone();
    let final_prims = recover_primitives(model, grid, &final_state)?;
    let mut sq = 0.0;
    for (i, x) in grid.centers().enumerate() {
        let p = reference.eval(final_state.t, x);
        sq += (final_state.rho[i] - p.rho.v).powi(2)
            + (final_prims.u[i] - p.u.v).powi(2)
            + (final_prims.theta[i] - p.theta.v).powi(2);
    }
    Ok(TwinOutcome {
        grid: *grid,
        eps,
        steps: trajectory.steps,
        dt: trajectory.dt,
        ledger,
        budget,
        final_error: (sq * grid.dx()).sqrt(),
        final_state,
        final_prims,
    })
}

/// Runs `jobs` on a pool capped by `NSF_RELENT_THREADS`, keeping their order.
pub fn run_parallel<T, F>(jobs: Vec<F>) -> Result<Vec<T>>
where
    T: Send,
    F: FnOnce() -> Result<T> + Send,
{
    use rayon::prelude::*;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_cap()? {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::config("NSF_RELENT_THREADS", e.to_string()))?;
    pool.install(|| jobs.into_par_iter().map(|job| job()).collect())
}

/// Parsed `NSF_RELENT_THREADS`, if set.
pub fn thread_cap() -> Result<Option<usize>> {
    match std::env::var("NSF_RELENT_THREADS") {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(Error::config("NSF_RELENT_THREADS", format!("expected a positive integer, got `{v}`"))),
        },
    }
}
