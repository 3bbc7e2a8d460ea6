use super::grid::Grid1D;
use super::rhs::{stable_time_step, Stepper, DEFAULT_CFL};
use super::state::FieldState;
use crate::error::{Error, Result};
use crate::reference::ReferenceSolution;
use crate::thermo::GasModel;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunOptions {
    pub t_end: f64,
    pub cfl: f64,
    /// Store every k-th step (the final state is always stored).
    pub output_every: usize,
    /// Overrides the CFL step. The step is still shortened so that an
    /// integer number of steps lands on `t_end`.
    pub dt: Option<f64>,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            t_end: 1.0,
            cfl: DEFAULT_CFL,
            output_every: 10,
            dt: None,
        }
    }
}

/// States stored at output times, first one being the initial state.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub grid: Grid1D,
    pub states: Vec<FieldState>,
    pub steps: usize,
    pub dt: f64,
}

impl Trajectory {
    pub fn times(&self) -> Vec<f64> {
        self.states.iter().map(|s| s.t).collect()
    }

    pub fn last(&self) -> &FieldState {
        self.states.last().expect("trajectory holds the initial state")
    }

    /// Every `every`-th stored state, always keeping the first and last.
    pub fn subsample(&self, every: usize) -> Trajectory {
        let every = every.max(1);
        let last = self.states.len() - 1;
        let states = self
            .states
            .iter()
            .enumerate()
            .filter(|(k, _)| k % every == 0 || *k == last)
            .map(|(_, s)| s.clone())
            .collect();
        Trajectory {
            grid: self.grid,
            states,
            steps: self.steps,
            dt: self.dt,
        }
    }
}

/// Number of equal steps and their size covering `[t0, t_end]`.
///
/// The nominal step comes from `opts.dt` or, failing that, from the CFL
/// limit of `initial`.
pub fn step_plan(model: &GasModel, grid: &Grid1D, initial: &FieldState, opts: &RunOptions) -> Result<(usize, f64)> {
    let span = opts.t_end - initial.t;
    if !(span > 0.0) {
        return Err(Error::config("time.t_end", format!("must exceed the initial time {}", initial.t)));
    }
    if !(opts.cfl > 0.0 && opts.cfl <= 1.0) {
        return Err(Error::config("time.cfl", format!("must lie in (0, 1], got {}", opts.cfl)));
    }
    let nominal = match opts.dt {
        Some(dt) if dt > 0.0 => dt,
        Some(dt) => return Err(Error::config("time.dt", format!("must be positive, got {dt}"))),
        None => stable_time_step(model, grid, initial, opts.cfl)?,
    };
    let steps = (span / nominal).ceil().max(1.0) as usize;
    Ok((steps, span / steps as f64))
}

/// Integrates from `initial` to `opts.t_end`.
pub fn integrate(
    model: &GasModel,
    grid: &Grid1D,
    initial: FieldState,
    forcing: Option<&ReferenceSolution>,
    opts: &RunOptions,
) -> Result<Trajectory> {
    let (steps, dt) = step_plan(model, grid, &initial, opts)?;
    let every = opts.output_every.max(1);
    let t0 = initial.t;
    let mut stepper = Stepper::new(model, *grid, forcing);
    let mut states = vec![initial];
    let mut current = states[0].clone();
    for k in 1..=steps {
        let mut next = stepper.step(&current, dt)?;
        // avoid accumulating rounding in t
        next.t = t0 + k as f64 * dt;
        if k == steps {
            next.t = opts.t_end;
        }
        if k % every == 0 || k == steps {
            states.push(next.clone());
        }
        current = next;
    }
    Ok(Trajectory {
        grid: *grid,
        states,
        steps,
        dt,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lands_on_end_time() {
        let model = GasModel::default();
        let grid = Grid1D::periodic(16, 1.0).unwrap();
        let init = FieldState::sample(&model, &grid, 0.0, |x| (1.0 + 0.1 * x, 0.0, 1.0)).unwrap();
        let opts = RunOptions {
            t_end: 0.05,
            output_every: 3,
            ..RunOptions::default()
        };
        let traj = integrate(&model, &grid, init, None, &opts).unwrap();
        assert_eq!(traj.last().t, 0.05);
        assert_eq!(traj.states[0].t, 0.0);
        assert_eq!(traj.states.len(), 1 + traj.steps / 3 + usize::from(!traj.steps.is_multiple_of(3)));
        let sub = traj.subsample(2);
        assert_eq!(sub.states[0], traj.states[0]);
        assert_eq!(sub.last(), traj.last());
    }

    #[test]
    fn rejects_bad_options() {
        let model = GasModel::default();
        let grid = Grid1D::periodic(16, 1.0).unwrap();
        let init = FieldState::sample(&model, &grid, 0.0, |_| (1.0, 0.0, 1.0)).unwrap();
        let bad = RunOptions {
            cfl: 1.5,
            ..RunOptions::default()
        };
        assert!(step_plan(&model, &grid, &init, &bad).is_err());
        let bad = RunOptions {
            t_end: 0.0,
            ..RunOptions::default()
        };
        assert!(step_plan(&model, &grid, &init, &bad).is_err());
    }
}
