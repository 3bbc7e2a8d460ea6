use super::grid::{Boundary, Grid1D};
use super::state::{check_len, velocity_and_temperature, FieldState};
use crate::error::{Error, Result};
use crate::reference::{mms_sources, ReferenceSolution, Sources};
use crate::thermo::GasModel;

/// Default Courant number.
pub const DEFAULT_CFL: f64 = 0.4;

/// Time derivatives of the conservative variables.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Tendencies {
    pub rho: Vec<f64>,
    pub mom: Vec<f64>,
    pub etot: Vec<f64>,
}

impl Tendencies {
    fn zeros(n: usize) -> Self {
        Self {
            rho: vec![0.0; n],
            mom: vec![0.0; n],
            etot: vec![0.0; n],
        }
    }
}

/// Scratch arrays reused across stages. The temperatures of the previous
/// evaluation seed the next Newton solve.
#[derive(Clone, Debug, Default)]
pub(crate) struct Workspace {
    u: Vec<f64>,
    theta: Vec<f64>,
    p: Vec<f64>,
    mu: Vec<f64>,
    kappa: Vec<f64>,
    // face fluxes, face j sits between cells j-1 and j
    f_rho: Vec<f64>,
    f_mom: Vec<f64>,
    f_e: Vec<f64>,
    warm: bool,
}

impl Workspace {
    fn resize(&mut self, n: usize) {
        if self.u.len() != n {
            *self = Workspace {
                u: vec![0.0; n],
                theta: vec![0.0; n],
                p: vec![0.0; n],
                mu: vec![0.0; n],
                kappa: vec![0.0; n],
                f_rho: vec![0.0; n + 1],
                f_mom: vec![0.0; n + 1],
                f_e: vec![0.0; n + 1],
                warm: false,
            };
        }
    }
}

/// Semi-discrete right-hand side in flux form.
///
/// Convective fluxes at a face are the average of the two cell fluxes;
/// viscous and heat fluxes use the compact face gradient with averaged
/// `mu`, `kappa` and `u`. The divergence is the difference of face fluxes,
/// so cell sums telescope. With `forcing`, the manufactured sources of that
/// reference are added at the cell centres.
pub fn spatial_rhs(
    model: &GasModel,
    grid: &Grid1D,
    state: &FieldState,
    forcing: Option<&ReferenceSolution>,
) -> Result<Tendencies> {
    let sources = forcing.map(|r| sample_sources(model, grid, r, state.t)).transpose()?;
    let mut ws = Workspace::default();
    let mut out = Tendencies::zeros(grid.n);
    rhs_into(model, grid, state, sources.as_deref(), &mut ws, &mut out)?;
    Ok(out)
}

fn sample_sources(model: &GasModel, grid: &Grid1D, reference: &ReferenceSolution, t: f64) -> Result<Vec<Sources>> {
    grid.centers().map(|x| mms_sources(model, reference, t, x)).collect()
}

pub(crate) fn rhs_into(
    model: &GasModel,
    grid: &Grid1D,
    state: &FieldState,
    sources: Option<&[Sources]>,
    ws: &mut Workspace,
    out: &mut Tendencies,
) -> Result<()> {
    check_len(grid, state)?;
    let n = grid.n;
    let dx = grid.dx();
    ws.resize(n);
    velocity_and_temperature(model, state, ws.warm, &mut ws.u, &mut ws.theta)?;
    ws.warm = true;
    for i in 0..n {
        let (r, th) = (state.rho[i], ws.theta[i]);
        ws.p[i] = model.pressure(r, th)?;
        ws.mu[i] = model.viscosity(th);
        ws.kappa[i] = model.conductivity(th);
    }

    let interior = |ws: &mut Workspace, j: usize, l: usize, r: usize| {
        let m_l = state.mom[l];
        let m_r = state.mom[r];
        let (u_l, u_r) = (ws.u[l], ws.u[r]);
        let stress = 4.0 / 3.0 * 0.5 * (ws.mu[l] + ws.mu[r]) * (u_r - u_l) / dx;
        let heat = -0.5 * (ws.kappa[l] + ws.kappa[r]) * (ws.theta[r] - ws.theta[l]) / dx;
        ws.f_rho[j] = 0.5 * (m_l + m_r);
        ws.f_mom[j] = 0.5 * (m_l * u_l + ws.p[l] + m_r * u_r + ws.p[r]) - stress;
        ws.f_e[j] = 0.5 * ((state.etot[l] + ws.p[l]) * u_l + (state.etot[r] + ws.p[r]) * u_r)
            - stress * 0.5 * (u_l + u_r)
            + heat;
    };
    for j in 1..n {
        interior(ws, j, j - 1, j);
    }
    match grid.bc {
        Boundary::Periodic => {
            interior(ws, 0, n - 1, 0);
            ws.f_rho[n] = ws.f_rho[0];
            ws.f_mom[n] = ws.f_mom[0];
            ws.f_e[n] = ws.f_e[0];
        }
        Boundary::Wall => {
            // u = 0 and q = 0 on the wall: only pressure and stress act
            let half = 0.5 * dx;
            ws.f_rho[0] = 0.0;
            ws.f_e[0] = 0.0;
            ws.f_mom[0] = ws.p[0] - 4.0 / 3.0 * ws.mu[0] * ws.u[0] / half;
            ws.f_rho[n] = 0.0;
            ws.f_e[n] = 0.0;
            ws.f_mom[n] = ws.p[n - 1] + 4.0 / 3.0 * ws.mu[n - 1] * ws.u[n - 1] / half;
        }
    }

    for i in 0..n {
        out.rho[i] = -(ws.f_rho[i + 1] - ws.f_rho[i]) / dx;
        out.mom[i] = -(ws.f_mom[i + 1] - ws.f_mom[i]) / dx;
        out.etot[i] = -(ws.f_e[i + 1] - ws.f_e[i]) / dx;
    }
    if let Some(sources) = sources {
        for (i, s) in sources.iter().enumerate() {
            out.rho[i] += s.mass;
            out.mom[i] += s.momentum;
            out.etot[i] += s.energy;
        }
    }
    Ok(())
}

/// `cfl * min(dx/(|u| + c_s), dx^2 rho / ((8/3) mu), dx^2 rho e_theta / (2 kappa))`
/// over all cells.
pub fn stable_time_step(model: &GasModel, grid: &Grid1D, state: &FieldState, cfl: f64) -> Result<f64> {
    check_len(grid, state)?;
    let mut u = vec![0.0; grid.n];
    let mut theta = vec![0.0; grid.n];
    velocity_and_temperature(model, state, false, &mut u, &mut theta)?;
    Ok(cfl * limit_from(model, grid.dx(), &state.rho, &u, &theta)?)
}

fn limit_from(model: &GasModel, dx: f64, rho: &[f64], u: &[f64], theta: &[f64]) -> Result<f64> {
    let mut limit = f64::INFINITY;
    for i in 0..rho.len() {
        let ev = model.thermo_eval(rho[i], theta[i])?;
        let tr = model.transport(theta[i])?;
        let advective = dx / (u[i].abs() + ev.sound_speed_sq().sqrt());
        let viscous = dx * dx * ev.rho / (8.0 / 3.0 * tr.mu);
        let thermal = dx * dx * ev.rho * ev.de_dtheta / (2.0 * tr.kappa);
        limit = limit.min(advective).min(viscous).min(thermal);
    }
    Ok(limit)
}

/// Classical four-stage Runge-Kutta integrator holding its scratch space.
///
/// Forcing is sampled once per distinct stage time; the two midpoint stages
/// share a time, and the last stage of a step coincides with the first
/// stage of the next.
#[derive(Clone, Debug)]
pub struct Stepper<'a> {
    model: &'a GasModel,
    grid: Grid1D,
    forcing: Option<&'a ReferenceSolution>,
    ws: Workspace,
    k: [Tendencies; 4],
    cache: Vec<(f64, Vec<Sources>)>,
}

impl<'a> Stepper<'a> {
    pub fn new(model: &'a GasModel, grid: Grid1D, forcing: Option<&'a ReferenceSolution>) -> Self {
        let z = Tendencies::zeros(grid.n);
        Self {
            model,
            grid,
            forcing,
            ws: Workspace::default(),
            k: [z.clone(), z.clone(), z.clone(), z],
            cache: Vec::new(),
        }
    }

    fn stage(&mut self, state: &FieldState, t: f64, slot: usize) -> Result<()> {
        let sources = match self.forcing {
            None => None,
            Some(reference) => {
                let at = match self.cache.iter().position(|(tc, _)| *tc == t) {
                    Some(at) => at,
                    None => {
                        if self.cache.len() >= 3 {
                            self.cache.remove(0);
                        }
                        let fresh = sample_sources(self.model, &self.grid, reference, t)?;
                        self.cache.push((t, fresh));
                        self.cache.len() - 1
                    }
                };
                Some(&self.cache[at].1[..])
            }
        };
        rhs_into(self.model, &self.grid, state, sources, &mut self.ws, &mut self.k[slot])
    }

    /// One step of size `dt`, refused when `dt` exceeds the `cfl = 1` limit
    /// of `state`.
    pub fn step(&mut self, state: &FieldState, dt: f64) -> Result<FieldState> {
        let t = state.t;
        self.stage(state, t, 0)?;
        // the first stage leaves the temperatures of `state` in the workspace
        let limit = limit_from(self.model, self.grid.dx(), &state.rho, &self.ws.u, &self.ws.theta)?;
        if !(dt > 0.0 && dt <= limit) {
            return Err(Error::Stability {
                dt,
                suggested: DEFAULT_CFL * limit,
            });
        }
        let y = axpy_state(state, &self.k[0], 0.5 * dt);
        self.stage(&y, t + 0.5 * dt, 1)?;
        let y = axpy_state(state, &self.k[1], 0.5 * dt);
        self.stage(&y, t + 0.5 * dt, 2)?;
        let y = axpy_state(state, &self.k[2], dt);
        self.stage(&y, t + dt, 3)?;

        let [k1, k2, k3, k4] = &self.k;
        let combine = |y0: &[f64], a: &[f64], b: &[f64], c: &[f64], d: &[f64]| -> Vec<f64> {
            (0..y0.len())
                .map(|i| y0[i] + dt / 6.0 * (a[i] + 2.0 * b[i] + 2.0 * c[i] + d[i]))
                .collect()
        };
        Ok(FieldState {
            t: t + dt,
            rho: combine(&state.rho, &k1.rho, &k2.rho, &k3.rho, &k4.rho),
            mom: combine(&state.mom, &k1.mom, &k2.mom, &k3.mom, &k4.mom),
            etot: combine(&state.etot, &k1.etot, &k2.etot, &k3.etot, &k4.etot),
        })
    }
}

fn axpy_state(base: &FieldState, k: &Tendencies, h: f64) -> FieldState {
    FieldState {
        t: base.t + h,
        rho: axpy(&base.rho, &k.rho, h),
        mom: axpy(&base.mom, &k.mom, h),
        etot: axpy(&base.etot, &k.etot, h),
    }
}

fn axpy(y: &[f64], k: &[f64], h: f64) -> Vec<f64> {
    y.iter().zip(k).map(|(a, b)| a + h * b).collect()
}

/// A single RK4 step. See [`Stepper`] for repeated stepping.
pub fn advance(
    model: &GasModel,
    grid: &Grid1D,
    state: &FieldState,
    dt: f64,
    forcing: Option<&ReferenceSolution>,
) -> Result<FieldState> {
    check_len(grid, state)?;
    Stepper::new(model, *grid, forcing).step(state, dt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn wave(grid: &Grid1D, model: &GasModel) -> FieldState {
        FieldState::sample(model, grid, 0.0, |x| {
            let s = (2.0 * PI * x).sin();
            (1.0 + 0.2 * s, 0.1 * (2.0 * PI * x).cos(), 1.0 + 0.1 * s)
        })
        .unwrap()
    }

    #[test]
    fn constant_state_is_steady() {
        let model = GasModel::default();
        let grid = Grid1D::periodic(16, 1.0).unwrap();
        let state = FieldState::sample(&model, &grid, 0.0, |_| (1.3, 0.4, 0.9)).unwrap();
        let k = spatial_rhs(&model, &grid, &state, None).unwrap();
        for v in k.rho.iter().chain(&k.mom).chain(&k.etot) {
            assert!(v.abs() <= 1e-13);
        }
        let dt = stable_time_step(&model, &grid, &state, DEFAULT_CFL).unwrap();
        let next = advance(&model, &grid, &state, dt, None).unwrap();
        for (a, b) in next.etot.iter().zip(&state.etot) {
            assert!((a - b).abs() <= 1e-13);
        }
    }

    #[test]
    fn pressure_gradient_drives_momentum() {
        let model = GasModel::default();
        let grid = Grid1D::periodic(32, 1.0).unwrap();
        let state = FieldState::sample(&model, &grid, 0.0, |x| (1.0 + 0.1 * (2.0 * PI * x).sin(), 0.0, 1.0)).unwrap();
        let k = spatial_rhs(&model, &grid, &state, None).unwrap();
        for i in 0..grid.n {
            assert!(k.rho[i].abs() < 1e-14);
            let dp = (2.0 * PI * grid.x(i)).cos();
            if dp.abs() > 0.1 {
                assert_eq!(k.mom[i].signum(), -dp.signum(), "cell {i}");
            }
        }
    }

    #[test]
    fn mass_is_conserved_per_step() {
        let model = GasModel::default();
        let grid = Grid1D::periodic(64, 1.0).unwrap();
        let mut state = wave(&grid, &model);
        let m0 = state.total_mass(&grid);
        let mut stepper = Stepper::new(&model, grid, None);
        let dt = stable_time_step(&model, &grid, &state, DEFAULT_CFL).unwrap();
        for _ in 0..20 {
            let next = stepper.step(&state, dt).unwrap();
            let drift = (next.total_mass(&grid) - state.total_mass(&grid)).abs() / m0;
            assert!(drift <= 1e-14, "{drift}");
            state = next;
        }
    }

    #[test]
    fn walls_conserve_mass_and_energy() {
        let model = GasModel::default();
        let grid = Grid1D::new(64, 1.0, Boundary::Wall).unwrap();
        let mut state = FieldState::sample(&model, &grid, 0.0, |x| {
            (1.0 + 0.2 * (PI * x).cos(), 0.05 * (PI * x).sin(), 1.0)
        })
        .unwrap();
        let (m0, e0) = (state.total_mass(&grid), state.total_energy(&grid));
        let mut stepper = Stepper::new(&model, grid, None);
        let dt = stable_time_step(&model, &grid, &state, DEFAULT_CFL).unwrap();
        for _ in 0..50 {
            state = stepper.step(&state, dt).unwrap();
        }
        assert!((state.total_mass(&grid) - m0).abs() / m0 < 1e-13);
        assert!((state.total_energy(&grid) - e0).abs() / e0 < 1e-13);
    }

    #[test]
    fn refuses_unstable_step() {
        let model = GasModel::default();
        let grid = Grid1D::periodic(32, 1.0).unwrap();
        let state = wave(&grid, &model);
        let limit = stable_time_step(&model, &grid, &state, 1.0).unwrap();
        match advance(&model, &grid, &state, 2.0 * limit, None) {
            Err(Error::Stability { suggested, .. }) => assert!((suggested - DEFAULT_CFL * limit).abs() < 1e-15),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn manufactured_solution_has_small_tendency_error() {
        let model = GasModel::default();
        let reference = ReferenceSolution::default();
        let grid = Grid1D::periodic(128, 1.0).unwrap();
        let t = 0.3;
        let state = FieldState::sample(&model, &grid, t, |x| {
            let p = reference.eval(t, x);
            (p.rho.v, p.u.v, p.theta.v)
        })
        .unwrap();
        let k = spatial_rhs(&model, &grid, &state, Some(&reference)).unwrap();
        for (i, x) in grid.centers().enumerate() {
            let p = reference.eval(t, x);
            assert!((k.rho[i] - p.rho.t).abs() < 1e-2);
        }
    }
}
