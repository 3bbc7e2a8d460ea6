use std::io::Write;

use super::grid::Grid1D;
use crate::error::{Error, Result};
use crate::thermo::GasModel;

/// Conservative variables on the grid at time `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldState {
    pub t: f64,
    pub rho: Vec<f64>,
    /// Momentum `rho u`.
    pub mom: Vec<f64>,
    /// Total energy density `rho u^2 / 2 + rho e`.
    pub etot: Vec<f64>,
}

impl FieldState {
    pub fn len(&self) -> usize {
        self.rho.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rho.is_empty()
    }

    /// Builds the conservative state from cell values of `(rho, u, theta)`.
    pub fn from_primitives(model: &GasModel, t: f64, rho: &[f64], u: &[f64], theta: &[f64]) -> Result<Self> {
        if rho.len() != u.len() || rho.len() != theta.len() {
            return Err(Error::Structural(format!(
                "primitive arrays differ in length: {} / {} / {}",
                rho.len(),
                u.len(),
                theta.len()
            )));
        }
        let mut mom = Vec::with_capacity(rho.len());
        let mut etot = Vec::with_capacity(rho.len());
        for (cell, ((&r, &v), &th)) in rho.iter().zip(u).zip(theta).enumerate() {
            if !(r > 0.0) {
                return Err(Error::InvalidState {
                    cell,
                    reason: format!("density {r} is not positive"),
                });
            }
            let e = model.internal_energy(r, th).map_err(|e| Error::InvalidState {
                cell,
                reason: e.to_string(),
            })?;
            mom.push(r * v);
            etot.push(0.5 * r * v * v + r * e);
        }
        Ok(Self {
            t,
            rho: rho.to_vec(),
            mom,
            etot,
        })
    }

    /// Samples `f(x) = (rho, u, theta)` at the cell centres.
    pub fn sample(model: &GasModel, grid: &Grid1D, t: f64, f: impl Fn(f64) -> (f64, f64, f64)) -> Result<Self> {
        let (mut rho, mut u, mut theta) = (Vec::new(), Vec::new(), Vec::new());
        for x in grid.centers() {
            let (r, v, th) = f(x);
            rho.push(r);
            u.push(v);
            theta.push(th);
        }
        Self::from_primitives(model, t, &rho, &u, &theta)
    }

    pub fn total_mass(&self, grid: &Grid1D) -> f64 {
        grid.integrate(&self.rho)
    }

    pub fn total_energy(&self, grid: &Grid1D) -> f64 {
        grid.integrate(&self.etot)
    }
}

/// Cell values derived from a [`FieldState`].
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PrimitiveFields {
    pub u: Vec<f64>,
    pub theta: Vec<f64>,
    pub p: Vec<f64>,
    /// Specific entropy.
    pub s: Vec<f64>,
    /// Entropy production density.
    pub sigma: Vec<f64>,
    /// Heat flux.
    pub q: Vec<f64>,
    /// Viscous normal stress.
    pub sxx: Vec<f64>,
}

/// Velocity and temperature of every cell, `theta` solved from the specific
/// internal energy. With `warm`, the incoming `theta` seeds Newton.
pub(crate) fn velocity_and_temperature(
    model: &GasModel,
    state: &FieldState,
    warm: bool,
    u: &mut [f64],
    theta: &mut [f64],
) -> Result<()> {
    for cell in 0..state.len() {
        let r = state.rho[cell];
        if !(r > 0.0) {
            return Err(Error::InvalidState {
                cell,
                reason: format!("vacuum: density {r}"),
            });
        }
        let v = state.mom[cell] / r;
        let eps = (state.etot[cell] - 0.5 * r * v * v) / r;
        let guess = warm.then_some(theta[cell]);
        theta[cell] = model
            .temperature_from_internal_energy_near(r, eps, guess)
            .map_err(|e| Error::InvalidState {
                cell,
                reason: format!("temperature recovery failed: {e}"),
            })?;
        u[cell] = v;
    }
    Ok(())
}

/// Recovers `u, theta, p, s` and the dissipative quantities
///
/// ```text
/// Sxx = (4/3) mu Dx u,   q = -kappa Dx theta,
/// sigma = (Sxx Dx u - q Dx theta / theta) / theta
///       = (4 mu / 3 theta) (Dx u)^2 + (kappa / theta^2) (Dx theta)^2
/// ```
///
/// with the centred difference `Dx`.
pub fn recover_primitives(model: &GasModel, grid: &Grid1D, state: &FieldState) -> Result<PrimitiveFields> {
    recover_primitives_near(model, grid, state, None)
}

pub(crate) fn recover_primitives_near(
    model: &GasModel,
    grid: &Grid1D,
    state: &FieldState,
    hint: Option<&[f64]>,
) -> Result<PrimitiveFields> {
    check_len(grid, state)?;
    let n = grid.n;
    let mut u = vec![0.0; n];
    let mut theta = hint.map_or_else(|| vec![0.0; n], <[f64]>::to_vec);
    velocity_and_temperature(model, state, hint.is_some(), &mut u, &mut theta)?;

    // ghosts: u odd about a wall, theta even (insulated)
    let du = grid.centered_difference(&u, -1.0);
    let dtheta = grid.centered_difference(&theta, 1.0);

    let mut out = PrimitiveFields {
        u,
        theta,
        ..PrimitiveFields::default()
    };
    for i in 0..n {
        let (r, th) = (state.rho[i], out.theta[i]);
        let tr = model.transport(th)?;
        out.p.push(model.pressure(r, th)?);
        out.s.push(model.entropy(r, th)?);
        out.sxx.push(4.0 / 3.0 * tr.mu * du[i]);
        out.q.push(-tr.kappa * dtheta[i]);
        let viscous = 4.0 * tr.mu / (3.0 * th) * du[i] * du[i];
        let thermal = tr.kappa / (th * th) * dtheta[i] * dtheta[i];
        out.sigma.push(viscous + thermal);
    }
    Ok(out)
}

pub(crate) fn check_len(grid: &Grid1D, state: &FieldState) -> Result<()> {
    if state.rho.len() != grid.n || state.mom.len() != grid.n || state.etot.len() != grid.n {
        return Err(Error::Structural(format!(
            "state has {}/{}/{} cells, grid has {}",
            state.rho.len(),
            state.mom.len(),
            state.etot.len(),
            grid.n
        )));
    }
    Ok(())
}

/// Writes the snapshot CSV `x,rho,u,theta,p,s,sigma`.
pub fn write_snapshot<W: Write>(
    out: W,
    grid: &Grid1D,
    state: &FieldState,
    prims: &PrimitiveFields,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["x", "rho", "u", "theta", "p", "s", "sigma"])?;
    for i in 0..grid.n {
        let row = [grid.x(i), state.rho[i], prims.u[i], prims.theta[i], prims.p[i], prims.s[i], prims.sigma[i]];
        w.write_record(row.iter().map(|v| format!("{v:.16e}")))?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn roundtrip_from_primitives() {
        let model = GasModel::default();
        let grid = Grid1D::periodic(32, 1.0).unwrap();
        let f = |x: f64| {
            let s = (2.0 * PI * x).sin();
            (1.0 + 0.3 * s, 0.2 * s, 1.2 - 0.4 * s)
        };
        let state = FieldState::sample(&model, &grid, 0.0, f).unwrap();
        let prims = recover_primitives(&model, &grid, &state).unwrap();
        for (i, x) in grid.centers().enumerate() {
            let (_, u, th) = f(x);
            assert!((prims.u[i] - u).abs() < 1e-10);
            assert!((prims.theta[i] - th).abs() < 1e-10);
        }
    }

    #[test]
    fn uniform_flow_has_no_dissipation() {
        let model = GasModel::default();
        let grid = Grid1D::periodic(16, 1.0).unwrap();
        let state = FieldState::sample(&model, &grid, 0.0, |_| (0.8, 0.3, 1.4)).unwrap();
        let prims = recover_primitives(&model, &grid, &state).unwrap();
        assert!(prims.sigma.iter().all(|&s| s == 0.0));
    }

    #[test]
    fn vacuum_cell_is_reported() {
        let model = GasModel::default();
        let grid = Grid1D::periodic(8, 1.0).unwrap();
        let mut state = FieldState::sample(&model, &grid, 0.0, |_| (1.0, 0.0, 1.0)).unwrap();
        state.rho[5] = 0.0;
        match recover_primitives(&model, &grid, &state) {
            Err(Error::InvalidState { cell, .. }) => assert_eq!(cell, 5),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn snapshot_header() {
        let model = GasModel::default();
        let grid = Grid1D::periodic(8, 1.0).unwrap();
        let state = FieldState::sample(&model, &grid, 0.0, |_| (1.0, 0.0, 1.0)).unwrap();
        let prims = recover_primitives(&model, &grid, &state).unwrap();
        let mut buf = Vec::new();
        write_snapshot(&mut buf, &grid, &state, &prims).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("x,rho,u,theta,p,s,sigma\n6.2500000000000000e-2,"));
        assert_eq!(text.lines().count(), 9);
    }
}
