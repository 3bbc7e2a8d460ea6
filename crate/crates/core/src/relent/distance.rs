use crate::error::{Error, Result};
use crate::reference::ReferenceSolution;
use crate::solver::{FieldState, Grid1D, PrimitiveFields};
use crate::thermo::GasModel;

/// Values `(r, Theta, U)` of a reference solution on the cell centres.
#[derive(Clone, Debug, PartialEq)]
pub struct ReferenceSample {
    pub t: f64,
    pub rho: Vec<f64>,
    pub theta: Vec<f64>,
    pub u: Vec<f64>,
}

impl ReferenceSample {
    /// Point values of the analytic profiles.
    pub fn exact(reference: &ReferenceSolution, grid: &Grid1D, t: f64) -> Self {
        let mut out = Self {
            t,
            rho: Vec::with_capacity(grid.n),
            theta: Vec::with_capacity(grid.n),
            u: Vec::with_capacity(grid.n),
        };
        for x in grid.centers() {
            let p = reference.eval(t, x);
            out.rho.push(p.rho.v);
            out.theta.push(p.theta.v);
            out.u.push(p.u.v);
        }
        out
    }

    pub fn len(&self) -> usize {
        self.rho.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rho.is_empty()
    }
}

/// Instantaneous relative entropy and, for [`relative_entropy_ledger`](super::relative_entropy_ledger),
/// the accumulated terms of the balance.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RelEntReport {
    pub t: f64,
    /// `int (rho |u - U|^2 / 2 + E(rho, theta | r, Theta)) dx`.
    pub i: f64,
    pub kinetic: f64,
    pub entropy_part: f64,
    /// `int_0^t int (Theta/theta)(S u_x - q theta_x / theta) dx dt`, as
    /// excess over the reference's own dissipation.
    pub dissipation_acc: f64,
    /// Accumulated right-hand side terms, by name, each as its excess over
    /// the reference's own evaluation.
    pub rhs_terms: Vec<(&'static str, f64)>,
    /// `RHS - LHS` of the accumulated balance.
    pub margin: f64,
    /// `sum(rhs_terms) - (I(t) - I(0) + dissipation_acc)`: the margin with
    /// the reference's own imbalance removed.
    pub excess_margin: f64,
    pub res_fraction: f64,
}

impl RelEntReport {
    pub fn term(&self, name: &str) -> Option<f64> {
        self.rhs_terms.iter().find(|(n, _)| *n == name).map(|(_, v)| *v)
    }
}

/// Cell densities `(rho |u - U|^2 / 2, E(rho, theta | r, Theta))`.
pub fn relative_entropy_density(
    model: &GasModel,
    rho: &[f64],
    u: &[f64],
    theta: &[f64],
    reference: &ReferenceSample,
) -> Result<(Vec<f64>, Vec<f64>)> {
    if rho.len() != reference.len() || u.len() != rho.len() || theta.len() != rho.len() {
        return Err(Error::Structural(format!(
            "numeric fields have {} cells, reference sample has {}",
            rho.len(),
            reference.len()
        )));
    }
    let mut kinetic = Vec::with_capacity(rho.len());
    let mut thermal = Vec::with_capacity(rho.len());
    for i in 0..rho.len() {
        let du = u[i] - reference.u[i];
        kinetic.push(0.5 * rho[i] * du * du);
        thermal.push(model.relative_entropy(rho[i], theta[i], reference.rho[i], reference.theta[i])?);
    }
    Ok((kinetic, thermal))
}

/// Midpoint-rule relative entropy distance between a numeric state and a
/// sampled reference. Ledger fields are left at zero.
pub fn distance(
    model: &GasModel,
    grid: &Grid1D,
    state: &FieldState,
    prims: &PrimitiveFields,
    reference: &ReferenceSample,
) -> Result<RelEntReport> {
    if state.len() != grid.n {
        return Err(Error::Structural(format!("state has {} cells, grid has {}", state.len(), grid.n)));
    }
    let (kin, ent) = relative_entropy_density(model, &state.rho, &prims.u, &prims.theta, reference)?;
    let kinetic = grid.integrate(&kin);
    let entropy_part = grid.integrate(&ent);
    Ok(RelEntReport {
        t: state.t,
        i: kinetic + entropy_part,
        kinetic,
        entropy_part,
        ..RelEntReport::default()
    })
}
