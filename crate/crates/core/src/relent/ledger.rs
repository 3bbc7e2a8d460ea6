use rayon::prelude::*;

use super::distance::{distance, ReferenceSample, RelEntReport};
use super::mask::{ess_res_mask, residual_fraction};
use crate::error::{Error, Result};
use crate::reference::{mms_sources, ReferenceSolution};
use crate::solver::{recover_primitives, FieldState, Grid1D, PrimitiveFields, Trajectory};
use crate::thermo::{EssResBands, GasModel};

/// Names of the right-hand side integrands, in ledger order.
pub const LEDGER_TERMS: [&str; 11] = [
    "velocity_gradient",
    "entropy_relative_convection",
    "material_derivative",
    "pressure_work",
    "viscous_work",
    "entropy_time",
    "entropy_convection",
    "heat_flux",
    "pressure_time",
    "pressure_transport",
    "forcing",
];

const NT: usize = LEDGER_TERMS.len();

/// Bands from the extrema of the reference over `[0, t_end]`, halved and
/// doubled.
pub fn bands_for(reference: &ReferenceSolution, t_end: f64) -> Result<EssResBands> {
    let (rho, theta) = reference.extrema(t_end, 256, 256);
    EssResBands::from_reference_extrema(rho, theta)
        .ok_or_else(|| Error::Structural(format!("degenerate reference extrema {rho:?} / {theta:?}")))
}

/// Spatial integrals of one time sample.
struct Rates {
    terms: [f64; NT],
    dissipation: f64,
}

struct Sample {
    report: RelEntReport,
    raw: Rates,
    excess: Rates,
}

/// Integrands of the relative entropy balance for a numeric state against
/// the reference, integrated with the midpoint rule.
///
/// The reference values `(r, Theta, U)` are taken from `refs`, their
/// derivatives from the analytic profiles.
#[allow(clippy::too_many_arguments, clippy::needless_range_loop)]
fn rates(
    model: &GasModel,
    grid: &Grid1D,
    t: f64,
    rho: &[f64],
    prims: &PrimitiveFields,
    refs: &ReferenceSample,
    reference: &ReferenceSolution,
    forcing: Option<&ReferenceSolution>,
) -> Result<Rates> {
    let mut terms = [0.0; NT];
    let mut dissipation = 0.0;
    for i in 0..grid.n {
        let x = grid.x(i);
        let jet = reference.eval(t, x);
        let (r, th_ref, big_u) = (refs.rho[i], refs.theta[i], refs.u[i]);
        let ev = model.thermo_eval(r, th_ref)?;
        let p_t = ev.dp_drho * jet.rho.t + ev.dp_dtheta * jet.theta.t;
        let p_x = ev.dp_drho * jet.rho.x + ev.dp_dtheta * jet.theta.x;
        let (u_x, u_t) = (jet.u.x, jet.u.t);
        let (th_x, th_t) = (jet.theta.x, jet.theta.t);

        let (rh, u, th) = (rho[i], prims.u[i], prims.theta[i]);
        let ds = prims.s[i] - ev.s;
        let du = big_u - u;

        let forced = match forcing {
            None => 0.0,
            Some(src) => {
                let f = mms_sources(model, src, t, x)?;
                let e = model.internal_energy(rh, th)?;
                let gibbs = e + prims.p[i] / rh - th * prims.s[i];
                let h_rho = model.ballistic_derivatives(r, th_ref, th_ref)?.d_rho;
                let internal = f.energy - u * f.momentum + 0.5 * u * u * f.mass;
                f.energy - f.momentum * big_u + 0.5 * big_u * big_u * f.mass
                    - th_ref / th * (internal - gibbs * f.mass)
                    - f.mass * h_rho
            }
        };

        let cell = [
            -rh * du * u_x * du,
            rh * ds * du * th_x,
            rh * (u_t + big_u * u_x) * du,
            -prims.p[i] * u_x,
            prims.sxx[i] * u_x,
            -rh * ds * th_t,
            -rh * ds * big_u * th_x,
            -prims.q[i] / th * th_x,
            (1.0 - rh / r) * p_t,
            -rh / r * u * p_x,
            forced,
        ];
        for (acc, v) in terms.iter_mut().zip(cell) {
            *acc += v;
        }
        dissipation += th_ref * prims.sigma[i];
    }
    let dx = grid.dx();
    terms.iter_mut().for_each(|v| *v *= dx);
    Ok(Rates {
        terms,
        dissipation: dissipation * dx,
    })
}

fn evaluate(
    model: &GasModel,
    grid: &Grid1D,
    state: &FieldState,
    reference: &ReferenceSolution,
    forcing: Option<&ReferenceSolution>,
    bands: &EssResBands,
) -> Result<Sample> {
    let t = state.t;
    let prims = recover_primitives(model, grid, state)?;
    // the reference pushed through the same discretisation
    let ref_state = FieldState::sample(model, grid, t, |x| {
        let p = reference.eval(t, x);
        (p.rho.v, p.u.v, p.theta.v)
    })?;
    let ref_prims = recover_primitives(model, grid, &ref_state)?;
    let refs = ReferenceSample {
        t,
        rho: ref_state.rho.clone(),
        theta: ref_prims.theta.clone(),
        u: ref_prims.u.clone(),
    };

    let mut report = distance(model, grid, state, &prims, &refs)?;
    report.res_fraction = residual_fraction(&ess_res_mask(&state.rho, &prims.theta, bands));
    let raw = rates(model, grid, t, &state.rho, &prims, &refs, reference, forcing)?;
    let own = rates(model, grid, t, &ref_state.rho, &ref_prims, &refs, reference, forcing)?;
    let mut excess = Rates {
        terms: raw.terms,
        dissipation: raw.dissipation - own.dissipation,
    };
    for (e, o) in excess.terms.iter_mut().zip(own.terms) {
        *e -= o;
    }
    Ok(Sample { report, raw, excess })
}

/// Term-by-term relative entropy balance along a trajectory.
///
/// For each stored time the report carries `I`, the accumulated
/// dissipation, the accumulated right-hand side integrals and the margin
/// `RHS - LHS`. Time integrals use the trapezoidal rule over the stored
/// outputs.
///
/// `margin` is the balance as stated. The named entries and
/// `dissipation_acc` are reported as excess over the same integrand
/// evaluated on the reference itself, discretised exactly like the numeric
/// state, so they vanish identically when the two coincide;
/// `excess_margin` is the balance assembled from them.
///
/// `forcing` names the reference whose manufactured sources drove the
/// numeric run, if any.
pub fn relative_entropy_ledger(
    model: &GasModel,
    trajectory: &Trajectory,
    reference: &ReferenceSolution,
    forcing: Option<&ReferenceSolution>,
    bands: &EssResBands,
) -> Result<Vec<RelEntReport>> {
    let grid = &trajectory.grid;
    if (grid.length - reference.length).abs() > 1e-12 * reference.length {
        return Err(Error::Structural(format!(
            "grid length {} differs from reference period {}",
            grid.length, reference.length
        )));
    }
    if trajectory.states.is_empty() {
        return Err(Error::Structural("empty trajectory".into()));
    }
    for w in trajectory.states.windows(2) {
        if !(w[1].t > w[0].t) {
            return Err(Error::Structural(format!("output times not increasing at t = {}", w[1].t)));
        }
    }
    for s in &trajectory.states {
        if s.len() != grid.n {
            return Err(Error::Structural(format!("state at t = {} has {} cells, grid has {}", s.t, s.len(), grid.n)));
        }
    }

    let samples: Vec<Sample> = trajectory
        .states
        .par_iter()
        .map(|s| evaluate(model, grid, s, reference, forcing, bands))
        .collect::<Result<_>>()?;

    let i0 = samples[0].report.i;
    let mut acc = [0.0; NT];
    let mut acc_raw = [0.0; NT];
    let (mut diss, mut diss_raw) = (0.0, 0.0);
    let mut out = Vec::with_capacity(samples.len());
    for k in 0..samples.len() {
        if k > 0 {
            let h = 0.5 * (samples[k].report.t - samples[k - 1].report.t);
            let (a, b) = (&samples[k - 1], &samples[k]);
            for j in 0..NT {
                acc[j] += h * (a.excess.terms[j] + b.excess.terms[j]);
                acc_raw[j] += h * (a.raw.terms[j] + b.raw.terms[j]);
            }
            diss += h * (a.excess.dissipation + b.excess.dissipation);
            diss_raw += h * (a.raw.dissipation + b.raw.dissipation);
        }
        let mut report = samples[k].report.clone();
        let growth = report.i - i0;
        report.dissipation_acc = diss;
        report.rhs_terms = LEDGER_TERMS.iter().copied().zip(acc).collect();
        report.margin = acc_raw.iter().sum::<f64>() - (growth + diss_raw);
        report.excess_margin = acc.iter().sum::<f64>() - (growth + diss);
        out.push(report);
    }
    Ok(out)
}
