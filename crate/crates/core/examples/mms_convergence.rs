//! Manufactured-solution convergence study of the solver.
//!
//! Starts from the reference at `t = 0`, integrates the forced system to
//! `t = 1` and prints the discrete L2 error of `(rho, u, theta)` for three
//! grids together with the observed order.

use nsf_relent::convergence::order_in_cells;
use nsf_relent::reference::ReferenceSolution;
use nsf_relent::solver::{integrate, recover_primitives, FieldState, Grid1D, RunOptions};
use nsf_relent::thermo::GasModel;

fn main() -> nsf_relent::Result<()> {
    let model = GasModel::default();
    let reference = ReferenceSolution::default();
    let opts = RunOptions {
        t_end: 1.0,
        output_every: usize::MAX,
        ..RunOptions::default()
    };
    let ns = [64, 128, 256];
    let mut errors = Vec::new();
    for &n in &ns {
        let grid = Grid1D::periodic(n, reference.length)?;
        let init = FieldState::sample(&model, &grid, 0.0, |x| {
            let p = reference.eval(0.0, x);
            (p.rho.v, p.u.v, p.theta.v)
        })?;
        let start = std::time::Instant::now();
        let traj = integrate(&model, &grid, init, Some(&reference), &opts)?;
        let last = traj.last();
        let prims = recover_primitives(&model, &grid, last)?;
        let mut sq = 0.0;
        for (i, x) in grid.centers().enumerate() {
            let p = reference.eval(last.t, x);
            sq += (last.rho[i] - p.rho.v).powi(2) + (prims.u[i] - p.u.v).powi(2) + (prims.theta[i] - p.theta.v).powi(2);
        }
        let err = (sq * grid.dx()).sqrt();
        println!("n={n:4} steps={:6} l2_error={err:.6e} ({:.2?})", traj.steps, start.elapsed());
        errors.push(err);
    }
    println!("observed order {:.4}", order_in_cells(&ns, &errors));
    Ok(())
}
