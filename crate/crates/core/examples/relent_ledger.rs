//! Term-by-term relative entropy balance of a perturbed twin run at its
//! final time.

use nsf_relent::reference::ReferenceSolution;
use nsf_relent::scenario::{twin_run, TimeConfig};
use nsf_relent::solver::Grid1D;
use nsf_relent::thermo::GasModel;

fn main() -> nsf_relent::Result<()> {
    let model = GasModel::default();
    let reference = ReferenceSolution::default();
    let grid = Grid1D::periodic(96, reference.length)?;
    let time = TimeConfig {
        t_end: 0.5,
        cfl: 0.4,
        output_every: 0,
    };
    let run = twin_run(&model, &reference, &grid, &time, 0.05)?;
    let (first, last) = (&run.ledger[0], run.ledger.last().unwrap());
    println!("I(0) = {:.6e}  I(t) = {:.6e}  t = {}", first.i, last.i, last.t);
    println!("accumulated dissipation {:.6e}", last.dissipation_acc);
    for (name, v) in &last.rhs_terms {
        println!("  {name:<28} {v:+.6e}");
    }
    println!("margin = RHS - LHS = {:+.3e}", last.margin);
    println!("cells outside the positivity bands: {}", run.max_residual_fraction());
    Ok(())
}
