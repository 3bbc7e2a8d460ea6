//! Twin experiment: the forced solver against its own manufactured
//! solution, started from the exact data and from perturbed data.

use nsf_relent::reference::ReferenceSolution;
use nsf_relent::relent::gronwall_fit;
use nsf_relent::scenario::{twin_run, TimeConfig};
use nsf_relent::solver::Grid1D;
use nsf_relent::thermo::GasModel;

fn main() -> nsf_relent::Result<()> {
    let model = GasModel::default();
    let reference = ReferenceSolution::default();
    let grid = Grid1D::periodic(128, reference.length)?;
    let time = TimeConfig {
        t_end: 1.0,
        cfl: 0.4,
        output_every: 0,
    };

    let exact = twin_run(&model, &reference, &grid, &time, 0.0)?;
    let floor = exact.max_distance();
    println!("eps = 0: max I = {floor:.3e}, max |margin| = {:.3e}", exact.margin_tolerance());
    println!("{}", gronwall_fit(&exact.times(), &exact.distances(), floor)?);

    let perturbed = twin_run(&model, &reference, &grid, &time, 0.02)?;
    for r in perturbed.ledger.iter().step_by(20) {
        println!(
            "t={:.3} I={:.4e} kinetic={:.3e} dissipation={:.3e} margin={:+.2e}",
            r.t, r.i, r.kinetic, r.dissipation_acc, r.margin
        );
    }
    print!("{}", gronwall_fit(&perturbed.times(), &perturbed.distances(), floor)?);
    Ok(())
}
