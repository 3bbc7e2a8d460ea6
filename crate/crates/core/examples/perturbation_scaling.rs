//! Relative entropy is quadratic near the reference: halving the initial
//! perturbation divides `I` by about four.

use nsf_relent::reference::ReferenceSolution;
use nsf_relent::scenario::{run_parallel, twin_run, TimeConfig};
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
    let epss = [0.04, 0.02, 0.01, 0.005];
    let jobs: Vec<_> = epss
        .iter()
        .map(|&eps| {
            let (model, reference, time) = (&model, &reference, &time);
            move || twin_run(model, reference, &grid, time, eps)
        })
        .collect();
    let runs = run_parallel(jobs)?;
    for w in runs.windows(2) {
        println!(
            "eps {:>6} -> {:>6}: max I {:.4e} / {:.4e} = {:.4}",
            w[0].eps,
            w[1].eps,
            w[0].max_distance(),
            w[1].max_distance(),
            w[0].max_distance() / w[1].max_distance()
        );
    }
    Ok(())
}
