//! Writes the time series of a short perturbed twin run and renders `I`,
//! its kinetic part and the margin on a log axis.

use nsf_relent::reference::ReferenceSolution;
use nsf_relent::scenario::{plot_csv, twin_run, write_timeseries, PlotOptions, TimeConfig};
use nsf_relent::solver::Grid1D;
use nsf_relent::thermo::GasModel;

fn main() -> nsf_relent::Result<()> {
    let model = GasModel::default();
    let reference = ReferenceSolution::default();
    let grid = Grid1D::periodic(64, reference.length)?;
    let time = TimeConfig {
        t_end: 1.0,
        cfl: 0.4,
        output_every: 0,
    };
    let run = twin_run(&model, &reference, &grid, &time, 0.01)?;

    let dir = std::env::temp_dir().join("nsf-relent-plot-example");
    std::fs::create_dir_all(&dir)?;
    let csv = dir.join("timeseries.csv");
    write_timeseries(&csv, &run.ledger)?;
    let svg = dir.join("relent.svg");
    let columns = ["I", "kinetic", "entropy_part"].map(String::from);
    let opts = PlotOptions {
        log_y: true,
        title: "relative entropy, eps = 0.01".into(),
    };
    plot_csv(&csv, "t", &columns, &svg, &opts)?;
    println!("wrote {} and {}", csv.display(), svg.display());
    Ok(())
}
