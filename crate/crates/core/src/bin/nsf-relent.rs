use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use nsf_relent::scenario::{plot_csv, run, run_as, PlotOptions, RunArtifacts, ScenarioConfig, ScenarioKind};
use nsf_relent::Error;

/// Relative entropy experiments for the 1-D Navier-Stokes-Fourier system.
#[derive(Parser)]
#[command(name = "nsf-relent", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Common {
    /// Scenario file of `section.key=value` lines.
    #[arg(long)]
    config: PathBuf,
    /// Output directory, overriding `output.dir`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// `key=value`, applied after the file. Repeatable.
    #[arg(long = "override", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Thermodynamic stability audit of the configured model.
    Audit(Common),
    /// Run the scenario named by `scenario.kind`.
    Run(Common),
    /// Refinement sweep over `sweep.n`.
    Sweep(Common),
    /// Plot CSV columns named by the `plot.*` keys to SVG.
    Plot(Common),
}

fn report(art: &RunArtifacts) {
    for c in &art.checks {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        println!("{tag} {}: {}", c.name, c.detail);
    }
    println!("wrote {} files to {}", art.files.len(), art.out_dir.display());
}

fn plot(cfg: &ScenarioConfig, out: Option<&Path>) -> Result<PathBuf, Error> {
    let csv = cfg
        .plot
        .csv
        .clone()
        .ok_or_else(|| Error::Config {
            key: "plot.csv".into(),
            message: "required by the plot command".into(),
        })?;
    let target = match (&cfg.plot.out, out) {
        (Some(p), Some(dir)) => dir.join(p.file_name().unwrap_or(p.as_os_str())),
        (Some(p), None) => p.clone(),
        (None, dir) => {
            let name = Path::new(csv.file_stem().unwrap_or_default()).with_extension("svg");
            dir.map(|d| d.join(&name)).unwrap_or_else(|| csv.with_file_name(&name))
        }
    };
    if let Some(parent) = target.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)?;
    }
    let opts = PlotOptions {
        log_y: cfg.plot.log_y,
        title: cfg.plot.title.clone(),
    };
    plot_csv(&csv, &cfg.plot.x, &cfg.plot.y, &target, &opts)?;
    Ok(target)
}

fn execute(cli: Cli) -> Result<bool, Error> {
    let (common, kind) = match &cli.command {
        Command::Audit(c) => (c, Some(ScenarioKind::Audit)),
        Command::Sweep(c) => (c, Some(ScenarioKind::Sweep)),
        Command::Run(c) | Command::Plot(c) => (c, None),
    };
    let cfg = ScenarioConfig::from_file(&common.config, &common.overrides)?;
    let out = common.out.as_deref();
    if let Command::Plot(_) = cli.command {
        let path = plot(&cfg, out)?;
        println!("wrote {}", path.display());
        return Ok(true);
    }
    let art = match kind {
        Some(k) => run_as(&cfg, k, out)?,
        None => run(&cfg, out)?,
    };
    report(&art);
    Ok(art.passed())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let informational = !e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if informational { 0 } else { 1 });
        }
    };
    match execute(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            // scenario errors already carry their cause in the message
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
