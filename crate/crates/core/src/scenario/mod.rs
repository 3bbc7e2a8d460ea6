//! Scenario configs, experiment orchestration and artifacts.
//!
//! A scenario is one of `audit`, `twin`, `sweep` or `perturb`; see
//! [`run`]. Members of sweeps and perturbation studies run concurrently on a
//! pool capped by `NSF_RELENT_THREADS`.

mod config;
mod experiment;
mod output;
mod plot;
mod run;

pub use config::{parse_pairs, PlotConfig, ScenarioConfig, ScenarioKind, TimeConfig};
pub use experiment::{perturbed_initial, run_parallel, thread_cap, twin_run, TwinOutcome, DEFAULT_SAMPLES};
pub use output::{config_hash, write_ledger, write_manifest, write_timeseries};
pub use plot::{plot_csv, read_columns, render_svg, PlotOptions, Series};
pub use run::{run, run_as, Check, RunArtifacts, ORDER_BAND, ORDER_TOLERANCE, RATIO_TOLERANCE};
