use std::path::{Path, PathBuf};

use crate::convergence::order_in_cells;
use crate::error::{Error, Result};
use crate::relent::{gronwall_fit, GronwallFit};
use crate::thermo::stability_audit;

use super::config::{ScenarioConfig, ScenarioKind};
use super::experiment::{run_parallel, twin_run, TwinOutcome};
use super::output::{
    fmt_f, write_budget, write_ledger, write_manifest, write_pairs, write_state, write_table, write_text,
    write_timeseries,
};

/// Admissible band for an observed order of "about 2".
pub const ORDER_BAND: (f64, f64) = (1.8, 2.2);
/// `|order - 2|` allowed where only "order about 2" is asked for.
pub const ORDER_TOLERANCE: f64 = 0.3;
/// Allowed deviation of `I(eps) / I(eps/2)` from 4.
pub const RATIO_TOLERANCE: f64 = 0.25;

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        Self {
            name: name.into(),
            passed,
            detail,
        }
    }
}

/// What a scenario run produced.
#[derive(Clone, Debug)]
pub struct RunArtifacts {
    pub kind: ScenarioKind,
    pub out_dir: PathBuf,
    pub files: Vec<PathBuf>,
    pub checks: Vec<Check>,
    /// Headline numbers, also written to `summary.txt`.
    pub summary: Vec<(String, String)>,
}

impl RunArtifacts {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn in_band(v: f64, band: (f64, f64)) -> bool {
    v >= band.0 && v <= band.1
}

fn near_two(v: f64) -> bool {
    (v - 2.0).abs() <= ORDER_TOLERANCE
}

/// Runs the scenario selected by `cfg.kind`, writing into `out` or, if
/// `None`, into `cfg.output_dir`.
pub fn run(cfg: &ScenarioConfig, out: Option<&Path>) -> Result<RunArtifacts> {
    run_as(cfg, cfg.kind, out)
}

/// Runs `kind` with the settings of `cfg`.
pub fn run_as(cfg: &ScenarioConfig, kind: ScenarioKind, out: Option<&Path>) -> Result<RunArtifacts> {
    let dir = out.unwrap_or(&cfg.output_dir).to_path_buf();
    std::fs::create_dir_all(&dir)?;
    let mut art = RunArtifacts {
        kind,
        out_dir: dir.clone(),
        files: Vec::new(),
        checks: Vec::new(),
        summary: Vec::new(),
    };
    match kind {
        ScenarioKind::Audit => audit(cfg, &mut art)?,
        ScenarioKind::Twin => twin(cfg, &mut art)?,
        ScenarioKind::Sweep => sweep(cfg, &mut art)?,
        ScenarioKind::Perturb => perturb(cfg, &mut art)?,
    }
    let summary = dir.join("summary.txt");
    let mut pairs = art.summary.clone();
    for c in &art.checks {
        pairs.push((format!("check.{}", c.name), if c.passed { "pass" } else { "fail" }.into()));
    }
    write_pairs(&summary, &pairs)?;
    art.files.push(summary);
    let manifest = write_manifest(&dir, cfg, &art.files)?;
    art.files.push(manifest);
    Ok(art)
}

fn audit(cfg: &ScenarioConfig, art: &mut RunArtifacts) -> Result<()> {
    let (rho, theta) = cfg.reference.extrema(cfg.time.t_end, 256, 256);
    let audit_cfg = crate::thermo::AuditConfig {
        ref_rho: rho,
        ref_theta: theta,
        ..cfg.audit.clone()
    };
    let report = stability_audit(&cfg.model, &audit_cfg).map_err(|e| e.in_scenario("audit"))?;
    let path = art.out_dir.join("audit.txt");
    write_text(&path, &report.to_string())?;
    art.files.push(path);
    for (k, v) in report.constants() {
        art.summary.push((k.to_string(), fmt_f(v)));
    }
    let detail = report
        .failures
        .iter()
        .map(|f| format!("{}: {}", f.check, f.witness))
        .collect::<Vec<_>>()
        .join("; ");
    art.checks.push(Check::new("audit", report.passed(), detail));
    Ok(())
}

fn twin_job<'a>(cfg: &'a ScenarioConfig, n: usize, eps: f64) -> impl FnOnce() -> Result<TwinOutcome> + Send + 'a {
    move || {
        let grid = cfg.grid(n)?;
        twin_run(&cfg.model, &cfg.reference, &grid, &cfg.time, eps)
            .map_err(|e| e.in_scenario(format!("twin run n={n} eps={eps}")))
    }
}

/// Gronwall fit of `run` against the level of the zero-perturbation twin.
fn fit(run: &TwinOutcome, floor: f64) -> Result<GronwallFit> {
    gronwall_fit(&run.times(), &run.distances(), floor)
}

fn write_run(art: &mut RunArtifacts, run: &TwinOutcome, suffix: &str) -> Result<()> {
    let dir = art.out_dir.clone();
    let ts = dir.join(format!("timeseries{suffix}.csv"));
    write_timeseries(&ts, &run.ledger)?;
    let ledger = dir.join(format!("ledger{suffix}.csv"));
    write_ledger(&ledger, &run.ledger)?;
    let budget = dir.join(format!("budget{suffix}.csv"));
    write_budget(&budget, &run.budget)?;
    let state = dir.join(format!("final_state{suffix}.csv"));
    write_state(&state, &run.grid, &run.final_state, &run.final_prims)?;
    art.files.extend([ts, ledger, budget, state]);
    Ok(())
}

fn write_fit(art: &mut RunArtifacts, fit: &GronwallFit, suffix: &str) -> Result<()> {
    let path = art.out_dir.join(format!("gronwall{suffix}.txt"));
    write_text(&path, &fit.to_string())?;
    art.files.push(path);
    Ok(())
}

fn run_summary(run: &TwinOutcome) -> Vec<(String, String)> {
    vec![
        ("n".into(), run.grid.n.to_string()),
        ("eps".into(), fmt_f(run.eps)),
        ("steps".into(), run.steps.to_string()),
        ("dt".into(), fmt_f(run.dt)),
        ("max_I".into(), fmt_f(run.max_distance())),
        ("margin_tol".into(), fmt_f(run.margin_tolerance())),
        ("excess_margin_tol".into(), fmt_f(run.excess_margin_tolerance())),
        ("final_error".into(), fmt_f(run.final_error)),
        ("mass_drift".into(), fmt_f(run.budget.mass_drift)),
        ("max_entropy_residual".into(), fmt_f(run.budget.max_entropy_residual)),
        ("min_sigma".into(), fmt_f(run.budget.min_sigma)),
        ("max_res_fraction".into(), fmt_f(run.max_residual_fraction())),
    ]
}

/// Pointwise checks every forced run must meet.
fn run_checks(art: &mut RunArtifacts, run: &TwinOutcome, label: &str) {
    art.checks.push(Check::new(
        &format!("sigma_nonnegative{label}"),
        run.budget.min_sigma >= -1e-10,
        format!("min sigma = {:e}", run.budget.min_sigma),
    ));
}

fn twin(cfg: &ScenarioConfig, art: &mut RunArtifacts) -> Result<()> {
    let mut epss = vec![cfg.eps];
    if cfg.eps > 0.0 {
        epss.push(0.0);
    }
    let jobs: Vec<_> = epss.iter().map(|&e| twin_job(cfg, cfg.n, e)).collect();
    let runs = run_parallel(jobs)?;
    let main = &runs[0];
    let floor = runs.last().map(|r| r.max_distance()).unwrap_or(0.0);

    write_run(art, main, "")?;
    let gf = fit(main, floor)?;
    write_fit(art, &gf, "")?;
    art.summary.extend(run_summary(main));
    art.summary.push(("floor".into(), fmt_f(floor)));
    art.summary.push(("c3".into(), fmt_f(gf.c3)));
    art.summary.push(("envelope_rate".into(), fmt_f(gf.envelope_rate)));
    art.summary.push(("verdict".into(), gf.verdict.to_string()));
    run_checks(art, main, "");
    if cfg.eps == 0.0 {
        art.checks.push(Check::new(
            "identically_zero",
            gf.verdict == crate::relent::Verdict::IdenticallyZero && gf.bound_satisfied,
            format!("verdict = {}, max I = {:e}", gf.verdict, floor),
        ));
    } else {
        art.checks.push(Check::new(
            "gronwall_bound",
            gf.bound_satisfied && gf.c3.is_finite(),
            format!("c3 = {:.4}, envelope rate = {:.4}, floor = {:e}", gf.c3, gf.envelope_rate, floor),
        ));
    }
    Ok(())
}

fn sweep(cfg: &ScenarioConfig, art: &mut RunArtifacts) -> Result<()> {
    let ns = &cfg.sweep_ns;
    let jobs: Vec<_> = ns.iter().map(|&n| twin_job(cfg, n, cfg.eps)).collect();
    let runs = run_parallel(jobs)?;

    let col = |f: &dyn Fn(&TwinOutcome) -> f64| runs.iter().map(f).collect::<Vec<f64>>();
    let max_i = col(&|r| r.max_distance());
    let root_i = col(&|r| r.max_distance().sqrt());
    let tol = col(&|r| r.margin_tolerance());
    let excess = col(&|r| r.excess_margin_tolerance());
    let error = col(&|r| r.final_error);
    let budget = col(&|r| r.budget.max_entropy_residual);
    let min_sigma = col(&|r| r.budget.min_sigma);

    let header = [
        "n",
        "dx",
        "steps",
        "max_I",
        "sqrt_max_I",
        "margin_tol",
        "excess_margin_tol",
        "final_error",
        "max_entropy_residual",
        "min_sigma",
    ];
    let rows: Vec<Vec<f64>> = runs
        .iter()
        .enumerate()
        .map(|(k, r)| {
            vec![
                r.grid.n as f64,
                r.grid.dx(),
                r.steps as f64,
                max_i[k],
                root_i[k],
                tol[k],
                excess[k],
                error[k],
                budget[k],
                min_sigma[k],
            ]
        })
        .collect();
    let table = art.out_dir.join("sweep.csv");
    write_table(&table, &header, &rows)?;
    art.files.push(table);
    for r in &runs {
        let path = art.out_dir.join(format!("timeseries_n{}.csv", r.grid.n));
        write_timeseries(&path, &r.ledger)?;
        art.files.push(path);
    }

    let orders = [
        ("order.max_I", order_in_cells(ns, &max_i)),
        ("order.sqrt_max_I", order_in_cells(ns, &root_i)),
        ("order.margin_tol", order_in_cells(ns, &tol)),
        ("order.excess_margin_tol", order_in_cells(ns, &excess)),
        ("order.final_error", order_in_cells(ns, &error)),
        ("order.entropy_residual", order_in_cells(ns, &budget)),
    ];
    let order_file = art.out_dir.join("orders.txt");
    let pairs: Vec<(String, String)> = orders.iter().map(|(k, v)| (k.to_string(), fmt_f(*v))).collect();
    write_pairs(&order_file, &pairs)?;
    art.files.push(order_file);
    art.summary.push(("grids".into(), ns.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(",")));
    art.summary.push(("eps".into(), fmt_f(cfg.eps)));
    art.summary.extend(pairs);

    let o = |k: &str| orders.iter().find(|(n, _)| *n == k).map(|(_, v)| *v).unwrap_or(f64::NAN);
    art.checks.push(Check::new(
        "floor_order",
        in_band(o("order.max_I"), ORDER_BAND),
        format!("max_t I order {:.3}, want [1.8, 2.2]", o("order.max_I")),
    ));
    art.checks.push(Check::new(
        "margin_order",
        near_two(o("order.margin_tol")),
        format!("tol_n order {:.3}", o("order.margin_tol")),
    ));
    art.checks.push(Check::new(
        "mms_order",
        in_band(o("order.final_error"), ORDER_BAND),
        format!("L2 error order {:.3}", o("order.final_error")),
    ));
    art.checks.push(Check::new(
        "entropy_budget_order",
        near_two(o("order.entropy_residual")),
        format!("budget residual order {:.3}", o("order.entropy_residual")),
    ));
    let monotone = max_i.windows(2).all(|w| w[1] <= 1.1 * w[0]);
    art.checks.push(Check::new(
        "monotone_refinement",
        monotone,
        format!("max_t I = {}", max_i.iter().map(|v| format!("{v:.3e}")).collect::<Vec<_>>().join(", ")),
    ));
    for r in &runs {
        run_checks(art, r, &format!("_n{}", r.grid.n));
    }
    Ok(())
}

fn perturb(cfg: &ScenarioConfig, art: &mut RunArtifacts) -> Result<()> {
    if !(cfg.eps > 0.0) {
        return Err(Error::config("scenario.eps", "perturb needs eps > 0"));
    }
    let epss = [cfg.eps, cfg.eps / 2.0, cfg.eps / 4.0, 0.0];
    let jobs: Vec<_> = epss.iter().map(|&e| twin_job(cfg, cfg.n, e)).collect();
    let runs = run_parallel(jobs)?;
    let floor = runs[3].max_distance();

    let mut rows = Vec::new();
    for (k, r) in runs[..3].iter().enumerate() {
        let suffix = format!("_eps{k}");
        let gf = fit(r, floor)?;
        let path = art.out_dir.join(format!("timeseries{suffix}.csv"));
        write_timeseries(&path, &r.ledger)?;
        art.files.push(path);
        write_fit(art, &gf, &suffix)?;
        rows.push(vec![
            r.eps,
            r.ledger[0].i,
            r.max_distance(),
            gf.c3,
            gf.envelope_rate,
            f64::from(u8::from(gf.bound_satisfied)),
        ]);
        art.checks.push(Check::new(
            &format!("gronwall_bound_eps{k}"),
            gf.bound_satisfied && gf.c3.is_finite(),
            format!("eps = {}, c3 = {:.4}, envelope rate = {:.4}", r.eps, gf.c3, gf.envelope_rate),
        ));
        run_checks(art, r, &suffix);
    }
    let table = art.out_dir.join("perturb.csv");
    write_table(&table, &["eps", "I0", "max_I", "c3", "envelope_rate", "bound_satisfied"], &rows)?;
    art.files.push(table);

    for k in 0..2 {
        let ratio = runs[k].max_distance() / runs[k + 1].max_distance();
        art.summary.push((format!("ratio_{k}"), fmt_f(ratio)));
        art.checks.push(Check::new(
            &format!("quadratic_scaling_{k}"),
            (ratio - 4.0).abs() <= 4.0 * RATIO_TOLERANCE,
            format!("max I ratio {ratio:.4}"),
        ));
    }
    art.summary.push(("floor".into(), fmt_f(floor)));
    Ok(())
}
