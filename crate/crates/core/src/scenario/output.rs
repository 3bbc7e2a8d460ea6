//! CSV and text artifacts. Floats are written with 17 significant digits
//! and nothing time-dependent goes into a file, so identical runs produce
//! identical bytes.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::relent::{RelEntReport, LEDGER_TERMS};
use crate::solver::{write_snapshot, BudgetReport, FieldState, Grid1D, PrimitiveFields};
use crate::thermo::GasModel;

use super::config::ScenarioConfig;

pub(crate) fn fmt_f(v: f64) -> String {
    format!("{v:.16e}")
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

/// `t,I,kinetic,entropy_part,dissipation_acc,margin,excess_margin,res_fraction`.
pub fn write_timeseries(path: &Path, ledger: &[RelEntReport]) -> Result<()> {
    let mut w = csv::Writer::from_writer(create(path)?);
    w.write_record([
        "t",
        "I",
        "kinetic",
        "entropy_part",
        "dissipation_acc",
        "margin",
        "excess_margin",
        "res_fraction",
    ])?;
    for r in ledger {
        w.write_record(
            [
                r.t,
                r.i,
                r.kinetic,
                r.entropy_part,
                r.dissipation_acc,
                r.margin,
                r.excess_margin,
                r.res_fraction,
            ]
            .map(fmt_f),
        )?;
    }
    w.flush()?;
    Ok(())
}

/// Accumulated right-hand side entries, one column per term.
pub fn write_ledger(path: &Path, ledger: &[RelEntReport]) -> Result<()> {
    let mut w = csv::Writer::from_writer(create(path)?);
    let mut header = vec!["t"];
    header.extend(LEDGER_TERMS);
    w.write_record(&header)?;
    for r in ledger {
        let mut row = vec![fmt_f(r.t)];
        row.extend(r.rhs_terms.iter().map(|(_, v)| fmt_f(*v)));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// `t,entropy_residual` per stored step.
pub fn write_budget(path: &Path, budget: &BudgetReport) -> Result<()> {
    let mut w = csv::Writer::from_writer(create(path)?);
    w.write_record(["t", "entropy_residual"])?;
    for (t, r) in budget.times.iter().zip(&budget.entropy_residual) {
        w.write_record([fmt_f(*t), fmt_f(*r)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_state(path: &Path, grid: &Grid1D, state: &FieldState, prims: &PrimitiveFields) -> Result<()> {
    let mut w = create(path)?;
    write_snapshot(&mut w, grid, state, prims)?;
    w.flush()?;
    Ok(())
}

/// Writes a table given as a header and rows of numbers.
pub fn write_table(path: &Path, header: &[&str], rows: &[Vec<f64>]) -> Result<()> {
    let mut w = csv::Writer::from_writer(create(path)?);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row.iter().map(|v| fmt_f(*v)))?;
    }
    w.flush()?;
    Ok(())
}

/// Writes `key=value` lines.
pub fn write_pairs(path: &Path, pairs: &[(String, String)]) -> Result<()> {
    let mut w = create(path)?;
    for (k, v) in pairs {
        writeln!(w, "{k}={v}")?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text)?;
    Ok(())
}

/// SHA-256 of the canonical config, hex encoded.
pub fn config_hash(cfg: &ScenarioConfig) -> String {
    Sha256::digest(cfg.canonical.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn model_pairs(model: &GasModel) -> Vec<(String, String)> {
    vec![
        ("model.a".into(), fmt_f(model.a)),
        ("model.mu0".into(), fmt_f(model.mu0)),
        ("model.mu1".into(), fmt_f(model.mu1)),
        ("model.kappa0".into(), fmt_f(model.kappa0)),
        ("model.kappa2".into(), fmt_f(model.kappa2)),
        ("model.kappa3".into(), fmt_f(model.kappa3)),
        ("model.family".into(), model.family.name().to_string()),
        ("model.family_params".into(), model.family.params()),
    ]
}

/// Writes `manifest.txt`: crate version, config hash, model parameters, the
/// resolved scenario settings and the list of files produced.
pub fn write_manifest(dir: &Path, cfg: &ScenarioConfig, files: &[PathBuf]) -> Result<PathBuf> {
    let mut pairs = vec![
        ("version".to_string(), env!("CARGO_PKG_VERSION").to_string()),
        ("config_sha256".into(), config_hash(cfg)),
        ("scenario.kind".into(), cfg.kind.to_string()),
        ("scenario.seed".into(), cfg.seed.to_string()),
        ("scenario.eps".into(), fmt_f(cfg.eps)),
        ("grid.n".into(), cfg.n.to_string()),
        ("grid.L".into(), fmt_f(cfg.length)),
        ("grid.bc".into(), cfg.bc.to_string()),
        ("time.t_end".into(), fmt_f(cfg.time.t_end)),
        ("time.cfl".into(), fmt_f(cfg.time.cfl)),
        ("time.output_every".into(), cfg.time.output_every.to_string()),
    ];
    pairs.extend(model_pairs(&cfg.model));
    for f in files {
        let name = f.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        pairs.push(("file".into(), name));
    }
    let path = dir.join("manifest.txt");
    write_pairs(&path, &pairs)?;
    Ok(path)
}
