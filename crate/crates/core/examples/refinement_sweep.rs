//! The `sweep` scenario driven from a config string: zero-perturbation twins
//! on refined grids with an order table and pass/fail checks.

use nsf_relent::scenario::{run, ScenarioConfig};

fn main() -> nsf_relent::Result<()> {
    let cfg = ScenarioConfig::from_str_with_overrides(
        "scenario.kind=sweep\nsweep.n=32,64,128\ntime.t_end=0.5\n",
        &[],
    )?;
    let out = std::env::temp_dir().join("nsf-relent-sweep-example");
    let art = run(&cfg, Some(&out))?;
    for (k, v) in &art.summary {
        println!("{k} = {v}");
    }
    for c in &art.checks {
        println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    println!("artifacts in {}", out.display());
    Ok(())
}
