//! Thermodynamic stability audit of the default gas and of the ideal
//! Boltzmann gas, which fails the third-law checks.

use nsf_relent::thermo::{stability_audit, AuditConfig, Boltzmann, GasModel};

fn main() -> nsf_relent::Result<()> {
    let cfg = AuditConfig {
        samples: 4000,
        ..AuditConfig::default()
    };
    for model in [GasModel::default(), GasModel::with_family(Boltzmann)] {
        let report = stability_audit(&model, &cfg)?;
        println!("== {} ({})", model.family.name(), if report.passed() { "pass" } else { "fail" });
        for (k, v) in report.constants() {
            println!("  {k:<22} {v:.6e}");
        }
        for f in &report.failures {
            println!("  failed {}: {}", f.check, f.witness);
        }
    }
    Ok(())
}
