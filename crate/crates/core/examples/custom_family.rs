//! Plugging in a structural pressure law of one's own. Besides `P`, `P'`,
//! `P''` and `P_infty` only `S'` is given in closed form; `S` itself falls
//! back to the trait's quadrature.

use nsf_relent::thermo::{stability_audit, AuditConfig, GasModel, StructuralPressure};

/// `P(Z) = Z (1 + Z^2)^{1/3}`: linear at low degeneracy, `Z^{5/3}` at high.
#[derive(Debug)]
struct Blended;

impl StructuralPressure for Blended {
    fn name(&self) -> &str {
        "blended"
    }

    fn value(&self, z: f64) -> f64 {
        z * (1.0 + z * z).cbrt()
    }

    fn derivative(&self, z: f64) -> f64 {
        let w = 1.0 + z * z;
        w.cbrt() + 2.0 / 3.0 * z * z / (w * w).cbrt()
    }

    fn second_derivative(&self, z: f64) -> f64 {
        let w = 1.0 + z * z;
        2.0 * z / (w * w).cbrt() - 8.0 / 9.0 * z.powi(3) / (w * w * w * w * w).cbrt()
    }

    fn p_infty(&self) -> f64 {
        1.0
    }

    /// Closed form of `-(3/2)(5/3 P - P' Z) / Z^2`, which cancels badly
    /// when evaluated from `P` at large `Z`.
    fn entropy_slope(&self, z: f64) -> f64 {
        -1.0 / (z * (1.0 + z * z).powf(2.0 / 3.0))
    }
}

fn main() -> nsf_relent::Result<()> {
    let model = GasModel::with_family(Blended);
    model.validate()?;
    for z in [0.1, 1.0, 10.0] {
        println!("S({z}) = {:.10}", model.entropy_integral(z)?);
    }
    let ev = model.thermo_eval(1.0, 1.0)?;
    println!("p = {:.6}, e = {:.6}, s = {:.6}, c^2 = {:.6}", ev.p, ev.e, ev.s, ev.sound_speed_sq());
    let report = stability_audit(
        &model,
        &AuditConfig {
            samples: 2000,
            ..AuditConfig::default()
        },
    )?;
    print!("{report}");
    Ok(())
}
