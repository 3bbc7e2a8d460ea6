//! Pointwise thermodynamics of the default gas: the Gibbs relation checked
//! by finite differences, the entropy integral and temperature recovery.

use nsf_relent::thermo::GasModel;

fn main() -> nsf_relent::Result<()> {
    let model = GasModel::default();
    for z in [0.1, 1.0, 10.0, 100.0] {
        println!("S({z}) = {:.15}", model.entropy_integral(z)?);
    }

    let h = 1e-5;
    for (rho, theta) in [(0.5, 0.8), (1.0, 1.0), (4.0, 2.5)] {
        let ev = model.thermo_eval(rho, theta)?;
        // theta ds = de - p / rho^2 drho, split by direction
        let ds_dt = (model.entropy(rho, theta + h)? - model.entropy(rho, theta - h)?) / (2.0 * h);
        let de_dt = (model.internal_energy(rho, theta + h)? - model.internal_energy(rho, theta - h)?) / (2.0 * h);
        let ds_dr = (model.entropy(rho + h, theta)? - model.entropy(rho - h, theta)?) / (2.0 * h);
        let de_dr = (model.internal_energy(rho + h, theta)? - model.internal_energy(rho - h, theta)?) / (2.0 * h);
        println!(
            "rho={rho} theta={theta}: p={:.6} e={:.6} s={:.6}  gibbs residuals {:.1e} {:.1e}",
            ev.p,
            ev.e,
            ev.s,
            theta * ds_dt - de_dt,
            theta * ds_dr - (de_dr - ev.p / (rho * rho)),
        );
        let back = model.temperature_from_internal_energy(rho, ev.e)?;
        println!("  temperature recovered from e: {back:.15}");
        println!("  E(rho, theta | 1, 1) = {:.6e}", model.relative_entropy(rho, theta, 1.0, 1.0)?);
    }
    Ok(())
}
