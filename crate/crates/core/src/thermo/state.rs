//! Pointwise thermodynamics: `p`, `e`, `s`, their first partials, the
//! ballistic free energy and the relative entropy.

use super::model::GasModel;
use crate::error::{Error, Result};

/// Pressure, specific internal energy, specific entropy and their first
/// partial derivatives at one state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThermoEval {
    pub rho: f64,
    pub theta: f64,
    pub z: f64,
    pub p: f64,
    pub e: f64,
    pub s: f64,
    pub dp_drho: f64,
    pub dp_dtheta: f64,
    pub de_drho: f64,
    pub de_dtheta: f64,
    pub ds_drho: f64,
    pub ds_dtheta: f64,
}

impl ThermoEval {
    /// Squared sound speed `p_rho + theta p_theta^2 / (rho^2 e_theta)`.
    pub fn sound_speed_sq(&self) -> f64 {
        self.dp_drho + self.theta * self.dp_dtheta * self.dp_dtheta / (self.rho * self.rho * self.de_dtheta)
    }
}

/// `H_Theta(rho, theta) = rho e - Theta rho s` and the partials entering the
/// relative entropy balance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BallisticDerivatives {
    pub h: f64,
    pub d_rho: f64,
    pub d_rho_rho: f64,
    pub d_rho_theta: f64,
}

fn check_theta(theta: f64) -> Result<()> {
    if theta > 0.0 && theta.is_finite() {
        Ok(())
    } else {
        Err(Error::domain("theta", theta, "temperature must be positive"))
    }
}

fn check_rho_nonneg(rho: f64) -> Result<()> {
    if rho >= 0.0 && rho.is_finite() {
        Ok(())
    } else {
        Err(Error::domain("rho", rho, "density must be non-negative"))
    }
}

fn check_rho_pos(rho: f64) -> Result<()> {
    if rho > 0.0 && rho.is_finite() {
        Ok(())
    } else {
        Err(Error::domain("rho", rho, "specific quantities are undefined at vacuum"))
    }
}

#[inline]
fn degeneracy(rho: f64, theta: f64) -> f64 {
    rho / (theta * theta.sqrt())
}

impl GasModel {
    /// `p = theta^{5/2} P(rho theta^{-3/2}) + (a/3) theta^4`.
    pub fn pressure(&self, rho: f64, theta: f64) -> Result<f64> {
        check_rho_nonneg(rho)?;
        check_theta(theta)?;
        let t2 = theta * theta;
        Ok(t2 * theta.sqrt() * self.family.value(degeneracy(rho, theta)) + self.a / 3.0 * t2 * t2)
    }

    /// Internal energy density `rho e`, continuous down to `rho = 0`.
    pub fn energy_density(&self, rho: f64, theta: f64) -> Result<f64> {
        check_rho_nonneg(rho)?;
        check_theta(theta)?;
        let t2 = theta * theta;
        Ok(1.5 * t2 * theta.sqrt() * self.family.value(degeneracy(rho, theta)) + self.a * t2 * t2)
    }

    /// Entropy density `rho s`; at `rho = 0` only the radiation part remains.
    pub fn entropy_density(&self, rho: f64, theta: f64) -> Result<f64> {
        check_rho_nonneg(rho)?;
        check_theta(theta)?;
        let radiation = 4.0 / 3.0 * self.a * theta * theta * theta;
        if rho == 0.0 {
            return Ok(radiation);
        }
        Ok(rho * self.family.entropy_integral(degeneracy(rho, theta)) + radiation)
    }

    pub fn internal_energy(&self, rho: f64, theta: f64) -> Result<f64> {
        check_rho_pos(rho)?;
        Ok(self.energy_density(rho, theta)? / rho)
    }

    pub fn entropy(&self, rho: f64, theta: f64) -> Result<f64> {
        check_rho_pos(rho)?;
        check_theta(theta)?;
        let z = degeneracy(rho, theta);
        Ok(self.family.entropy_integral(z) + 4.0 / 3.0 * self.a * theta * theta * theta / rho)
    }

    /// All first partials by the chain rule through `P`, `P'` and `S'`,
    /// using `dZ/drho = Z/rho` and `dZ/dtheta = -(3/2) Z/theta`.
    pub fn thermo_eval(&self, rho: f64, theta: f64) -> Result<ThermoEval> {
        check_rho_pos(rho)?;
        check_theta(theta)?;
        let f = &*self.family;
        let a = self.a;
        let sqrt_t = theta.sqrt();
        let t32 = theta * sqrt_t;
        let t2 = theta * theta;
        let t3 = t2 * theta;
        let t52 = t2 * sqrt_t;
        let z = rho / t32;
        let (pz, dpz) = f.value_and_derivative(z);
        let (sz, dsz) = (f.entropy_integral(z), f.entropy_slope(z));
        // 5/2 P - 3/2 P' Z, the temperature derivative of theta^{5/2} P(Z) over theta^{3/2}
        let thermal = 2.5 * pz - 1.5 * dpz * z;

        let p = t52 * pz + a / 3.0 * t2 * t2;
        let e = 1.5 * t52 * pz / rho + a * t2 * t2 / rho;
        let s = sz + 4.0 / 3.0 * a * t3 / rho;

        let dp_drho = theta * dpz;
        let dp_dtheta = t32 * thermal + 4.0 / 3.0 * a * t3;
        let de_drho = (1.5 * t52 * (dpz * z - pz) - a * t2 * t2) / (rho * rho);
        let de_dtheta = (1.5 * t32 * thermal + 4.0 * a * t3) / rho;
        let ds_drho = dsz * z / rho - 4.0 / 3.0 * a * t3 / (rho * rho);
        let ds_dtheta = -1.5 * dsz * z / theta + 4.0 * a * t2 / rho;

        Ok(ThermoEval {
            rho,
            theta,
            z,
            p,
            e,
            s,
            dp_drho,
            dp_dtheta,
            de_drho,
            de_dtheta,
            ds_drho,
            ds_dtheta,
        })
    }

    /// `H_Theta(rho, theta) = rho e(rho, theta) - Theta rho s(rho, theta)`,
    /// evaluated in density-weighted form so `rho = 0` is admissible.
    pub fn ballistic_free_energy(&self, rho: f64, theta: f64, big_theta: f64) -> Result<f64> {
        check_theta(big_theta)?;
        Ok(self.energy_density(rho, theta)? - big_theta * self.entropy_density(rho, theta)?)
    }

    /// `H_Theta` with its density derivatives at `(rho, theta)`.
    ///
    /// Computed from the density-weighted forms:
    /// `d(rho e)/drho = (3/2) theta P'(Z)` and `d(rho s)/drho = S + Z S'`.
    pub fn ballistic_derivatives(&self, rho: f64, theta: f64, big_theta: f64) -> Result<BallisticDerivatives> {
        check_rho_pos(rho)?;
        check_theta(theta)?;
        check_theta(big_theta)?;
        let f = &*self.family;
        let sqrt_t = theta.sqrt();
        let t32 = theta * sqrt_t;
        let z = rho / t32;
        let (dpz, d2pz) = (f.derivative(z), f.second_derivative(z));
        let (sz, dsz, d2sz) = (f.entropy_integral(z), f.entropy_slope(z), f.entropy_curvature(z));
        let h = self.ballistic_free_energy(rho, theta, big_theta)?;

        let d_rho = 1.5 * theta * dpz - big_theta * (sz + z * dsz);
        // d/dZ (S + Z S') = 2 S' + Z S''
        let ent_curv = 2.0 * dsz + z * d2sz;
        let d_rho_rho = 1.5 * d2pz / sqrt_t - big_theta * ent_curv / t32;
        let d_rho_theta = 1.5 * (dpz - 1.5 * z * d2pz) + big_theta * 1.5 * z * ent_curv / theta;

        Ok(BallisticDerivatives {
            h,
            d_rho,
            d_rho_rho,
            d_rho_theta,
        })
    }

    /// `E(rho, theta | r, Theta) = H_Theta(rho, theta) - dH_Theta/drho(r, Theta)(rho - r) - H_Theta(r, Theta)`.
    ///
    /// `rho = 0` is admissible; the reference state must be strictly positive.
    pub fn relative_entropy(&self, rho: f64, theta: f64, r: f64, big_theta: f64) -> Result<f64> {
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::domain("r", r, "reference density must be positive"));
        }
        check_theta(big_theta)?;
        let reference = self.ballistic_derivatives(r, big_theta, big_theta)?;
        let h = self.ballistic_free_energy(rho, theta, big_theta)?;
        Ok(h - reference.d_rho * (rho - r) - reference.h)
    }
}
