use super::model::GasModel;
use crate::error::{Error, Result};

/// Safeguard bracket for the temperature.
pub const THETA_BRACKET: (f64, f64) = (1e-8, 1e8);
pub const MAX_ITERATIONS: usize = 100;

impl GasModel {
    /// `(e, de/dtheta)` at fixed density.
    fn energy_and_slope(&self, rho: f64, theta: f64) -> (f64, f64) {
        let f = &*self.family;
        let sqrt_t = theta.sqrt();
        let t32 = theta * sqrt_t;
        let t3 = theta * theta * theta;
        let z = rho / t32;
        let (pz, dpz) = f.value_and_derivative(z);
        let e = (1.5 * t32 * theta * pz + self.a * t3 * theta) / rho;
        let de = (1.5 * t32 * (2.5 * pz - 1.5 * dpz * z) + 4.0 * self.a * t3) / rho;
        (e, de)
    }

    /// The unique `theta` with `e(rho, theta) = eps`.
    pub fn temperature_from_internal_energy(&self, rho: f64, eps: f64) -> Result<f64> {
        self.temperature_from_internal_energy_near(rho, eps, None)
    }

    /// As [`temperature_from_internal_energy`](Self::temperature_from_internal_energy),
    /// starting Newton from `guess` when one is available.
    ///
    /// Newton steps that leave the current bracket are replaced by a
    /// bisection in `log theta`. Once the residual is within
    /// `1e-12 max(1, |eps|)` one further Newton step polishes the root.
    pub fn temperature_from_internal_energy_near(&self, rho: f64, eps: f64, guess: Option<f64>) -> Result<f64> {
        if !(rho > 0.0 && rho.is_finite()) {
            return Err(Error::domain("rho", rho, "density must be positive"));
        }
        if !eps.is_finite() {
            return Err(Error::domain("eps", eps, "internal energy must be finite"));
        }
        let (mut lo, mut hi) = THETA_BRACKET;
        let tol = 1e-12 * eps.abs().max(1.0);
        let mut theta = guess
            .filter(|g| g.is_finite() && *g > 0.0)
            .unwrap_or_else(|| {
                // the radiation part alone bounds theta from above
                let radiation = (rho * eps.max(0.0) / self.a).sqrt().sqrt();
                radiation.min(eps / 1.5)
            })
            .clamp(lo, hi);
        let mut residual = f64::NAN;

        for _ in 0..MAX_ITERATIONS {
            let (e, de) = self.energy_and_slope(rho, theta);
            residual = e - eps;
            if residual > 0.0 {
                hi = theta;
            } else {
                lo = theta;
            }
            let newton = theta - residual / de;
            let in_bracket = newton > lo && newton < hi;
            if residual.abs() <= tol {
                return Ok(if in_bracket { newton } else { theta });
            }
            let next = if in_bracket { newton } else { (lo * hi).sqrt() };
            if (next - theta).abs() <= 4.0 * f64::EPSILON * theta {
                break;
            }
            theta = next;
        }

        let (e_lo, _) = self.energy_and_slope(rho, THETA_BRACKET.0);
        let (e_hi, _) = self.energy_and_slope(rho, THETA_BRACKET.1);
        if eps < e_lo || eps > e_hi {
            return Err(Error::NoSolution { rho, eps, e_lo, e_hi });
        }
        Err(Error::NonConvergence {
            rho,
            eps,
            iterations: MAX_ITERATIONS,
            lo,
            hi,
            residual,
        })
    }
}
