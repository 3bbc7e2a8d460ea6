use std::sync::Arc;

use super::family::{MonatomicDegenerate, StructuralPressure};
use crate::error::{Error, Result};

/// Constitutive data of the gas: the structural pressure family, the
/// radiation constant and the transport coefficients
/// `mu = mu0 + mu1 theta`, `kappa = kappa0 + kappa2 theta^2 + kappa3 theta^3`.
/// Bulk viscosity is identically zero.
#[derive(Clone, Debug)]
pub struct GasModel {
    pub a: f64,
    pub mu0: f64,
    pub mu1: f64,
    pub kappa0: f64,
    pub kappa2: f64,
    pub kappa3: f64,
    pub family: Arc<dyn StructuralPressure>,
}

impl Default for GasModel {
    fn default() -> Self {
        Self {
            a: 1.0,
            mu0: 1e-3,
            mu1: 1e-3,
            kappa0: 2e-3,
            kappa2: 2e-3,
            kappa3: 2e-3,
            family: Arc::new(MonatomicDegenerate::default()),
        }
    }
}

/// `(P, P', S, S')` at one value of the degeneracy parameter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StructuralValues {
    pub p: f64,
    pub dp: f64,
    /// `+inf` at `Z = 0`.
    pub s: f64,
    /// `-inf` at `Z = 0`.
    pub ds: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Transport {
    pub mu: f64,
    pub kappa: f64,
}

impl GasModel {
    pub fn with_family(family: impl StructuralPressure + 'static) -> Self {
        Self {
            family: Arc::new(family),
            ..Self::default()
        }
    }

    /// Checks the sign conditions on the scalar parameters. Structural
    /// conditions on `P` are left to the audit.
    pub fn validate(&self) -> Result<()> {
        let checks = [
            ("model.a", self.a),
            ("model.mu0", self.mu0),
            ("model.mu1", self.mu1),
            ("model.kappa0", self.kappa0),
            ("model.kappa2", self.kappa2),
            ("model.kappa3", self.kappa3),
        ];
        for (key, value) in checks {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::config(key, format!("must be positive, got {value}")));
            }
        }
        Ok(())
    }

    pub fn p_infty(&self) -> f64 {
        self.family.p_infty()
    }

    pub fn eval_structural(&self, z: f64) -> Result<StructuralValues> {
        if !(z >= 0.0) {
            return Err(Error::domain("Z", z, "degeneracy parameter must be >= 0"));
        }
        let (s, ds) = if z == 0.0 {
            (f64::INFINITY, f64::NEG_INFINITY)
        } else {
            (self.family.entropy_integral(z), self.family.entropy_slope(z))
        };
        Ok(StructuralValues {
            p: self.family.value(z),
            dp: self.family.derivative(z),
            s,
            ds,
        })
    }

    /// `S(Z)`, rejecting `Z = 0` where it diverges logarithmically.
    pub fn entropy_integral(&self, z: f64) -> Result<f64> {
        if z == 0.0 {
            return Err(Error::EntropyDivergence);
        }
        if !(z > 0.0) {
            return Err(Error::domain("Z", z, "degeneracy parameter must be >= 0"));
        }
        Ok(self.family.entropy_integral(z))
    }

    pub fn viscosity(&self, theta: f64) -> f64 {
        self.mu0 + self.mu1 * theta
    }

    pub fn viscosity_slope(&self, _theta: f64) -> f64 {
        self.mu1
    }

    pub fn conductivity(&self, theta: f64) -> f64 {
        self.kappa0 + theta * theta * (self.kappa2 + self.kappa3 * theta)
    }

    pub fn conductivity_slope(&self, theta: f64) -> f64 {
        theta * (2.0 * self.kappa2 + 3.0 * self.kappa3 * theta)
    }

    pub fn transport(&self, theta: f64) -> Result<Transport> {
        if !(theta > 0.0) {
            return Err(Error::domain("theta", theta, "temperature must be positive"));
        }
        Ok(Transport {
            mu: self.viscosity(theta),
            kappa: self.conductivity(theta),
        })
    }
}
