//! Constitutive relations of a radiating, heat-conducting gas.
//!
//! `p = theta^{5/2} P(Z) + (a/3) theta^4`, `e = (3/2) theta^{5/2} P(Z)/rho + a theta^4/rho`,
//! `s = S(Z) + (4a/3) theta^3/rho`, with `Z = rho theta^{-3/2}`.

mod audit;
mod family;
mod inversion;
mod model;
mod state;

pub use audit::{halton_points, stability_audit, AuditConfig, AuditFailure, AuditReport, EssResBands, Witnessed};
pub use family::{Boltzmann, MonatomicDegenerate, StructuralPressure};
pub use inversion::{MAX_ITERATIONS, THETA_BRACKET};
pub use model::{GasModel, StructuralValues, Transport};
pub use state::{BallisticDerivatives, ThermoEval};
