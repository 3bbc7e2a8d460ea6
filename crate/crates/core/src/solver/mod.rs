//! Conservative finite-difference solver for the one-dimensional system.
//!
//! The evolved variables are `(rho, rho u, E)`. Entropy is only diagnosed,
//! so total energy conservation reduces to a telescoping sum.

mod budget;
mod grid;
mod integrate;
mod rhs;
mod state;

pub use budget::{budget_residuals, forcing_entropy_rate, BudgetReport};
pub use grid::{Boundary, Grid1D};
pub use integrate::{integrate, step_plan, RunOptions, Trajectory};
pub use rhs::{advance, spatial_rhs, stable_time_step, Stepper, Tendencies, DEFAULT_CFL};
pub use state::{recover_primitives, write_snapshot, FieldState, PrimitiveFields};
