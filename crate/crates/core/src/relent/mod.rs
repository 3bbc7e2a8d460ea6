//! Relative entropy between a numeric trajectory and a smooth reference.
//!
//! [`distance`] measures `I(t)`, [`relative_entropy_ledger`] tracks every term of the
//! relative entropy balance along a trajectory and [`gronwall_fit`] turns a
//! series `I(t)` into an empirical exponential rate.

mod distance;
mod gronwall;
mod ledger;
mod mask;

pub use distance::{distance, relative_entropy_density, ReferenceSample, RelEntReport};
pub use gronwall::{gronwall_fit, GronwallFit, Verdict, BOUND_SLACK};
pub use ledger::{bands_for, relative_entropy_ledger, LEDGER_TERMS};
pub use mask::{ess_res_mask, residual_fraction, split};
