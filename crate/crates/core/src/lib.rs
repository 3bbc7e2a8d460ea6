//! Relative entropy diagnostics for the one-dimensional Navier-Stokes-Fourier
//! system with a radiating gas.
//!
//! The crate is organised bottom-up:
//!
//! * [`thermo`]: equation of state, ballistic free energy, relative entropy,
//!   temperature recovery and a stability audit.
//! * [`reference`]: manufactured smooth solutions with exact derivatives and
//!   the forcing that makes them solve the system.
//! * [`solver`]: a conservative method-of-lines finite-difference solver.
//! * [`relent`]: the relative entropy distance, the term-by-term relative
//!   entropy balance and the Gronwall fit.
//! * [`scenario`]: config parsing, experiment orchestration, CSV output and
//!   SVG plots.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod convergence;
pub mod error;
pub mod reference;
pub mod relent;
pub mod scenario;
pub mod solver;
pub mod thermo;

pub use error::{Error, Result};
