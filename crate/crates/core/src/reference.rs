//! Manufactured smooth solutions on a periodic interval.
//!
//! Each field is a constant offset plus a finite sum of travelling waves
//! `amp * sin(2 pi k x / L - omega t + phase)`, so every derivative is exact.
//! [`mms_sources`] returns the forcing that turns such a triple into an exact
//! solution of the forced one-dimensional system.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::thermo::GasModel;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mode {
    pub amplitude: f64,
    /// Integer number of periods across the domain.
    pub wavenumber: i32,
    pub phase: f64,
    /// Angular frequency.
    pub omega: f64,
}

impl Mode {
    pub fn new(amplitude: f64, wavenumber: i32, phase: f64, omega: f64) -> Self {
        Self {
            amplitude,
            wavenumber,
            phase,
            omega,
        }
    }
}

impl FromStr for Mode {
    type Err = String;

    /// `amp:k:phase:omega`
    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.trim().split(':').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(format!("expected amp:k:phase:omega, got `{s}`"));
        }
        let num = |i: usize| parts[i].parse::<f64>().map_err(|e| format!("`{}`: {e}", parts[i]));
        let wavenumber = parts[1]
            .parse::<i32>()
            .map_err(|_| format!("wavenumber must be an integer for periodicity, got `{}`", parts[1]))?;
        Ok(Mode::new(num(0)?, wavenumber, num(2)?, num(3)?))
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}:{}", self.amplitude, self.wavenumber, self.phase, self.omega)
    }
}

/// Value and exact derivatives of one field at one point.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Jet {
    pub v: f64,
    pub t: f64,
    pub x: f64,
    pub xx: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Profile {
    pub offset: f64,
    pub modes: Vec<Mode>,
}

impl Profile {
    pub fn constant(offset: f64) -> Self {
        Self {
            offset,
            modes: Vec::new(),
        }
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.modes.push(mode);
        self
    }

    /// Parses the comma-separated mode list of a config value.
    pub fn parse_modes(s: &str) -> Result<Vec<Mode>, String> {
        s.split(',')
            .filter(|m| !m.trim().is_empty())
            .map(str::parse)
            .collect()
    }

    pub fn modes_string(&self) -> String {
        self.modes.iter().map(Mode::to_string).collect::<Vec<_>>().join(",")
    }

    pub fn lower_bound(&self) -> f64 {
        self.offset - self.modes.iter().map(|m| m.amplitude.abs()).sum::<f64>()
    }

    pub fn upper_bound(&self) -> f64 {
        self.offset + self.modes.iter().map(|m| m.amplitude.abs()).sum::<f64>()
    }

    pub fn eval(&self, length: f64, t: f64, x: f64) -> Jet {
        let mut jet = Jet {
            v: self.offset,
            ..Jet::default()
        };
        for m in &self.modes {
            let k = 2.0 * PI * m.wavenumber as f64 / length;
            let (sin, cos) = (k * x - m.omega * t + m.phase).sin_cos();
            jet.v += m.amplitude * sin;
            jet.t -= m.amplitude * m.omega * cos;
            jet.x += m.amplitude * k * cos;
            jet.xx -= m.amplitude * k * k * sin;
        }
        jet
    }
}

/// Smooth triple `(r, Theta, U)` on the periodic interval `[0, L)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReferenceSolution {
    pub length: f64,
    pub rho: Profile,
    pub theta: Profile,
    pub u: Profile,
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ReferencePoint {
    pub rho: Jet,
    pub theta: Jet,
    pub u: Jet,
}

/// Forcing of the mass, momentum and total energy equations.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Sources {
    pub mass: f64,
    pub momentum: f64,
    pub energy: f64,
}

impl Default for ReferenceSolution {
    fn default() -> Self {
        Self {
            length: 1.0,
            rho: Profile::constant(1.0).with_mode(Mode::new(0.1, 1, 0.0, 1.0)),
            theta: Profile::constant(1.0).with_mode(Mode::new(0.1, 1, 1.0, 2.0)),
            u: Profile::constant(0.1).with_mode(Mode::new(0.1, 1, 0.5, -1.0)),
        }
    }
}

impl ReferenceSolution {
    /// Validates positivity of the density and temperature profiles.
    pub fn new(length: f64, rho: Profile, theta: Profile, u: Profile) -> Result<Self> {
        if !(length > 0.0 && length.is_finite()) {
            return Err(Error::config("ref.L", format!("must be positive, got {length}")));
        }
        if !(rho.lower_bound() > 0.0) {
            return Err(Error::config(
                "ref.rho",
                format!("offset minus amplitudes must be positive, got {}", rho.lower_bound()),
            ));
        }
        if !(theta.lower_bound() > 0.0) {
            return Err(Error::config(
                "ref.theta",
                format!("offset minus amplitudes must be positive, got {}", theta.lower_bound()),
            ));
        }
        Ok(Self { length, rho, theta, u })
    }

    pub fn constant(length: f64, rho: f64, theta: f64, u: f64) -> Result<Self> {
        Self::new(length, Profile::constant(rho), Profile::constant(theta), Profile::constant(u))
    }

    /// Guaranteed lower bounds `(rho_min, theta_min)` over all `(t, x)`.
    pub fn lower_bounds(&self) -> (f64, f64) {
        (self.rho.lower_bound(), self.theta.lower_bound())
    }

    pub fn eval(&self, t: f64, x: f64) -> ReferencePoint {
        ReferencePoint {
            rho: self.rho.eval(self.length, t, x),
            theta: self.theta.eval(self.length, t, x),
            u: self.u.eval(self.length, t, x),
        }
    }

    /// Sampled extrema of `(r, Theta)` over `[0, t_end] x [0, L)` on an
    /// `nx x nt` lattice.
    pub fn extrema(&self, t_end: f64, nx: usize, nt: usize) -> ((f64, f64), (f64, f64)) {
        let mut r = (f64::INFINITY, f64::NEG_INFINITY);
        let mut th = r;
        for j in 0..=nt {
            let t = t_end * j as f64 / nt.max(1) as f64;
            for i in 0..nx {
                let x = self.length * i as f64 / nx as f64;
                let p = self.eval(t, x);
                r = (r.0.min(p.rho.v), r.1.max(p.rho.v));
                th = (th.0.min(p.theta.v), th.1.max(p.theta.v));
            }
        }
        (r, th)
    }
}

/// Residuals of the forced equations when `(r, Theta, U)` is substituted:
///
/// ```text
/// f_mass = r_t + (r U)_x
/// f_mom  = (r U)_t + (r U^2 + p)_x - S_x,                S = (4/3) mu(Theta) U_x
/// f_E    = E_t + ((E + p) U)_x - (S U)_x + q_x,          q = -kappa(Theta) Theta_x
/// ```
///
/// with `E = r U^2/2 + r e(r, Theta)`, all assembled by the chain rule from
/// exact profile derivatives.
pub fn mms_sources(model: &GasModel, reference: &ReferenceSolution, t: f64, x: f64) -> Result<Sources> {
    let ReferencePoint { rho: r, theta: th, u } = reference.eval(t, x);
    let ev = model.thermo_eval(r.v, th.v)?;

    let mass = r.t + r.x * u.v + r.v * u.x;

    let p_x = ev.dp_drho * r.x + ev.dp_dtheta * th.x;
    let mu = model.viscosity(th.v);
    let stress = 4.0 / 3.0 * mu * u.x;
    let stress_x = 4.0 / 3.0 * (model.viscosity_slope(th.v) * th.x * u.x + mu * u.xx);
    let momentum = r.t * u.v + r.v * u.t + r.x * u.v * u.v + 2.0 * r.v * u.v * u.x + p_x - stress_x;

    // d(rho e)/drho = e + rho e_rho, d(rho e)/dtheta = rho e_theta
    let re_rho = ev.e + r.v * ev.de_drho;
    let re_theta = r.v * ev.de_dtheta;
    let total = 0.5 * r.v * u.v * u.v + r.v * ev.e;
    let total_t = 0.5 * r.t * u.v * u.v + r.v * u.v * u.t + re_rho * r.t + re_theta * th.t;
    let total_x = 0.5 * r.x * u.v * u.v + r.v * u.v * u.x + re_rho * r.x + re_theta * th.x;
    let q_x = -model.conductivity_slope(th.v) * th.x * th.x - model.conductivity(th.v) * th.xx;
    let energy = total_t + (total_x + p_x) * u.v + (total + ev.p) * u.x - (stress_x * u.v + stress * u.x) + q_x;

    Ok(Sources { mass, momentum, energy })
}
