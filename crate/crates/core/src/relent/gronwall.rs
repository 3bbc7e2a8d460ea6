use std::fmt;

use crate::error::{Error, Result};

/// Relative slack in the bound `I(t) <= I(0) exp(c3 t) (1 + slack) + floor`.
pub const BOUND_SLACK: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Every sample lies within ten floors: the trajectories coincide up
    /// to the discretisation.
    IdenticallyZero,
    /// The fitted exponential bound holds at every sample.
    Bounded,
    Violated,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::IdenticallyZero => "identically zero at resolution",
            Verdict::Bounded => "bounded",
            Verdict::Violated => "violated",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GronwallFit {
    /// Fitted exponential rate.
    pub c3: f64,
    /// RMS deviation of `ln(I + floor)` from the fitted line.
    pub residual: f64,
    pub bound_satisfied: bool,
    /// Smallest `c` with `I(t) <= I(0) exp(c t) + floor` at every sample,
    /// for comparison with the fitted `c3`.
    pub envelope_rate: f64,
    pub floor: f64,
    /// Samples used by the fit.
    pub window: usize,
    pub verdict: Verdict,
}

impl fmt::Display for GronwallFit {
    /// `key=value` lines.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "c3={:.16e}", self.c3)?;
        writeln!(f, "residual={:.16e}", self.residual)?;
        writeln!(f, "envelope_rate={:.16e}", self.envelope_rate)?;
        writeln!(f, "floor={:.16e}", self.floor)?;
        writeln!(f, "window={}", self.window)?;
        writeln!(f, "bound_satisfied={}", self.bound_satisfied)?;
        writeln!(f, "verdict={}", self.verdict)
    }
}

/// Least-squares fit of `ln(I + floor)` against `t` over the samples with
/// `I > 10 floor`, followed by the bound check at every sample.
///
/// With fewer than two samples above `10 floor` the series is treated as
/// zero at resolution; the bound check then asks `I <= floor` everywhere.
pub fn gronwall_fit(t: &[f64], i: &[f64], floor: f64) -> Result<GronwallFit> {
    if t.len() != i.len() || t.is_empty() {
        return Err(Error::Structural(format!("series lengths {} and {}", t.len(), i.len())));
    }
    if t.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Structural("times must increase".into()));
    }
    if i.iter().any(|v| !(*v >= 0.0)) {
        return Err(Error::Structural("I must be non-negative".into()));
    }
    if !(floor >= 0.0) {
        return Err(Error::Structural(format!("floor must be non-negative, got {floor}")));
    }

    let window: Vec<(f64, f64)> = t
        .iter()
        .zip(i)
        .filter(|(_, v)| **v > 10.0 * floor)
        .map(|(t, v)| (*t, (v + floor).ln()))
        .collect();
    if window.len() < 2 {
        return Ok(GronwallFit {
            c3: 0.0,
            residual: 0.0,
            bound_satisfied: i.iter().all(|v| *v <= floor),
            envelope_rate: 0.0,
            floor,
            window: window.len(),
            verdict: Verdict::IdenticallyZero,
        });
    }

    let m = window.len() as f64;
    let (mt, my) = window.iter().fold((0.0, 0.0), |(a, b), (t, y)| (a + t / m, b + y / m));
    let (sty, stt) = window
        .iter()
        .fold((0.0, 0.0), |(a, b), (t, y)| (a + (t - mt) * (y - my), b + (t - mt) * (t - mt)));
    let c3 = sty / stt;
    let intercept = my - c3 * mt;
    let residual = (window.iter().map(|(t, y)| (y - intercept - c3 * t).powi(2)).sum::<f64>() / m).sqrt();

    let (t0, i0) = (t[0], i[0]);
    let bound_satisfied = t
        .iter()
        .zip(i)
        .all(|(t, v)| *v <= i0 * (c3 * (t - t0)).exp() * (1.0 + BOUND_SLACK) + floor);
    let envelope_rate = t
        .iter()
        .zip(i)
        .skip(1)
        .filter(|(_, v)| **v > floor)
        .map(|(t, v)| ((v - floor) / i0).ln() / (t - t0))
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(GronwallFit {
        c3,
        residual,
        bound_satisfied,
        envelope_rate,
        floor,
        window: window.len(),
        verdict: if bound_satisfied { Verdict::Bounded } else { Verdict::Violated },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_exponential() {
        let t: Vec<f64> = (0..50).map(|k| k as f64 * 0.02).collect();
        let i: Vec<f64> = t.iter().map(|t| 3e-4 * (2.0 * t).exp()).collect();
        let fit = gronwall_fit(&t, &i, 0.0).unwrap();
        assert!((fit.c3 - 2.0).abs() < 1e-6);
        assert!((fit.envelope_rate - 2.0).abs() < 1e-9);
        assert!(fit.residual < 1e-12);
        assert!(fit.bound_satisfied);
        assert_eq!(fit.verdict, Verdict::Bounded);
    }

    #[test]
    fn below_floor_is_zero_at_resolution() {
        let t = [0.0, 0.5, 1.0];
        let fit = gronwall_fit(&t, &[0.0, 1e-12, 3e-12], 1e-11).unwrap();
        assert_eq!(fit.verdict, Verdict::IdenticallyZero);
        assert!(fit.bound_satisfied);
        assert!(fit.to_string().contains("verdict=identically zero at resolution"));
    }

    #[test]
    fn detects_violation() {
        let t = [0.0, 0.5, 1.0, 1.5];
        // decays then jumps far above any fitted exponential through it
        let i = [1.0, 0.1, 0.01, 50.0];
        let fit = gronwall_fit(&t, &i, 0.0).unwrap();
        assert!(!fit.bound_satisfied);
    }

    #[test]
    fn rejects_bad_series() {
        assert!(gronwall_fit(&[0.0, 0.0], &[1.0, 1.0], 0.0).is_err());
        assert!(gronwall_fit(&[0.0, 1.0], &[1.0, -1.0], 0.0).is_err());
    }
}
