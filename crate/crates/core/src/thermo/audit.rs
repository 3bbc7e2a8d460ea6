//! Sampling audit of the structural and stability hypotheses for a
//! [`GasModel`], with empirical constants for the growth bounds.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::model::GasModel;
use crate::error::Result;

/// Positive band edges `[rho_lo, rho_hi] x [theta_lo, theta_hi]` of the
/// essential set.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EssResBands {
    pub rho_lo: f64,
    pub rho_hi: f64,
    pub theta_lo: f64,
    pub theta_hi: f64,
}

impl EssResBands {
    pub fn new(rho_lo: f64, rho_hi: f64, theta_lo: f64, theta_hi: f64) -> Option<Self> {
        (0.0 < rho_lo && rho_lo < rho_hi && 0.0 < theta_lo && theta_lo < theta_hi).then_some(Self {
            rho_lo,
            rho_hi,
            theta_lo,
            theta_hi,
        })
    }

    /// Halve the minima and double the maxima of the strong solution.
    pub fn from_reference_extrema(rho: (f64, f64), theta: (f64, f64)) -> Option<Self> {
        Self::new(0.5 * rho.0, 2.0 * rho.1, 0.5 * theta.0, 2.0 * theta.1)
    }

    /// Closed band: edges count as essential.
    pub fn contains(&self, rho: f64, theta: f64) -> bool {
        (self.rho_lo..=self.rho_hi).contains(&rho) && (self.theta_lo..=self.theta_hi).contains(&theta)
    }
}

#[derive(Clone, Debug)]
pub struct AuditConfig {
    pub rho_range: (f64, f64),
    pub theta_range: (f64, f64),
    pub samples: usize,
    pub seed: u64,
    /// Extrema of the strong solution, used to build the coercivity bands.
    pub ref_rho: (f64, f64),
    pub ref_theta: (f64, f64),
}

impl Default for AuditConfig {
    fn default() -> Self {
        Self {
            rho_range: (0.1, 10.0),
            theta_range: (0.1, 10.0),
            samples: 10_000,
            seed: 0,
            ref_rho: (0.8, 1.2),
            ref_theta: (0.8, 1.2),
        }
    }
}

/// A violated condition with the point where it was observed.
#[derive(Clone, Debug, PartialEq)]
pub struct AuditFailure {
    pub check: &'static str,
    pub witness: String,
}

/// Extremum of a sampled quantity together with where it was attained.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Witnessed {
    pub value: f64,
    pub at: (f64, f64),
}

#[derive(Clone, Debug)]
pub struct AuditReport {
    pub failures: Vec<AuditFailure>,
    pub min_dp_drho: Witnessed,
    pub min_de_dtheta: Witnessed,
    /// Empirical `sup (5/3 P - P'Z)/Z` over the sampled `Z`.
    pub structural_c: f64,
    pub structural_min: f64,
    /// `P(Z)/Z^{5/3}` at the largest sampled `Z`.
    pub p_infty_empirical: f64,
    pub max_entropy_slope: f64,
    pub entropy_at_large_z: f64,
    /// Smallest sampled second difference of `rho -> H_Theta(rho, Theta)`.
    pub min_convexity: Witnessed,
    /// Number of sampled `(rho, Theta)` where the grid argmin of
    /// `theta -> H_Theta(rho, theta)` is not `Theta`.
    pub theta_min_misses: usize,
    pub min_relative_entropy: f64,
    pub bands: EssResBands,
    /// Fitted `c` in `E >= c (|rho - r|^2 + |theta - Theta|^2)` on the bands.
    pub coercivity_ess: Witnessed,
    /// Fitted `c` in `E >= c (1 + |rho s| + rho e)` off the bands.
    pub coercivity_res: f64,
    /// `rho e >= c (rho^{5/3} + theta^4)`.
    pub energy_growth_c: f64,
    /// `rho s <= c (theta^3 + rho S)`.
    pub entropy_bound_c: f64,
    /// `rho S <= c (rho + rho [log theta]^+ + rho |log rho|)`.
    pub entropy_log_c: f64,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// `(key, value)` rows with full precision, in a fixed order.
    pub fn constants(&self) -> Vec<(&'static str, f64)> {
        vec![
            ("min_dp_drho", self.min_dp_drho.value),
            ("min_de_dtheta", self.min_de_dtheta.value),
            ("structural_c", self.structural_c),
            ("structural_min", self.structural_min),
            ("p_infty_empirical", self.p_infty_empirical),
            ("max_entropy_slope", self.max_entropy_slope),
            ("entropy_at_large_z", self.entropy_at_large_z),
            ("min_convexity", self.min_convexity.value),
            ("theta_min_misses", self.theta_min_misses as f64),
            ("min_relative_entropy", self.min_relative_entropy),
            ("coercivity_ess", self.coercivity_ess.value),
            ("coercivity_res", self.coercivity_res),
            ("energy_growth_c", self.energy_growth_c),
            ("entropy_bound_c", self.entropy_bound_c),
            ("entropy_log_c", self.entropy_log_c),
        ]
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verdict={}", if self.passed() { "pass" } else { "fail" })?;
        for (k, v) in self.constants() {
            writeln!(f, "{k}={v:.16e}")?;
        }
        for failure in &self.failures {
            writeln!(f, "failure.{}={}", failure.check, failure.witness)?;
        }
        Ok(())
    }
}

/// Radical inverse of `index` in `base`.
fn radical_inverse(mut index: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut scale = inv;
    let mut out = 0.0;
    while index > 0 {
        out += (index % base) as f64 * scale;
        index /= base;
        scale *= inv;
    }
    out
}

/// Halton points in `[0,1)^D` with a seeded Cranley-Patterson shift.
pub fn halton_points<const D: usize>(count: usize, seed: u64) -> Vec<[f64; D]> {
    const BASES: [u64; 6] = [2, 3, 5, 7, 11, 13];
    assert!(D <= BASES.len());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut shift = [0.0; D];
    if seed != 0 {
        for s in shift.iter_mut() {
            *s = rng.gen::<f64>();
        }
    }
    (1..=count as u64)
        .map(|i| {
            let mut p = [0.0; D];
            for d in 0..D {
                p[d] = (radical_inverse(i, BASES[d]) + shift[d]).fract();
            }
            p
        })
        .collect()
}

fn log_lerp((lo, hi): (f64, f64), t: f64) -> f64 {
    lo * (hi / lo).powf(t)
}

fn lerp((lo, hi): (f64, f64), t: f64) -> f64 {
    lo + (hi - lo) * t
}

fn logspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| log_lerp((lo, hi), i as f64 / (n - 1) as f64))
}

/// Projected compass search minimising `f` over a box, starting at `x0`.
fn compass_minimize<const D: usize>(
    f: impl Fn(&[f64; D]) -> f64,
    bounds: &[(f64, f64); D],
    x0: [f64; D],
    iterations: usize,
) -> ([f64; D], f64) {
    let mut x = x0;
    let mut fx = f(&x);
    let mut step: [f64; D] = std::array::from_fn(|d| 0.05 * (bounds[d].1 - bounds[d].0));
    for _ in 0..iterations {
        let mut improved = false;
        for d in 0..D {
            for dir in [1.0, -1.0] {
                let mut y = x;
                y[d] = (y[d] + dir * step[d]).clamp(bounds[d].0, bounds[d].1);
                let fy = f(&y);
                if fy < fx {
                    x = y;
                    fx = fy;
                    improved = true;
                }
            }
        }
        if !improved {
            step.iter_mut().for_each(|s| *s *= 0.5);
            if step.iter().zip(bounds).all(|(s, b)| *s < 1e-10 * (b.1 - b.0)) {
                break;
            }
        }
    }
    (x, fx)
}

/// Samples the structural conditions on `P`, thermodynamic stability,
/// convexity of the ballistic free energy, the temperature-minimum
/// property, and fits the coercivity and growth constants.
pub fn stability_audit(model: &GasModel, cfg: &AuditConfig) -> Result<AuditReport> {
    let fam = &*model.family;
    let mut failures = Vec::new();
    let mut fail = |check: &'static str, witness: String| {
        if !failures.iter().any(|f: &AuditFailure| f.check == check) {
            failures.push(AuditFailure { check, witness });
        }
    };

    // structural conditions on P
    if fam.value(0.0) != 0.0 {
        fail("P(0)=0", format!("P(0)={}", fam.value(0.0)));
    }
    if !(fam.derivative(0.0) > 0.0) {
        fail("P'>0", "Z=0".into());
    }
    let mut structural_c = f64::NEG_INFINITY;
    let mut structural_min = f64::INFINITY;
    let mut max_entropy_slope = f64::NEG_INFINITY;
    let mut prev_ratio = f64::INFINITY;
    let z_max = 1e12;
    for z in logspace(1e-8, z_max, 801) {
        let (p, dp) = (fam.value(z), fam.derivative(z));
        if !(dp > 0.0) {
            fail("P'>0", format!("Z={z:e} P'={dp:e}"));
        }
        // (5/3 P - P' Z) / Z = -(2/3) Z S'(Z); going through S' lets families
        // with a closed form avoid the cancellation at large Z
        let ds = fam.entropy_slope(z);
        let ratio = -2.0 / 3.0 * z * ds;
        structural_c = structural_c.max(ratio);
        structural_min = structural_min.min(ratio);
        if !(ratio > 0.0) {
            fail("(5/3P-P'Z)/Z>0", format!("Z={z:e} value={ratio:e}"));
        }
        let scaled = p / z.powf(5.0 / 3.0);
        if scaled > prev_ratio * (1.0 + 1e-12) {
            fail("P/Z^(5/3) decreasing", format!("Z={z:e}"));
        }
        prev_ratio = scaled;
        max_entropy_slope = max_entropy_slope.max(ds);
        if !(ds < 0.0) {
            fail("S'<0", format!("Z={z:e} S'={ds:e}"));
        }
    }
    if !structural_c.is_finite() {
        fail("(5/3P-P'Z)/Z<c", "unbounded".into());
    }
    let p_infty_empirical = prev_ratio;
    if !(p_infty_empirical > 0.0) || (p_infty_empirical - fam.p_infty()).abs() > 1e-3 * fam.p_infty().max(1e-300) {
        fail(
            "P_inf>0",
            format!("P(Z)/Z^(5/3)={p_infty_empirical:e} at Z={z_max:e}, declared {}", fam.p_infty()),
        );
    }
    let entropy_at_large_z = fam.entropy_integral(z_max);
    if !(entropy_at_large_z.abs() <= 1e-3 * fam.entropy_integral(1.0).abs().max(1.0)) {
        fail("S(inf)=0", format!("S({z_max:e})={entropy_at_large_z:e}"));
    }

    // pointwise stability and growth constants on the (rho, theta) box
    let mut min_dp_drho = Witnessed { value: f64::INFINITY, at: (0.0, 0.0) };
    let mut min_de_dtheta = min_dp_drho;
    let mut min_convexity = min_dp_drho;
    let mut theta_min_misses = 0;
    let mut energy_growth_c = f64::INFINITY;
    let mut entropy_bound_c: f64 = 0.0;
    let mut entropy_log_c: f64 = 0.0;
    let theta_grid: Vec<f64> = (-50..=50).map(|j| (j as f64 * 4f64.ln() / 50.0).exp()).collect();

    for [u, v] in halton_points::<2>(cfg.samples, cfg.seed) {
        let rho = log_lerp(cfg.rho_range, u);
        let theta = log_lerp(cfg.theta_range, v);
        let ev = model.thermo_eval(rho, theta)?;
        if ev.dp_drho < min_dp_drho.value {
            min_dp_drho = Witnessed { value: ev.dp_drho, at: (rho, theta) };
        }
        if ev.de_dtheta < min_de_dtheta.value {
            min_de_dtheta = Witnessed { value: ev.de_dtheta, at: (rho, theta) };
        }
        if !(ev.dp_drho > 0.0) {
            fail("dp/drho>0", format!("rho={rho} theta={theta}"));
        }
        if !(ev.de_dtheta > 0.0) {
            fail("de/dtheta>0", format!("rho={rho} theta={theta}"));
        }

        // strict convexity of rho -> H_Theta(rho, Theta) with Theta = theta
        let h = 1e-2 * rho;
        let hm = model.ballistic_free_energy(rho - h, theta, theta)?;
        let h0 = model.ballistic_free_energy(rho, theta, theta)?;
        let hp = model.ballistic_free_energy(rho + h, theta, theta)?;
        let second = (hp - 2.0 * h0 + hm) / (h * h);
        if second < min_convexity.value {
            min_convexity = Witnessed { value: second, at: (rho, theta) };
        }
        if !(second > 0.0) {
            fail("H convex in rho", format!("rho={rho} Theta={theta}"));
        }

        // theta -> H_Theta(rho, theta) minimised at theta = Theta
        let argmin = theta_grid
            .iter()
            .map(|g| model.ballistic_free_energy(rho, g * theta, theta))
            .collect::<Result<Vec<_>>>()?
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
            .unwrap_or(0);
        if argmin != 50 {
            theta_min_misses += 1;
            fail("argmin_theta H = Theta", format!("rho={rho} Theta={theta}"));
        }

        let rho_e = rho * ev.e;
        let rho_s = rho * ev.s;
        let rho_big_s = rho * fam.entropy_integral(ev.z);
        energy_growth_c = energy_growth_c.min(rho_e / (rho.powf(5.0 / 3.0) + theta.powi(4)));
        if rho_s < 0.0 {
            fail("rho s>=0", format!("rho={rho} theta={theta}"));
        }
        entropy_bound_c = entropy_bound_c.max(rho_s / (theta.powi(3) + rho_big_s));
        let log_scale = rho * (1.0 + theta.ln().max(0.0) + rho.ln().abs());
        entropy_log_c = entropy_log_c.max(rho_big_s / log_scale);
    }
    if !(energy_growth_c > 0.0) {
        fail("rho e >= c(rho^(5/3)+theta^4)", format!("c={energy_growth_c:e}"));
    }

    // coercivity of the relative entropy on the bands
    let bands = EssResBands::from_reference_extrema(cfg.ref_rho, cfg.ref_theta)
        .ok_or_else(|| crate::Error::config("audit.ref", "reference extrema must be positive and ordered"))?;
    let box4 = [
        (bands.rho_lo, bands.rho_hi),
        (bands.theta_lo, bands.theta_hi),
        cfg.ref_rho,
        cfg.ref_theta,
    ];
    let quotient = |x: &[f64; 4]| -> f64 {
        let dist = (x[0] - x[2]).powi(2) + (x[1] - x[3]).powi(2);
        if dist < 1e-8 {
            return f64::INFINITY;
        }
        model
            .relative_entropy(x[0], x[1], x[2], x[3])
            .map(|e| e / dist)
            .unwrap_or(f64::NAN)
    };
    let mut min_relative_entropy = f64::INFINITY;
    let mut candidates: Vec<([f64; 4], f64)> = Vec::with_capacity(cfg.samples);
    for p in halton_points::<4>(cfg.samples, cfg.seed.wrapping_add(1)) {
        let x: [f64; 4] = std::array::from_fn(|d| lerp(box4[d], p[d]));
        let e = model.relative_entropy(x[0], x[1], x[2], x[3])?;
        min_relative_entropy = min_relative_entropy.min(e);
        if e < 0.0 {
            fail("E>=0", format!("rho={} theta={} r={} Theta={}", x[0], x[1], x[2], x[3]));
        }
        candidates.push((x, quotient(&x)));
    }
    candidates.sort_by(|a, b| a.1.total_cmp(&b.1));
    let mut coercivity_ess = Witnessed { value: f64::INFINITY, at: (0.0, 0.0) };
    for (x0, _) in candidates.iter().take(8) {
        let (x, c) = compass_minimize(quotient, &box4, *x0, 400);
        if c < coercivity_ess.value {
            coercivity_ess = Witnessed { value: c, at: (x[0], x[1]) };
        }
    }
    if !(coercivity_ess.value > 0.0) {
        fail("coercivity on bands", format!("c={:e}", coercivity_ess.value));
    }

    // off-band coercivity against 1 + |rho s| + rho e
    let wide = (bands.rho_lo * 1e-2, bands.rho_hi * 1e2);
    let wide_t = (bands.theta_lo * 1e-1, bands.theta_hi * 1e1);
    let mut coercivity_res = f64::INFINITY;
    for [u, v, w, y] in halton_points::<4>(cfg.samples, cfg.seed.wrapping_add(2)) {
        let (rho, theta) = (log_lerp(wide, u), log_lerp(wide_t, v));
        if bands.contains(rho, theta) {
            continue;
        }
        let (r, big_theta) = (lerp(cfg.ref_rho, w), lerp(cfg.ref_theta, y));
        let e = model.relative_entropy(rho, theta, r, big_theta)?;
        min_relative_entropy = min_relative_entropy.min(e);
        let scale = 1.0 + model.entropy_density(rho, theta)?.abs() + model.energy_density(rho, theta)?;
        coercivity_res = coercivity_res.min(e / scale);
    }
    if !(coercivity_res > 0.0) {
        fail("coercivity off bands", format!("c={coercivity_res:e}"));
    }

    Ok(AuditReport {
        failures,
        min_dp_drho,
        min_de_dtheta,
        structural_c,
        structural_min,
        p_infty_empirical,
        max_entropy_slope,
        entropy_at_large_z,
        min_convexity,
        theta_min_misses,
        min_relative_entropy,
        bands,
        coercivity_ess,
        coercivity_res,
        energy_growth_c,
        entropy_bound_c,
        entropy_log_c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn halton_first_points() {
        let pts = halton_points::<2>(3, 0);
        assert_eq!(pts[0], [0.5, 1.0 / 3.0]);
        assert_eq!(pts[1], [0.25, 2.0 / 3.0]);
        assert_eq!(pts[2][0], 0.75);
    }

    #[test]
    fn bands_are_closed() {
        let b = EssResBands::new(0.5, 2.0, 0.5, 2.0).unwrap();
        assert!(b.contains(2.0, 0.5));
        assert!(!b.contains(2.0 * 1.01, 1.0));
        assert!(EssResBands::new(1.0, 1.0, 0.5, 2.0).is_none());
        assert!(EssResBands::new(0.0, 1.0, 0.5, 2.0).is_none());
    }

    #[test]
    fn compass_finds_box_corner() {
        let (x, f) = compass_minimize(|x: &[f64; 2]| x[0] + x[1], &[(1.0, 2.0), (3.0, 4.0)], [1.5, 3.5], 200);
        assert!((x[0] - 1.0).abs() < 1e-9 && (x[1] - 3.0).abs() < 1e-9);
        assert!((f - 4.0).abs() < 1e-9);
    }
}
