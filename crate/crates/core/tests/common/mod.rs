//! Oracles shared by the integration tests. Nothing here calls into the
//! crate's own thermodynamics.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Gauss-Legendre nodes and weights on [-1, 1], Newton on the three-term
/// recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n {
        let mut t = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, t);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * t * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let dp = n as f64 * (t * p1 - p0) / (t * t - 1.0);
            let step = p1 / dp;
            t -= step;
            if step.abs() < 1e-16 {
                let (mut q0, mut q1) = (1.0, t);
                for k in 2..=n {
                    let q2 = ((2 * k - 1) as f64 * t * q1 - (k - 1) as f64 * q0) / k as f64;
                    q0 = q1;
                    q1 = q2;
                }
                let d = n as f64 * (t * q1 - q0) / (t * t - 1.0);
                x[i] = t;
                w[i] = 2.0 / ((1.0 - t * t) * d * d);
                break;
            }
        }
    }
    (x, w)
}

/// `P(Z) = Z (1 + Z)^{2/3}` and its derivative, written out by hand.
pub fn p_default(z: f64) -> (f64, f64) {
    let w = 1.0 + z;
    (z * w.powf(2.0 / 3.0), w.powf(2.0 / 3.0) + 2.0 / 3.0 * z * w.powf(-1.0 / 3.0))
}

/// `-S'(Z) = (3/2)(5/3 P - P' Z) / Z^2` straight from `P`.
pub fn minus_entropy_slope(z: f64) -> f64 {
    let (p, dp) = p_default(z);
    1.5 * (5.0 / 3.0 * p - dp * z) / (z * z)
}

/// `S(Z) = int_Z^inf -S'` by composite Gauss-Legendre in `y = ln zeta` up
/// to `zeta = 1e8`, plus the tail of the `zeta^{-4/3}` asymptote.
pub fn entropy_oracle(z: f64) -> f64 {
    let (nodes, weights) = gauss_legendre(24);
    let z_cut: f64 = 1e8;
    let (y0, y1) = (z.ln(), z_cut.ln());
    let panels = ((y1 - y0) / 0.25).ceil() as usize;
    let h = (y1 - y0) / panels as f64;
    let mut sum = 0.0;
    for k in 0..panels {
        let mid = y0 + (k as f64 + 0.5) * h;
        for (x, w) in nodes.iter().zip(&weights) {
            let zeta = (mid + 0.5 * h * x).exp();
            sum += 0.5 * h * w * minus_entropy_slope(zeta) * zeta;
        }
    }
    let c = minus_entropy_slope(z_cut) * z_cut.powf(4.0 / 3.0);
    sum + 3.0 * c * z_cut.powf(-1.0 / 3.0)
}

/// `count` seeded uniform points in `[lo, hi]^2`.
pub fn random_points(count: usize, lo: f64, hi: f64, seed: u64) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| (rng.gen_range(lo..=hi), rng.gen_range(lo..=hi))).collect()
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}
