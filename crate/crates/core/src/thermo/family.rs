//! Structural pressure families `P(Z)`.
//!
//! The pressure law is `p = theta^{5/2} P(Z) + (a/3) theta^4` with the
//! degeneracy parameter `Z = rho / theta^{3/2}`. Everything else about the
//! gas (internal energy, entropy, their derivatives) follows from `P` once
//! the entropy integral `S` is fixed by `S' = -(3/2)(5/3 P - P' Z)/Z^2` and
//! `S(Z) -> 0` as `Z -> infinity`.

use std::fmt;

/// A pluggable pressure function `P(Z)` with the derivatives the rest of the
/// toolkit needs.
///
/// Only `value`, `derivative`, `second_derivative` and `p_infty` are
/// required. The entropy integral and its derivatives have generic defaults
/// built from `P`; families with closed forms should override them.
/// Whether a family is physically admissible is decided by
/// [`stability_audit`](crate::thermo::stability_audit), not by the trait.
pub trait StructuralPressure: Send + Sync + fmt::Debug {
    /// Identifier used in config files (`model.family`).
    fn name(&self) -> &str;

    /// Parameter string as it would appear in `model.family_params`.
    fn params(&self) -> String {
        String::new()
    }

    fn value(&self, z: f64) -> f64;

    fn derivative(&self, z: f64) -> f64;

    fn second_derivative(&self, z: f64) -> f64;

    /// `(P, P')` together, for families that share work between them.
    fn value_and_derivative(&self, z: f64) -> (f64, f64) {
        (self.value(z), self.derivative(z))
    }

    /// `lim P(Z)/Z^{5/3}` as `Z -> infinity`.
    fn p_infty(&self) -> f64;

    /// `S'(Z) = -(3/2)(5/3 P - P' Z) / Z^2`, for `Z > 0`.
    fn entropy_slope(&self, z: f64) -> f64 {
        -1.5 * (5.0 / 3.0 * self.value(z) - self.derivative(z) * z) / (z * z)
    }

    /// `S''(Z)`, differentiated from the definition of `S'`.
    fn entropy_curvature(&self, z: f64) -> f64 {
        let (p, dp, d2p) = (self.value(z), self.derivative(z), self.second_derivative(z));
        -1.5 * ((2.0 / 3.0 * dp - d2p * z) / (z * z) - 2.0 * (5.0 / 3.0 * p - dp * z) / (z * z * z))
    }

    /// `S(Z) = int_Z^inf -S'(zeta) d zeta`, for `Z > 0`.
    ///
    /// The default integrates numerically up to `Z_c = max(1e3 Z, 1e8)` in the
    /// variable `zeta = Z / t^3` and closes with the tail of the asymptote
    /// `-S' ~ C zeta^{-4/3}`, `C` matched at `Z_c`. Beyond `Z_c` the generic
    /// `S'` loses too many digits to cancellation in `5/3 P - P' Z`.
    fn entropy_integral(&self, z: f64) -> f64 {
        let z_cut = (1e3 * z).max(1e8);
        let t_cut = (z / z_cut).cbrt();
        let integrand = |t: f64| -self.entropy_slope(z / (t * t * t)) * 3.0 * z / (t * t * t * t);
        let body = quadrature::integrate(integrand, t_cut, 1.0, 1e-14).integral;
        let c = -self.entropy_slope(z_cut) * z_cut.powf(4.0 / 3.0);
        body + 3.0 * c / z_cut.cbrt()
    }
}

/// `P(Z) = Z (1 + b Z)^{2/3}`.
///
/// Interpolates between the Boltzmann regime `P ~ Z` at small `Z` and the
/// degenerate regime `P ~ b^{2/3} Z^{5/3}` at large `Z`. With this family
/// `(5/3 P - P' Z)/Z = (2/3)(1 + bZ)^{-1/3}`, so every structural condition
/// holds with the bound `c = 2/3` and `P_inf = b^{2/3}`. The entropy
/// integral has the closed form
///
/// ```text
/// S(Z) = sqrt(3) pi/2 - [ ln(u-1) - ln(u^2+u+1)/2 + sqrt(3) atan((2u+1)/sqrt(3)) ],
/// u = (1 + bZ)^{1/3}
/// ```
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MonatomicDegenerate {
    pub b: f64,
}

impl Default for MonatomicDegenerate {
    fn default() -> Self {
        Self { b: 1.0 }
    }
}

impl MonatomicDegenerate {
    pub const NAME: &'static str = "default";
}

impl StructuralPressure for MonatomicDegenerate {
    fn name(&self) -> &str {
        Self::NAME
    }

    fn params(&self) -> String {
        format!("{}", self.b)
    }

    fn value(&self, z: f64) -> f64 {
        let c = (1.0 + self.b * z).cbrt();
        z * c * c
    }

    fn derivative(&self, z: f64) -> f64 {
        let c = (1.0 + self.b * z).cbrt();
        c * c + 2.0 / 3.0 * self.b * z / c
    }

    fn value_and_derivative(&self, z: f64) -> (f64, f64) {
        let c = (1.0 + self.b * z).cbrt();
        (z * c * c, c * c + 2.0 / 3.0 * self.b * z / c)
    }

    fn second_derivative(&self, z: f64) -> f64 {
        let w = 1.0 + self.b * z;
        let c = w.cbrt();
        4.0 / 3.0 * self.b / c - 2.0 / 9.0 * self.b * self.b * z / (w * c)
    }

    fn p_infty(&self) -> f64 {
        self.b.powf(2.0 / 3.0)
    }

    fn entropy_slope(&self, z: f64) -> f64 {
        -1.0 / ((1.0 + self.b * z).cbrt() * z)
    }

    fn entropy_curvature(&self, z: f64) -> f64 {
        let w = 1.0 + self.b * z;
        let c = w.cbrt();
        self.b / (3.0 * w * c * z) + 1.0 / (c * z * z)
    }

    fn entropy_integral(&self, z: f64) -> f64 {
        let sqrt3 = 3f64.sqrt();
        let bz = self.b * z;
        let u = (1.0 + bz).cbrt();
        let q = u * u + u + 1.0;
        // ln(u-1) - ln(q)/2 rewritten without cancellation in both regimes.
        let log_part = if u < 2.0 {
            // u - 1 = bZ / (u^2 + u + 1)
            (bz / q).ln() - 0.5 * q.ln()
        } else {
            0.5 * (-3.0 * u / q).ln_1p()
        };
        // pi/2 - atan(x) = atan(1/x) for x > 0
        sqrt3 * (sqrt3 / (2.0 * u + 1.0)).atan() - log_part
    }
}

/// `P(Z) = Z`: the non-degenerate monatomic gas.
///
/// Fails the structural hypotheses on purpose: `P(Z)/Z^{5/3} -> 0`, and the
/// entropy `S(Z) = -ln Z` cannot be normalised to vanish at infinity. Kept
/// as an audit counter-example.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Boltzmann;

impl Boltzmann {
    pub const NAME: &'static str = "boltzmann";
}

impl StructuralPressure for Boltzmann {
    fn name(&self) -> &str {
        Self::NAME
    }

    fn value(&self, z: f64) -> f64 {
        z
    }

    fn derivative(&self, _z: f64) -> f64 {
        1.0
    }

    fn second_derivative(&self, _z: f64) -> f64 {
        0.0
    }

    fn p_infty(&self) -> f64 {
        0.0
    }

    fn entropy_slope(&self, z: f64) -> f64 {
        -1.0 / z
    }

    fn entropy_curvature(&self, z: f64) -> f64 {
        1.0 / (z * z)
    }

    /// Normalised at `Z = 1`, since there is no finite limit at infinity.
    fn entropy_integral(&self, z: f64) -> f64 {
        -z.ln()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// A copy of the default family that keeps the trait's generic
    /// entropy routines, to check them against the closed forms.
    #[derive(Debug)]
    struct Generic(MonatomicDegenerate);

    impl StructuralPressure for Generic {
        fn name(&self) -> &str {
            "generic"
        }
        fn value(&self, z: f64) -> f64 {
            self.0.value(z)
        }
        fn derivative(&self, z: f64) -> f64 {
            self.0.derivative(z)
        }
        fn second_derivative(&self, z: f64) -> f64 {
            self.0.second_derivative(z)
        }
        fn p_infty(&self) -> f64 {
            self.0.p_infty()
        }
    }

    #[test]
    fn default_family_at_zero_and_one() {
        let f = MonatomicDegenerate::default();
        assert_eq!(f.value(0.0), 0.0);
        assert_eq!(f.derivative(0.0), 1.0);
        let p1 = 2f64.powf(2.0 / 3.0);
        assert!((f.value(1.0) - p1).abs() < 1e-15);
        assert!((f.derivative(1.0) - (p1 + 2.0 / 3.0 * 2f64.powf(-1.0 / 3.0))).abs() < 1e-15);
        assert!((f.entropy_slope(1.0) + 2f64.powf(-1.0 / 3.0)).abs() < 1e-15);
    }

    #[test]
    fn derivatives_match_central_differences() {
        let f = MonatomicDegenerate { b: 1.7 };
        for &z in &[0.01f64, 0.3, 1.0, 7.0, 120.0] {
            let h = 1e-5 * z;
            let fd1 = (f.value(z + h) - f.value(z - h)) / (2.0 * h);
            let fd2 = (f.derivative(z + h) - f.derivative(z - h)) / (2.0 * h);
            let fds = (f.entropy_integral(z + h) - f.entropy_integral(z - h)) / (2.0 * h);
            let fdss = (f.entropy_slope(z + h) - f.entropy_slope(z - h)) / (2.0 * h);
            assert!((fd1 - f.derivative(z)).abs() < 1e-8 * f.derivative(z).abs().max(1.0));
            assert!((fd2 - f.second_derivative(z)).abs() < 1e-7 * f.second_derivative(z).abs().max(1.0));
            assert!((fds - f.entropy_slope(z)).abs() < 1e-6 * f.entropy_slope(z).abs().max(1.0));
            assert!((fdss - f.entropy_curvature(z)).abs() < 1e-6 * f.entropy_curvature(z).abs().max(1.0));
        }
    }

    #[test]
    fn generic_entropy_routines_agree_with_closed_forms() {
        let closed = MonatomicDegenerate { b: 0.5 };
        let generic = Generic(closed);
        for &z in &[0.05, 0.5, 1.0, 10.0, 1000.0] {
            let (a, b) = (closed.entropy_integral(z), generic.entropy_integral(z));
            assert!((a - b).abs() < 1e-9 * a.max(1.0), "S({z}): {a} vs {b}");
            let (a, b) = (closed.entropy_slope(z), generic.entropy_slope(z));
            assert!((a - b).abs() < 1e-12 * a.abs().max(1.0));
            let (a, b) = (closed.entropy_curvature(z), generic.entropy_curvature(z));
            assert!((a - b).abs() < 1e-9 * a.abs().max(1.0));
        }
    }

    #[test]
    fn closed_form_is_continuous_across_branch_switch() {
        let f = MonatomicDegenerate::default();
        // u = 2 at Z = 7
        let below = f.entropy_integral(7.0 - 1e-13);
        let above = f.entropy_integral(7.0 + 1e-13);
        assert!((below - above).abs() < 1e-12);
    }

    #[test]
    fn entropy_integral_vanishes_at_infinity() {
        let f = MonatomicDegenerate::default();
        assert!(f.entropy_integral(1e15) < 1e-4);
        assert!(f.entropy_integral(1e15) > 0.0);
    }
}
