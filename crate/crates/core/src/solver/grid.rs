use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Boundary {
    Periodic,
    /// No-slip, thermally insulated walls at `x = 0` and `x = L`.
    Wall,
}

impl FromStr for Boundary {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "periodic" => Ok(Boundary::Periodic),
            "wall" => Ok(Boundary::Wall),
            other => Err(Error::config("grid.bc", format!("expected periodic|wall, got `{other}`"))),
        }
    }
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Boundary::Periodic => "periodic",
            Boundary::Wall => "wall",
        })
    }
}

/// Uniform cell-centred grid on `[0, L)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid1D {
    pub n: usize,
    pub length: f64,
    pub bc: Boundary,
}

impl Grid1D {
    pub const MIN_CELLS: usize = 8;

    pub fn new(n: usize, length: f64, bc: Boundary) -> Result<Self> {
        if n < Self::MIN_CELLS {
            return Err(Error::config("grid.n", format!("need at least {} cells, got {n}", Self::MIN_CELLS)));
        }
        if !(length > 0.0 && length.is_finite()) {
            return Err(Error::config("grid.L", format!("must be positive, got {length}")));
        }
        Ok(Self { n, length, bc })
    }

    pub fn periodic(n: usize, length: f64) -> Result<Self> {
        Self::new(n, length, Boundary::Periodic)
    }

    pub fn is_periodic(&self) -> bool {
        self.bc == Boundary::Periodic
    }

    pub fn dx(&self) -> f64 {
        self.length / self.n as f64
    }

    /// Centre of cell `i`.
    pub fn x(&self, i: usize) -> f64 {
        (i as f64 + 0.5) * self.dx()
    }

    pub fn centers(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(|i| self.x(i))
    }

    /// Midpoint-rule integral of cell values.
    pub fn integrate(&self, values: &[f64]) -> f64 {
        values.iter().sum::<f64>() * self.dx()
    }

    /// Second-order centred difference of cell values.
    ///
    /// At walls the ghost value is `wall_sign * v[0]` (resp. `v[n-1]`):
    /// `-1` for quantities vanishing at the wall, `+1` for zero normal gradient.
    pub fn centered_difference(&self, v: &[f64], wall_sign: f64) -> Vec<f64> {
        let n = self.n;
        let inv = 0.5 / self.dx();
        (0..n)
            .map(|i| {
                let (left, right) = match self.bc {
                    Boundary::Periodic => (v[(i + n - 1) % n], v[(i + 1) % n]),
                    Boundary::Wall => (
                        if i == 0 { wall_sign * v[0] } else { v[i - 1] },
                        if i == n - 1 { wall_sign * v[n - 1] } else { v[i + 1] },
                    ),
                };
                (right - left) * inv
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_coarse_grids() {
        assert!(Grid1D::periodic(7, 1.0).is_err());
        assert!(Grid1D::periodic(8, 0.0).is_err());
        assert_eq!(Grid1D::periodic(8, 2.0).unwrap().dx(), 0.25);
    }

    #[test]
    fn centered_difference_of_linear_wall_profile() {
        let g = Grid1D::new(10, 1.0, Boundary::Wall).unwrap();
        let v: Vec<f64> = g.centers().map(|x| 3.0 * x).collect();
        let d = g.centered_difference(&v, 1.0);
        for &di in &d[1..9] {
            assert!((di - 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn boundary_parse() {
        assert_eq!("wall".parse::<Boundary>().unwrap(), Boundary::Wall);
        assert!("open".parse::<Boundary>().is_err());
    }
}
