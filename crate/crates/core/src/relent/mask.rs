use crate::thermo::EssResBands;

/// Cell-wise essential indicator: `true` iff `(rho, theta)` lies in the
/// closed band.
pub fn ess_res_mask(rho: &[f64], theta: &[f64], bands: &EssResBands) -> Vec<bool> {
    rho.iter().zip(theta).map(|(&r, &t)| bands.contains(r, t)).collect()
}

/// Splits `h` into `(h_ess, h_res)` with `h = h_ess + h_res`.
pub fn split(h: &[f64], mask: &[bool]) -> (Vec<f64>, Vec<f64>) {
    h.iter()
        .zip(mask)
        .map(|(&v, &ess)| if ess { (v, 0.0) } else { (0.0, v) })
        .unzip()
}

/// Fraction of cells flagged residual. On a uniform grid this is the
/// residual measure relative to the domain length.
pub fn residual_fraction(mask: &[bool]) -> f64 {
    if mask.is_empty() {
        return 0.0;
    }
    mask.iter().filter(|e| !**e).count() as f64 / mask.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_band_semantics() {
        let bands = EssResBands::new(0.5, 2.0, 0.5, 2.0).unwrap();
        let rho = [1.0, 2.0, 2.0 * 1.01, 0.5];
        let theta = [1.0, 1.0, 1.0, 2.0];
        let mask = ess_res_mask(&rho, &theta, &bands);
        assert_eq!(mask, vec![true, true, false, true]);
        let (ess, res) = split(&[1.0, 2.0, 3.0, 4.0], &mask);
        assert_eq!(ess, vec![1.0, 2.0, 0.0, 4.0]);
        assert_eq!(res, vec![0.0, 0.0, 3.0, 0.0]);
        assert_eq!(residual_fraction(&mask), 0.25);
    }
}
