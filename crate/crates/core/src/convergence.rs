//! Observed orders of convergence.

/// Least-squares slope of `ln err` against `-ln h`, i.e. the order `q` in
/// `err ~ C h^q`. `h` may be any quantity proportional to the step
/// (`1/n`, `dt`, ...).
///
/// Returns NaN when fewer than two usable pairs remain after discarding
/// non-positive or non-finite errors.
pub fn observed_order(h: &[f64], err: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = h
        .iter()
        .zip(err)
        .filter(|(h, e)| **h > 0.0 && **e > 0.0 && e.is_finite())
        .map(|(h, e)| (h.ln(), e.ln()))
        .collect();
    if pts.len() < 2 {
        return f64::NAN;
    }
    let m = pts.len() as f64;
    let (mx, my) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x / m, b + y / m));
    let (sxy, sxx) = pts
        .iter()
        .fold((0.0, 0.0), |(a, b), (x, y)| (a + (x - mx) * (y - my), b + (x - mx) * (x - mx)));
    sxy / sxx
}

/// [`observed_order`] with `h = 1/n`.
pub fn order_in_cells(n: &[usize], err: &[f64]) -> f64 {
    let h: Vec<f64> = n.iter().map(|&n| 1.0 / n as f64).collect();
    observed_order(&h, err)
}

/// Pairwise orders `ln(e_k/e_{k+1}) / ln(h_k/h_{k+1})`.
pub fn pairwise_orders(h: &[f64], err: &[f64]) -> Vec<f64> {
    h.windows(2)
        .zip(err.windows(2))
        .map(|(h, e)| (e[0] / e[1]).ln() / (h[0] / h[1]).ln())
        .collect()
}
