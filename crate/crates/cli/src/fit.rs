//! Least-squares exponent fits on log-log data.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual in log space.
    pub residual: f64,
    pub points: usize,
}

/// Ordinary least squares of `ln y` on `ln x`.
///
/// Needs two distinct positive `x` values; points with `x ≤ 0` or `y ≤ 0`
/// are skipped.
pub fn ols_loglog(xs: &[f64], ys: &[f64]) -> Option<Fit> {
    let pts: Vec<(f64, f64)> =
        xs.iter().zip(ys).filter(|(x, y)| **x > 0.0 && **y > 0.0).map(|(x, y)| (x.ln(), y.ln())).collect();
    let n = pts.len() as f64;
    if pts.len() < 2 {
        return None;
    }
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = (pts.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum::<f64>() / n).sqrt();
    Some(Fit { slope, intercept, residual, points: pts.len() })
}

/// [`ols_loglog`] after dropping the point with the smallest `x`.
pub fn growth_fit(xs: &[f64], ys: &[f64]) -> Option<Fit> {
    let smallest = xs.iter().enumerate().min_by(|a, b| a.1.total_cmp(b.1))?.0;
    let keep = |v: &[f64]| -> Vec<f64> { v.iter().enumerate().filter(|(i, _)| *i != smallest).map(|(_, x)| *x).collect() };
    ols_loglog(&keep(xs), &keep(ys))
}
