//! One-dimensional profile utilities.

/// Full width at half maximum of a sampled, single-humped profile, with
/// linear interpolation at both half-maximum crossings. `None` when the
/// profile is empty, nonpositive, or the half-maximum level is never crossed.
pub fn fwhm(coords: &[f64], values: &[f64]) -> Option<f64> {
    half_max_crossings(coords, values).map(|(lo, hi)| hi - lo)
}

/// Outermost-from-peak half-maximum crossings `(lo, hi)` around the global
/// maximum.
pub fn half_max_crossings(coords: &[f64], values: &[f64]) -> Option<(f64, f64)> {
    let (imax, &vmax) = values.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1))?;
    if !(vmax > 0.0) {
        return None;
    }
    let half = 0.5 * vmax;
    let lo = (0..imax).rev().find(|&i| values[i] < half)?;
    let hi = (imax + 1..values.len()).find(|&i| values[i] < half)?;
    let cross = |a: usize, b: usize| {
        let t = (half - values[a]) / (values[b] - values[a]);
        coords[a] + t * (coords[b] - coords[a])
    };
    Some((cross(lo, lo + 1), cross(hi - 1, hi)))
}

/// Linear interpolation of `values` sampled at uniformly spaced `coords`.
/// `None` outside the sampled range.
pub fn interpolate_uniform(coords: &[f64], values: &[f64], at: f64) -> Option<f64> {
    let n = coords.len();
    if n == 0 {
        return None;
    }
    if n == 1 {
        return (at == coords[0]).then(|| values[0]);
    }
    let d = coords[1] - coords[0];
    let s = (at - coords[0]) / d;
    let tol = 1e-9;
    if s < -tol || s > (n - 1) as f64 + tol {
        return None;
    }
    let s = s.clamp(0.0, (n - 1) as f64);
    let i = (s.floor() as usize).min(n - 2);
    let t = s - i as f64;
    Some(values[i] * (1.0 - t) + values[i + 1] * t)
}
