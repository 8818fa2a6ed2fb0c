use crate::analysis::density::Crosscut;
use crate::{Error, Result};

/// Peaks below this fraction of the global maximum are ignored.
pub const PEAK_THRESHOLD: f64 = 0.01;

/// Positions of interior local maxima at or above `threshold · max`,
/// refined by a 3-point parabola, in ascending order.
pub fn find_peaks(coords: &[f64], values: &[f64], threshold: f64) -> Vec<f64> {
    let n = values.len().min(coords.len());
    let vmax = values[..n].iter().fold(0.0_f64, |m, &v| m.max(v));
    if n < 3 || !(vmax > 0.0) {
        return Vec::new();
    }
    let floor = threshold * vmax;
    let mut peaks = Vec::new();
    for i in 1..n - 1 {
        let (a, b, c) = (values[i - 1], values[i], values[i + 1]);
        if b > a && b >= c && b >= floor {
            let curv = a - 2.0 * b + c;
            let off = if curv < 0.0 { (0.5 * (a - c) / curv).clamp(-0.5, 0.5) } else { 0.0 };
            let h = coords[i + 1] - coords[i];
            peaks.push(coords[i] + off * h);
        }
    }
    peaks
}

/// Median gap between adjacent peaks of a sampled profile.
pub fn peak_spacing_of(coords: &[f64], values: &[f64]) -> Result<f64> {
    let peaks = find_peaks(coords, values, PEAK_THRESHOLD);
    if peaks.len() < 2 {
        return Err(Error::Domain(format!("need at least two peaks, found {}", peaks.len())));
    }
    let mut gaps: Vec<f64> = peaks.windows(2).map(|w| w[1] - w[0]).collect();
    gaps.sort_by(f64::total_cmp);
    let m = gaps.len();
    Ok(if m % 2 == 1 { gaps[m / 2] } else { 0.5 * (gaps[m / 2 - 1] + gaps[m / 2]) })
}

pub fn peak_spacing(cut: &Crosscut) -> Result<f64> {
    peak_spacing_of(&cut.coords, &cut.values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn comb(period: f64, n: usize, h: f64) -> (Vec<f64>, Vec<f64>) {
        let xs: Vec<f64> = (0..n).map(|i| i as f64 * h - 0.5 * n as f64 * h).collect();
        let k = 2.0 * std::f64::consts::PI / period;
        let vs = xs.iter().map(|x| 1.0 + (k * x).cos()).collect();
        (xs, vs)
    }

    #[test]
    fn cosine_comb_period() {
        for &p in &[0.7, 1.3, 2.9] {
            let (xs, vs) = comb(p, 4096, 0.01);
            let s = peak_spacing_of(&xs, &vs).unwrap();
            assert!(((s - p) / p).abs() < 1e-3, "{s} vs {p}");
        }
    }

    #[test]
    fn single_peak_is_an_error() {
        let xs: Vec<f64> = (0..101).map(|i| i as f64 * 0.1 - 5.0).collect();
        let vs: Vec<f64> = xs.iter().map(|x| (-x * x).exp()).collect();
        assert_eq!(find_peaks(&xs, &vs, PEAK_THRESHOLD).len(), 1);
        assert!(peak_spacing_of(&xs, &vs).is_err());
        assert!(peak_spacing_of(&xs, &vec![0.0; 101]).is_err());
    }

    #[test]
    fn quadratic_refinement_is_exact_for_parabolas() {
        let xs: Vec<f64> = (0..11).map(|i| i as f64).collect();
        let vs: Vec<f64> = xs.iter().map(|x| 10.0 - (x - 4.3) * (x - 4.3)).collect();
        let p = find_peaks(&xs, &vs, 0.0);
        assert_eq!(p.len(), 1);
        assert!((p[0] - 4.3).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn spacing_is_scale_invariant(scale in 1e-6f64..1e6, period in 0.5f64..3.0) {
            let (xs, vs) = comb(period, 2048, 0.02);
            let scaled: Vec<f64> = vs.iter().map(|v| v * scale).collect();
            let a = peak_spacing_of(&xs, &vs).unwrap();
            let b = peak_spacing_of(&xs, &scaled).unwrap();
            prop_assert!((a - b).abs() <= 1e-12 * a);
        }
    }
}
