//! Adaptive Gauss–Kronrod quadrature for complex integrands, plus Wynn-ε
//! extrapolation of slowly decaying oscillatory tails.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64 as C64;

use crate::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: C64,
    /// Sum of |K15 − G7| over panels (or the extrapolation error for tails).
    pub error: f64,
    pub evaluations: usize,
    /// The requested tolerance lay below the rounding floor of the panels;
    /// `error` then reports that floor.
    pub roundoff_limited: bool,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: C64,
    error: f64,
    resabs: f64,
}

impl PartialEq for Panel {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Panel {
    fn cmp(&self, o: &Self) -> Ordering {
        // largest error first; ties broken by position for determinism
        self.error.total_cmp(&o.error).then_with(|| o.a.total_cmp(&self.a))
    }
}

fn gk15<F: Fn(f64) -> C64>(f: &F, a: f64, b: f64) -> Panel {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut resk = fc * WGK[7];
    let mut resg = fc * WG[3];
    let mut resabs = fc.norm() * WGK[7];
    for j in 0..7 {
        let dx = h * XGK[j];
        let f1 = f(c - dx);
        let f2 = f(c + dx);
        resk += (f1 + f2) * WGK[j];
        resabs += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            resg += (f1 + f2) * WG[j / 2];
        }
    }
    Panel { a, b, value: resk * h, error: ((resk - resg) * h).norm(), resabs: resabs * h.abs() }
}

/// Integrates `f` over `[points[0], points.last()]`.
///
/// Interior `points` are kinks or discontinuities that panels must not
/// straddle; each interval between them is further cut into panels no
/// wider than `max_panel` before adaptive bisection starts.
pub fn integrate_adaptive<F: Fn(f64) -> C64>(
    f: &F,
    points: &[f64],
    max_panel: f64,
    abs_tol: f64,
    max_panels: usize,
) -> Result<QuadResult> {
    if points.len() < 2 || points.windows(2).any(|w| !(w[1] >= w[0])) {
        return Err(Error::Domain("integration breakpoints must be sorted, at least two".into()));
    }
    let mut heap = BinaryHeap::new();
    let mut evaluations = 0;
    for w in points.windows(2) {
        let len = w[1] - w[0];
        if len == 0.0 {
            continue;
        }
        let pieces = if max_panel > 0.0 { (len / max_panel).ceil().max(1.0) as usize } else { 1 };
        for p in 0..pieces {
            let a = w[0] + len * p as f64 / pieces as f64;
            let b = if p + 1 == pieces { w[1] } else { w[0] + len * (p + 1) as f64 / pieces as f64 };
            heap.push(gk15(f, a, b));
            evaluations += 15;
        }
    }
    let mut total_err: f64 = heap.iter().map(|p: &Panel| p.error).sum();
    let mut roundoff_limited = false;
    while total_err > abs_tol {
        let worst = *heap.peek().expect("at least one panel");
        let floor = 50.0 * f64::EPSILON * worst.resabs;
        let c = 0.5 * (worst.a + worst.b);
        if worst.error <= floor || (worst.b - worst.a) <= 1e-13 * c.abs().max(1e-300) {
            roundoff_limited = true;
            break;
        }
        if heap.len() >= max_panels {
            return Err(Error::numerical(
                format!("adaptive quadrature did not converge within {max_panels} panels"),
                Some(total_err),
            ));
        }
        heap.pop();
        let l = gk15(f, worst.a, c);
        let r = gk15(f, c, worst.b);
        evaluations += 30;
        heap.push(l);
        heap.push(r);
        // recompute rather than update incrementally to avoid drift
        total_err = heap.iter().map(|p| p.error).sum();
    }
    let mut panels = heap.into_vec();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value = panels.iter().fold(C64::new(0.0, 0.0), |acc, p| acc + p.value);
    let error = if roundoff_limited {
        panels.iter().map(|p| p.error.max(50.0 * f64::EPSILON * p.resabs)).sum()
    } else {
        total_err
    };
    Ok(QuadResult { value, error, evaluations, roundoff_limited })
}

/// Wynn ε-algorithm limit estimate of a sequence of partial sums.
///
/// Returns the highest-order even-column entry using the newest data.
pub fn wynn_epsilon(sums: &[f64]) -> f64 {
    let n = sums.len();
    if n == 0 {
        return 0.0;
    }
    // prev = column k-1, cur = column k; column entries indexed by start n
    let mut prev = vec![0.0; n + 1];
    let mut cur: Vec<f64> = sums.to_vec();
    let mut best = sums[n - 1];
    let mut k = 0;
    while cur.len() >= 2 {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for i in 0..cur.len() - 1 {
            let d = cur[i + 1] - cur[i];
            if d == 0.0 {
                // column converged exactly
                return if k % 2 == 0 { cur[i + 1] } else { best };
            }
            next.push(prev[i + 1] + 1.0 / d);
        }
        k += 1;
        prev = cur;
        cur = next;
        if k % 2 == 0 {
            if let Some(&v) = cur.last() {
                if v.is_finite() {
                    best = v;
                } else {
                    break;
                }
            }
        }
    }
    best
}

/// ∫ from `start` to ±∞ of an integrand that oscillates with half period
/// `half_period` and decays slowly. Integrates one half period at a time and
/// extrapolates the partial sums with Wynn's ε-algorithm.
pub fn oscillatory_tail<F: Fn(f64) -> C64>(
    f: &F,
    start: f64,
    half_period: f64,
    toward_positive: bool,
    abs_tol: f64,
) -> Result<QuadResult> {
    const MAX_TERMS: usize = 120;
    const MIN_TERMS: usize = 8;
    if !(half_period > 0.0) {
        return Err(Error::Domain("tail half period must be positive".into()));
    }
    let dir = if toward_positive { 1.0 } else { -1.0 };
    let mut re = Vec::new();
    let mut im = Vec::new();
    let mut acc = C64::new(0.0, 0.0);
    let mut evaluations = 0;
    let mut quad_err = 0.0;
    let mut last = (f64::NAN, f64::NAN);
    let mut roundoff_limited = false;
    for n in 0..MAX_TERMS {
        let a = start + dir * n as f64 * half_period;
        let b = a + dir * half_period;
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let seg = integrate_adaptive(f, &[lo, hi], 0.5 * half_period, abs_tol * 1e-3, 400)?;
        evaluations += seg.evaluations;
        quad_err += seg.error;
        roundoff_limited |= seg.roundoff_limited;
        acc += seg.value;
        re.push(acc.re);
        im.push(acc.im);
        if n + 1 < MIN_TERMS {
            continue;
        }
        let est = (wynn_epsilon(&re), wynn_epsilon(&im));
        let change = (est.0 - last.0).abs() + (est.1 - last.1).abs();
        last = est;
        if change <= abs_tol || seg.value.norm() <= abs_tol * 1e-3 {
            return Ok(QuadResult {
                value: C64::new(est.0, est.1),
                error: change + quad_err,
                evaluations,
                roundoff_limited,
            });
        }
    }
    Err(Error::numerical(
        format!("oscillatory tail did not converge in {MAX_TERMS} half periods"),
        Some((last.0 - re[re.len() - 1]).abs()),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomial_exact() {
        let r = integrate_adaptive(&|x| C64::new(x.powi(5) - 3.0 * x * x, x), &[-1.0, 2.0], 10.0, 1e-14, 100).unwrap();
        assert!((r.value.re - (64.0 / 6.0 - 1.0 / 6.0 - 9.0)).abs() < 1e-13);
        assert!((r.value.im - 1.5).abs() < 1e-14);
    }

    #[test]
    fn kinked_integrand_with_breakpoint() {
        let f = |x: f64| C64::new(x.abs(), 0.0);
        let r = integrate_adaptive(&f, &[-1.0, 0.0, 3.0], 1.0, 1e-13, 100).unwrap();
        assert!((r.value.re - 5.0).abs() < 1e-13);
    }

    #[test]
    fn oscillatory_panel() {
        let k = 7.3;
        let r = integrate_adaptive(&|x: f64| C64::from_polar(1.0, k * x), &[0.0, 10.0], PI / (4.0 * k), 1e-13, 1000).unwrap();
        let expect = (C64::from_polar(1.0, 10.0 * k) - 1.0) / C64::new(0.0, k);
        assert!((r.value - expect).norm() < 1e-12);
    }

    #[test]
    fn tolerance_failure_is_numerical() {
        let f = |x: f64| C64::new(1.0 / x.sqrt().max(1e-300), 0.0);
        let e = integrate_adaptive(&f, &[0.0, 1.0], 1.0, 1e-15, 8).unwrap_err();
        assert!(e.is_numerical());
    }

    #[test]
    fn wynn_accelerates_alternating_series() {
        // ln 2 = 1 - 1/2 + 1/3 - ...
        let mut s = 0.0;
        let sums: Vec<f64> = (1..=20)
            .map(|k| {
                s += if k % 2 == 1 { 1.0 } else { -1.0 } / k as f64;
                s
            })
            .collect();
        assert!((wynn_epsilon(&sums) - 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn slowly_decaying_tail() {
        // ∫_1^∞ cos x / x² = cos 1 − (π/2 − Si(1))
        let f = |x: f64| C64::new(x.cos() / (x * x), x.sin() / (x * x));
        let r = oscillatory_tail(&f, 1.0, PI, true, 1e-14).unwrap();
        let si1 = 0.946_083_070_367_183_0;
        let ci1 = 0.337_403_922_900_968_1;
        let expect_re = 1f64.cos() - (PI / 2.0 - si1);
        // ∫_1^∞ sin x / x² = sin 1 − Ci(1)
        let expect_im = 1f64.sin() - ci1;
        assert!((r.value.re - expect_re).abs() < 1e-13, "{}", r.value.re - expect_re);
        assert!((r.value.im - expect_im).abs() < 1e-13, "{}", r.value.im - expect_im);
    }
}
