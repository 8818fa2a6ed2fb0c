use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use super::{LaserParams, NearFieldModel};
use crate::quadrature::{integrate_adaptive, oscillatory_tail};
use crate::spectrum::transform_1d;
use crate::units::{ELECTRON_CHARGE, HBAR};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingOptions {
    /// Absolute tolerance on I1 and I2, rad.
    pub abs_tol: f64,
    /// Add the semi-infinite tails beyond the core bounds.
    pub tails: bool,
    pub max_panels: usize,
}

impl Default for CouplingOptions {
    fn default() -> Self {
        CouplingOptions { abs_tol: 1e-10, tails: true, max_panels: 20_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingValue {
    pub i1: f64,
    pub i2: f64,
    /// Combined error estimate for both integrals, rad.
    pub error: f64,
}

/// Core integration range `center ± max(40·L, 10/Δk)`, `L` the model's
/// length scale.
pub fn default_x_bounds(model: &NearFieldModel, laser: &LaserParams, v0: f64) -> (f64, f64) {
    let dk = laser.omega() / v0;
    let half = (40.0 * model.length_scale()).max(10.0 / dk);
    let cx = model.center().0;
    (cx - half, cx + half)
}

/// I1 and I2 at transverse position `y`:
/// `(−q/ħv0) ∫ Φ0(x, y) {cos, sin}(Δk x + φ_NF) dx`.
///
/// The quadrature covers `x_bounds` adaptively; with `opts.tails` the
/// remaining semi-infinite pieces are added by half-period summation and
/// Wynn extrapolation, so the result is the full-line integral.
pub fn coupling_integrals(
    model: &NearFieldModel,
    laser: &LaserParams,
    v0: f64,
    y: f64,
    x_bounds: (f64, f64),
    opts: &CouplingOptions,
) -> Result<CouplingValue> {
    if !(v0 > 0.0) {
        return Err(Error::Domain(format!("electron velocity must be positive, got {v0}")));
    }
    if let NearFieldModel::UniformStripe(s) = model {
        return Ok(CouplingValue { i1: s.coupling_at(y), i2: 0.0, error: 0.0 });
    }
    let (lo, hi) = x_bounds;
    if !(lo < hi) {
        return Err(Error::Domain(format!("empty integration range [{lo}, {hi}]")));
    }
    let dk = laser.omega() / v0;
    let phase = laser.phase;
    let scale = -ELECTRON_CHARGE / (HBAR * v0);
    let raw_tol = opts.abs_tol / scale.abs();
    // validate once so the closure can unwrap
    model.potential(laser, lo, y)?;
    let f = |x: f64| {
        let phi = model.potential(laser, x, y).unwrap_or(0.0);
        C64::from_polar(phi, dk * x + phase)
    };
    let mut points = vec![lo];
    points.extend(model.kinks(y).into_iter().filter(|&k| k > lo && k < hi));
    points.push(hi);
    let core = integrate_adaptive(&f, &points, PI / (4.0 * dk), 0.5 * raw_tol, opts.max_panels)?;
    let mut total = core.value;
    let mut err = core.error;
    if opts.tails {
        let half_period = PI / dk;
        let right = oscillatory_tail(&f, hi, half_period, true, 0.25 * raw_tol)?;
        let left = oscillatory_tail(&f, lo, half_period, false, 0.25 * raw_tol)?;
        total += right.value + left.value;
        err += right.error + left.error;
    }
    Ok(CouplingValue { i1: scale * total.re, i2: scale * total.im, error: scale.abs() * err })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Provenance {
    pub model: NearFieldModel,
    pub laser: LaserParams,
    pub v0: f64,
}

/// Sampled coupling integrals on a set of transverse positions.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingProfile {
    pub ys: Vec<f64>,
    pub i1: Vec<f64>,
    pub i2: Vec<f64>,
    /// ω/v0, nm⁻¹
    pub delta_k: f64,
    pub provenance: Provenance,
}

impl CouplingProfile {
    /// Uniform spacing of `ys`, if they are uniform.
    pub fn spacing(&self) -> Option<f64> {
        if self.ys.len() < 2 {
            return None;
        }
        let d = self.ys[1] - self.ys[0];
        let ok = self
            .ys
            .windows(2)
            .all(|w| ((w[1] - w[0]) - d).abs() <= 1e-9 * d.abs());
        (ok && d > 0.0).then_some(d)
    }

    pub fn max_abs_i2(&self) -> f64 {
        self.i2.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Profile with every coupling value multiplied by `factor`
    /// (exact for all models, which are linear in the field).
    pub fn scaled(&self, factor: f64) -> CouplingProfile {
        let mut p = self.clone();
        p.i1.iter_mut().for_each(|v| *v *= factor);
        p.i2.iter_mut().for_each(|v| *v *= factor);
        p.provenance.laser.field_amplitude *= factor;
        p
    }
}

pub fn coupling_profile(
    model: &NearFieldModel,
    laser: &LaserParams,
    v0: f64,
    ys: &[f64],
    opts: &CouplingOptions,
) -> Result<CouplingProfile> {
    let bounds = default_x_bounds(model, laser, v0);
    let values: Vec<CouplingValue> = ys
        .par_iter()
        .map(|&y| coupling_integrals(model, laser, v0, y, bounds, opts))
        .collect::<Result<_>>()?;
    Ok(CouplingProfile {
        ys: ys.to_vec(),
        i1: values.iter().map(|v| v.i1).collect(),
        i2: values.iter().map(|v| v.i2).collect(),
        delta_k: laser.omega() / v0,
        provenance: Provenance { model: model.clone(), laser: *laser, v0 },
    })
}

/// Ĩ1 on the centered k_y axis conjugate to the profile's y samples.
#[derive(Debug, Clone, PartialEq)]
pub struct TransverseSpectrum {
    pub ky: Vec<f64>,
    pub values: Vec<C64>,
}

impl TransverseSpectrum {
    /// Position of the largest |Ĩ1| on the positive k_y half-axis.
    pub fn lobe_position(&self) -> Option<f64> {
        self.ky
            .iter()
            .zip(&self.values)
            .filter(|(k, _)| **k > 0.0)
            .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
            .map(|(k, _)| *k)
    }
}

/// Unitary transform of I1(y); requires uniform samples of even count.
pub fn profile_transform(profile: &CouplingProfile) -> Result<TransverseSpectrum> {
    let n = profile.ys.len();
    let d = profile
        .spacing()
        .ok_or_else(|| Error::Config("profile transform needs uniformly spaced y samples".into()))?;
    if n % 2 != 0 {
        return Err(Error::Config("profile transform needs an even sample count".into()));
    }
    let origin = profile.ys[n / 2];
    let vals: Vec<C64> = profile.i1.iter().map(|&v| C64::new(v, 0.0)).collect();
    let dk = 2.0 * PI / (n as f64 * d);
    Ok(TransverseSpectrum {
        ky: (0..n).map(|c| (c as f64 - (n / 2) as f64) * dk).collect(),
        values: transform_1d(&vals, d, origin),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nearfield::{UniformStripe, Wire};
    use crate::wavepacket::electron_kinematics;

    fn fig1() -> (NearFieldModel, LaserParams, f64) {
        let w = Wire::new(10.0, 0.5, (0.0, 0.0)).unwrap();
        let l = LaserParams::new(2000.0, 0.2, 0.0).unwrap();
        (w.into(), l, electron_kinematics(100.0).unwrap().v0)
    }

    // ∫cos(kx)/(x²+y²) dx = (π/|y|) e^{−k|y|}
    fn closed_form(y: f64, e: f64, beta: f64, r: f64, dk: f64, v0: f64) -> f64 {
        e * beta * r * r * PI / (HBAR * v0) * y.signum() * (-dk * y.abs()).exp()
    }

    #[test]
    fn wire_matches_closed_form_outside() {
        let (m, l, v0) = fig1();
        let dk = l.omega() / v0;
        let b = default_x_bounds(&m, &l, v0);
        let opts = CouplingOptions { abs_tol: 1e-15, ..Default::default() };
        for &y in &[10.5, 12.0, 20.0, 35.0, 60.0, 100.0, -15.0] {
            let c = coupling_integrals(&m, &l, v0, y, b, &opts).unwrap();
            let exact = closed_form(y, 0.2, 0.5, 10.0, dk, v0);
            assert!(((c.i1 - exact) / exact).abs() < 1e-8, "y={y}: {} vs {exact}", c.i1);
            assert!(c.i2.abs() < 1e-12);
        }
    }

    #[test]
    fn zero_on_axis_and_odd() {
        let (m, l, v0) = fig1();
        let b = default_x_bounds(&m, &l, v0);
        let o = CouplingOptions::default();
        let c = coupling_integrals(&m, &l, v0, 0.0, b, &o).unwrap();
        assert_eq!((c.i1, c.i2), (0.0, 0.0));
        for &y in &[0.3, 4.0, 9.9, 17.0] {
            let p = coupling_integrals(&m, &l, v0, y, b, &o).unwrap();
            let q = coupling_integrals(&m, &l, v0, -y, b, &o).unwrap();
            assert!((p.i1 + q.i1).abs() < 1e-9);
        }
    }

    #[test]
    fn tail_beyond_core_is_bounded() {
        let (m, l, v0) = fig1();
        let b = default_x_bounds(&m, &l, v0);
        let full = CouplingOptions { abs_tol: 1e-14, ..Default::default() };
        let core = CouplingOptions { tails: false, ..full };
        for &y in &[12.0, 30.0] {
            let a = coupling_integrals(&m, &l, v0, y, b, &full).unwrap().i1;
            let c = coupling_integrals(&m, &l, v0, y, b, &core).unwrap().i1;
            // each tail is at most E β R² / (ħ v0 x_max)
            let xmax = b.1;
            let bound = 2.0 * 0.2 * 0.5 * 100.0 / xmax / (HBAR * v0);
            assert!((a - c).abs() <= bound, "{} > {bound}", (a - c).abs());
        }
    }

    #[test]
    fn delta_k_and_linearity() {
        let (m, l, v0) = fig1();
        let ys: Vec<f64> = (0..16).map(|j| -20.0 + 2.5 * j as f64).collect();
        let p = coupling_profile(&m, &l, v0, &ys, &CouplingOptions::default()).unwrap();
        assert_eq!(p.delta_k, l.omega() / v0);
        assert!((p.delta_k - 0.1588).abs() < 5e-4);
        let l2 = l.with_field_amplitude(0.4);
        let q = coupling_profile(&m, &l2, v0, &ys, &CouplingOptions::default()).unwrap();
        for (a, b) in p.i1.iter().zip(&q.i1) {
            assert!((b - 2.0 * a).abs() < 1e-9);
        }
    }

    #[test]
    fn stripe_is_direct() {
        let m: NearFieldModel = UniformStripe::new(1.0, -5.0, 5.0).unwrap().into();
        let l = LaserParams::new(2000.0, 0.2, 0.0).unwrap();
        let c = coupling_integrals(&m, &l, 5.9, 2.0, (-1.0, 1.0), &CouplingOptions::default()).unwrap();
        assert_eq!((c.i1, c.i2), (1.0, 0.0));
        let c = coupling_integrals(&m, &l, 5.9, 7.0, (-1.0, 1.0), &CouplingOptions::default()).unwrap();
        assert_eq!(c.i1, 0.0);
    }

    #[test]
    fn transform_of_odd_profile_is_odd_and_imaginary() {
        let (m, l, v0) = fig1();
        // wide enough that the unpaired edge sample at -n/2 carries no weight
        let n = 1024;
        let ys: Vec<f64> = (0..n).map(|j| (j as f64 - 512.0) * 0.5).collect();
        let p = coupling_profile(&m, &l, v0, &ys, &CouplingOptions::default()).unwrap();
        let t = profile_transform(&p).unwrap();
        assert!(t.values[n / 2].norm() < 1e-9);
        let mut e_y = 0.0;
        let mut e_k = 0.0;
        for c in 1..n {
            let mirror = n - c;
            assert!((t.values[c] + t.values[mirror]).norm() < 1e-9);
            assert!(t.values[c].re.abs() < 1e-9);
        }
        for v in &p.i1 {
            e_y += v * v * 0.5;
        }
        let dk = t.ky[1] - t.ky[0];
        for v in &t.values {
            e_k += v.norm_sqr() * dk;
        }
        assert!((e_y - e_k).abs() < 1e-9 * e_y);
        assert!(t.lobe_position().unwrap() > 0.0);
    }
}
