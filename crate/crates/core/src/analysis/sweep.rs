use rayon::prelude::*;

use crate::analysis::density::{crosscut, momentum_density, CutAxis, MomentumDensity};
use crate::analysis::energy::max_deflection;
use crate::analysis::peaks::{peak_spacing, peak_spacing_of};
use crate::analysis::sidebands::{sideband_populations, SidebandTable};
use crate::wavepacket::Wavepacket;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    Energy,
    Radius,
    FieldAmplitude,
}

impl SweepAxis {
    pub fn name(self) -> &'static str {
        match self {
            SweepAxis::Energy => "energy_ev",
            SweepAxis::Radius => "radius_nm",
            SweepAxis::FieldAmplitude => "field_v_per_nm",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepMetrics {
    pub sidebands: SidebandTable,
    /// |ψ̃_f(k0, 0)|² / |ψ̃_i(k0, 0)|², the coherent on-axis ground-state weight.
    pub depletion: f64,
    /// Largest deflection angle (degrees) above the 1% marginal threshold.
    pub alpha_max: f64,
    /// Peak spacing of the k_y-integrated longitudinal distribution.
    pub delta_kx: Option<f64>,
    /// Half the fringe period along k_y in the first-order sideband.
    pub delta_ky: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub value: f64,
    pub outcome: std::result::Result<SweepMetrics, String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub axis: SweepAxis,
    pub config_hash: String,
    pub points: Vec<SweepPoint>,
}

impl SweepResult {
    /// Successful point with the smallest depletion.
    pub fn depletion_minimum(&self) -> Option<(f64, f64)> {
        self.successes().map(|(v, m)| (v, m.depletion)).min_by(|a, b| a.1.total_cmp(&b.1))
    }

    pub fn successes(&self) -> impl Iterator<Item = (f64, &SweepMetrics)> {
        self.points.iter().filter_map(|p| p.outcome.as_ref().ok().map(|m| (p.value, m)))
    }
}

/// Longitudinal sideband spacing from the k_y-integrated distribution.
pub fn longitudinal_spacing(d: &MomentumDensity) -> Result<f64> {
    peak_spacing_of(&d.kxs(), &d.kx_marginal())
}

/// Transverse spacing Δk_y: half the fringe period along k_y through the
/// first-order sideband at k0 + Δk.
pub fn transverse_spacing(d: &MomentumDensity, delta_k: f64) -> Result<f64> {
    let cut = crosscut(d, CutAxis::AlongKy, d.k0() + delta_k)?;
    Ok(0.5 * peak_spacing(&cut)?)
}

pub fn sweep_metrics(initial: &Wavepacket, fin: &Wavepacket, delta_k: f64) -> Result<SweepMetrics> {
    let d0 = momentum_density(initial);
    let d = momentum_density(fin);
    let g = d.grid();
    let (ic, jc) = (g.nx / 2, g.ny / 2);
    let reference = d0.value(ic, jc);
    if !(reference > 0.0) {
        return Err(Error::Domain("initial spectrum vanishes at (k0, 0)".into()));
    }
    Ok(SweepMetrics {
        sidebands: sideband_populations(&d, d.k0(), delta_k)?,
        depletion: d.value(ic, jc) / reference,
        alpha_max: max_deflection(&d),
        delta_kx: longitudinal_spacing(&d).ok(),
        delta_ky: transverse_spacing(&d, delta_k).ok(),
    })
}

/// Evaluates `point` for each value concurrently. Results keep the order of
/// `values`; a failing point is recorded and does not stop the sweep.
pub fn run_sweep<F>(axis: SweepAxis, values: &[f64], config_hash: &str, point: F) -> Result<SweepResult>
where
    F: Fn(f64) -> Result<SweepMetrics> + Sync,
{
    if values.is_empty() {
        return Err(Error::Config("sweep has no values".into()));
    }
    if values.iter().any(|v| !v.is_finite()) || values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Config(format!("{} values must be finite and strictly increasing", axis.name())));
    }
    let points = values
        .par_iter()
        .map(|&value| SweepPoint { value, outcome: point(value).map_err(|e| e.to_string()) })
        .collect();
    Ok(SweepResult { axis, config_hash: config_hash.to_string(), points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid2D;

    fn metrics(depletion: f64) -> SweepMetrics {
        SweepMetrics {
            sidebands: SidebandTable { delta_k: 1.0, rows: vec![] },
            depletion,
            alpha_max: 0.0,
            delta_kx: None,
            delta_ky: None,
        }
    }

    #[test]
    fn ordering_and_failures() {
        let vals: Vec<f64> = (1..=32).map(f64::from).collect();
        let r = run_sweep(SweepAxis::Energy, &vals, "abc", |v| {
            if v == 7.0 {
                Err(Error::Domain("boom".into()))
            } else {
                Ok(metrics((v - 20.0).abs()))
            }
        })
        .unwrap();
        assert_eq!(r.points.len(), 32);
        assert!(r.points.iter().zip(&vals).all(|(p, v)| p.value == *v));
        assert!(r.points[6].outcome.as_ref().unwrap_err().contains("boom"));
        assert_eq!(r.depletion_minimum(), Some((20.0, 0.0)));
        assert_eq!(r.successes().count(), 31);
    }

    #[test]
    fn axis_must_be_increasing() {
        let f = |_| Ok(metrics(1.0));
        assert!(run_sweep(SweepAxis::Radius, &[1.0, 1.0], "", f).is_err());
        assert!(run_sweep(SweepAxis::Radius, &[2.0, 1.0], "", f).is_err());
        assert!(run_sweep(SweepAxis::Radius, &[], "", f).is_err());
    }

    #[test]
    fn free_packet_metrics() {
        let g = Grid2D::new(1024, 64, 1.0, 1.0).unwrap();
        let psi = Wavepacket::gaussian(g, 100.0, 200.0, 10.0, (0.0, 0.0)).unwrap();
        let m = sweep_metrics(&psi, &psi, 0.1588).unwrap();
        assert_eq!(m.depletion, 1.0);
        assert!(m.delta_kx.is_none());
        assert!((m.sidebands.population(0) - 1.0).abs() < 1e-6);
    }
}
