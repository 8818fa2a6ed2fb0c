use crate::analysis::density::MomentumDensity;
use crate::analysis::profile::half_max_crossings;
use crate::units::{ELECTRON_MASS, HBAR};
use crate::wavepacket::electron_kinematics;
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyShift {
    /// ħ²(k_x² − k0²)/2m in eV.
    pub exact: f64,
    /// ħ v0 (k_x − k0) in eV.
    pub first_order: f64,
}

pub fn energy_axis(kx: &[f64], k0: f64, e0: f64) -> Result<Vec<EnergyShift>> {
    let v0 = electron_kinematics(e0)?.v0;
    let c = HBAR * HBAR / (2.0 * ELECTRON_MASS);
    Ok(kx
        .iter()
        .map(|&k| EnergyShift { exact: c * (k * k - k0 * k0), first_order: HBAR * v0 * (k - k0) })
        .collect())
}

/// atan(k_y / k0) in degrees.
pub fn deflection_angle(ky: f64, k0: f64) -> f64 {
    (ky / k0).atan().to_degrees()
}

/// Largest |α| whose k_y row carries at least 1% of the peak of the
/// k_x-integrated transverse distribution.
pub fn max_deflection(d: &MomentumDensity) -> f64 {
    let m = d.ky_marginal();
    let vmax = m.iter().fold(0.0_f64, |a, &v| a.max(v));
    if !(vmax > 0.0) {
        return 0.0;
    }
    let kys = d.kys();
    let kmax = m
        .iter()
        .zip(&kys)
        .filter(|(&v, _)| v >= super::PEAK_THRESHOLD * vmax)
        .fold(0.0_f64, |a, (_, &k)| a.max(k.abs()));
    deflection_angle(kmax, d.k0())
}

/// Full width at half maximum of the kinetic-energy distribution (eV),
/// from the k_x marginal with crossings mapped through the exact dispersion.
pub fn energy_spread_fwhm(d: &MomentumDensity) -> Option<f64> {
    let (lo, hi) = half_max_crossings(&d.kxs(), &d.kx_marginal())?;
    let c = HBAR * HBAR / (2.0 * ELECTRON_MASS);
    Some(c * (hi * hi - lo * lo))
}
