//! Observables extracted from final wavepackets and sweep bookkeeping.

mod density;
mod energy;
mod peaks;
pub mod profile;
mod sidebands;
mod sweep;

pub use density::{crosscut, momentum_density, CutAxis, Crosscut, MomentumDensity};
pub use energy::{deflection_angle, energy_axis, energy_spread_fwhm, max_deflection, EnergyShift};
pub use peaks::{find_peaks, peak_spacing, peak_spacing_of, PEAK_THRESHOLD};
pub use sidebands::{sideband_populations, SidebandRow, SidebandTable};
pub use sweep::{
    longitudinal_spacing, run_sweep, sweep_metrics, transverse_spacing, SweepAxis, SweepMetrics, SweepPoint,
    SweepResult,
};
