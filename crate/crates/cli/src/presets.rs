//! Figure presets. Every dependent quantity is derived here from primitives.

use nediff_core::units::{ELECTRON_MASS, HBAR};
use nediff_core::wavepacket::electron_kinematics;

use crate::config::*;

pub const PRESET_NAMES: [&str; 5] = ["fig1", "fig2", "fig3", "fig4-limited", "fig4-chirped"];

/// Density FWHM ↔ energy FWHM of a transform-limited Gaussian: Δx·Δk = 4 ln 2.
const TIME_BANDWIDTH: f64 = 4.0 * std::f64::consts::LN_2;
const FWHM_PER_SIGMA: f64 = 2.354_820_045_030_949;

/// Longitudinal FWHM (nm) of a bandwidth-limited packet with energy FWHM `bandwidth`.
pub fn bandwidth_limited_fwhm(e0: f64, bandwidth: f64) -> f64 {
    let v0 = electron_kinematics(e0).expect("positive preset energy").v0;
    TIME_BANDWIDTH * HBAR * v0 / bandwidth
}

/// Free-flight time that stretches a bandwidth-limited packet of energy
/// FWHM `bandwidth` to a temporal FWHM of `duration` (fs).
pub fn chirp_time(e0: f64, bandwidth: f64, duration: f64) -> f64 {
    let v0 = electron_kinematics(e0).expect("positive preset energy").v0;
    let s0 = bandwidth_limited_fwhm(e0, bandwidth) / FWHM_PER_SIGMA;
    let s1 = duration * v0 / FWHM_PER_SIGMA;
    2.0 * ELECTRON_MASS * s0 / HBAR * (s1 * s1 - s0 * s0).max(0.0).sqrt()
}

fn fig1() -> ScenarioConfig {
    ScenarioConfig {
        name: "fig1".into(),
        electron: ElectronConfig {
            energy_ev: 100.0,
            fwhm_x_nm: Some(60.0),
            bandwidth_ev: None,
            fwhm_y_nm: Some(20.0),
            fwhm_y_rule: None,
            center_nm: [0.0, 0.0],
            vacuum_propagation_fs: 0.0,
            vacuum_axes: VacuumAxes::Both,
        },
        laser: LaserConfig { wavelength_nm: 2000.0, field_v_per_nm: 0.2, phase_rad: 0.0 },
        model: ModelConfig::Wire { radius_nm: 10.0, response: 0.5, center_nm: [0.0, 0.0] },
        grid: GridConfig { nx: 2048, ny: 1024, dx_nm: 0.25, dy_nm: 0.25 },
        engine: EngineConfig {
            kind: EngineKind::Both,
            t_start_fs: -30.0,
            t_end_fs: 30.0,
            vector_potential: true,
            dt_fs: None,
            snapshot_stride: 0,
        },
        output: OutputConfig::default(),
        sweep: None,
    }
}

fn fig2() -> ScenarioConfig {
    let mut c = fig1();
    c.name = "fig2".into();
    c.electron.fwhm_x_nm = Some(500.0);
    c.laser.field_v_per_nm = 0.5;
    c.grid = GridConfig { nx: 4096, ny: 512, dx_nm: 1.0, dy_nm: 0.5 };
    c.engine.kind = EngineKind::Analytic;
    c.engine.t_start_fs = -150.0;
    c.engine.t_end_fs = 150.0;
    c.sweep = Some(SweepConfig {
        parameter: SweepParameter::EnergyEv,
        values: None,
        range: Some(SweepRange { start: 50.0, stop: 10000.0, count: 41, spacing: Spacing::Log }),
    });
    c
}

fn fig3() -> ScenarioConfig {
    let mut c = fig1();
    c.name = "fig3".into();
    c.electron.fwhm_y_nm = None;
    c.electron.fwhm_y_rule = Some(WidthRule::WireDiameter);
    c.grid = GridConfig { nx: 2048, ny: 1024, dx_nm: 0.25, dy_nm: 0.5 };
    c.engine.kind = EngineKind::Analytic;
    c.sweep = Some(SweepConfig {
        parameter: SweepParameter::RadiusNm,
        values: None,
        range: Some(SweepRange { start: 4.0, stop: 40.0, count: 37, spacing: Spacing::Linear }),
    });
    c
}

const FIG4_PEAK_FIELD: f64 = 0.5;
const FIG4_ENHANCEMENT: f64 = 20.0;
const FIG4_DURATION_FS: f64 = 20.0;

fn fig4_limited() -> ScenarioConfig {
    let mut c = fig1();
    c.name = "fig4-limited".into();
    let v0 = electron_kinematics(c.electron.energy_ev).expect("positive preset energy").v0;
    c.electron.fwhm_x_nm = Some(FIG4_DURATION_FS * v0);
    c.electron.fwhm_y_nm = Some(5.0);
    c.laser.field_v_per_nm = FIG4_PEAK_FIELD / FIG4_ENHANCEMENT;
    c.model = ModelConfig::GapResonator {
        separation_nm: 23.0,
        smoothing_fwhm_nm: 13.0,
        peak_field_v_per_nm: FIG4_PEAK_FIELD,
        center_nm: [0.0, 0.0],
    };
    c.grid = GridConfig { nx: 4096, ny: 512, dx_nm: 0.25, dy_nm: 0.25 };
    c.engine.kind = EngineKind::Analytic;
    c.engine.t_start_fs = -60.0;
    c.engine.t_end_fs = 60.0;
    c
}

fn fig4_chirped() -> ScenarioConfig {
    let mut c = fig4_limited();
    c.name = "fig4-chirped".into();
    let bandwidth = 2.0;
    c.electron.fwhm_x_nm = None;
    c.electron.bandwidth_ev = Some(bandwidth);
    c.electron.vacuum_propagation_fs = chirp_time(c.electron.energy_ev, bandwidth, FIG4_DURATION_FS);
    c.electron.vacuum_axes = VacuumAxes::Longitudinal;
    c
}

pub fn preset(name: &str) -> Option<ScenarioConfig> {
    match name {
        "fig1" => Some(fig1()),
        "fig2" => Some(fig2()),
        "fig3" => Some(fig3()),
        "fig4-limited" => Some(fig4_limited()),
        "fig4-chirped" => Some(fig4_chirped()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_validate() {
        for name in PRESET_NAMES {
            preset(name).unwrap().validate().unwrap();
        }
        assert!(preset("fig5").is_none());
    }

    #[test]
    fn chirp_is_about_two_picoseconds() {
        let t = chirp_time(100.0, 2.0, 20.0);
        assert!((1800.0..2200.0).contains(&t), "{t}");
        assert_eq!(chirp_time(100.0, 2.0, 0.0), 0.0);
    }
}
