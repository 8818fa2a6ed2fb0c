//! Parameter sweeps over a scenario template.

use nediff_core::analysis::{run_sweep, sweep_metrics, SweepAxis, SweepResult};
use nediff_core::{Error, Result};
use sha2::{Digest, Sha256};

use crate::config::{EngineKind, ModelConfig, ScenarioConfig, SweepParameter};
use crate::scenario::{analytic_final, initial_wavepacket, numeric_final, profile};

pub fn config_hash(cfg: &ScenarioConfig) -> String {
    hex::encode(Sha256::digest(cfg.to_toml().as_bytes()))
}

/// Template with the swept parameter set to `value`.
pub fn with_parameter(cfg: &ScenarioConfig, p: SweepParameter, value: f64) -> ScenarioConfig {
    let mut c = cfg.clone();
    match p {
        SweepParameter::EnergyEv => c.electron.energy_ev = value,
        SweepParameter::FieldVPerNm => c.laser.field_v_per_nm = value,
        SweepParameter::RadiusNm => {
            if let ModelConfig::Wire { radius_nm, .. } = &mut c.model {
                *radius_nm = value;
            }
        }
    }
    c.sweep = None;
    c
}

fn axis(p: SweepParameter) -> SweepAxis {
    match p {
        SweepParameter::EnergyEv => SweepAxis::Energy,
        SweepParameter::RadiusNm => SweepAxis::Radius,
        SweepParameter::FieldVPerNm => SweepAxis::FieldAmplitude,
    }
}

/// Runs every sweep point of `cfg` (analytic engine unless the template
/// asks for the numeric one only).
pub fn run_config_sweep(cfg: &ScenarioConfig) -> Result<SweepResult> {
    let s = cfg.sweep.as_ref().ok_or_else(|| Error::Config("configuration has no [sweep] section".into()))?;
    let values = s.resolved_values();
    run_sweep(axis(s.parameter), &values, &config_hash(cfg), |v| {
        let c = with_parameter(cfg, s.parameter, v);
        c.validate().map_err(|e| Error::Config(e.to_string()))?;
        let psi = initial_wavepacket(&c)?;
        let prof = profile(&c, &psi)?;
        let fin = match c.engine.kind {
            EngineKind::Numeric => numeric_final(&c, &psi)?.0,
            EngineKind::Analytic | EngineKind::Both => analytic_final(&psi, &prof)?,
        };
        sweep_metrics(&psi, &fin, prof.delta_k)
    })
}
