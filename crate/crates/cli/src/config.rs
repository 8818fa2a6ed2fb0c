//! Scenario configuration: TOML schema, preset merging and validation.

use serde::{Deserialize, Serialize};

use crate::presets;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("{0}")]
    Syntax(String),
    #[error("unknown preset `{0}` (available: fig1, fig2, fig3, fig4-limited, fig4-chirped)")]
    UnknownPreset(String),
    #[error("invalid `{key}`: {message}")]
    Invalid { key: String, message: String },
}

fn invalid(key: &str, message: impl Into<String>) -> ConfigError {
    ConfigError::Invalid { key: key.to_string(), message: message.into() }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub name: String,
    pub electron: ElectronConfig,
    pub laser: LaserConfig,
    pub model: ModelConfig,
    pub grid: GridConfig,
    pub engine: EngineConfig,
    #[serde(default)]
    pub output: OutputConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElectronConfig {
    pub energy_ev: f64,
    /// Longitudinal density FWHM. Exclusive with `bandwidth_ev`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fwhm_x_nm: Option<f64>,
    /// Energy FWHM of a bandwidth-limited packet. Exclusive with `fwhm_x_nm`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bandwidth_ev: Option<f64>,
    /// Transverse density FWHM. Exclusive with `fwhm_y_rule`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fwhm_y_nm: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fwhm_y_rule: Option<WidthRule>,
    #[serde(default)]
    pub center_nm: [f64; 2],
    /// Free flight applied to the packet before the interaction.
    #[serde(default)]
    pub vacuum_propagation_fs: f64,
    #[serde(default)]
    pub vacuum_axes: VacuumAxes,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WidthRule {
    /// Transverse FWHM equal to the wire diameter 2R.
    WireDiameter,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VacuumAxes {
    #[default]
    Both,
    /// Disperse along x only, keeping the transverse profile focused.
    Longitudinal,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LaserConfig {
    pub wavelength_nm: f64,
    pub field_v_per_nm: f64,
    #[serde(default)]
    pub phase_rad: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ModelConfig {
    Wire {
        radius_nm: f64,
        response: f64,
        #[serde(default)]
        center_nm: [f64; 2],
    },
    GapResonator {
        separation_nm: f64,
        smoothing_fwhm_nm: f64,
        peak_field_v_per_nm: f64,
        #[serde(default)]
        center_nm: [f64; 2],
    },
    UniformStripe {
        coupling_rad: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        y_min_nm: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        y_max_nm: Option<f64>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub nx: usize,
    pub ny: usize,
    pub dx_nm: f64,
    pub dy_nm: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EngineKind {
    Analytic,
    Numeric,
    Both,
}

impl std::str::FromStr for EngineKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "analytic" => Ok(EngineKind::Analytic),
            "numeric" => Ok(EngineKind::Numeric),
            "both" => Ok(EngineKind::Both),
            _ => Err(format!("unknown engine `{s}` (analytic, numeric, both)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EngineConfig {
    pub kind: EngineKind,
    pub t_start_fs: f64,
    pub t_end_fs: f64,
    #[serde(default = "default_true")]
    pub vector_potential: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dt_fs: Option<f64>,
    #[serde(default)]
    pub snapshot_stride: usize,
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutputKind {
    /// Raw grids of the final wavepackets.
    Grids,
    Heatmap,
    Crosscuts,
    Sidebands,
    Profile,
    Orders,
    Trace,
    Summary,
}

impl OutputKind {
    pub const ALL: [OutputKind; 8] = [
        OutputKind::Grids,
        OutputKind::Heatmap,
        OutputKind::Crosscuts,
        OutputKind::Sidebands,
        OutputKind::Profile,
        OutputKind::Orders,
        OutputKind::Trace,
        OutputKind::Summary,
    ];
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub items: Vec<OutputKind>,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig { items: OutputKind::ALL.to_vec() }
    }
}

impl OutputConfig {
    pub fn wants(&self, k: OutputKind) -> bool {
        self.items.contains(&k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    EnergyEv,
    RadiusNm,
    FieldVPerNm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepRange {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub spacing: Spacing,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub parameter: SweepParameter,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub range: Option<SweepRange>,
}

impl SweepConfig {
    pub fn resolved_values(&self) -> Vec<f64> {
        if let Some(v) = &self.values {
            return v.clone();
        }
        let Some(r) = &self.range else { return Vec::new() };
        if r.count == 1 {
            return vec![r.start];
        }
        let m = (r.count - 1) as f64;
        (0..r.count)
            .map(|i| {
                let t = i as f64 / m;
                match r.spacing {
                    Spacing::Linear => r.start + t * (r.stop - r.start),
                    Spacing::Log => (r.start.ln() + t * (r.stop.ln() - r.start.ln())).exp(),
                }
            })
            .collect()
    }
}

impl ScenarioConfig {
    /// Transverse FWHM after applying any width rule.
    pub fn fwhm_y(&self) -> f64 {
        match (self.electron.fwhm_y_nm, self.electron.fwhm_y_rule, &self.model) {
            (Some(w), _, _) => w,
            (None, Some(WidthRule::WireDiameter), ModelConfig::Wire { radius_nm, .. }) => 2.0 * radius_nm,
            _ => f64::NAN,
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("scenario config is always serializable")
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let pos = |key: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(invalid(key, format!("must be a positive number, got {v}")))
            }
        };
        let fin = |key: &str, v: f64| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(invalid(key, "must be finite"))
            }
        };
        let e = &self.electron;
        pos("electron.energy_ev", e.energy_ev)?;
        match (e.fwhm_x_nm, e.bandwidth_ev) {
            (Some(w), None) => pos("electron.fwhm_x_nm", w)?,
            (None, Some(b)) => pos("electron.bandwidth_ev", b)?,
            (Some(_), Some(_)) => {
                return Err(invalid("electron", "give exactly one of fwhm_x_nm and bandwidth_ev, not both"))
            }
            (None, None) => return Err(invalid("electron", "one of fwhm_x_nm or bandwidth_ev is required")),
        }
        match (e.fwhm_y_nm, e.fwhm_y_rule) {
            (Some(w), None) => pos("electron.fwhm_y_nm", w)?,
            (None, Some(WidthRule::WireDiameter)) => {
                if !matches!(self.model, ModelConfig::Wire { .. }) {
                    return Err(invalid("electron.fwhm_y_rule", "wire-diameter requires a wire model"));
                }
            }
            (Some(_), Some(_)) => {
                return Err(invalid("electron", "give exactly one of fwhm_y_nm and fwhm_y_rule, not both"))
            }
            (None, None) => return Err(invalid("electron", "one of fwhm_y_nm or fwhm_y_rule is required")),
        }
        fin("electron.center_nm", e.center_nm[0])?;
        fin("electron.center_nm", e.center_nm[1])?;
        fin("electron.vacuum_propagation_fs", e.vacuum_propagation_fs)?;
        pos("laser.wavelength_nm", self.laser.wavelength_nm)?;
        fin("laser.field_v_per_nm", self.laser.field_v_per_nm)?;
        if self.laser.field_v_per_nm < 0.0 {
            return Err(invalid("laser.field_v_per_nm", "must not be negative"));
        }
        fin("laser.phase_rad", self.laser.phase_rad)?;
        match &self.model {
            ModelConfig::Wire { radius_nm, response, center_nm } => {
                pos("model.radius_nm", *radius_nm)?;
                if !(response.is_finite() && *response >= 0.0) {
                    return Err(invalid("model.response", "must be finite and non-negative"));
                }
                fin("model.center_nm", center_nm[0] + center_nm[1])?;
            }
            ModelConfig::GapResonator { separation_nm, smoothing_fwhm_nm, peak_field_v_per_nm, center_nm } => {
                pos("model.separation_nm", *separation_nm)?;
                pos("model.smoothing_fwhm_nm", *smoothing_fwhm_nm)?;
                pos("model.peak_field_v_per_nm", *peak_field_v_per_nm)?;
                fin("model.center_nm", center_nm[0] + center_nm[1])?;
            }
            ModelConfig::UniformStripe { coupling_rad, y_min_nm, y_max_nm } => {
                fin("model.coupling_rad", *coupling_rad)?;
                if let (Some(a), Some(b)) = (y_min_nm, y_max_nm) {
                    if !(a < b) {
                        return Err(invalid("model", "y_min_nm must be below y_max_nm"));
                    }
                }
                if self.engine.kind != EngineKind::Analytic {
                    return Err(invalid("engine.kind", "the uniform stripe has no potential; use the analytic engine"));
                }
            }
        }
        let g = &self.grid;
        for (key, n) in [("grid.nx", g.nx), ("grid.ny", g.ny)] {
            if n < 2 || !n.is_power_of_two() {
                return Err(invalid(key, format!("must be a power of two ≥ 2, got {n}")));
            }
        }
        pos("grid.dx_nm", g.dx_nm)?;
        pos("grid.dy_nm", g.dy_nm)?;
        let en = &self.engine;
        fin("engine.t_start_fs", en.t_start_fs)?;
        fin("engine.t_end_fs", en.t_end_fs)?;
        if en.kind != EngineKind::Analytic && !(en.t_start_fs < en.t_end_fs) {
            return Err(invalid("engine", "t_start_fs must be below t_end_fs"));
        }
        if let Some(dt) = en.dt_fs {
            pos("engine.dt_fs", dt)?;
        }
        if let Some(s) = &self.sweep {
            match (&s.values, &s.range) {
                (Some(v), None) => {
                    if v.is_empty() {
                        return Err(invalid("sweep.values", "must not be empty"));
                    }
                }
                (None, Some(r)) => {
                    pos("sweep.range.start", r.start)?;
                    pos("sweep.range.stop", r.stop)?;
                    if r.count == 0 || !(r.start < r.stop || r.count == 1) {
                        return Err(invalid("sweep.range", "needs count ≥ 1 and start < stop"));
                    }
                }
                _ => return Err(invalid("sweep", "give exactly one of values and range")),
            }
            let vals = s.resolved_values();
            if vals.windows(2).any(|w| w[1] <= w[0]) || vals.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
                return Err(invalid("sweep", "values must be positive and strictly increasing"));
            }
            if s.parameter == SweepParameter::RadiusNm && !matches!(self.model, ModelConfig::Wire { .. }) {
                return Err(invalid("sweep.parameter", "radius sweeps need a wire model"));
            }
        }
        Ok(())
    }
}

fn merge(base: &mut toml::Table, overlay: toml::Table) {
    for (k, v) in overlay {
        match (base.get_mut(&k), v) {
            (Some(toml::Value::Table(b)), toml::Value::Table(o)) => merge(b, o),
            (_, v) => {
                base.insert(k, v);
            }
        }
    }
}

/// Parses and validates a scenario document. A top-level `preset = "name"`
/// starts from that preset; the remaining keys override it section by section.
pub fn parse_config(text: &str) -> Result<ScenarioConfig, ConfigError> {
    let mut doc: toml::Table = text.parse().map_err(|e: toml::de::Error| ConfigError::Syntax(e.to_string()))?;
    let table = match doc.remove("preset") {
        Some(toml::Value::String(name)) => {
            let base = presets::preset(&name).ok_or(ConfigError::UnknownPreset(name))?;
            let mut t: toml::Table = base.to_toml().parse().expect("preset serializes to valid TOML");
            // a model override replaces the model wholesale so variant fields never mix
            if let Some(m) = doc.remove("model") {
                t.insert("model".into(), m);
            }
            merge(&mut t, doc);
            t
        }
        Some(_) => return Err(invalid("preset", "must be a string")),
        None => {
            for section in ["electron", "laser", "model", "grid", "engine"] {
                if !doc.contains_key(section) {
                    return Err(ConfigError::Syntax(format!("missing section [{section}]")));
                }
            }
            doc
        }
    };
    let cfg: ScenarioConfig =
        ScenarioConfig::deserialize(table).map_err(|e| ConfigError::Syntax(e.to_string()))?;
    cfg.validate()?;
    Ok(cfg)
}
