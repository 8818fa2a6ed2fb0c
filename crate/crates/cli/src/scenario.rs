//! Builds physics objects from a configuration and runs the engines.

use nediff_core::analysis::MomentumDensity;
use nediff_core::analytic::{apply_interaction, build_phase_mask, free_propagate_axes, vacuum_propagate};
use nediff_core::grid::Grid2D;
use nediff_core::nearfield::{
    coupling_profile, CouplingOptions, CouplingProfile, GapResonator, LaserParams, NearFieldModel, UniformStripe,
    Wire,
};
use nediff_core::numeric::{choose_steps, split_step_evolve, EvolutionParams, EvolutionTrace};
use nediff_core::{Result, Wavepacket};

use crate::config::{EngineKind, ModelConfig, ScenarioConfig, VacuumAxes};
use crate::presets::bandwidth_limited_fwhm;

/// Command-line overrides applied on top of a configuration.
#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    pub engine: Option<EngineKind>,
    pub snapshot_stride: Option<usize>,
}

impl RunOptions {
    pub fn apply(&self, cfg: &ScenarioConfig) -> ScenarioConfig {
        let mut c = cfg.clone();
        if let Some(e) = self.engine {
            c.engine.kind = e;
        }
        if let Some(s) = self.snapshot_stride {
            c.engine.snapshot_stride = s;
        }
        c
    }
}

pub fn laser(cfg: &ScenarioConfig) -> Result<LaserParams> {
    let l = &cfg.laser;
    LaserParams::new(l.wavelength_nm, l.field_v_per_nm, l.phase_rad)
}

pub fn model(cfg: &ScenarioConfig) -> Result<NearFieldModel> {
    Ok(match &cfg.model {
        ModelConfig::Wire { radius_nm, response, center_nm } => {
            Wire::new(*radius_nm, *response, (center_nm[0], center_nm[1]))?.into()
        }
        ModelConfig::GapResonator { separation_nm, smoothing_fwhm_nm, peak_field_v_per_nm, center_nm } => {
            GapResonator::new(*separation_nm, *smoothing_fwhm_nm, *peak_field_v_per_nm, (center_nm[0], center_nm[1]))?
                .calibrate()?
                .into()
        }
        ModelConfig::UniformStripe { coupling_rad, y_min_nm, y_max_nm } => UniformStripe::new(
            *coupling_rad,
            y_min_nm.unwrap_or(f64::NEG_INFINITY),
            y_max_nm.unwrap_or(f64::INFINITY),
        )?
        .into(),
    })
}

pub fn grid(cfg: &ScenarioConfig) -> Result<Grid2D> {
    let g = &cfg.grid;
    Grid2D::new(g.nx, g.ny, g.dx_nm, g.dy_nm)
}

/// The incident packet as it arrives at the interaction (t = 0).
pub fn initial_wavepacket(cfg: &ScenarioConfig) -> Result<Wavepacket> {
    let e = &cfg.electron;
    let fwhm_x = match (e.fwhm_x_nm, e.bandwidth_ev) {
        (Some(w), _) => w,
        (None, Some(b)) => bandwidth_limited_fwhm(e.energy_ev, b),
        (None, None) => f64::NAN,
    };
    let psi = Wavepacket::gaussian(grid(cfg)?, e.energy_ev, fwhm_x, cfg.fwhm_y(), (e.center_nm[0], e.center_nm[1]))?;
    if e.vacuum_propagation_fs == 0.0 {
        return Ok(psi);
    }
    let tau = e.vacuum_propagation_fs;
    let moved = match e.vacuum_axes {
        VacuumAxes::Both => free_propagate_axes(&psi, tau, tau)?,
        VacuumAxes::Longitudinal => free_propagate_axes(&psi, tau, 0.0)?,
    };
    Ok(moved.with_time(0.0))
}

/// Coupling integrals on every grid row.
pub fn profile(cfg: &ScenarioConfig, psi: &Wavepacket) -> Result<CouplingProfile> {
    coupling_profile(&model(cfg)?, &laser(cfg)?, psi.v0(), &psi.grid().ys(), &CouplingOptions::default())
}

/// Instantaneous phase-mask interaction applied to `psi`.
pub fn analytic_final(psi: &Wavepacket, profile: &CouplingProfile) -> Result<Wavepacket> {
    apply_interaction(psi, &build_phase_mask(profile, psi.grid())?)
}

pub fn evolution_params(cfg: &ScenarioConfig, psi: &Wavepacket) -> Result<EvolutionParams> {
    let en = &cfg.engine;
    let mut p = EvolutionParams::new(model(cfg)?, laser(cfg)?, en.t_start_fs, en.t_end_fs);
    p.vector_potential = en.vector_potential;
    p.snapshot_stride = en.snapshot_stride;
    p.dt = en.dt_fs;
    choose_steps(&p, psi.grid())
}

/// Split-step run over the engine window. The packet given at t = 0 is
/// first carried back to the window start by free flight.
pub fn numeric_final(cfg: &ScenarioConfig, psi: &Wavepacket) -> Result<(Wavepacket, EvolutionTrace)> {
    let p = evolution_params(cfg, psi)?;
    let start = vacuum_propagate(psi, cfg.engine.t_start_fs)?;
    split_step_evolve(&start, &p)
}

#[derive(Debug, Clone)]
pub struct ScenarioOutcome {
    pub config: ScenarioConfig,
    pub initial: Wavepacket,
    pub profile: CouplingProfile,
    pub analytic: Option<Wavepacket>,
    pub numeric: Option<(Wavepacket, EvolutionTrace)>,
}

impl ScenarioOutcome {
    /// The analytic result when present, otherwise the numeric one.
    pub fn primary(&self) -> &Wavepacket {
        self.analytic.as_ref().or(self.numeric.as_ref().map(|(w, _)| w)).expect("at least one engine ran")
    }

    pub fn delta_k(&self) -> f64 {
        self.profile.delta_k
    }

    /// ‖ρ_numeric − ρ_analytic‖ / ‖ρ_analytic‖ when both engines ran.
    pub fn engine_distance(&self) -> Option<Result<f64>> {
        let (a, (n, _)) = (self.analytic.as_ref()?, self.numeric.as_ref()?);
        let da = MomentumDensity::from_spectrum(&a.to_momentum());
        let dn = MomentumDensity::from_spectrum(&n.to_momentum());
        Some(dn.relative_l2(&da))
    }
}

pub fn run_scenario(cfg: &ScenarioConfig, opts: &RunOptions) -> Result<ScenarioOutcome> {
    let cfg = opts.apply(cfg);
    let initial = initial_wavepacket(&cfg)?;
    let profile = profile(&cfg, &initial)?;
    let kind = cfg.engine.kind;
    let analytic = match kind {
        EngineKind::Analytic | EngineKind::Both => Some(analytic_final(&initial, &profile)?),
        EngineKind::Numeric => None,
    };
    let numeric = match kind {
        EngineKind::Numeric | EngineKind::Both => Some(numeric_final(&cfg, &initial)?),
        EngineKind::Analytic => None,
    };
    Ok(ScenarioOutcome { config: cfg, initial, profile, analytic, numeric })
}
