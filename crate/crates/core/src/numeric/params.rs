use std::f64::consts::PI;

use crate::grid::Grid2D;
use crate::nearfield::{LaserParams, NearFieldModel};
use crate::units::{ELECTRON_CHARGE, ELECTRON_MASS, HBAR};
use crate::{Error, Result};

/// Largest potential phase per step, rad.
pub const POTENTIAL_PHASE_BOUND: f64 = 0.1;
/// Largest kinetic phase per step at the grid's Nyquist momentum, rad.
pub const KINETIC_PHASE_BOUND: f64 = 0.5;

#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionParams {
    /// fs
    pub t_start: f64,
    /// fs; may precede `t_start` for backward evolution.
    pub t_end: f64,
    /// Requested |dt|; `None` lets [`choose_steps`] pick it.
    pub dt: Option<f64>,
    /// Filled in by [`choose_steps`].
    pub steps: usize,
    pub laser: LaserParams,
    pub model: NearFieldModel,
    /// Include the incident field's vector potential (dipole approximation).
    pub vector_potential: bool,
    /// Record trace and snapshots every this many steps; 0 = automatic trace
    /// cadence and no snapshots.
    pub snapshot_stride: usize,
    /// Fraction of the largest admissible step actually used.
    pub safety: f64,
}

impl EvolutionParams {
    pub fn new(model: NearFieldModel, laser: LaserParams, t_start: f64, t_end: f64) -> Self {
        EvolutionParams {
            t_start,
            t_end,
            dt: None,
            steps: 0,
            laser,
            model,
            vector_potential: true,
            snapshot_stride: 0,
            safety: 0.5,
        }
    }

    /// Signed step, `(t_end − t_start)/steps`.
    pub fn step(&self) -> f64 {
        (self.t_end - self.t_start) / self.steps as f64
    }

    /// Largest |dt| allowed by both phase bounds on `grid`.
    pub fn max_stable_dt(&self, grid: &Grid2D) -> Result<f64> {
        let phi = self.model.peak_potential(&self.laser)?;
        let dt_pot = if phi > 0.0 {
            POTENTIAL_PHASE_BOUND * HBAR / (ELECTRON_CHARGE.abs() * phi)
        } else {
            f64::INFINITY
        };
        let k_max = (PI / grid.dx).max(PI / grid.dy);
        let dt_kin = KINETIC_PHASE_BOUND * 2.0 * ELECTRON_MASS / (HBAR * k_max * k_max);
        Ok(dt_pot.min(dt_kin))
    }
}

/// Validated copy of `p` with `dt` and `steps` set so that both phase
/// bounds hold and the steps tile the window exactly.
pub fn choose_steps(p: &EvolutionParams, grid: &Grid2D) -> Result<EvolutionParams> {
    let window = p.t_end - p.t_start;
    if !window.is_finite() || window == 0.0 {
        return Err(Error::Config(format!("empty evolution window [{}, {}]", p.t_start, p.t_end)));
    }
    if !(p.safety > 0.0 && p.safety <= 1.0) {
        return Err(Error::Config(format!("safety factor must lie in (0, 1], got {}", p.safety)));
    }
    let limit = p.max_stable_dt(grid)?;
    let dt = match p.dt {
        Some(dt) => {
            if !(dt > 0.0) {
                return Err(Error::Config(format!("time step must be positive, got {dt} fs")));
            }
            if dt > limit * (1.0 + 1e-12) {
                return Err(Error::Config(format!(
                    "time step {dt} fs exceeds the stability limit {limit:.4e} fs"
                )));
            }
            dt
        }
        None => p.safety * limit,
    };
    if window.abs() < dt {
        return Err(Error::Config(format!(
            "window of {} fs is shorter than one step of {dt:.4e} fs",
            window.abs()
        )));
    }
    let steps = (window.abs() / dt * (1.0 - 1e-12)).ceil() as usize;
    let mut out = p.clone();
    out.steps = steps;
    out.dt = Some(window.abs() / steps as f64);
    Ok(out)
}
