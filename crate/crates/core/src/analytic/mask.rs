use num_complex::Complex64 as C64;

use crate::grid::Grid2D;
use crate::nearfield::CouplingProfile;
use crate::wavepacket::Wavepacket;
use crate::{Error, Result};

/// Δφ(x′, y) = I1(y) cos(Δk x′) + I2(y) sin(Δk x′) on a grid.
#[derive(Debug, Clone)]
pub struct PhaseMask {
    grid: Grid2D,
    values: Vec<f64>,
    delta_k: f64,
    i1: Vec<f64>,
    i2: Vec<f64>,
}

impl PhaseMask {
    pub fn grid(&self) -> &Grid2D {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn delta_k(&self) -> f64 {
        self.delta_k
    }

    /// Mask at arbitrary x′ on row `j`.
    pub fn value_at(&self, x: f64, j: usize) -> f64 {
        let (s, c) = (self.delta_k * x).sin_cos();
        self.i1[j] * c + self.i2[j] * s
    }
}

pub fn build_phase_mask(profile: &CouplingProfile, grid: &Grid2D) -> Result<PhaseMask> {
    if profile.ys.len() != grid.ny {
        return Err(Error::Config(format!(
            "profile has {} samples, grid has {} rows",
            profile.ys.len(),
            grid.ny
        )));
    }
    for (j, &y) in profile.ys.iter().enumerate() {
        if (y - grid.y(j)).abs() > 1e-9 * grid.dy.max(y.abs()) {
            return Err(Error::Config(format!("profile sample {j} at y={y} is off the grid row {}", grid.y(j))));
        }
    }
    let dk = profile.delta_k;
    let trig: Vec<(f64, f64)> = (0..grid.nx).map(|i| (dk * grid.x(i)).sin_cos()).collect();
    let mut values = Vec::with_capacity(grid.len());
    for j in 0..grid.ny {
        let (a, b) = (profile.i1[j], profile.i2[j]);
        values.extend(trig.iter().map(|&(s, c)| a * c + b * s));
    }
    Ok(PhaseMask { grid: *grid, values, delta_k: dk, i1: profile.i1.clone(), i2: profile.i2.clone() })
}

/// g → g·e^{iΔφ}.
pub fn apply_interaction(psi: &Wavepacket, mask: &PhaseMask) -> Result<Wavepacket> {
    if !psi.grid().same_shape(&mask.grid) || psi.grid().x0 != mask.grid.x0 || psi.grid().y0 != mask.grid.y0 {
        return Err(Error::Config("wavepacket and phase mask live on different grids".into()));
    }
    let amps = psi
        .amplitudes()
        .iter()
        .zip(&mask.values)
        .map(|(a, &phi)| a * C64::from_polar(1.0, phi))
        .collect();
    psi.with_amplitudes(amps)
}
