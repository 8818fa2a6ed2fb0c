//! Scalar near-field models and the coupling integrals they induce.

mod coupling;
mod gap;
mod laser;
mod wire;

pub use coupling::{
    coupling_integrals, coupling_profile, default_x_bounds, profile_transform, CouplingOptions, CouplingProfile,
    CouplingValue, Provenance, TransverseSpectrum,
};
pub use gap::{calibrate_gap_amplitude, gap_resonator_potential, GapResonator};
pub use laser::LaserParams;
pub use wire::{response_factor, retardation_phase, wire_potential, Wire};

use crate::{Error, Result};

/// Synthetic model with a constant coupling `I1` over `y_min ≤ y ≤ y_max`
/// and zero elsewhere, `I2 = 0`. It has no spatial potential; it reduces
/// the 2D problem to the textbook one-dimensional sideband limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformStripe {
    pub coupling: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl UniformStripe {
    pub fn new(coupling: f64, y_min: f64, y_max: f64) -> Result<Self> {
        if !(coupling.is_finite() && y_min <= y_max) {
            return Err(Error::Domain(format!("invalid stripe: I1={coupling}, y in [{y_min}, {y_max}]")));
        }
        Ok(UniformStripe { coupling, y_min, y_max })
    }

    /// Stripe covering every y.
    pub fn everywhere(coupling: f64) -> Self {
        UniformStripe { coupling, y_min: f64::NEG_INFINITY, y_max: f64::INFINITY }
    }

    pub fn coupling_at(&self, y: f64) -> f64 {
        if y >= self.y_min && y <= self.y_max {
            self.coupling
        } else {
            0.0
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum NearFieldModel {
    Wire(Wire),
    GapResonator(GapResonator),
    UniformStripe(UniformStripe),
}

impl NearFieldModel {
    pub fn name(&self) -> &'static str {
        match self {
            NearFieldModel::Wire(_) => "wire",
            NearFieldModel::GapResonator(_) => "gap-resonator",
            NearFieldModel::UniformStripe(_) => "uniform-stripe",
        }
    }

    /// Static potential amplitude Φ0 in volts. The incident field sets the
    /// wire's scale; the gap resonator carries its own calibrated amplitude.
    pub fn potential(&self, laser: &LaserParams, x: f64, y: f64) -> Result<f64> {
        match self {
            NearFieldModel::Wire(w) => Ok(w.potential(laser.field_amplitude, x, y)),
            NearFieldModel::GapResonator(g) => g.potential(x, y),
            NearFieldModel::UniformStripe(_) => Err(Error::Unsupported(
                "the uniform stripe has no spatial potential; use the analytic engine".into(),
            )),
        }
    }

    /// Bound on |Φ0| over the plane.
    pub fn peak_potential(&self, laser: &LaserParams) -> Result<f64> {
        match self {
            NearFieldModel::Wire(w) => Ok(laser.field_amplitude.abs() * w.beta * w.radius),
            NearFieldModel::GapResonator(g) => g.peak_potential(),
            NearFieldModel::UniformStripe(_) => {
                Err(Error::Unsupported("the uniform stripe has no spatial potential".into()))
            }
        }
    }

    /// Geometric length scale: wire radius or dipole separation.
    pub fn length_scale(&self) -> f64 {
        match self {
            NearFieldModel::Wire(w) => w.radius,
            NearFieldModel::GapResonator(g) => g.separation.max(g.smoothing_fwhm),
            NearFieldModel::UniformStripe(_) => 0.0,
        }
    }

    pub fn center(&self) -> (f64, f64) {
        match self {
            NearFieldModel::Wire(w) => w.center,
            NearFieldModel::GapResonator(g) => g.center,
            NearFieldModel::UniformStripe(_) => (0.0, 0.0),
        }
    }

    /// x positions where Φ0 has a kink along the line at fixed y.
    pub fn kinks(&self, y: f64) -> Vec<f64> {
        match self {
            NearFieldModel::Wire(w) => {
                let dy = y - w.center.1;
                if dy.abs() < w.radius {
                    let h = (w.radius * w.radius - dy * dy).sqrt();
                    vec![w.center.0 - h, w.center.0 + h]
                } else {
                    Vec::new()
                }
            }
            _ => Vec::new(),
        }
    }
}

impl From<Wire> for NearFieldModel {
    fn from(w: Wire) -> Self {
        NearFieldModel::Wire(w)
    }
}

impl From<GapResonator> for NearFieldModel {
    fn from(g: GapResonator) -> Self {
        NearFieldModel::GapResonator(g)
    }
}

impl From<UniformStripe> for NearFieldModel {
    fn from(s: UniformStripe) -> Self {
        NearFieldModel::UniformStripe(s)
    }
}
