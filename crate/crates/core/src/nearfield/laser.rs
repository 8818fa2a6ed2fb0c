use crate::units::angular_frequency;
use crate::{Error, Result};

/// Monochromatic laser drive, polarized along y.
///
/// The incident field is `E_L cos(ωt)` and the near field oscillates as
/// `cos(ωt + φ_NF)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaserParams {
    /// nm
    pub wavelength: f64,
    /// V/nm
    pub field_amplitude: f64,
    /// rad
    pub phase: f64,
}

impl LaserParams {
    pub fn new(wavelength: f64, field_amplitude: f64, phase: f64) -> Result<Self> {
        if !(wavelength > 0.0 && wavelength.is_finite()) {
            return Err(Error::Domain(format!("wavelength must be positive, got {wavelength} nm")));
        }
        if !(field_amplitude.is_finite() && phase.is_finite()) {
            return Err(Error::Domain("field amplitude and phase must be finite".into()));
        }
        Ok(LaserParams { wavelength, field_amplitude, phase })
    }

    /// rad/fs
    pub fn omega(&self) -> f64 {
        angular_frequency(self.wavelength)
    }

    /// Incident vector potential A_y(t) with `E_y = -∂A/∂t = E_L cos ωt`.
    pub fn vector_potential(&self, t: f64) -> f64 {
        let w = self.omega();
        -self.field_amplitude / w * (w * t).sin()
    }

    /// ∫_a^b A_y dt.
    pub fn vector_potential_integral(&self, a: f64, b: f64) -> f64 {
        let w = self.omega();
        self.field_amplitude / (w * w) * ((w * b).cos() - (w * a).cos())
    }

    pub fn with_field_amplitude(mut self, e: f64) -> Self {
        self.field_amplitude = e;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::SPEED_OF_LIGHT;

    #[test]
    fn omega_lambda_product() {
        for l in [400.0, 800.0, 2000.0, 10600.0] {
            let p = LaserParams::new(l, 0.1, 0.0).unwrap();
            assert!((p.omega() * l / (2.0 * std::f64::consts::PI * SPEED_OF_LIGHT) - 1.0).abs() < 1e-12);
        }
        assert!(LaserParams::new(0.0, 0.1, 0.0).is_err());
    }

    #[test]
    fn vector_potential_is_consistent() {
        let p = LaserParams::new(2000.0, 0.2, 0.0).unwrap();
        let h = 1e-4;
        for t in [-3.0, 0.0, 1.7] {
            let e = -(p.vector_potential(t + h) - p.vector_potential(t - h)) / (2.0 * h);
            assert!((e - 0.2 * (p.omega() * t).cos()).abs() < 1e-8);
        }
        // Simpson check of the integral
        let (a, b) = (0.3, 2.9);
        let n = 2000;
        let hh = (b - a) / n as f64;
        let mut s = p.vector_potential(a) + p.vector_potential(b);
        for k in 1..n {
            s += p.vector_potential(a + k as f64 * hh) * if k % 2 == 1 { 4.0 } else { 2.0 };
        }
        assert!((s * hh / 3.0 - p.vector_potential_integral(a, b)).abs() < 1e-10);
    }
}
