use num_complex::Complex64 as C64;

use crate::{Error, Result};

/// Dielectric wire along z in a uniform field along y, quasi-static.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Wire {
    /// nm
    pub radius: f64,
    /// |(ε−1)/(ε+1)|
    pub beta: f64,
    pub center: (f64, f64),
}

impl Wire {
    pub fn new(radius: f64, beta: f64, center: (f64, f64)) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::Domain(format!("wire radius must be positive, got {radius} nm")));
        }
        if !(beta >= 0.0 && beta.is_finite()) {
            return Err(Error::Domain(format!("response factor must be finite and nonnegative, got {beta}")));
        }
        Ok(Wire { radius, beta, center })
    }

    /// Wire with response and retardation phase derived from a complex
    /// permittivity. Returns the model and φ_NF.
    pub fn from_permittivity(radius: f64, eps: C64, center: (f64, f64)) -> Result<(Self, f64)> {
        Ok((Wire::new(radius, response_factor(eps)?, center)?, retardation_phase(eps)?))
    }

    /// Φ0 in volts for incident amplitude `field` (V/nm).
    ///
    /// Inside, `E·β·y`; outside, `E·β·y·R²/r²`. The interior form is the one
    /// the model is defined with, not the textbook dielectric-cylinder one.
    #[inline]
    pub fn potential(&self, field: f64, x: f64, y: f64) -> f64 {
        let (dx, dy) = (x - self.center.0, y - self.center.1);
        let r2 = dx * dx + dy * dy;
        let r2w = self.radius * self.radius;
        if r2 < r2w {
            field * self.beta * dy
        } else {
            field * self.beta * dy * r2w / r2
        }
    }
}

pub fn wire_potential(model: &Wire, field: f64, x: f64, y: f64) -> f64 {
    model.potential(field, x, y)
}

fn ratio(eps: C64) -> Result<C64> {
    let den = eps + 1.0;
    if den.norm() < 1e-12 {
        return Err(Error::Domain("permittivity at the ε = −1 pole".into()));
    }
    Ok((eps - 1.0) / den)
}

/// β = |(ε−1)/(ε+1)|
pub fn response_factor(eps: C64) -> Result<f64> {
    Ok(ratio(eps)?.norm())
}

/// φ_NF = arg((ε−1)/(ε+1)).
pub fn retardation_phase(eps: C64) -> Result<f64> {
    let r = ratio(eps)?;
    if r.norm() == 0.0 {
        return Ok(0.0);
    }
    Ok(r.arg())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn symmetry_and_continuity() {
        let w = Wire::new(10.0, 0.5, (0.0, 0.0)).unwrap();
        for &(x, y) in &[(3.0, 4.0), (12.0, -7.0), (0.0, 10.0), (-25.0, 0.3)] {
            assert_eq!(w.potential(0.2, x, y), w.potential(0.2, -x, y));
            assert_eq!(w.potential(0.2, x, -y), -w.potential(0.2, x, y));
            assert_eq!(w.potential(0.2, x, 0.0), 0.0);
        }
        let a = w.potential(0.2, 0.0, 10.0 - 1e-12);
        let b = w.potential(0.2, 0.0, 10.0 + 1e-12);
        assert!((a - b).abs() < 1e-11);
    }

    #[test]
    fn surface_field_at_pole() {
        // outside, just above the pole: -∂Φ/∂y = E·β
        let w = Wire::new(10.0, 0.5, (0.0, 0.0)).unwrap();
        let h = 1e-5;
        let y = 10.0 + 2.0 * h;
        let e = -(w.potential(1.0, 0.0, y + h) - w.potential(1.0, 0.0, y - h)) / (2.0 * h);
        assert!((e.abs() - 0.5).abs() < 1e-5);
        assert!((1.0 + e.abs() - 1.5).abs() < 1e-5);
    }

    #[test]
    fn retardation() {
        assert_eq!(retardation_phase(C64::new(3.0, 0.0)).unwrap(), 0.0);
        assert_eq!(retardation_phase(C64::new(1.0, 0.0)).unwrap(), 0.0);
        assert!((retardation_phase(C64::new(0.0, 1.0)).unwrap() - FRAC_PI_2).abs() < 1e-15);
        assert!(matches!(retardation_phase(C64::new(-1.0, 0.0)), Err(Error::Domain(_))));
        assert!((response_factor(C64::new(3.0, 0.0)).unwrap() - 0.5).abs() < 1e-15);
    }
}
