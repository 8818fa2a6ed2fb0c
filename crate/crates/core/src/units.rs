//! nm / fs / eV unit system.
//!
//! Charges are in units of the elementary charge, so a potential in volts
//! times a charge gives an energy in eV directly, and a field in V/nm is an
//! energy gradient in eV/nm per unit charge.

/// Reduced Planck constant in eV·fs.
pub const HBAR: f64 = 0.658_211_956_9;
/// Speed of light in nm/fs.
pub const SPEED_OF_LIGHT: f64 = 299.792_458;
/// Electron rest energy m c² in eV.
pub const ELECTRON_REST_ENERGY: f64 = 510_998.95;
/// Electron mass in eV·fs²/nm².
pub const ELECTRON_MASS: f64 = ELECTRON_REST_ENERGY / (SPEED_OF_LIGHT * SPEED_OF_LIGHT);
/// Electron charge in units of e.
pub const ELECTRON_CHARGE: f64 = -1.0;

/// Angular frequency (rad/fs) of light with vacuum wavelength `lambda_nm`.
pub fn angular_frequency(lambda_nm: f64) -> f64 {
    2.0 * std::f64::consts::PI * SPEED_OF_LIGHT / lambda_nm
}

/// Photon energy in eV for a vacuum wavelength in nm.
pub fn photon_energy(lambda_nm: f64) -> f64 {
    HBAR * angular_frequency(lambda_nm)
}
