use num_complex::Complex64 as C64;

use crate::units::{ELECTRON_MASS, HBAR};
use crate::wavepacket::Wavepacket;
use crate::{Error, Result};

/// Weight allowed within 10% of any grid edge after propagation.
const EDGE_LIMIT: f64 = 1e-6;

/// Free evolution over `tau` fs in the co-moving frame:
/// multiply ψ̃ by `e^{−iħ(κ² + k_y²)τ/2m}`.
pub fn vacuum_propagate(psi: &Wavepacket, tau: f64) -> Result<Wavepacket> {
    free_propagate_axes(psi, tau, tau)
}

/// Free evolution with separate durations for the two dispersion terms,
/// `e^{−iħ(κ² τx + k_y² τy)/2m}`. The time stamp advances by `tau_x`.
///
/// Used to pre-chirp a packet longitudinally while keeping its transverse
/// focus at the interaction.
pub fn free_propagate_axes(psi: &Wavepacket, tau_x: f64, tau_y: f64) -> Result<Wavepacket> {
    if !(tau_x.is_finite() && tau_y.is_finite()) {
        return Err(Error::Domain("propagation time must be finite".into()));
    }
    if tau_x == 0.0 && tau_y == 0.0 {
        return Ok(psi.clone());
    }
    let mut s = psi.to_momentum();
    let g = *s.grid();
    let c = HBAR / (2.0 * ELECTRON_MASS);
    let px: Vec<C64> = (0..g.nx).map(|i| C64::from_polar(1.0, -c * g.kx(i).powi(2) * tau_x)).collect();
    let amps = s.amplitudes_mut();
    for j in 0..g.ny {
        let py = C64::from_polar(1.0, -c * g.ky(j).powi(2) * tau_y);
        for i in 0..g.nx {
            amps[g.index(i, j)] *= py * px[i];
        }
    }
    let out = s.to_wavepacket().with_time(psi.t() + tau_x);
    let edge = out.edge_weight(0.1);
    if edge > EDGE_LIMIT {
        return Err(Error::Config(format!(
            "propagated packet reaches the grid edges (edge weight {edge:.2e}); enlarge the grid"
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid2D;

    fn packet() -> Wavepacket {
        let g = Grid2D::new(512, 256, 0.5, 0.5).unwrap();
        Wavepacket::gaussian(g, 100.0, 20.0, 10.0, (0.0, 0.0)).unwrap()
    }

    #[test]
    fn zero_time_is_identity() {
        let psi = packet();
        let out = vacuum_propagate(&psi, 0.0).unwrap();
        assert_eq!(out.amplitudes(), psi.amplitudes());
    }

    #[test]
    fn norm_and_spreading() {
        let psi = packet();
        for &tau in &[-40.0, 5.0, 40.0] {
            let out = vacuum_propagate(&psi, tau).unwrap();
            assert!((out.norm() - 1.0).abs() < 1e-12);
            assert_eq!(out.t(), tau);
            // Gaussian spreading: σ(t)² = σ² + (ħt/2mσ)² for density σ
            let s0 = 20.0 / (2.0 * (2.0 * 2f64.ln()).sqrt());
            let st = (s0 * s0 + (HBAR * tau / (2.0 * ELECTRON_MASS * s0)).powi(2)).sqrt();
            let expect = st * 2.0 * (2.0 * 2f64.ln()).sqrt();
            assert!((out.density_fwhm_x() - expect).abs() < 0.5, "{} vs {expect}", out.density_fwhm_x());
        }
    }

    #[test]
    fn outgrowing_the_grid_is_config_error() {
        let psi = packet();
        assert!(matches!(vacuum_propagate(&psi, 5000.0), Err(Error::Config(_))));
    }

    #[test]
    fn longitudinal_only_keeps_transverse_width() {
        let psi = packet();
        let out = free_propagate_axes(&psi, 1000.0, 0.0).unwrap();
        assert!((out.density_fwhm_y() - psi.density_fwhm_y()).abs() < 1e-9);
        assert!(out.density_fwhm_x() > psi.density_fwhm_x() * 1.2);
    }
}
