use num_complex::Complex64 as C64;

use crate::analysis::profile::fwhm;
use crate::grid::Grid2D;
use crate::spectrum::MomentumSpectrum;
use crate::units::{ELECTRON_MASS, HBAR};
use crate::{Error, Result};

/// Carrier wavenumber and group velocity of a nonrelativistic electron.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kinematics {
    /// nm⁻¹
    pub k0: f64,
    /// nm/fs
    pub v0: f64,
}

pub fn electron_kinematics(e0: f64) -> Result<Kinematics> {
    if !(e0 > 0.0 && e0.is_finite()) {
        return Err(Error::Domain(format!("electron energy must be positive, got {e0} eV")));
    }
    let k0 = (2.0 * ELECTRON_MASS * e0).sqrt() / HBAR;
    Ok(Kinematics { k0, v0: HBAR * k0 / ELECTRON_MASS })
}

/// Electron wavefunction on a grid.
///
/// The amplitudes are the slowly varying envelope relative to the carrier
/// `e^{i k0 x}`: the carrier itself is far too fast to sample at the grid
/// spacings used here, so it is kept implicit and the momentum axis of the
/// corresponding spectrum is offset by `k0`. The x coordinate is the
/// co-moving one, `x' = x - v0 t`.
#[derive(Debug, Clone)]
pub struct Wavepacket {
    grid: Grid2D,
    amplitudes: Vec<C64>,
    t: f64,
    k0: f64,
    e0: f64,
}

fn density_sigma(fwhm: f64) -> f64 {
    fwhm / (2.0 * (2.0 * std::f64::consts::LN_2).sqrt())
}

impl Wavepacket {
    pub fn from_parts(grid: Grid2D, amplitudes: Vec<C64>, t: f64, e0: f64) -> Result<Self> {
        if amplitudes.len() != grid.len() {
            return Err(Error::Config(format!(
                "amplitude count {} does not match grid {}x{}",
                amplitudes.len(),
                grid.nx,
                grid.ny
            )));
        }
        let kin = electron_kinematics(e0)?;
        Ok(Wavepacket { grid, amplitudes, t, k0: kin.k0, e0 })
    }

    /// Gaussian packet centered on `center` at time 0, zero mean transverse
    /// momentum. Widths are FWHM of the probability density.
    pub fn gaussian(grid: Grid2D, e0: f64, fwhm_x: f64, fwhm_y: f64, center: (f64, f64)) -> Result<Self> {
        if !(fwhm_x > 0.0 && fwhm_y > 0.0) {
            return Err(Error::Domain(format!("widths must be positive, got {fwhm_x} x {fwhm_y} nm")));
        }
        if grid.extent_x() < 4.0 * fwhm_x || grid.extent_y() < 4.0 * fwhm_y {
            return Err(Error::Config(format!(
                "grid extent {:.1} x {:.1} nm is smaller than four widths ({fwhm_x} x {fwhm_y} nm)",
                grid.extent_x(),
                grid.extent_y()
            )));
        }
        let (sx, sy) = (density_sigma(fwhm_x), density_sigma(fwhm_y));
        let (xlo, xhi) = grid.x_range();
        let (ylo, yhi) = grid.y_range();
        if center.0 - 4.0 * sx < xlo || center.0 + 4.0 * sx > xhi || center.1 - 4.0 * sy < ylo || center.1 + 4.0 * sy > yhi {
            return Err(Error::Config("packet does not fit inside the grid to four standard deviations".into()));
        }
        let gx: Vec<f64> = (0..grid.nx)
            .map(|i| (-(grid.x(i) - center.0).powi(2) / (4.0 * sx * sx)).exp())
            .collect();
        let gy: Vec<f64> = (0..grid.ny)
            .map(|j| (-(grid.y(j) - center.1).powi(2) / (4.0 * sy * sy)).exp())
            .collect();
        let mut amplitudes = Vec::with_capacity(grid.len());
        for &b in &gy {
            amplitudes.extend(gx.iter().map(|&a| C64::new(a * b, 0.0)));
        }
        let mut psi = Wavepacket::from_parts(grid, amplitudes, 0.0, e0)?;
        let n = psi.norm();
        let scale = 1.0 / n.sqrt();
        psi.amplitudes.iter_mut().for_each(|a| *a *= scale);
        Ok(psi)
    }

    pub fn grid(&self) -> &Grid2D {
        &self.grid
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn amplitudes_mut(&mut self) -> &mut [C64] {
        &mut self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amplitudes
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn k0(&self) -> f64 {
        self.k0
    }

    pub fn e0(&self) -> f64 {
        self.e0
    }

    pub fn v0(&self) -> f64 {
        HBAR * self.k0 / ELECTRON_MASS
    }

    pub fn with_time(mut self, t: f64) -> Self {
        self.t = t;
        self
    }

    pub fn with_amplitudes(&self, amplitudes: Vec<C64>) -> Result<Self> {
        Wavepacket::from_parts(self.grid, amplitudes, self.t, self.e0)
    }

    /// ∫|ψ|² dx dy.
    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>() * self.grid.cell_area()
    }

    pub fn density(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// ∫|ψ|² dy as a function of x.
    pub fn x_marginal(&self) -> Vec<f64> {
        let g = &self.grid;
        let mut m = vec![0.0; g.nx];
        for row in self.amplitudes.chunks(g.nx) {
            for (acc, a) in m.iter_mut().zip(row) {
                *acc += a.norm_sqr() * g.dy;
            }
        }
        m
    }

    pub fn y_marginal(&self) -> Vec<f64> {
        let g = &self.grid;
        self.amplitudes
            .chunks(g.nx)
            .map(|row| row.iter().map(|a| a.norm_sqr()).sum::<f64>() * g.dx)
            .collect()
    }

    pub fn mean_position(&self) -> (f64, f64) {
        let g = &self.grid;
        let (mut sx, mut sy, mut s) = (0.0, 0.0, 0.0);
        for j in 0..g.ny {
            for i in 0..g.nx {
                let p = self.amplitudes[g.index(i, j)].norm_sqr();
                sx += p * g.x(i);
                sy += p * g.y(j);
                s += p;
            }
        }
        (sx / s, sy / s)
    }

    /// Density FWHM along x, measured on the grid.
    pub fn density_fwhm_x(&self) -> f64 {
        fwhm(&self.grid.xs(), &self.x_marginal()).unwrap_or(0.0)
    }

    pub fn density_fwhm_y(&self) -> f64 {
        fwhm(&self.grid.ys(), &self.y_marginal()).unwrap_or(0.0)
    }

    /// Longitudinal density FWHM converted to time, FWHM_x / v0.
    pub fn temporal_spread(&self) -> f64 {
        self.density_fwhm_x() / self.v0()
    }

    /// Fraction of the norm within `fraction` of the grid extent from any edge.
    pub fn edge_weight(&self, fraction: f64) -> f64 {
        edge_weight(&self.grid, &self.amplitudes, fraction)
    }

    pub fn to_momentum(&self) -> MomentumSpectrum {
        MomentumSpectrum::from_wavepacket(self)
    }
}

pub(crate) fn edge_weight(g: &Grid2D, amps: &[C64], fraction: f64) -> f64 {
    let bx = ((g.nx as f64 * fraction).ceil() as usize).min(g.nx / 2);
    let by = ((g.ny as f64 * fraction).ceil() as usize).min(g.ny / 2);
    let mut edge = 0.0;
    let mut total = 0.0;
    for j in 0..g.ny {
        let row = &amps[j * g.nx..(j + 1) * g.nx];
        let in_band_y = j < by || j >= g.ny - by;
        for (i, a) in row.iter().enumerate() {
            let p = a.norm_sqr();
            total += p;
            if in_band_y || i < bx || i >= g.nx - bx {
                edge += p;
            }
        }
    }
    if total > 0.0 {
        edge / total
    } else {
        0.0
    }
}
