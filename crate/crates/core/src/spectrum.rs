//! Centered, continuum-normalized momentum representation.
//!
//! `ψ̃(k) = (1/2π) ∫ ψ(r) e^{-i k·r} d²r`, sampled so that
//! `Σ|ψ̃|² dkx dky = Σ|ψ|² dx dy`. The zero-offset bin sits at index
//! `n/2` on each axis and the x axis is offset by the carrier `k0`.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use rustfft::FftPlanner;

use crate::fft::Fft2;
use crate::grid::Grid2D;
use crate::wavepacket::Wavepacket;
use crate::Result;

pub const CONVENTION: &str = "unitary-centered";

#[derive(Debug, Clone)]
pub struct MomentumSpectrum {
    grid: Grid2D,
    amplitudes: Vec<C64>,
    t: f64,
    e0: f64,
    k0: f64,
}

// e^{-iπ n/2}, the constant left over when shifting both index and frequency origins
fn shift_constant(n: usize) -> C64 {
    match n % 4 {
        0 => C64::new(1.0, 0.0),
        1 => C64::new(0.0, -1.0),
        2 => C64::new(-1.0, 0.0),
        _ => C64::new(0.0, 1.0),
    }
}

#[inline]
fn checker(i: usize) -> f64 {
    if i % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

impl MomentumSpectrum {
    pub fn from_wavepacket(psi: &Wavepacket) -> Self {
        let g = *psi.grid();
        let mut data: Vec<C64> = psi.amplitudes().to_vec();
        for j in 0..g.ny {
            for i in 0..g.nx {
                data[g.index(i, j)] *= checker(i + j);
            }
        }
        Fft2::new(g.nx, g.ny).forward(&mut data);
        let c = shift_constant(g.nx) * shift_constant(g.ny) * (g.cell_area() / (2.0 * PI));
        let kx: Vec<C64> = (0..g.nx).map(|i| C64::from_polar(checker(i), -g.kx(i) * g.x0)).collect();
        for j in 0..g.ny {
            let row_phase = c * C64::from_polar(checker(j), -g.ky(j) * g.y0);
            for i in 0..g.nx {
                data[g.index(i, j)] *= row_phase * kx[i];
            }
        }
        MomentumSpectrum { grid: g, amplitudes: data, t: psi.t(), e0: psi.e0(), k0: psi.k0() }
    }

    pub fn from_parts(grid: Grid2D, amplitudes: Vec<C64>, t: f64, e0: f64) -> Result<Self> {
        let k0 = crate::wavepacket::electron_kinematics(e0)?.k0;
        if amplitudes.len() != grid.len() {
            return Err(crate::Error::Config("spectrum size does not match grid".into()));
        }
        Ok(MomentumSpectrum { grid, amplitudes, t, e0, k0 })
    }

    pub fn to_wavepacket(&self) -> Wavepacket {
        let g = self.grid;
        let mut data = self.amplitudes.clone();
        let kx: Vec<C64> = (0..g.nx).map(|i| C64::from_polar(checker(i), g.kx(i) * g.x0)).collect();
        for j in 0..g.ny {
            let row_phase = C64::from_polar(checker(j), g.ky(j) * g.y0);
            for i in 0..g.nx {
                data[g.index(i, j)] *= row_phase * kx[i];
            }
        }
        Fft2::new(g.nx, g.ny).inverse(&mut data);
        let c = (shift_constant(g.nx) * shift_constant(g.ny)).conj() * (g.dkx() * g.dky() / (2.0 * PI));
        for j in 0..g.ny {
            for i in 0..g.nx {
                data[g.index(i, j)] *= c * checker(i + j);
            }
        }
        Wavepacket::from_parts(g, data, self.t, self.e0).expect("grid already validated")
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

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn e0(&self) -> f64 {
        self.e0
    }

    pub fn k0(&self) -> f64 {
        self.k0
    }

    /// Lab-frame k_x of column `i`.
    pub fn kx(&self, i: usize) -> f64 {
        self.k0 + self.grid.kx(i)
    }

    pub fn ky(&self, j: usize) -> f64 {
        self.grid.ky(j)
    }

    pub fn density(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Σ|ψ̃|² dkx dky.
    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>() * self.grid.dkx() * self.grid.dky()
    }
}

/// Centered 1D transform `(d/√2π) Σ f(s) e^{-iks}` of samples at
/// `origin + (j - n/2)·d`. Returns values at `k = (c - n/2)·2π/(n d)`.
pub fn transform_1d(values: &[C64], d: f64, origin: f64) -> Vec<C64> {
    let n = values.len();
    let dk = 2.0 * PI / (n as f64 * d);
    let mut data: Vec<C64> = values.iter().enumerate().map(|(j, v)| v * checker(j)).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut data);
    let c = shift_constant(n) * (d / (2.0 * PI).sqrt());
    for (k, v) in data.iter_mut().enumerate() {
        let kk = (k as f64 - (n / 2) as f64) * dk;
        *v *= c * C64::from_polar(checker(k), -kk * origin);
    }
    data
}

/// Inverse of [`transform_1d`].
pub fn inverse_transform_1d(values: &[C64], d: f64, origin: f64) -> Vec<C64> {
    let n = values.len();
    let dk = 2.0 * PI / (n as f64 * d);
    let mut data: Vec<C64> = values
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let kk = (k as f64 - (n / 2) as f64) * dk;
            v * C64::from_polar(checker(k), kk * origin)
        })
        .collect();
    FftPlanner::new().plan_fft_inverse(n).process(&mut data);
    let c = shift_constant(n).conj() * (dk / (2.0 * PI).sqrt());
    for (j, v) in data.iter_mut().enumerate() {
        *v *= c * checker(j);
    }
    data
}
