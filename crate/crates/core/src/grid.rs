use std::f64::consts::PI;

use crate::{Error, Result};

/// Uniform 2D sampling grid.
///
/// Cell `i` along x sits at `x0 + (i - nx/2)·dx`, so `(x0, y0)` is the
/// center cell rather than the corner. The conjugate momentum grid uses the
/// same convention: offset `(i - nx/2)·dkx` with `dkx = 2π/(nx·dx)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid2D {
    pub nx: usize,
    pub ny: usize,
    pub dx: f64,
    pub dy: f64,
    pub x0: f64,
    pub y0: f64,
}

impl Grid2D {
    pub fn new(nx: usize, ny: usize, dx: f64, dy: f64) -> Result<Self> {
        Self::with_center(nx, ny, dx, dy, 0.0, 0.0)
    }

    pub fn with_center(nx: usize, ny: usize, dx: f64, dy: f64, x0: f64, y0: f64) -> Result<Self> {
        if !nx.is_power_of_two() || !ny.is_power_of_two() || nx < 2 || ny < 2 {
            return Err(Error::Config(format!(
                "grid dimensions must be powers of two >= 2, got {nx}x{ny}"
            )));
        }
        if !(dx > 0.0 && dy > 0.0 && dx.is_finite() && dy.is_finite()) {
            return Err(Error::Config(format!("grid spacing must be positive, got dx={dx}, dy={dy}")));
        }
        if !(x0.is_finite() && y0.is_finite()) {
            return Err(Error::Config("grid center must be finite".into()));
        }
        Ok(Grid2D { nx, ny, dx, dy, x0, y0 })
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Row-major index, y outer.
    #[inline]
    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    #[inline]
    pub fn x(&self, i: usize) -> f64 {
        self.x0 + (i as f64 - (self.nx / 2) as f64) * self.dx
    }

    #[inline]
    pub fn y(&self, j: usize) -> f64 {
        self.y0 + (j as f64 - (self.ny / 2) as f64) * self.dy
    }

    pub fn xs(&self) -> Vec<f64> {
        (0..self.nx).map(|i| self.x(i)).collect()
    }

    pub fn ys(&self) -> Vec<f64> {
        (0..self.ny).map(|j| self.y(j)).collect()
    }

    pub fn extent_x(&self) -> f64 {
        self.nx as f64 * self.dx
    }

    pub fn extent_y(&self) -> f64 {
        self.ny as f64 * self.dy
    }

    pub fn x_range(&self) -> (f64, f64) {
        (self.x(0), self.x(self.nx - 1))
    }

    pub fn y_range(&self) -> (f64, f64) {
        (self.y(0), self.y(self.ny - 1))
    }

    pub fn cell_area(&self) -> f64 {
        self.dx * self.dy
    }

    pub fn dkx(&self) -> f64 {
        2.0 * PI / (self.nx as f64 * self.dx)
    }

    pub fn dky(&self) -> f64 {
        2.0 * PI / (self.ny as f64 * self.dy)
    }

    /// Momentum offset of centered column `i`.
    #[inline]
    pub fn kx(&self, i: usize) -> f64 {
        (i as f64 - (self.nx / 2) as f64) * self.dkx()
    }

    #[inline]
    pub fn ky(&self, j: usize) -> f64 {
        (j as f64 - (self.ny / 2) as f64) * self.dky()
    }

    pub fn kxs(&self) -> Vec<f64> {
        (0..self.nx).map(|i| self.kx(i)).collect()
    }

    pub fn kys(&self) -> Vec<f64> {
        (0..self.ny).map(|j| self.ky(j)).collect()
    }

    /// Momentum offset of bin `i` in unshifted FFT order.
    #[inline]
    pub(crate) fn fft_freq(i: usize, n: usize, dk: f64) -> f64 {
        let k = if i < n / 2 { i as f64 } else { i as f64 - n as f64 };
        k * dk
    }

    pub fn same_shape(&self, other: &Grid2D) -> bool {
        self.nx == other.nx
            && self.ny == other.ny
            && (self.dx - other.dx).abs() <= 1e-12 * self.dx
            && (self.dy - other.dy).abs() <= 1e-12 * self.dy
    }
}
