//! Two-dimensional FFT plans over row-major complex fields.
//!
//! The transforms here are unnormalized and in plain FFT order. Callers that
//! want the centered, continuum-normalized spectrum go through
//! [`crate::spectrum`]. The split-step engine uses the transposed variants
//! directly to save one transpose per transform.

use std::sync::Arc;

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};

pub struct Fft2 {
    nx: usize,
    ny: usize,
    fwd_x: Arc<dyn Fft<f64>>,
    inv_x: Arc<dyn Fft<f64>>,
    fwd_y: Arc<dyn Fft<f64>>,
    inv_y: Arc<dyn Fft<f64>>,
}

// One contiguous block of rows per worker thread.
fn run_rows(plan: &Arc<dyn Fft<f64>>, data: &mut [C64], n: usize) {
    let scratch_len = plan.get_inplace_scratch_len();
    let rows = data.len() / n;
    let threads = rayon::current_num_threads().max(1);
    if threads == 1 {
        let mut scratch = vec![C64::new(0.0, 0.0); scratch_len];
        plan.process_with_scratch(data, &mut scratch);
        return;
    }
    let block = rows.div_ceil(threads) * n;
    data.par_chunks_mut(block).for_each(|chunk| {
        let mut scratch = vec![C64::new(0.0, 0.0); scratch_len];
        plan.process_with_scratch(chunk, &mut scratch);
    });
}

/// Blocked out-of-place transpose of a `rows × cols` row-major matrix.
pub fn transpose(src: &[C64], dst: &mut [C64], rows: usize, cols: usize) {
    assert_eq!(src.len(), rows * cols);
    assert_eq!(dst.len(), rows * cols);
    const B: usize = 32;
    for rb in (0..rows).step_by(B) {
        let r_end = (rb + B).min(rows);
        for cb in (0..cols).step_by(B) {
            let c_end = (cb + B).min(cols);
            for r in rb..r_end {
                let row = &src[r * cols..(r + 1) * cols];
                for c in cb..c_end {
                    dst[c * rows + r] = row[c];
                }
            }
        }
    }
}

impl Fft2 {
    pub fn new(nx: usize, ny: usize) -> Self {
        let mut planner = FftPlanner::new();
        Fft2 {
            nx,
            ny,
            fwd_x: planner.plan_fft_forward(nx),
            inv_x: planner.plan_fft_inverse(nx),
            fwd_y: planner.plan_fft_forward(ny),
            inv_y: planner.plan_fft_inverse(ny),
        }
    }

    /// Forward transform of a y-major field. `data` is clobbered; the
    /// spectrum lands in `out` in x-major (transposed) layout.
    pub fn forward_transposed(&self, data: &mut [C64], out: &mut [C64]) {
        run_rows(&self.fwd_x, data, self.nx);
        transpose(data, out, self.ny, self.nx);
        run_rows(&self.fwd_y, out, self.ny);
    }

    /// Inverse of [`Self::forward_transposed`] without the 1/N factor.
    pub fn inverse_transposed(&self, data: &mut [C64], out: &mut [C64]) {
        run_rows(&self.inv_y, data, self.ny);
        transpose(data, out, self.nx, self.ny);
        run_rows(&self.inv_x, out, self.nx);
    }

    /// Unnormalized forward transform, y-major in and out.
    pub fn forward(&self, data: &mut Vec<C64>) {
        let mut work = vec![C64::new(0.0, 0.0); data.len()];
        self.forward_transposed(data, &mut work);
        transpose(&work, data, self.nx, self.ny);
    }

    /// Unnormalized inverse transform, y-major in and out.
    pub fn inverse(&self, data: &mut Vec<C64>) {
        let mut work = vec![C64::new(0.0, 0.0); data.len()];
        transpose(data, &mut work, self.ny, self.nx);
        self.inverse_transposed(&mut work, data);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn naive_dft2(data: &[C64], nx: usize, ny: usize) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); nx * ny];
        for v in 0..ny {
            for u in 0..nx {
                let mut acc = C64::new(0.0, 0.0);
                for j in 0..ny {
                    for i in 0..nx {
                        let ph = -2.0 * PI * ((u * i) as f64 / nx as f64 + (v * j) as f64 / ny as f64);
                        acc += data[j * nx + i] * C64::from_polar(1.0, ph);
                    }
                }
                out[v * nx + u] = acc;
            }
        }
        out
    }

    #[test]
    fn matches_naive_dft() {
        let (nx, ny) = (8, 4);
        let data: Vec<C64> = (0..nx * ny)
            .map(|k| C64::new((k as f64 * 0.37).sin(), (k as f64 * 1.3).cos()))
            .collect();
        let reference = naive_dft2(&data, nx, ny);
        let mut d = data.clone();
        Fft2::new(nx, ny).forward(&mut d);
        for (a, b) in d.iter().zip(&reference) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn transposed_round_trip() {
        let (nx, ny) = (64, 32);
        let data: Vec<C64> = (0..nx * ny).map(|k| C64::new(k as f64, -(k as f64) * 0.5)).collect();
        let plan = Fft2::new(nx, ny);
        let mut a = data.clone();
        let mut b = vec![C64::new(0.0, 0.0); nx * ny];
        plan.forward_transposed(&mut a, &mut b);
        plan.inverse_transposed(&mut b, &mut a);
        let n = (nx * ny) as f64;
        for (x, y) in a.iter().zip(&data) {
            assert!((x / n - y).norm() < 1e-9);
        }
    }

    #[test]
    fn transpose_is_involution() {
        let src: Vec<C64> = (0..6 * 70).map(|k| C64::new(k as f64, 0.0)).collect();
        let mut t = vec![C64::new(0.0, 0.0); src.len()];
        let mut back = t.clone();
        transpose(&src, &mut t, 6, 70);
        assert_eq!(t[70 * 0 + 1], src[70]);
        transpose(&t, &mut back, 70, 6);
        assert_eq!(back, src);
    }
}
