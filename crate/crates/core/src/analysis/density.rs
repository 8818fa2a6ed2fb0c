use crate::analysis::profile::interpolate_uniform;
use crate::grid::Grid2D;
use crate::spectrum::MomentumSpectrum;
use crate::wavepacket::Wavepacket;
use crate::{Error, Result};

/// |ψ̃(k_x, k_y)|² on the centered momentum grid, y-major, lab-frame k_x.
#[derive(Debug, Clone)]
pub struct MomentumDensity {
    grid: Grid2D,
    k0: f64,
    values: Vec<f64>,
}

pub fn momentum_density(psi: &Wavepacket) -> MomentumDensity {
    MomentumDensity::from_spectrum(&psi.to_momentum())
}

impl MomentumDensity {
    pub fn from_spectrum(s: &MomentumSpectrum) -> Self {
        MomentumDensity { grid: *s.grid(), k0: s.k0(), values: s.density() }
    }

    pub fn grid(&self) -> &Grid2D {
        &self.grid
    }

    pub fn k0(&self) -> f64 {
        self.k0
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[self.grid.index(i, j)]
    }

    /// Lab-frame k_x of column `i`.
    pub fn kx(&self, i: usize) -> f64 {
        self.k0 + self.grid.kx(i)
    }

    pub fn ky(&self, j: usize) -> f64 {
        self.grid.ky(j)
    }

    pub fn kxs(&self) -> Vec<f64> {
        (0..self.grid.nx).map(|i| self.kx(i)).collect()
    }

    pub fn kys(&self) -> Vec<f64> {
        self.grid.kys()
    }

    pub fn dkx(&self) -> f64 {
        self.grid.dkx()
    }

    pub fn dky(&self) -> f64 {
        self.grid.dky()
    }

    /// ∫∫ |ψ̃|² dk_x dk_y
    pub fn total(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.dkx() * self.dky()
    }

    pub fn max(&self) -> f64 {
        self.values.iter().fold(0.0, |m, &v| m.max(v))
    }

    /// ∫ |ψ̃|² dk_y per k_x column.
    pub fn kx_marginal(&self) -> Vec<f64> {
        let g = &self.grid;
        let mut m = vec![0.0; g.nx];
        for row in self.values.chunks(g.nx) {
            for (acc, v) in m.iter_mut().zip(row) {
                *acc += v;
            }
        }
        m.iter_mut().for_each(|v| *v *= g.dky());
        m
    }

    /// ∫ |ψ̃|² dk_x per k_y row.
    pub fn ky_marginal(&self) -> Vec<f64> {
        let d = self.dkx();
        self.values.chunks(self.grid.nx).map(|r| r.iter().sum::<f64>() * d).collect()
    }

    /// ‖self − reference‖₂ / ‖reference‖₂ over all cells.
    pub fn relative_l2(&self, reference: &MomentumDensity) -> Result<f64> {
        if !self.grid.same_shape(&reference.grid) || (self.k0 - reference.k0).abs() > 1e-12 * self.k0 {
            return Err(Error::Config("densities live on different momentum grids".into()));
        }
        let (mut num, mut den) = (0.0, 0.0);
        for (a, b) in self.values.iter().zip(&reference.values) {
            num += (a - b) * (a - b);
            den += b * b;
        }
        if den == 0.0 {
            return Err(Error::Domain("reference density is identically zero".into()));
        }
        Ok((num / den).sqrt())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutAxis {
    /// Samples along k_x at a fixed k_y.
    AlongKx,
    /// Samples along k_y at a fixed lab-frame k_x.
    AlongKy,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Crosscut {
    pub axis: CutAxis,
    pub fixed: f64,
    pub coords: Vec<f64>,
    pub values: Vec<f64>,
}

/// Line through the density at `value` of the other coordinate, linearly
/// interpolated between the two nearest rows (or columns).
pub fn crosscut(d: &MomentumDensity, axis: CutAxis, value: f64) -> Result<Crosscut> {
    let g = &d.grid;
    let (coords, values) = match axis {
        CutAxis::AlongKx => {
            let kys = d.kys();
            let (lo, hi) = (kys[0], kys[g.ny - 1]);
            if !(value >= lo - 1e-12 && value <= hi + 1e-12) {
                return Err(Error::Domain(format!("k_y = {value} lies outside [{lo}, {hi}]")));
            }
            let vals = (0..g.nx)
                .map(|i| {
                    let col: Vec<f64> = (0..g.ny).map(|j| d.value(i, j)).collect();
                    interpolate_uniform(&kys, &col, value).unwrap_or(0.0)
                })
                .collect();
            (d.kxs(), vals)
        }
        CutAxis::AlongKy => {
            let kxs = d.kxs();
            let (lo, hi) = (kxs[0], kxs[g.nx - 1]);
            if !(value >= lo - 1e-12 && value <= hi + 1e-12) {
                return Err(Error::Domain(format!("k_x = {value} lies outside [{lo}, {hi}]")));
            }
            let vals = (0..g.ny)
                .map(|j| interpolate_uniform(&kxs, &d.values[j * g.nx..(j + 1) * g.nx], value).unwrap_or(0.0))
                .collect();
            (d.kys(), vals)
        }
    };
    Ok(Crosscut { axis, fixed: value, coords, values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C64;

    fn packet() -> Wavepacket {
        let g = Grid2D::new(256, 128, 0.5, 0.5).unwrap();
        Wavepacket::gaussian(g, 100.0, 20.0, 10.0, (0.0, 0.0)).unwrap()
    }

    #[test]
    fn mass_and_plane_wave_spike() {
        let d = momentum_density(&packet());
        assert!((d.total() - 1.0).abs() < 1e-9);
        assert!(d.values().iter().all(|&v| v >= 0.0));
        let g = Grid2D::new(32, 16, 1.0, 1.0).unwrap();
        let amps = vec![C64::new(1.0, 0.0); g.len()];
        let d = momentum_density(&Wavepacket::from_parts(g, amps, 0.0, 100.0).unwrap());
        let nonzero = d.values().iter().filter(|&&v| v > 1e-20).count();
        assert_eq!(nonzero, 1);
    }

    #[test]
    fn crosscuts_interpolate_and_are_symmetric() {
        let d = momentum_density(&packet());
        let dk = d.dky();
        let a = crosscut(&d, CutAxis::AlongKx, 2.5 * dk).unwrap();
        let b = crosscut(&d, CutAxis::AlongKx, -2.5 * dk).unwrap();
        for (x, y) in a.values.iter().zip(&b.values) {
            assert!((x - y).abs() <= 1e-12 * d.max());
        }
        let row2: Vec<f64> = (0..256).map(|i| d.value(i, 66)).collect();
        let row3: Vec<f64> = (0..256).map(|i| d.value(i, 67)).collect();
        for i in 0..256 {
            assert!((a.values[i] - 0.5 * (row2[i] + row3[i])).abs() <= 1e-12 * d.max());
        }
        let integral: f64 = a.values.iter().sum::<f64>() * d.dkx();
        assert!(integral <= d.total() / dk + 1e-9);
        assert!(crosscut(&d, CutAxis::AlongKy, d.k0() + 1e3).is_err());
    }

    #[test]
    fn relative_l2_basics() {
        let d = momentum_density(&packet());
        assert_eq!(d.relative_l2(&d).unwrap(), 0.0);
    }
}
