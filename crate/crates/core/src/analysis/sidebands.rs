use crate::analysis::density::MomentumDensity;
use crate::{Error, Result};

/// Minimum number of momentum cells per Δk for binning to be meaningful.
const MIN_CELLS_PER_ORDER: f64 = 6.0;

#[derive(Debug, Clone, PartialEq)]
pub struct SidebandRow {
    pub n: i32,
    pub population: f64,
    /// RMS k_y within the bin (nm⁻¹); zero for an empty bin.
    pub ky_spread: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SidebandTable {
    pub delta_k: f64,
    pub rows: Vec<SidebandRow>,
}

impl SidebandTable {
    pub fn population(&self, n: i32) -> f64 {
        self.rows.iter().find(|r| r.n == n).map_or(0.0, |r| r.population)
    }

    pub fn total(&self) -> f64 {
        self.rows.iter().map(|r| r.population).sum()
    }

    pub fn n_range(&self) -> (i32, i32) {
        (self.rows.first().map_or(0, |r| r.n), self.rows.last().map_or(0, |r| r.n))
    }
}

/// Integrates the density over k_x windows of width Δk centered on
/// k0 + nΔk and over all k_y. Every column is assigned to exactly one order.
pub fn sideband_populations(d: &MomentumDensity, k0: f64, delta_k: f64) -> Result<SidebandTable> {
    if !(delta_k > 0.0) || !delta_k.is_finite() {
        return Err(Error::Config(format!("sideband spacing must be positive, got {delta_k}")));
    }
    let cells = delta_k / d.dkx();
    if cells < MIN_CELLS_PER_ORDER {
        return Err(Error::Config(format!(
            "sideband spacing {delta_k} nm⁻¹ spans only {cells:.2} momentum cells (need {MIN_CELLS_PER_ORDER})"
        )));
    }
    let g = d.grid();
    let kys = d.kys();
    let order = |i: usize| ((d.kx(i) - k0) / delta_k).round() as i32;
    let (lo, hi) = (order(0), order(g.nx - 1));
    let len = (hi - lo + 1) as usize;
    let (mut pop, mut ky2) = (vec![0.0; len], vec![0.0; len]);
    let area = d.dkx() * d.dky();
    for (j, row) in d.values().chunks(g.nx).enumerate() {
        let k2 = kys[j] * kys[j];
        for (i, &v) in row.iter().enumerate() {
            let b = (order(i) - lo) as usize;
            pop[b] += v * area;
            ky2[b] += v * area * k2;
        }
    }
    let rows = (0..len)
        .map(|b| SidebandRow {
            n: lo + b as i32,
            population: pop[b],
            ky_spread: if pop[b] > 0.0 { (ky2[b] / pop[b]).sqrt() } else { 0.0 },
        })
        .collect();
    Ok(SidebandTable { delta_k, rows })
}
