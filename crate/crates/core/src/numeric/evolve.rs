use num_complex::Complex64 as C64;
use rayon::prelude::*;

use super::params::EvolutionParams;
use crate::fft::Fft2;
use crate::grid::Grid2D;
use crate::nearfield::{GapResonator, NearFieldModel};
use crate::units::{ELECTRON_CHARGE, ELECTRON_MASS, HBAR};
use crate::wavepacket::{edge_weight, Wavepacket};
use crate::{Error, Result};

/// Edge band (fraction of the extent) that must stay empty.
const EDGE_BAND: f64 = 0.1;
const EDGE_LIMIT: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRecord {
    pub t: f64,
    pub norm: f64,
    /// Lab-frame centroid, nm.
    pub mean_x: f64,
    /// Lab-frame ⟨k_x⟩, nm⁻¹.
    pub mean_kx: f64,
    pub mean_ky: f64,
    /// ⟨(p − qA)²/2m + qΦ⟩, eV.
    pub energy: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct EvolutionTrace {
    pub stride: usize,
    pub records: Vec<TraceRecord>,
}

impl EvolutionTrace {
    pub fn max_norm_drift(&self) -> f64 {
        self.records.iter().fold(0.0, |m, r| m.max((r.norm - 1.0).abs()))
    }
}

// Resolved static potential for fast per-cell evaluation.
enum StaticField {
    Zero,
    Wire { cx: f64, cy: f64, r2: f64, scale: f64 },
    Gap { gap: GapResonator, scale: f64 },
}

impl StaticField {
    fn new(p: &EvolutionParams) -> Result<Self> {
        Ok(match &p.model {
            NearFieldModel::Wire(w) => {
                let scale = p.laser.field_amplitude * w.beta;
                if scale == 0.0 {
                    StaticField::Zero
                } else {
                    StaticField::Wire { cx: w.center.0, cy: w.center.1, r2: w.radius * w.radius, scale }
                }
            }
            NearFieldModel::GapResonator(g) => {
                let scale = g
                    .moment()
                    .ok_or_else(|| Error::State("gap resonator used before calibration".into()))?;
                if scale == 0.0 {
                    StaticField::Zero
                } else {
                    StaticField::Gap { gap: *g, scale }
                }
            }
            NearFieldModel::UniformStripe(_) => {
                return Err(Error::Unsupported(
                    "the uniform stripe has no spatial potential; use the analytic engine".into(),
                ))
            }
        })
    }

    #[inline]
    fn eval(&self, x: f64, y: f64) -> f64 {
        match self {
            StaticField::Zero => 0.0,
            StaticField::Wire { cx, cy, r2, scale } => {
                let (dx, dy) = (x - cx, y - cy);
                let rr = dx * dx + dy * dy;
                if rr < *r2 {
                    scale * dy
                } else {
                    scale * dy * r2 / rr
                }
            }
            StaticField::Gap { gap, scale } => scale * gap.unit_potential(x, y),
        }
    }

    /// `out[i] = scale·Φ0(xs[i], y)`.
    fn fill_row(&self, xs: &[f64], y: f64, scale: f64, out: &mut [f64]) {
        match self {
            StaticField::Zero => out.iter_mut().for_each(|v| *v = 0.0),
            StaticField::Wire { cx, cy, r2, scale: s } => {
                let dy = y - cy;
                let a = scale * s * dy;
                let dy2 = dy * dy;
                for (o, &x) in out.iter_mut().zip(xs) {
                    let dx = x - cx;
                    // r2/rr exceeds 1 exactly inside the wire
                    *o = a * (r2 / (dx * dx + dy2)).min(1.0);
                }
            }
            StaticField::Gap { .. } => {
                for (o, &x) in out.iter_mut().zip(xs) {
                    *o = scale * self.eval(x, y);
                }
            }
        }
    }

    fn is_zero(&self) -> bool {
        matches!(self, StaticField::Zero)
    }
}

/// e^{iθ} for |θ| ≤ 0.1, the most a validated potential step can produce;
/// branch-free Taylor polynomials accurate to well below 1e-17.
#[inline(always)]
fn cis_small(theta: f64) -> C64 {
    let t2 = theta * theta;
    let c = 1.0 - t2 / 2.0 * (1.0 - t2 / 12.0 * (1.0 - t2 / 30.0 * (1.0 - t2 / 56.0 * (1.0 - t2 / 90.0))));
    let s = theta * (1.0 - t2 / 6.0 * (1.0 - t2 / 20.0 * (1.0 - t2 / 42.0 * (1.0 - t2 / 72.0 * (1.0 - t2 / 110.0)))));
    C64::new(c, s)
}

struct Stepper<'a> {
    p: &'a EvolutionParams,
    grid: Grid2D,
    fft: Fft2,
    field: StaticField,
    v0: f64,
    k0: f64,
    dt: f64,
    inv_n: f64,
    /// k_y in unshifted FFT order
    ky: Vec<f64>,
    kx_half: Vec<C64>,
    kx_full: Vec<C64>,
    ky_half_base: Vec<C64>,
    ky_full_base: Vec<C64>,
}

fn fft_freqs(n: usize, dk: f64) -> Vec<f64> {
    (0..n).map(|i| Grid2D::fft_freq(i, n, dk)).collect()
}

impl<'a> Stepper<'a> {
    fn new(p: &'a EvolutionParams, grid: Grid2D, v0: f64, k0: f64) -> Result<Self> {
        let field = StaticField::new(p)?;
        let dt = p.step();
        let c = HBAR / (2.0 * ELECTRON_MASS);
        let kx = fft_freqs(grid.nx, grid.dkx());
        let ky = fft_freqs(grid.ny, grid.dky());
        let phase = |k: f64, tau: f64| C64::from_polar(1.0, -c * k * k * tau);
        Ok(Stepper {
            p,
            grid,
            fft: Fft2::new(grid.nx, grid.ny),
            field,
            v0,
            k0,
            dt,
            inv_n: 1.0 / grid.len() as f64,
            kx_half: kx.iter().map(|&k| phase(k, 0.5 * dt)).collect(),
            kx_full: kx.iter().map(|&k| phase(k, dt)).collect(),
            ky_half_base: ky.iter().map(|&k| phase(k, 0.5 * dt)).collect(),
            ky_full_base: ky.iter().map(|&k| phase(k, dt)).collect(),
            ky,
        })
    }

    /// Kinetic propagator from `ta` to `tb` on transposed k-space data,
    /// `tb − ta` being a full or half step.
    fn kinetic(&self, data: &mut [C64], ta: f64, tb: f64, full: bool) {
        let (kx_f, ky_base) = if full {
            (&self.kx_full, &self.ky_full_base)
        } else {
            (&self.kx_half, &self.ky_half_base)
        };
        let ky_f: Vec<C64> = if self.p.vector_potential && self.p.laser.field_amplitude != 0.0 {
            let s = self.p.laser.vector_potential_integral(ta, tb);
            let a = ELECTRON_CHARGE / ELECTRON_MASS * s;
            ky_base.iter().zip(&self.ky).map(|(b, &k)| b * C64::from_polar(1.0, a * k)).collect()
        } else {
            ky_base.clone()
        };
        let ny = self.grid.ny;
        data.par_chunks_mut(ny).zip(kx_f.par_iter()).for_each(|(row, fx)| {
            for (v, fy) in row.iter_mut().zip(&ky_f) {
                *v *= fx * fy;
            }
        });
    }

    /// Potential kick over one step centered on `t_mid`, real space, with
    /// the 1/N of one FFT round trip folded in.
    fn potential(&self, data: &mut [C64], t_mid: f64) {
        let g = &self.grid;
        let w = self.p.laser.omega();
        let amp = -ELECTRON_CHARGE * (w * t_mid + self.p.laser.phase).cos() * self.dt / HBAR;
        let shift = self.v0 * t_mid;
        let inv_n = self.inv_n;
        if self.field.is_zero() || amp == 0.0 {
            data.par_iter_mut().for_each(|v| *v *= inv_n);
            return;
        }
        let xs: Vec<f64> = (0..g.nx).map(|i| g.x(i) + shift).collect();
        data.par_chunks_mut(g.nx).enumerate().for_each_init(
            || vec![0.0; g.nx],
            |theta, (j, row)| {
                self.field.fill_row(&xs, g.y(j), amp, theta);
                for (v, &t) in row.iter_mut().zip(theta.iter()) {
                    *v *= cis_small(t) * inv_n;
                }
            },
        );
    }

    fn record(&self, k_data: &[C64], real: &[C64], t: f64) -> TraceRecord {
        let g = &self.grid;
        let mut w_r = 0.0;
        let mut sx = 0.0;
        let mut pot = 0.0;
        let w = self.p.laser.omega();
        let tfac = (w * t + self.p.laser.phase).cos();
        let shift = self.v0 * t;
        for j in 0..g.ny {
            let y = g.y(j);
            for i in 0..g.nx {
                let p = real[g.index(i, j)].norm_sqr();
                let x = g.x(i) + shift;
                w_r += p;
                sx += p * x;
                if !self.field.is_zero() {
                    pot += p * ELECTRON_CHARGE * self.field.eval(x, y) * tfac;
                }
            }
        }
        let a = if self.p.vector_potential { self.p.laser.vector_potential(t) } else { 0.0 };
        let (mut w_k, mut skx, mut sky, mut ekin) = (0.0, 0.0, 0.0, 0.0);
        let ny = g.ny;
        let kx = fft_freqs(g.nx, g.dkx());
        for (i, row) in k_data.chunks(ny).enumerate() {
            let kxl = self.k0 + kx[i];
            for (jj, v) in row.iter().enumerate() {
                let p = v.norm_sqr();
                let ky = self.ky[jj];
                w_k += p;
                skx += p * kxl;
                sky += p * ky;
                let px = HBAR * kxl;
                let py = HBAR * ky - ELECTRON_CHARGE * a;
                ekin += p * (px * px + py * py);
            }
        }
        TraceRecord {
            t,
            norm: w_r * g.cell_area(),
            mean_x: sx / w_r,
            mean_kx: skx / w_k,
            mean_ky: sky / w_k,
            energy: ekin / w_k / (2.0 * ELECTRON_MASS) + pot / w_r,
        }
    }
}

/// Evolves `psi0` from `p.t_start` to `p.t_end`. `p` must come from
/// [`super::choose_steps`] (or carry a consistent `steps`).
pub fn split_step_evolve(psi0: &Wavepacket, p: &EvolutionParams) -> Result<(Wavepacket, EvolutionTrace)> {
    split_step_evolve_with(psi0, p, |_, _| Ok(()))
}

/// As [`split_step_evolve`], calling `observer(step, ψ)` at every snapshot
/// (every `snapshot_stride` steps when it is nonzero).
pub fn split_step_evolve_with<F>(
    psi0: &Wavepacket,
    p: &EvolutionParams,
    mut observer: F,
) -> Result<(Wavepacket, EvolutionTrace)>
where
    F: FnMut(usize, &Wavepacket) -> Result<()>,
{
    let grid = *psi0.grid();
    if p.steps == 0 {
        return Err(Error::Config("evolution parameters have no steps; run choose_steps first".into()));
    }
    if (psi0.t() - p.t_start).abs() > 1e-9 * p.t_start.abs().max(1.0) {
        return Err(Error::Config(format!(
            "initial state is at t = {} fs but the window starts at {} fs",
            psi0.t(),
            p.t_start
        )));
    }
    let limit = p.max_stable_dt(&grid)?;
    if p.step().abs() > limit * (1.0 + 1e-12) {
        return Err(Error::Config(format!(
            "time step {:.4e} fs exceeds the stability limit {limit:.4e} fs",
            p.step().abs()
        )));
    }
    let st = Stepper::new(p, grid, psi0.v0(), psi0.k0())?;
    let dt = st.dt;
    let steps = p.steps;
    let stride = if p.snapshot_stride > 0 { p.snapshot_stride } else { (steps / 20).max(1) };
    let snapshots = p.snapshot_stride > 0;
    let n = grid.len();
    let zero = C64::new(0.0, 0.0);

    let mut real: Vec<C64> = psi0.amplitudes().to_vec();
    let mut kbuf = vec![zero; n];
    let mut obs_k = vec![zero; n];
    let mut obs_r = vec![zero; n];
    let mut trace = EvolutionTrace { stride, records: Vec::new() };

    let observe = |kdata: &[C64], t: f64, obs_k: &mut Vec<C64>, obs_r: &mut Vec<C64>| -> TraceRecord {
        obs_k.copy_from_slice(kdata);
        st.fft.inverse_transposed(obs_k, obs_r);
        let s = st.inv_n;
        obs_r.iter_mut().for_each(|v| *v *= s);
        st.record(kdata, obs_r, t)
    };
    let check = |rec: &TraceRecord, obs_r: &[C64], step: usize, trace: &EvolutionTrace| -> Result<()> {
        if !rec.norm.is_finite() {
            return Err(Error::numerical(
                format!("non-finite amplitudes at step {step} (t = {:.3} fs) after {} trace records", rec.t, trace.records.len()),
                None,
            ));
        }
        let e = edge_weight(&grid, obs_r, EDGE_BAND);
        if e > EDGE_LIMIT {
            return Err(Error::numerical(
                format!("packet reached the grid edge at t = {:.3} fs (edge weight {e:.2e})", rec.t),
                Some(e),
            ));
        }
        Ok(())
    };

    {
        let r0 = {
            let mut tmp = real.clone();
            st.fft.forward_transposed(&mut tmp, &mut obs_k);
            st.record(&obs_k, &real, p.t_start)
        };
        trace.records.push(r0);
    }

    st.fft.forward_transposed(&mut real, &mut kbuf);
    st.kinetic(&mut kbuf, p.t_start, p.t_start + 0.5 * dt, false);
    for s in 0..steps {
        let t_mid = p.t_start + (s as f64 + 0.5) * dt;
        st.fft.inverse_transposed(&mut kbuf, &mut real);
        st.potential(&mut real, t_mid);
        st.fft.forward_transposed(&mut real, &mut kbuf);
        let t_next = p.t_start + (s + 1) as f64 * dt;
        let last = s + 1 == steps;
        if last || (s + 1) % stride == 0 {
            st.kinetic(&mut kbuf, t_mid, t_next, false);
            let rec = observe(&kbuf, t_next, &mut obs_k, &mut obs_r);
            check(&rec, &obs_r, s + 1, &trace)?;
            trace.records.push(rec);
            if snapshots && !last {
                let snap = Wavepacket::from_parts(grid, obs_r.clone(), t_next, psi0.e0())?;
                observer(s + 1, &snap)?;
            }
            if !last {
                st.kinetic(&mut kbuf, t_next, t_next + 0.5 * dt, false);
            }
        } else {
            st.kinetic(&mut kbuf, t_mid, t_mid + dt, true);
        }
    }
    let out = Wavepacket::from_parts(grid, obs_r, p.t_end, psi0.e0())?;
    if snapshots {
        observer(steps, &out)?;
    }
    Ok((out, trace))
}
