//! Deterministic text and binary writers for scenario artifacts.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use nediff_core::analysis::{
    crosscut, energy_spread_fwhm, max_deflection, momentum_density, sideband_populations, CutAxis,
    MomentumDensity, SidebandTable, SweepResult,
};
use nediff_core::analytic::{order_amplitudes_exact, OrderDecomposition};
use nediff_core::io::write_raw_grid;
use nediff_core::nearfield::CouplingProfile;
use nediff_core::numeric::EvolutionTrace;

use crate::config::OutputKind;
use crate::heatmap::{render_heatmap, Colormap, DEFAULT_CLIP};
use crate::scenario::ScenarioOutcome;

/// Fixed-width scientific notation used in every CSV cell.
pub fn num(v: f64) -> String {
    format!("{v:.12e}")
}

pub fn profile_csv(p: &CouplingProfile) -> String {
    let mut s = String::from("y_nm,i1_rad,i2_rad\n");
    for ((y, a), b) in p.ys.iter().zip(&p.i1).zip(&p.i2) {
        let _ = writeln!(s, "{},{},{}", num(*y), num(*a), num(*b));
    }
    s
}

pub fn sidebands_csv(t: &SidebandTable) -> String {
    let mut s = String::from("n,population,ky_spread_per_nm\n");
    for r in &t.rows {
        let _ = writeln!(s, "{},{},{}", r.n, num(r.population), num(r.ky_spread));
    }
    s
}

pub fn orders_csv(d: &OrderDecomposition) -> String {
    let mut s = String::from("n,population\n");
    for o in &d.orders {
        let _ = writeln!(s, "{},{}", o.n, num(o.population));
    }
    s
}

pub fn trace_csv(t: &EvolutionTrace) -> String {
    let mut s = String::from("t_fs,norm,mean_x_nm,mean_kx_per_nm,mean_ky_per_nm,energy_ev\n");
    for r in &t.records {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{}",
            num(r.t),
            num(r.norm),
            num(r.mean_x),
            num(r.mean_kx),
            num(r.mean_ky),
            num(r.energy)
        );
    }
    s
}

/// Longitudinal cut at k_y = 0 plus transverse cuts through orders −3..3.
pub fn crosscuts_csv(d: &MomentumDensity, delta_k: f64) -> String {
    let mut s = String::from("cut,fixed_per_nm,coord_per_nm,density\n");
    let mut push = |label: String, axis, value| {
        if let Ok(c) = crosscut(d, axis, value) {
            for (x, v) in c.coords.iter().zip(&c.values) {
                let _ = writeln!(s, "{label},{},{},{}", num(c.fixed), num(*x), num(*v));
            }
        }
    };
    push("kx_at_ky0".into(), CutAxis::AlongKx, 0.0);
    for n in -3..=3 {
        push(format!("ky_at_n{n}"), CutAxis::AlongKy, d.k0() + n as f64 * delta_k);
    }
    s
}

/// One row per swept value; P columns span orders −n_report..n_report.
/// The row with the smallest depletion is flagged.
pub fn sweep_csv(r: &SweepResult, n_report: i32) -> String {
    let mut s = String::from(r.axis.name());
    for n in -n_report..=n_report {
        let _ = write!(s, ",P_{n}");
    }
    s.push_str(",depletion,alpha_max_deg,delta_kx_per_nm,delta_ky_per_nm,depletion_minimum,error\n");
    let min = r.depletion_minimum().map(|(v, _)| v);
    let opt = |v: Option<f64>| v.map(num).unwrap_or_default();
    for p in &r.points {
        s.push_str(&num(p.value));
        match &p.outcome {
            Ok(m) => {
                for n in -n_report..=n_report {
                    let _ = write!(s, ",{}", num(m.sidebands.population(n)));
                }
                let flag = u8::from(min == Some(p.value));
                let _ = writeln!(
                    s,
                    ",{},{},{},{},{flag},",
                    num(m.depletion),
                    num(m.alpha_max),
                    opt(m.delta_kx),
                    opt(m.delta_ky)
                );
            }
            Err(e) => {
                s.push_str(&",".repeat((2 * n_report + 1) as usize + 5));
                let _ = writeln!(s, "\"{}\"", e.replace('"', "'"));
            }
        }
    }
    s
}

fn write(dir: &Path, name: &str, bytes: &[u8], written: &mut Vec<PathBuf>) -> anyhow::Result<()> {
    let path = dir.join(name);
    fs::write(&path, bytes).with_context(|| format!("writing {}", path.display()))?;
    written.push(path);
    Ok(())
}

fn write_grid(dir: &Path, name: &str, psi: &nediff_core::Wavepacket, written: &mut Vec<PathBuf>) -> anyhow::Result<()> {
    let mut buf = Vec::new();
    write_raw_grid(&mut buf, psi)?;
    write(dir, name, &buf, written)
}

/// Writes every artifact requested by the configuration into `dir`.
pub fn write_artifacts(out: &ScenarioOutcome, dir: &Path) -> anyhow::Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let wants = |k| out.config.output.wants(k);
    let mut written = Vec::new();
    write(dir, "config.resolved.toml", out.config.to_toml().as_bytes(), &mut written)?;
    let dk = out.delta_k();
    let finals: Vec<(&str, &nediff_core::Wavepacket)> = out
        .analytic
        .iter()
        .map(|w| ("analytic", w))
        .chain(out.numeric.iter().map(|(w, _)| ("numeric", w)))
        .collect();
    if wants(OutputKind::Profile) {
        write(dir, "profile.csv", profile_csv(&out.profile).as_bytes(), &mut written)?;
    }
    if wants(OutputKind::Orders) {
        match order_amplitudes_exact(&out.initial, &out.profile, None) {
            Ok(d) => write(dir, "orders.csv", orders_csv(&d).as_bytes(), &mut written)?,
            Err(e) => log::warn!("skipping orders.csv: {e}"),
        }
    }
    if wants(OutputKind::Trace) {
        if let Some((_, trace)) = &out.numeric {
            write(dir, "trace.csv", trace_csv(trace).as_bytes(), &mut written)?;
        }
    }
    if wants(OutputKind::Grids) {
        write_grid(dir, "initial.grid", &out.initial, &mut written)?;
    }
    let mut summary = format!("scenario = {}\ndelta_k_per_nm = {}\n", out.config.name, num(dk));
    let d0 = momentum_density(&out.initial);
    if let Some(e) = energy_spread_fwhm(&d0) {
        let _ = writeln!(summary, "initial_energy_fwhm_ev = {}", num(e));
    }
    let _ = writeln!(summary, "initial_temporal_fwhm_fs = {}", num(out.initial.temporal_spread()));
    for (label, psi) in &finals {
        let d = momentum_density(psi);
        if wants(OutputKind::Grids) {
            write_grid(dir, &format!("{label}.grid"), psi, &mut written)?;
        }
        if wants(OutputKind::Heatmap) {
            for (map, suffix) in [(Colormap::Linear, "linear"), (Colormap::Log, "log")] {
                let h = render_heatmap(&d, map, DEFAULT_CLIP);
                if let Some(w) = &h.warning {
                    log::warn!("{label}: {w}");
                }
                write(dir, &format!("{label}_density_{suffix}.pgm"), &h.pgm, &mut written)?;
                write(dir, &format!("{label}_density_{suffix}.txt"), h.sidecar.as_bytes(), &mut written)?;
            }
        }
        if wants(OutputKind::Crosscuts) {
            write(dir, &format!("{label}_crosscuts.csv"), crosscuts_csv(&d, dk).as_bytes(), &mut written)?;
        }
        let bands = sideband_populations(&d, d.k0(), dk);
        if wants(OutputKind::Sidebands) {
            match &bands {
                Ok(t) => write(dir, &format!("{label}_sidebands.csv"), sidebands_csv(t).as_bytes(), &mut written)?,
                Err(e) => log::warn!("skipping {label}_sidebands.csv: {e}"),
            }
        }
        let _ = writeln!(summary, "{label}_norm = {}", num(psi.norm()));
        let _ = writeln!(summary, "{label}_alpha_max_deg = {}", num(max_deflection(&d)));
        if let Ok(t) = &bands {
            let _ = writeln!(summary, "{label}_p0 = {}", num(t.population(0)));
        }
    }
    if let Some(r) = out.engine_distance() {
        let _ = writeln!(summary, "relative_l2_numeric_vs_analytic = {}", num(r?));
    }
    if let Some((_, trace)) = &out.numeric {
        let _ = writeln!(summary, "numeric_max_norm_drift = {}", num(trace.max_norm_drift()));
    }
    if wants(OutputKind::Summary) {
        write(dir, "summary.txt", summary.as_bytes(), &mut written)?;
    }
    Ok(written)
}
