//! 16-bit binary PGM rendering of momentum densities.

use nediff_core::analysis::MomentumDensity;

pub const DEFAULT_CLIP: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Colormap {
    Linear,
    Log,
}

impl std::str::FromStr for Colormap {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "linear" => Ok(Colormap::Linear),
            "log" => Ok(Colormap::Log),
            _ => Err(format!("unknown colormap `{s}` (linear, log)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Heatmap {
    /// Complete `P5` file, maxval 65535, big-endian samples.
    pub pgm: Vec<u8>,
    /// Axis ranges and mapping, one `key = value` per line.
    pub sidecar: String,
    /// Set when the field carried no signal and the image is blank.
    pub warning: Option<String>,
}

/// Maps `values` (y-major, `nx` per row) to 16-bit levels. Rows are emitted
/// top to bottom from the highest k_y.
pub fn render_values(values: &[f64], nx: usize, ny: usize, map: Colormap, clip: f64) -> (Vec<u16>, Option<String>) {
    let vmax = values.iter().fold(0.0_f64, |m, &v| m.max(v));
    let vmin = values.iter().fold(f64::INFINITY, |m, &v| m.min(v));
    if !(vmax > 0.0) {
        return (vec![0; nx * ny], Some("density is identically zero; writing a blank image".into()));
    }
    let level = |v: f64| -> u16 {
        let t = match map {
            Colormap::Linear => {
                if vmax > vmin {
                    (v - vmin) / (vmax - vmin)
                } else {
                    0.5
                }
            }
            Colormap::Log => {
                let floor = clip * vmax;
                let span = (vmax / floor).log10();
                if span > 0.0 {
                    (v.max(floor) / floor).log10() / span
                } else {
                    0.5
                }
            }
        };
        (t.clamp(0.0, 1.0) * 65535.0).round() as u16
    };
    let mut out = Vec::with_capacity(nx * ny);
    for j in (0..ny).rev() {
        out.extend(values[j * nx..(j + 1) * nx].iter().map(|&v| level(v)));
    }
    (out, None)
}

pub fn render_heatmap(d: &MomentumDensity, map: Colormap, clip: f64) -> Heatmap {
    let g = d.grid();
    let (levels, warning) = render_values(d.values(), g.nx, g.ny, map, clip);
    let mut pgm = format!("P5\n{} {}\n65535\n", g.nx, g.ny).into_bytes();
    pgm.reserve(2 * levels.len());
    for l in levels {
        pgm.extend_from_slice(&l.to_be_bytes());
    }
    let kxs = d.kxs();
    let kys = d.kys();
    let sidecar = format!(
        "width = {}\nheight = {}\nkx_min_per_nm = {:e}\nkx_max_per_nm = {:e}\nky_top_per_nm = {:e}\nky_bottom_per_nm = {:e}\ncolormap = {}\nclip = {:e}\ndensity_max = {:e}\n",
        g.nx,
        g.ny,
        kxs[0],
        kxs[g.nx - 1],
        kys[g.ny - 1],
        kys[0],
        if map == Colormap::Linear { "linear" } else { "log" },
        clip,
        d.max(),
    );
    Heatmap { pgm, sidecar, warning }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_field_is_mid_gray() {
        let (l, w) = render_values(&[2.0; 12], 4, 3, Colormap::Linear, DEFAULT_CLIP);
        assert!(w.is_none());
        assert!(l.iter().all(|&v| v == 32768));
    }

    #[test]
    fn zero_field_is_blank_with_warning() {
        let (l, w) = render_values(&[0.0; 8], 4, 2, Colormap::Log, DEFAULT_CLIP);
        assert!(w.is_some());
        assert!(l.iter().all(|&v| v == 0));
    }

    #[test]
    fn log_floor_and_row_order() {
        // bottom row (j = 0) small, top row (j = 1) at max
        let vals = [1e-9, 1e-6, 1e-3, 1.0, 1.0, 1.0, 1.0, 1.0];
        let (l, _) = render_values(&vals, 4, 2, Colormap::Log, 1e-6);
        assert_eq!(&l[..4], &[65535; 4]);
        assert_eq!(l[4], 0);
        assert_eq!(l[5], 0);
        assert_eq!(l[6], 32768);
        assert_eq!(l[7], 65535);
    }
}
