//! Raw grid dumps.
//!
//! One ASCII header line `NEDIFF1 nx ny dx dy x0 y0 t k0 E0` followed by
//! little-endian f64 `(re, im)` pairs, row-major with y outer. Floats in the
//! header use Rust's shortest round-trip formatting, so a dump read back
//! reproduces the exact grid.

use std::io::{BufRead, Write};

use num_complex::Complex64 as C64;

use crate::grid::Grid2D;
use crate::wavepacket::Wavepacket;
use crate::{Error, Result};

pub const MAGIC: &str = "NEDIFF1";

pub fn write_raw_grid<W: Write>(mut w: W, psi: &Wavepacket) -> Result<()> {
    let g = psi.grid();
    writeln!(
        w,
        "{MAGIC} {} {} {:?} {:?} {:?} {:?} {:?} {:?} {:?}",
        g.nx,
        g.ny,
        g.dx,
        g.dy,
        g.x0,
        g.y0,
        psi.t(),
        psi.k0(),
        psi.e0()
    )?;
    let mut buf = Vec::with_capacity(16 * g.nx);
    for row in psi.amplitudes().chunks(g.nx) {
        buf.clear();
        for a in row {
            buf.extend_from_slice(&a.re.to_le_bytes());
            buf.extend_from_slice(&a.im.to_le_bytes());
        }
        w.write_all(&buf)?;
    }
    w.flush()?;
    Ok(())
}

fn field<T: std::str::FromStr>(parts: &[&str], k: usize, name: &str) -> Result<T> {
    parts
        .get(k)
        .ok_or_else(|| Error::Format(format!("header is missing {name}")))?
        .parse()
        .map_err(|_| Error::Format(format!("header field {name} is not a number")))
}

pub fn read_raw_grid<R: BufRead>(mut r: R) -> Result<Wavepacket> {
    let mut header = String::new();
    r.read_line(&mut header)?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.first() != Some(&MAGIC) {
        return Err(Error::Format("not a NEDIFF1 grid dump".into()));
    }
    if parts.len() != 10 {
        return Err(Error::Format(format!("header has {} fields, expected 10", parts.len())));
    }
    let nx: usize = field(&parts, 1, "nx")?;
    let ny: usize = field(&parts, 2, "ny")?;
    let dx: f64 = field(&parts, 3, "dx")?;
    let dy: f64 = field(&parts, 4, "dy")?;
    let x0: f64 = field(&parts, 5, "x0")?;
    let y0: f64 = field(&parts, 6, "y0")?;
    let t: f64 = field(&parts, 7, "t")?;
    let k0: f64 = field(&parts, 8, "k0")?;
    let e0: f64 = field(&parts, 9, "E0")?;
    let grid = Grid2D::with_center(nx, ny, dx, dy, x0, y0)?;
    let mut bytes = vec![0u8; 16 * grid.len()];
    r.read_exact(&mut bytes)
        .map_err(|_| Error::Format(format!("payload shorter than {nx}x{ny} complex cells")))?;
    let mut extra = [0u8; 1];
    if r.read(&mut extra)? != 0 {
        return Err(Error::Format("trailing bytes after payload".into()));
    }
    let amps = bytes
        .chunks_exact(16)
        .map(|c| {
            let re = f64::from_le_bytes(c[..8].try_into().unwrap());
            let im = f64::from_le_bytes(c[8..].try_into().unwrap());
            C64::new(re, im)
        })
        .collect();
    let psi = Wavepacket::from_parts(grid, amps, t, e0)?;
    if (psi.k0() - k0).abs() > 1e-9 * k0.abs().max(1.0) {
        return Err(Error::Format(format!("header k0 {k0} inconsistent with E0 {e0}")));
    }
    Ok(psi)
}
