use num_complex::Complex64 as C64;

use crate::bessel::bessel_j_orders;
use crate::nearfield::CouplingProfile;
use crate::spectrum::transform_1d;
use crate::wavepacket::Wavepacket;
use crate::{Error, Result};

/// Cap on the adaptive order range.
pub const MAX_ORDER: usize = 24;
const TAIL_TARGET: f64 = 1e-8;

/// i^m for integer m ≥ 0.
fn i_pow(m: usize) -> C64 {
    match m % 4 {
        0 => C64::new(1.0, 0.0),
        1 => C64::new(0.0, 1.0),
        2 => C64::new(-1.0, 0.0),
        _ => C64::new(0.0, -1.0),
    }
}

#[derive(Debug, Clone)]
pub struct OrderAmplitude {
    pub n: i32,
    /// a_n(y) on the profile's y samples.
    pub amplitude: Vec<C64>,
    /// ã_n(k_y) on the conjugate centered axis.
    pub spectrum: Vec<C64>,
    /// ∫|a_n|² dy
    pub population: f64,
}

#[derive(Debug, Clone)]
pub struct OrderDecomposition {
    pub ys: Vec<f64>,
    pub kys: Vec<f64>,
    pub delta_k: f64,
    /// Orders −n_max..=n_max, ascending.
    pub orders: Vec<OrderAmplitude>,
    pub n_max: usize,
    /// Series depth ℓ_max when built from the truncated series; `None` for
    /// the exact Bessel resummation.
    pub series_depth: Option<usize>,
    /// Weight carried by orders beyond n_max.
    pub tail_weight: f64,
}

impl OrderDecomposition {
    pub fn order(&self, n: i32) -> Option<&OrderAmplitude> {
        self.orders.iter().find(|o| o.n == n)
    }

    pub fn total_population(&self) -> f64 {
        self.orders.iter().map(|o| o.population).sum()
    }
}

/// Normalized transverse envelope g⊥(y) of a separable packet: the column
/// through the density maximum, scaled to ∫|g⊥|² dy = 1.
pub fn transverse_envelope(psi: &Wavepacket) -> Vec<C64> {
    let g = psi.grid();
    let amps = psi.amplitudes();
    let imax = psi
        .x_marginal()
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let col: Vec<C64> = (0..g.ny).map(|j| amps[g.index(imax, j)]).collect();
    let w: f64 = col.iter().map(|a| a.norm_sqr()).sum::<f64>() * g.dy;
    if w == 0.0 {
        return col;
    }
    let s = 1.0 / w.sqrt();
    col.into_iter().map(|a| a * s).collect()
}

fn check_profile(psi: &Wavepacket, profile: &CouplingProfile) -> Result<f64> {
    let g = psi.grid();
    if profile.ys.len() != g.ny {
        return Err(Error::Config("profile and wavepacket have different y samplings".into()));
    }
    for (j, &y) in profile.ys.iter().enumerate() {
        if (y - g.y(j)).abs() > 1e-9 * g.dy.max(y.abs()) {
            return Err(Error::Config("profile samples are off the wavepacket's y grid".into()));
        }
    }
    Ok(g.dy)
}

/// Exact order amplitudes a_n(y) = i^n J_n(I1(y)) g⊥(y) for I2 ≡ 0.
///
/// With `n_max = None` the range grows until the weight beyond it drops
/// below 1e-8, up to [`MAX_ORDER`].
pub fn order_amplitudes_exact(
    psi: &Wavepacket,
    profile: &CouplingProfile,
    n_max: Option<usize>,
) -> Result<OrderDecomposition> {
    let dy = check_profile(psi, profile)?;
    let i2_max = profile.max_abs_i2();
    if i2_max > 1e-9 {
        return Err(Error::Unsupported(format!(
            "I2 is not zero (max |I2| = {i2_max:.3e}); apply the full phase mask instead"
        )));
    }
    let env = transverse_envelope(psi);
    let ny = env.len();
    let i1_max = profile.i1.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let depth = MAX_ORDER.max(i1_max.ceil() as usize) + 40;
    let table: Vec<Vec<f64>> = profile.i1.iter().map(|&x| bessel_j_orders(x, depth)).collect();
    let weights: Vec<f64> = env.iter().map(|a| a.norm_sqr() * dy).collect();
    // population of order |n| (same for ±n)
    let pop = |m: usize| -> f64 { (0..ny).map(|j| table[j][m] * table[j][m] * weights[j]).sum() };
    let pops: Vec<f64> = (0..=depth).map(pop).collect();
    let tail_after = |m: usize| -> f64 { 2.0 * pops[m + 1..].iter().sum::<f64>() };
    let n_max = match n_max {
        Some(n) => n.min(depth - 1),
        None => (0..=MAX_ORDER).find(|&m| tail_after(m) < TAIL_TARGET).unwrap_or(MAX_ORDER),
    };
    let origin = profile.ys[ny / 2];
    let mut orders = Vec::with_capacity(2 * n_max + 1);
    for n in -(n_max as i32)..=(n_max as i32) {
        let m = n.unsigned_abs() as usize;
        let c = i_pow(m);
        let amplitude: Vec<C64> = (0..ny).map(|j| c * table[j][m] * env[j]).collect();
        let spectrum = transform_1d(&amplitude, dy, origin);
        orders.push(OrderAmplitude { n, amplitude, spectrum, population: pops[m] });
    }
    let dk = 2.0 * std::f64::consts::PI / (ny as f64 * dy);
    Ok(OrderDecomposition {
        ys: profile.ys.clone(),
        kys: (0..ny).map(|c| (c as f64 - (ny / 2) as f64) * dk).collect(),
        delta_k: profile.delta_k,
        orders,
        n_max,
        series_depth: None,
        tail_weight: tail_after(n_max),
    })
}

/// Partial sum of the power series of the order-n amplitude, normalized so
/// it converges to `i^|n| J_|n|(I1)`:
/// `i^|n| Σ_{ℓ=|n|}^{ℓ_max} (−1)^{ℓ−|n|} (I1/2)^{2ℓ−|n|} / ((ℓ−|n|)! ℓ!)`.
///
/// The printed excitation-path form ([`order_series_printed`]) is this sum
/// times the per-order constant `i^|n| / 2^|n|`. Only the normalized form
/// reproduces the Bessel amplitude, so it is the one used for populations.
pub fn order_series_taylor(i1: f64, n: i32, l_max: usize) -> Result<C64> {
    let m = n.unsigned_abs() as usize;
    if l_max < m {
        return Err(Error::Domain(format!("series depth {l_max} is below |n| = {m}")));
    }
    let h = 0.5 * i1;
    // ℓ = m term: (I1/2)^m / m!
    let mut term = (1..=m).fold(1.0, |acc, k| acc * h / k as f64);
    let mut sum = term;
    for l in m..l_max {
        term *= -(h * h) / (((l + 1 - m) * (l + 1)) as f64);
        sum += term;
    }
    Ok(i_pow(m) * sum)
}

/// The excitation-path series in its printed proportional form,
/// `Σ_{ℓ=|n|}^{ℓ_max} i^{2ℓ} I1^{2ℓ−|n|} / (2^{2ℓ} (ℓ−|n|)! ℓ!)`.
/// Proportional to [`order_series_taylor`] with factor `i^|n| / 2^|n|`.
pub fn order_series_printed(i1: f64, n: i32, l_max: usize) -> Result<C64> {
    let m = n.unsigned_abs() as usize;
    if l_max < m {
        return Err(Error::Domain(format!("series depth {l_max} is below |n| = {m}")));
    }
    let mut sum = 0.0;
    for l in m..=l_max {
        let fact: f64 = (1..=(l - m)).map(|k| k as f64).product::<f64>() * (1..=l).map(|k| k as f64).product::<f64>();
        let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * i1.powi((2 * l - m) as i32) / (4f64.powi(l as i32) * fact);
    }
    Ok(C64::new(sum, 0.0))
}

/// Single-path (weak-field) transverse spectrum of order n:
/// `ã_n(k_y) = i^|n| / (2^|n| |n|!) · FT[I1^|n| g⊥](k_y)`.
pub fn weak_field_order(psi: &Wavepacket, profile: &CouplingProfile, n: i32) -> Result<Vec<C64>> {
    let dy = check_profile(psi, profile)?;
    let m = n.unsigned_abs() as usize;
    let env = transverse_envelope(psi);
    let coef = order_series_taylor(1.0, n, m)?; // i^m / (2^m m!) times 1^m
    let vals: Vec<C64> = env
        .iter()
        .zip(&profile.i1)
        .map(|(g, &x)| coef * x.powi(m as i32) * g)
        .collect();
    Ok(transform_1d(&vals, dy, profile.ys[env.len() / 2]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bessel::bessel_j;
    use crate::grid::Grid2D;
    use crate::nearfield::{coupling_profile, CouplingOptions, LaserParams, NearFieldModel, UniformStripe, Wire};

    fn packet() -> Wavepacket {
        let g = Grid2D::new(512, 256, 0.5, 0.5).unwrap();
        Wavepacket::gaussian(g, 100.0, 60.0, 20.0, (0.0, 0.0)).unwrap()
    }

    fn profile(psi: &Wavepacket, model: NearFieldModel, e: f64) -> CouplingProfile {
        let l = LaserParams::new(2000.0, e, 0.0).unwrap();
        coupling_profile(&model, &l, psi.v0(), &psi.grid().ys(), &CouplingOptions::default()).unwrap()
    }

    #[test]
    fn stripe_populations_are_bessel_squares() {
        let psi = packet();
        for &c in &[0.5, 1.0, 2.0] {
            let p = profile(&psi, UniformStripe::everywhere(c).into(), 0.2);
            let d = order_amplitudes_exact(&psi, &p, None).unwrap();
            for o in &d.orders {
                let j = bessel_j(o.n, c);
                assert!((o.population - j * j).abs() < 1e-10, "n={} I1={c}", o.n);
            }
            assert!((d.total_population() - 1.0).abs() < 1e-6);
            assert!(d.tail_weight < 1e-8);
        }
        let p = profile(&psi, UniformStripe::everywhere(1.0).into(), 0.2);
        let d = order_amplitudes_exact(&psi, &p, None).unwrap();
        assert!((d.order(0).unwrap().population - 0.5855).abs() < 1e-4);
        assert!((d.order(1).unwrap().population - 0.1936).abs() < 1e-4);
        assert!((d.order(-1).unwrap().population - 0.1936).abs() < 1e-4);
    }

    #[test]
    fn zero_coupling_keeps_envelope() {
        let psi = packet();
        let p = profile(&psi, UniformStripe::everywhere(0.0).into(), 0.2);
        let d = order_amplitudes_exact(&psi, &p, None).unwrap();
        assert_eq!(d.n_max, 0);
        let env = transverse_envelope(&psi);
        for (a, b) in d.order(0).unwrap().amplitude.iter().zip(&env) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn wire_parity() {
        let psi = packet();
        let p = profile(&psi, Wire::new(10.0, 0.5, (0.0, 0.0)).unwrap().into(), 0.2);
        let d = order_amplitudes_exact(&psi, &p, None).unwrap();
        let ny = d.ys.len();
        for o in &d.orders {
            let sign = if o.n % 2 == 0 { 1.0 } else { -1.0 };
            for j in 1..ny {
                assert!((o.amplitude[ny - j] - o.amplitude[j] * sign).norm() < 1e-9);
            }
            if o.n % 2 != 0 {
                assert!(o.amplitude[ny / 2].norm() < 1e-12);
                assert!(o.spectrum[ny / 2].norm() < 1e-9);
            }
        }
    }

    #[test]
    fn i2_nonzero_is_unsupported() {
        let psi = packet();
        let l = LaserParams::new(2000.0, 0.2, 0.7).unwrap();
        let m: NearFieldModel = Wire::new(10.0, 0.5, (0.0, 0.0)).unwrap().into();
        let p = coupling_profile(&m, &l, psi.v0(), &psi.grid().ys(), &CouplingOptions::default()).unwrap();
        assert!(matches!(order_amplitudes_exact(&psi, &p, None), Err(Error::Unsupported(_))));
    }

    #[test]
    fn series_limits() {
        for &x in &[-5.0, -2.2, -0.3, 0.0, 0.9, 3.7, 5.0] {
            for n in -6i32..=6 {
                let m = n.unsigned_abs() as usize;
                let s = order_series_taylor(x, n, 30).unwrap();
                let exact = i_pow(m) * bessel_j(m as i32, x);
                assert!((s - exact).norm() < 1e-10, "x={x} n={n}");
                // the printed form differs only by the constant i^|n| / 2^|n|
                let printed = order_series_printed(x, n, 30).unwrap();
                let scale = i_pow(m) / 2f64.powi(m as i32);
                assert!((printed - s * scale).norm() < 1e-12 * (1.0 + printed.norm()));
            }
        }
        assert_eq!(order_series_taylor(0.0, 0, 0).unwrap(), C64::new(1.0, 0.0));
        assert!(matches!(order_series_taylor(1.0, 3, 2), Err(Error::Domain(_))));
    }

    #[test]
    fn weak_field_is_direct_path_term() {
        let psi = packet();
        let p = profile(&psi, Wire::new(10.0, 0.5, (0.0, 0.0)).unwrap().into(), 0.2);
        let env = transverse_envelope(&psi);
        for n in [0i32, 1, 2, -1] {
            let w = weak_field_order(&psi, &p, n).unwrap();
            let m = n.unsigned_abs() as usize;
            let vals: Vec<C64> = env
                .iter()
                .zip(&p.i1)
                .map(|(g, &x)| order_series_taylor(x, n, m).unwrap() * g)
                .collect();
            let expect = transform_1d(&vals, 0.5, 0.0);
            for (a, b) in w.iter().zip(&expect) {
                assert!((a - b).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn first_order_is_convolution() {
        let psi = packet();
        let p = profile(&psi, Wire::new(10.0, 0.5, (0.0, 0.0)).unwrap().into(), 0.2);
        let env = transverse_envelope(&psi);
        let n = env.len();
        let dy = 0.5;
        let g_t = transform_1d(&env, dy, 0.0);
        let i_t = transform_1d(&p.i1.iter().map(|&v| C64::new(v, 0.0)).collect::<Vec<_>>(), dy, 0.0);
        let dk = 2.0 * std::f64::consts::PI / (n as f64 * dy);
        let w = weak_field_order(&psi, &p, 1).unwrap();
        let norm = w.iter().map(|v| v.norm()).fold(0.0, f64::max);
        for c in 0..n {
            let mut acc = C64::new(0.0, 0.0);
            for c1 in 0..n {
                let c2 = (c + n + n / 2 - c1) % n;
                acc += g_t[c1] * i_t[c2];
            }
            let oracle = C64::new(0.0, 0.5) * acc * dk / (2.0 * std::f64::consts::PI).sqrt();
            assert!((oracle - w[c]).norm() < 1e-12 * norm.max(1.0));
        }
    }
}
