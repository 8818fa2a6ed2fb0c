//! Integer-order Bessel functions of the first kind.

/// `J_0(x) .. J_nmax(x)` by Miller's backward recurrence, normalized with
/// `J_0 + 2 Σ J_2k = 1`.
pub fn bessel_j_orders(x: f64, nmax: usize) -> Vec<f64> {
    let mut out = vec![0.0; nmax + 1];
    if x == 0.0 {
        out[0] = 1.0;
        return out;
    }
    let ax = x.abs();
    let top = nmax.max(ax.ceil() as usize);
    // start well above both the requested order and the turning point
    let mut m = top + 20 + (40.0 * top as f64).sqrt() as usize;
    m += m % 2;
    let mut jp1 = 0.0;
    let mut j = 1e-300;
    let mut norm = 0.0;
    for k in (1..=m).rev() {
        // j = J_k, jp1 = J_{k+1} (unnormalized)
        let jm1 = 2.0 * k as f64 / ax * j - jp1;
        jp1 = j;
        j = jm1;
        if j.abs() > 1e250 {
            j *= 1e-250;
            jp1 *= 1e-250;
            norm *= 1e-250;
            out.iter_mut().for_each(|v| *v *= 1e-250);
        }
        let order = k - 1;
        if order <= nmax {
            out[order] = j;
        }
        if order > 0 && order % 2 == 0 {
            norm += 2.0 * j;
        }
    }
    norm += j;
    let sign_odd = if x < 0.0 { -1.0 } else { 1.0 };
    for (n, v) in out.iter_mut().enumerate() {
        *v /= norm;
        if n % 2 == 1 {
            *v *= sign_odd;
        }
    }
    out
}

/// `J_n(x)` for any integer order, using `J_{-n} = (-1)^n J_n`.
pub fn bessel_j(n: i32, x: f64) -> f64 {
    let a = n.unsigned_abs() as usize;
    let v = bessel_j_orders(x, a)[a];
    if n < 0 && a % 2 == 1 {
        -v
    } else {
        v
    }
}
