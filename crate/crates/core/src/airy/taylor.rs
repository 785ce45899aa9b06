//! Analytic continuation of a solution of w'' = z w by local Taylor steps.

use crate::Complex64;

const MAX_ORDER: usize = 160;

/// Advances `(w, w')` from `z0` to `z0 + h` with one Taylor expansion.
fn step(z0: Complex64, w: Complex64, wp: Complex64, h: Complex64) -> (Complex64, Complex64) {
    // w(z0 + t) = sum a_k t^k with a_{k+2} = (z0 a_k + a_{k-1}) / ((k+1)(k+2))
    let zero = Complex64::new(0.0, 0.0);
    let (mut a_km1, mut a_k, mut a_kp1) = (zero, w, wp);
    let mut value = w + wp * h;
    let mut deriv = wp;
    let mut h_pow = h; // h^{k+1}
    for k in 0..MAX_ORDER {
        let kf = k as f64;
        let a_kp2 = (z0 * a_k + a_km1) / ((kf + 1.0) * (kf + 2.0));
        // derivative term uses h^{k+1}, value term h^{k+2}
        let d_term = a_kp2 * (kf + 2.0) * h_pow;
        h_pow *= h;
        let v_term = a_kp2 * h_pow;
        value += v_term;
        deriv += d_term;
        let size = v_term.norm() + d_term.norm();
        a_km1 = a_k;
        a_k = a_kp1;
        a_kp1 = a_kp2;
        if k > 4 && size <= 1e-18 * (value.norm() + deriv.norm()) {
            break;
        }
    }
    (value, deriv)
}

/// Integrates along the straight segment from `from` to `to`.
///
/// Returns the pair at `to` and the number of steps taken.
pub(crate) fn continue_along(
    from: Complex64,
    w: Complex64,
    wp: Complex64,
    to: Complex64,
) -> (Complex64, Complex64, usize) {
    let span = to - from;
    let length = span.norm();
    if length == 0.0 {
        return (w, wp, 0);
    }
    // keep |h| sqrt|z| below ~0.75 so each expansion converges quickly
    let scale = from.norm().max(to.norm()).max(1.0).sqrt();
    let max_h = (0.75 / scale).min(0.5);
    let steps = (length / max_h).ceil().max(1.0) as usize;
    let h = span / steps as f64;
    let (mut w, mut wp) = (w, wp);
    for i in 0..steps {
        let z0 = from + h * i as f64;
        let (nw, nwp) = step(z0, w, wp, h);
        w = nw;
        wp = nwp;
    }
    (w, wp, steps)
}
