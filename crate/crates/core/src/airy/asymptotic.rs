//! Large-argument expansion of Ai and Ai' in |arg z| < pi.
//!
//! Ai(z)  ~ e^{-zeta} / (2 sqrt(pi) z^{1/4}) * sum (-1)^k u_k / zeta^k
//! Ai'(z) ~ -z^{1/4} e^{-zeta} / (2 sqrt(pi)) * sum (-1)^k v_k / zeta^k
//!
//! with zeta = (2/3) z^{3/2} on the principal branch. The series is divergent
//! and is cut at its smallest term.

use crate::Complex64;
use std::f64::consts::PI;

const MAX_TERMS: usize = 60;

pub(crate) struct Expansion {
    pub ai: Complex64,
    pub aip: Complex64,
    /// Modulus of the first omitted term, relative to the leading term.
    pub truncation: f64,
    /// |zeta|; the exponential loses about |zeta| ulps.
    pub zeta_abs: f64,
}

pub(crate) fn expand(z: Complex64) -> Expansion {
    let sqrt_z = z.sqrt();
    let z_quarter = sqrt_z.sqrt();
    let zeta = z * sqrt_z * (2.0 / 3.0);
    let inv_zeta = zeta.inv();

    let mut u = 1.0_f64;
    let mut power = Complex64::new(1.0, 0.0);
    let mut sum_u = Complex64::new(1.0, 0.0);
    let mut sum_v = Complex64::new(1.0, 0.0);
    let mut last = f64::INFINITY;
    let mut truncation = 0.0;

    for k in 1..MAX_TERMS {
        let kf = k as f64;
        u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
            / ((2.0 * kf - 1.0) * 216.0 * kf);
        let v = -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u;
        power *= -inv_zeta;
        let term_u = power * u;
        let term_v = power * v;
        let size = term_u.norm().max(term_v.norm());
        if size >= last {
            // divergence sets in: stop before adding the growing term
            truncation = last;
            break;
        }
        sum_u += term_u;
        sum_v += term_v;
        last = size;
        truncation = size;
        if size < 1e-17 {
            break;
        }
    }

    let prefactor = (-zeta).exp() / (2.0 * PI.sqrt());
    Expansion {
        ai: prefactor / z_quarter * sum_u,
        aip: -prefactor * z_quarter * sum_v,
        truncation,
        zeta_abs: zeta.norm(),
    }
}
