//! Eigenfunctions of -d^2/dx^2 on [0, L] with u(L) = 0.
//!
//! Every basis function has the form `sin(k (L - x)) / sqrt(N_k)` with
//! `N_k = L/2 - sin(2 k L) / (4 k)`; the left condition fixes `k`.

use super::LeftBc;
use crate::error::{Error, Result};
use std::f64::consts::PI;

/// `cos(kL) + kappa sin(kL)/k`, whose zeros are the Robin frequencies.
fn robin_condition(k: f64, length: f64, kappa: f64) -> f64 {
    let s = if k == 0.0 {
        length
    } else {
        (k * length).sin() / k
    };
    (k * length).cos() + kappa * s
}

fn robin_condition_derivative(k: f64, length: f64, kappa: f64) -> f64 {
    let kl = k * length;
    -length * kl.sin() + kappa * (length * kl.cos() * k - kl.sin()) / (k * k)
}

/// Frequency `k_n`, n >= 1.
pub fn frequency(left: LeftBc, length: f64, n: usize) -> Result<f64> {
    let nf = n as f64;
    match left {
        LeftBc::Dirichlet => Ok(nf * PI / length),
        LeftBc::Neumann => Ok((nf - 0.5) * PI / length),
        LeftBc::Robin(kappa) if kappa == 0.0 => Ok((nf - 0.5) * PI / length),
        LeftBc::Robin(kappa) => {
            let (mut lo, mut hi) = ((nf - 1.0) * PI / length, nf * PI / length);
            let f_lo = robin_condition(lo, length, kappa);
            let f_hi = robin_condition(hi, length, kappa);
            if !(f_lo.is_finite() && f_hi.is_finite()) || f_lo.signum() == f_hi.signum() {
                return Err(Error::FrequencySolve(n));
            }
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                let f_mid = robin_condition(mid, length, kappa);
                if f_mid.signum() == f_lo.signum() {
                    lo = mid;
                } else {
                    hi = mid;
                }
                if hi - lo < 1e-9 * hi {
                    break;
                }
            }
            let mut k = 0.5 * (lo + hi);
            for _ in 0..10 {
                let d = robin_condition_derivative(k, length, kappa);
                if d == 0.0 {
                    break;
                }
                let step = robin_condition(k, length, kappa) / d;
                let next = k - step;
                if !(next > lo - 1e-9 && next < hi + 1e-9) {
                    break;
                }
                k = next;
                if step.abs() < 1e-16 * k {
                    break;
                }
            }
            if robin_condition(k, length, kappa).abs() > 1e-10 * (1.0 + kappa * length) {
                return Err(Error::FrequencySolve(n));
            }
            Ok(k)
        }
    }
}

/// `N_k`, the squared L^2 norm of `sin(k (L - x))` on [0, L].
pub fn norm_squared(k: f64, length: f64) -> f64 {
    0.5 * length - (2.0 * k * length).sin() / (4.0 * k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn robin_frequencies_satisfy_condition() {
        for kappa in [0.1, 1.0, 10.0, 1e3] {
            for n in [1, 2, 50, 300] {
                let k = frequency(LeftBc::Robin(kappa), 10.0, n).unwrap();
                // -k cos(kL) = kappa sin(kL) is phi'(0) = kappa phi(0)
                let lhs = -k * (k * 10.0).cos();
                let rhs = kappa * (k * 10.0).sin();
                assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + lhs.abs()), "{kappa} {n}");
                assert!(k > (n as f64 - 1.0) * PI / 10.0 && k < n as f64 * PI / 10.0);
            }
        }
    }

    #[test]
    fn robin_interpolates_limits() {
        let l = 10.0;
        let neumann = frequency(LeftBc::Neumann, l, 3).unwrap();
        let dirichlet = frequency(LeftBc::Dirichlet, l, 3).unwrap();
        let small = frequency(LeftBc::Robin(1e-6), l, 3).unwrap();
        let large = frequency(LeftBc::Robin(1e6), l, 3).unwrap();
        assert!((small - neumann).abs() < 1e-6);
        assert!((large - dirichlet).abs() < 1e-5);
    }

    #[test]
    fn norm_of_dirichlet_mode() {
        assert!((norm_squared(PI / 10.0, 10.0) - 5.0).abs() < 1e-14);
    }
}
