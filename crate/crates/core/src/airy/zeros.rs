//! Real zeros a_n of Ai and a'_n of Ai', counted from the right.

use super::eval_pair;
use crate::error::{Error, Result};
use crate::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroKind {
    OfAi,
    OfAiPrime,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RealZero {
    pub kind: ZeroKind,
    pub index: usize,
    pub value: f64,
}

pub const MAX_INDEX: usize = 20;
const SCAN_STEP: f64 = 0.05;

fn value_and_slope(kind: ZeroKind, x: f64) -> Result<(f64, f64)> {
    let p = eval_pair(Complex64::new(x, 0.0))?;
    Ok(match kind {
        ZeroKind::OfAi => (p.ai.re, p.ai_prime.re),
        // (Ai')' = x Ai
        ZeroKind::OfAiPrime => (p.ai_prime.re, x * p.ai.re),
    })
}

/// n-th zero (from the right) of Ai or Ai' on the negative real axis.
///
/// Scans leftwards from the origin for the n-th sign change, bisects the
/// bracket, then polishes with Newton.
pub fn real_zero(kind: ZeroKind, n: usize) -> Result<RealZero> {
    if n == 0 || n > MAX_INDEX {
        return Err(Error::Domain(format!("zero index {n}")));
    }
    let mut count = 0;
    let mut right = 0.0;
    let (mut f_right, _) = value_and_slope(kind, right)?;
    let bracket = loop {
        let left = right - SCAN_STEP;
        if left < -30.0 {
            return Err(Error::Convergence(format!("no bracket for zero {n}")));
        }
        let (f_left, _) = value_and_slope(kind, left)?;
        if f_left == 0.0 || f_left.signum() != f_right.signum() {
            count += 1;
            if count == n {
                break (left, right);
            }
        }
        right = left;
        f_right = f_left;
    };

    let (mut lo, mut hi) = bracket;
    let (f_lo, _) = value_and_slope(kind, lo)?;
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        let (f_mid, _) = value_and_slope(kind, mid)?;
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-10 {
            break;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..8 {
        let (f, df) = value_and_slope(kind, x)?;
        if df == 0.0 {
            break;
        }
        let dx = f / df;
        x -= dx;
        if dx.abs() < 1e-15 * x.abs() {
            break;
        }
    }
    let (residual, _) = value_and_slope(kind, x)?;
    if residual.abs() > 1e-12 || !(bracket.0..=bracket.1).contains(&x) {
        return Err(Error::Convergence(format!(
            "zero {n} residual {residual:e}"
        )));
    }
    Ok(RealZero {
        kind,
        index: n,
        value: x,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_zeros() {
        let a1 = real_zero(ZeroKind::OfAi, 1).unwrap().value;
        let ap1 = real_zero(ZeroKind::OfAiPrime, 1).unwrap().value;
        assert!((a1 + 2.338_107_41).abs() < 1e-8);
        assert!((ap1 + 1.018_792_97).abs() < 1e-8);
    }

    #[test]
    fn residuals_below_tolerance() {
        for n in [1, 7, 20] {
            for kind in [ZeroKind::OfAi, ZeroKind::OfAiPrime] {
                let z = real_zero(kind, n).unwrap();
                let p = eval_pair(Complex64::new(z.value, 0.0)).unwrap();
                let r = match kind {
                    ZeroKind::OfAi => p.ai.norm(),
                    ZeroKind::OfAiPrime => p.ai_prime.norm(),
                };
                assert!(r <= 1e-12, "{kind:?} {n}: {r:e}");
            }
        }
    }

    #[test]
    fn rejects_bad_index() {
        assert!(real_zero(ZeroKind::OfAi, 0).is_err());
        assert!(real_zero(ZeroKind::OfAi, 21).is_err());
    }

    #[test]
    fn interlacing() {
        for n in 1..20 {
            let ap_n = real_zero(ZeroKind::OfAiPrime, n).unwrap().value;
            let a_n = real_zero(ZeroKind::OfAi, n).unwrap().value;
            let ap_next = real_zero(ZeroKind::OfAiPrime, n + 1).unwrap().value;
            assert!(-ap_n < -a_n && -a_n < -ap_next, "n = {n}");
        }
    }
}
