//! Complex Airy function Ai and its derivative.
//!
//! The evaluator picks a method from the position of `z`:
//!
//! * `|z| <= SERIES_RADIUS`: Maclaurin series.
//! * `|z| >= ASYMPTOTIC_RADIUS`, `|arg z| <= 2pi/3`: the large-argument
//!   expansion cut at its smallest term.
//! * `|z| >= ASYMPTOTIC_RADIUS`, `|arg z| > 2pi/3`: the rotation identity
//!   `Ai(z) = -e^{-2pi i/3} Ai(e^{-2pi i/3} z) - e^{2pi i/3} Ai(e^{2pi i/3} z)`,
//!   whose two terms land back in the expansion sector.
//! * the annulus in between: Taylor continuation of the Airy equation along
//!   the ray through `z`, started on whichever circle makes Ai the growing
//!   solution along the path (inwards from the outer circle where Ai is
//!   recessive, `|arg z| <= pi/3`, outwards from the series circle
//!   otherwise).
//!
//! `z^{3/2}` and `z^{1/4}` are taken on the principal branch everywhere.

mod asymptotic;
mod series;
mod taylor;
mod zeros;

pub use zeros::{real_zero, RealZero, ZeroKind};

use crate::error::{Error, Result};
use crate::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Ai(0) = 3^{-2/3} / Gamma(2/3).
pub const AI0: f64 = 0.355_028_053_887_817_24;
/// -Ai'(0) = 3^{-1/3} / Gamma(1/3).
pub const AIP0: f64 = 0.258_819_403_792_806_8;

/// Radius of the supported disk.
pub const MAX_MODULUS: f64 = 40.0;
/// Below this modulus the Maclaurin series is used.
pub const SERIES_RADIUS: f64 = 2.0;
/// Above this modulus the asymptotic expansion is used.
pub const ASYMPTOTIC_RADIUS: f64 = 9.0;

const EPS: f64 = f64::EPSILON;

/// e^{2 pi i / 3}
pub fn omega() -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI / 3.0)
}

/// e^{-2 pi i / 3}
pub fn omega_bar() -> Complex64 {
    Complex64::from_polar(1.0, -2.0 * PI / 3.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Series,
    Asymptotic,
    ConnectionRotated,
    TaylorContinuation,
}

/// Ai and Ai' at one point, with the method that produced them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AiryPair {
    pub ai: Complex64,
    pub ai_prime: Complex64,
    pub method: Method,
    /// Estimated error relative to `|Ai| + |Ai'|`.
    pub est_rel_error: f64,
}

/// Evaluates Ai(z) and Ai'(z) for `|z| <= 40`.
pub fn eval_pair(z: Complex64) -> Result<AiryPair> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("{z}")));
    }
    let r = z.norm();
    if r > MAX_MODULUS {
        return Err(Error::Domain(format!("|z| = {r} > {MAX_MODULUS}")));
    }
    let pair = if r <= SERIES_RADIUS {
        let (ai, aip, magnitude) = series::maclaurin(z);
        AiryPair {
            ai,
            ai_prime: aip,
            method: Method::Series,
            est_rel_error: 4.0 * EPS * magnitude / (ai.norm() + aip.norm()),
        }
    } else if r >= ASYMPTOTIC_RADIUS {
        if z.arg().abs() <= 2.0 * PI / 3.0 {
            let e = asymptotic::expand(z);
            AiryPair {
                ai: e.ai,
                ai_prime: e.aip,
                method: Method::Asymptotic,
                est_rel_error: e.truncation + (e.zeta_abs + 8.0) * EPS,
            }
        } else {
            rotated(z)
        }
    } else {
        continued(z, r)
    };
    if !(pair.ai.re.is_finite()
        && pair.ai.im.is_finite()
        && pair.ai_prime.re.is_finite()
        && pair.ai_prime.im.is_finite())
    {
        return Err(Error::Overflow(format!("Ai at z = {z}")));
    }
    Ok(pair)
}

/// Ai(z) only.
pub fn ai(z: Complex64) -> Result<Complex64> {
    eval_pair(z).map(|p| p.ai)
}

fn rotated(z: Complex64) -> AiryPair {
    let (w, wb) = (omega(), omega_bar());
    let a = asymptotic::expand(w * z);
    let b = asymptotic::expand(wb * z);
    // Ai(z) = -(wb Ai(wb z) + w Ai(w z)), Ai'(z) = -(w Ai'(wb z) + wb Ai'(w z))
    let ai = -(wb * b.ai + w * a.ai);
    let aip = -(w * b.aip + wb * a.aip);
    let scale = a.ai.norm() + a.aip.norm() + b.ai.norm() + b.aip.norm();
    let truncation = a.truncation.max(b.truncation) + (a.zeta_abs + 8.0) * EPS;
    AiryPair {
        ai,
        ai_prime: aip,
        method: Method::ConnectionRotated,
        est_rel_error: truncation * scale / (ai.norm() + aip.norm()),
    }
}

fn continued(z: Complex64, r: f64) -> AiryPair {
    let direction = z / r;
    let (start, w, wp, start_error) = if z.arg().abs() <= PI / 3.0 {
        let start = direction * ASYMPTOTIC_RADIUS;
        let e = asymptotic::expand(start);
        (start, e.ai, e.aip, e.truncation + (e.zeta_abs + 8.0) * EPS)
    } else {
        let start = direction * SERIES_RADIUS;
        let (ai, aip, magnitude) = series::maclaurin(start);
        (start, ai, aip, 4.0 * EPS * magnitude / (ai.norm() + aip.norm()))
    };
    let (ai, aip, steps) = taylor::continue_along(start, w, wp, z);
    AiryPair {
        ai,
        ai_prime: aip,
        method: Method::TaylorContinuation,
        est_rel_error: start_error + 4.0 * EPS * (steps as f64 + 1.0),
    }
}

/// |Wronskian of Ai(e^{-2pi i/3} z), Ai(e^{2pi i/3} z) minus i/(2 pi)|.
///
/// Absolute defect. Near the positive real axis the two products are of
/// size `exp((4/3)|z|^{3/2})` and the defect cannot be smaller than the
/// rounding of those products; see [`wronskian_defect_scaled`].
pub fn wronskian_defect(z: Complex64) -> Result<f64> {
    let (defect, _) = wronskian_parts(z)?;
    Ok(defect)
}

/// Wronskian defect divided by `1 + max |term|`.
pub fn wronskian_defect_scaled(z: Complex64) -> Result<f64> {
    let (defect, scale) = wronskian_parts(z)?;
    Ok(defect / (1.0 + scale))
}

fn wronskian_parts(z: Complex64) -> Result<(f64, f64)> {
    let (w, wb) = (omega(), omega_bar());
    let m = eval_pair(wb * z)?;
    let p = eval_pair(w * z)?;
    let first = wb * m.ai_prime * p.ai;
    let second = w * p.ai_prime * m.ai;
    let target = Complex64::new(0.0, 1.0 / (2.0 * PI));
    let defect = (first - second - target).norm();
    Ok((defect, first.norm().max(second.norm())))
}

/// Defect of the three-term rotation identities for Ai and Ai'.
///
/// Each defect is divided by `1 + max |term|`; the larger one is returned.
pub fn connection_defect(z: Complex64) -> Result<f64> {
    let (w, wb) = (omega(), omega_bar());
    let c = eval_pair(z)?;
    let m = eval_pair(wb * z)?;
    let p = eval_pair(w * z)?;

    let terms = [c.ai, wb * m.ai, w * p.ai];
    let defect_fn = (terms[0] + terms[1] + terms[2]).norm()
        / (1.0 + terms.iter().map(|t| t.norm()).fold(0.0, f64::max));

    let dterms = [c.ai_prime, w * m.ai_prime, wb * p.ai_prime];
    let defect_der = (dterms[0] + dterms[1] + dterms[2]).norm()
        / (1.0 + dterms.iter().map(|t| t.norm()).fold(0.0, f64::max));

    Ok(defect_fn.max(defect_der))
}
