//! Matrix exponential by scaling and squaring with a [13/13] Padé approximant.
//!
//! With `2^{-s} A` scaled to 1-norm at most `THETA_13` the approximant has
//! backward error below unit roundoff; the squarings then amplify rounding
//! by at most a factor of order `2^s` times the condition of the problem.

use crate::error::{Error, Result};
use crate::Complex64;
use nalgebra::DMatrix;

const B: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];
const THETA_13: f64 = 5.371_920_351_148_152;

/// Complex product through four real products, which use the blocked real
/// kernel.
pub fn cmul(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let (ar, ai) = (a.map(|z| z.re), a.map(|z| z.im));
    let (br, bi) = (b.map(|z| z.re), b.map(|z| z.im));
    let re = &ar * &br - &ai * &bi;
    let im = &ar * &bi + &ai * &br;
    re.zip_map(&im, Complex64::new)
}

pub fn one_norm(a: &DMatrix<Complex64>) -> f64 {
    a.column_iter()
        .map(|c| c.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn expm(a: &DMatrix<Complex64>) -> Result<DMatrix<Complex64>> {
    let n = a.nrows();
    let norm = one_norm(a);
    if !norm.is_finite() {
        return Err(Error::Overflow("matrix exponential of non-finite matrix".into()));
    }
    let s = if norm > THETA_13 {
        (norm / THETA_13).log2().ceil() as i32
    } else {
        0
    };
    let scaled = a * Complex64::new(2f64.powi(-s), 0.0);
    let id = DMatrix::<Complex64>::identity(n, n);
    let a2 = cmul(&scaled, &scaled);
    let a4 = cmul(&a2, &a2);
    let a6 = cmul(&a4, &a2);
    let c = |k: usize| Complex64::new(B[k], 0.0);

    let inner_u = cmul(&a6, &(&a6 * c(13) + &a4 * c(11) + &a2 * c(9)));
    let u = cmul(
        &scaled,
        &(inner_u + &a6 * c(7) + &a4 * c(5) + &a2 * c(3) + &id * c(1)),
    );
    let inner_v = cmul(&a6, &(&a6 * c(12) + &a4 * c(10) + &a2 * c(8)));
    let v = inner_v + &a6 * c(6) + &a4 * c(4) + &a2 * c(2) + &id * c(0);

    let p = &v + &u;
    let q = &v - &u;
    let mut r = q
        .lu()
        .solve(&p)
        .ok_or_else(|| Error::Overflow("singular Padé denominator".into()))?;
    for _ in 0..s {
        r = cmul(&r, &r);
    }
    if r.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(Error::Overflow("matrix exponential".into()));
    }
    Ok(r)
}

/// Largest singular value.
pub fn two_norm(a: &DMatrix<Complex64>) -> f64 {
    a.clone()
        .singular_values()
        .iter()
        .cloned()
        .fold(0.0, f64::max)
}
