//! Dormand–Prince 5(4) integrator for a single complex unknown.

use crate::error::{Error, Result};
use crate::Complex64;

#[derive(Debug, Clone, Copy)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    pub initial_step: f64,
    pub max_step: f64,
    pub min_step: f64,
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self {
            rtol: 1e-12,
            atol: 1e-14,
            initial_step: 0.05,
            max_step: 1.0,
            min_step: 1e-12,
        }
    }
}

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const B: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B_HAT: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// Integrates `w' = f(x, w)` from `x0` to `x1` (either direction).
///
/// `f` may fail (for instance when an Airy evaluation leaves its disk);
/// the error is passed through.
pub fn integrate<F>(mut f: F, x0: f64, w0: Complex64, x1: f64, opts: &OdeOptions) -> Result<Complex64>
where
    F: FnMut(f64, Complex64) -> Result<Complex64>,
{
    let span = x1 - x0;
    if span == 0.0 {
        return Ok(w0);
    }
    let dir = span.signum();
    let mut x = x0;
    let mut w = w0;
    let mut h = opts.initial_step.min(span.abs()).min(opts.max_step);
    let mut k = [Complex64::new(0.0, 0.0); 7];
    k[0] = f(x, w)?;

    while (x1 - x) * dir > 0.0 {
        h = h.min((x1 - x).abs());
        let mut stage = w;
        for s in 1..7 {
            stage = w;
            for (a, kk) in A[s].iter().zip(k.iter()).take(s) {
                stage += kk * (a * h * dir);
            }
            k[s] = f(x + C[s] * h * dir, stage)?;
        }
        // last stage is the fifth-order solution (FSAL)
        let w_new = stage;
        let mut err = Complex64::new(0.0, 0.0);
        for s in 0..7 {
            err += k[s] * ((B[s] - B_HAT[s]) * h * dir);
        }
        let scale = opts.atol + opts.rtol * w.norm().max(w_new.norm());
        let ratio = err.norm() / scale;
        if ratio <= 1.0 {
            x += h * dir;
            w = w_new;
            k[0] = k[6];
        }
        let factor = if ratio == 0.0 {
            5.0
        } else {
            (0.9 * ratio.powf(-0.2)).clamp(0.2, 5.0)
        };
        h = (h * factor).min(opts.max_step);
        if h < opts.min_step && (x1 - x).abs() > opts.min_step {
            return Err(Error::StepFailure(x));
        }
    }
    Ok(w)
}
