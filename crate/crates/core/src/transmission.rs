//! Spectrum of -d^2/dx^2 + i j x on the whole line with the transmission
//! condition u'(0+) = u'(0-) = kappa (u(0+) - u(0-)).
//!
//! For `j = 1` the eigenvalues are the zeros of
//! `F(y, lambda) = 2 pi Ai'(c lambda) Ai'(c' lambda) + y`,
//! `c = e^{2 pi i/3}`, `c' = e^{-2 pi i/3}`, `y = kappa`. Since
//! `F(y, conj lambda) = conj F(y, lambda)` they come in conjugate pairs;
//! branches are stored as the member with `Im lambda > 0`, labelled by the
//! real part of their start `|a'_n| e^{i pi/3}` at `y = 0`.

use crate::airy::{self, omega, omega_bar};
use crate::error::{Error, Result};
use crate::halfline::{branch_gap, neumann_value};
use crate::ode::{self, OdeOptions};
use crate::roots::{newton, winding_integral, Analytic, NewtonOptions, Rectangle};
use crate::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

pub const MAX_PAIR: usize = 5;
pub const MAX_Y: f64 = 1e3;
/// Smallest acceptable `|dF/dlambda|` at a root.
pub const SIMPLICITY_FLOOR: f64 = 1e-8;
/// Largest accepted distance of the contour integral from an integer.
pub const WINDING_TOLERANCE: f64 = 0.05;
/// Minimum estimated distance between the contour and any zero.
pub const CONTOUR_CLEARANCE: f64 = 1e-3;

const BASE_POINTS: usize = 512;
const MAX_POINTS: usize = 8192;
const NUDGE: f64 = 1e-2;

/// `F(y, lambda)` and `dF/dlambda`.
pub fn char_t_with_derivative(y: f64, lambda: Complex64) -> Result<(Complex64, Complex64)> {
    let (c, cb) = (omega(), omega_bar());
    let p = airy::eval_pair(c * lambda)?;
    let m = airy::eval_pair(cb * lambda)?;
    let f = 2.0 * PI * p.ai_prime * m.ai_prime + y;
    // (Ai')' = z Ai, so d/dlambda Ai'(c lambda) = c^2 lambda Ai(c lambda)
    let df = 2.0 * PI * lambda * (c * c * p.ai * m.ai_prime + cb * cb * p.ai_prime * m.ai);
    Ok((f, df))
}

pub fn char_t(y: f64, lambda: Complex64) -> Result<Complex64> {
    char_t_with_derivative(y, lambda).map(|(f, _)| f)
}

struct CharT(f64);

impl Analytic for CharT {
    fn value_and_derivative(&self, z: Complex64) -> Result<(Complex64, Complex64)> {
        char_t_with_derivative(self.0, z)
    }
}

fn check_y(y: f64) -> Result<()> {
    if !(y >= 0.0 && y.is_finite()) {
        return Err(Error::InvalidInput(format!("y = {y} must be nonnegative")));
    }
    Ok(())
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_PAIR {
        return Err(Error::Domain(format!("pair index {n} outside 1..={MAX_PAIR}")));
    }
    Ok(())
}

/// `|dF/dlambda|` at `lambda`.
pub fn simplicity_check(y: f64, lambda: Complex64) -> Result<f64> {
    char_t_with_derivative(y, lambda).map(|(_, d)| d.norm())
}

/// `|f'(z)|` for any analytic `f`; small values flag a multiple root.
pub fn simplicity_probe<F: Analytic + ?Sized>(f: &F, z: Complex64) -> Result<f64> {
    f.value_and_derivative(z).map(|(_, d)| d.norm())
}

/// Newton polish of a root of `F(y, .)`.
pub fn polish(y: f64, guess: Complex64) -> Result<Complex64> {
    let opts = NewtonOptions {
        residual_tol: 1e-12 + 1e-14 * y,
        step_tol: 1e-15,
        max_iter: 25,
    };
    newton(&CharT(y), guess, &opts).map(|(z, _)| z)
}

fn slope(y: f64, lambda: Complex64) -> Result<Complex64> {
    let (_, df) = char_t_with_derivative(y, lambda)?;
    if df.norm() < SIMPLICITY_FLOOR {
        return Err(Error::Simplicity(df.norm()));
    }
    Ok(-df.inv())
}

fn advance(y0: f64, lambda0: Complex64, y1: f64, gap: f64, depth: u32) -> Result<Complex64> {
    let opts = OdeOptions {
        rtol: 1e-11,
        atol: 1e-13,
        initial_step: 0.05,
        max_step: 1.0,
        min_step: 1e-12,
    };
    let predicted = ode::integrate(slope, y0, lambda0, y1, &opts)?;
    match polish(y1, predicted) {
        Ok(root) if (root - predicted).norm() <= 0.1 * gap => Ok(root),
        other => {
            if depth == 0 {
                return match other {
                    Ok(root) => Err(Error::BranchJump(format!(
                        "at y = {y1}: predictor {predicted}, root {root}"
                    ))),
                    Err(e) => Err(e),
                };
            }
            let mid = 0.5 * (y0 + y1);
            let at_mid = advance(y0, lambda0, mid, gap, depth - 1)?;
            advance(mid, at_mid, y1, gap, depth - 1)
        }
    }
}

/// A transmission branch on a uniform y-grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransmissionBranch {
    pub n: usize,
    pub y_grid: Vec<f64>,
    pub lambda: Vec<Complex64>,
    pub dlambda_dy: Vec<Complex64>,
    pub delta: Vec<f64>,
}

impl TransmissionBranch {
    pub fn to_csv(&self) -> String {
        crate::export::branch_csv(&self.y_grid, &self.lambda, &self.dlambda_dy, &self.delta)
    }

    /// Largest `y Re lambda' / Re lambda` over the grid.
    pub fn max_log_slope(&self) -> f64 {
        self.y_grid
            .iter()
            .zip(self.lambda.iter().zip(&self.dlambda_dy))
            .map(|(&y, (l, d))| y * d.re / l.re)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Branch `n` on `steps + 1` equispaced points of `[0, y_max]`.
pub fn pair_unit(n: usize, y_max: f64, steps: usize) -> Result<TransmissionBranch> {
    check_n(n)?;
    if !(y_max > 0.0 && y_max <= MAX_Y) {
        return Err(Error::Domain(format!("y_max = {y_max} outside (0, {MAX_Y}]")));
    }
    if steps == 0 {
        return Err(Error::InvalidInput("steps must be positive".into()));
    }
    let gap = branch_gap(n)?;
    let mut y_grid = Vec::with_capacity(steps + 1);
    let mut lambda = Vec::with_capacity(steps + 1);
    let mut dlambda_dy = Vec::with_capacity(steps + 1);
    let mut delta = Vec::with_capacity(steps + 1);
    let mut current = neumann_value(n)?;
    let mut y_prev = 0.0;
    for k in 0..=steps {
        let y = y_max * k as f64 / steps as f64;
        if k > 0 {
            current = advance(y_prev, current, y, gap, 10)?;
        }
        let d = slope(y, current)?;
        let mirrored = char_t(y, current.conj())?.norm();
        if mirrored > 1e-10 * (1.0 + y) || current.im <= 0.0 {
            return Err(Error::BranchJump(format!(
                "conjugate of {current} is not a root at y = {y}"
            )));
        }
        y_grid.push(y);
        lambda.push(current);
        dlambda_dy.push(d);
        delta.push(2.0 - y * d.re / current.re);
        y_prev = y;
    }
    Ok(TransmissionBranch {
        n,
        y_grid,
        lambda,
        dlambda_dy,
        delta,
    })
}

/// Branch `n` of the unit problem at a single `y`.
pub fn eigenvalue_unit(y: f64, n: usize) -> Result<Complex64> {
    check_y(y)?;
    check_n(n)?;
    if y > MAX_Y {
        return Err(Error::Domain(format!("y = {y} > {MAX_Y}")));
    }
    let start = neumann_value(n)?;
    if y == 0.0 {
        return Ok(start);
    }
    advance(0.0, start, y, branch_gap(n)?, 10)
}

/// Branch `n` for general `(j, kappa)`; negative `j` gives the conjugate.
pub fn eigenvalue(j: f64, kappa: f64, n: usize) -> Result<Complex64> {
    if j == 0.0 || !j.is_finite() {
        return Err(Error::InvalidInput(format!("j = {j} must be nonzero")));
    }
    let a = j.abs();
    let unit = eigenvalue_unit(kappa * a.powf(-1.0 / 3.0), n)? * a.powf(2.0 / 3.0);
    Ok(if j < 0.0 { unit.conj() } else { unit })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroCountReport {
    pub rectangle: Rectangle,
    pub y: f64,
    pub count: u32,
    pub winding_residual: f64,
}

/// Number of zeros of `F(y, .)` inside `rect` by the argument principle.
///
/// The trapezoid sum starts at 512 points per side and doubles until two
/// successive values agree to the winding tolerance. If the contour passes
/// within [`CONTOUR_CLEARANCE`] of a zero it is grown by 1e-2, at most three
/// times.
pub fn count_zeros(y: f64, rect: Rectangle) -> Result<ZeroCountReport> {
    check_y(y)?;
    let f = CharT(y);
    let mut r = rect;
    for _ in 0..=3 {
        let (mut w, clearance) = winding_integral(&f, &r, BASE_POINTS)?;
        if clearance < CONTOUR_CLEARANCE {
            r = r.grown(NUDGE);
            continue;
        }
        let mut points = BASE_POINTS;
        loop {
            points *= 2;
            let (w2, _) = winding_integral(&f, &r, points)?;
            let settled = (w2 - w).abs() <= 0.1 * WINDING_TOLERANCE;
            w = w2;
            if settled || points >= MAX_POINTS {
                break;
            }
        }
        let rounded = w.round();
        let residual = (w - rounded).abs();
        if residual > WINDING_TOLERANCE || rounded < 0.0 {
            return Err(Error::Convergence(format!(
                "winding integral {w} not near an integer"
            )));
        }
        return Ok(ZeroCountReport {
            rectangle: r,
            y,
            count: rounded as u32,
            winding_residual: residual,
        });
    }
    Err(Error::ContourOnZero(3))
}

/// Relative defect of the transmission condition for the explicit solution
/// built from `lambda`.
///
/// The pieces are written for the reflected operator `-d^2/dx^2 - i x`,
/// whose eigenvalue is `mu = conj(lambda)`:
/// `u+ = C+ Ai(c' mu + e^{-i pi/6} x)` for `x > 0` and
/// `u- = C- Ai(c mu + e^{i pi/6} |x|)` for `x < 0`, with `C+-` chosen so
/// that `u'(0+) = u'(0-)`.
pub fn eigenfunction_defect(y: f64, lambda: Complex64) -> Result<f64> {
    check_y(y)?;
    let (c, cb) = (omega(), omega_bar());
    let mu = lambda.conj();
    let plus = airy::eval_pair(cb * mu)?;
    let minus = airy::eval_pair(c * mu)?;
    let rot = Complex64::from_polar(1.0, PI / 6.0);
    // derivatives at 0 of the unscaled pieces
    let d_plus = rot.conj() * plus.ai_prime;
    let d_minus = -rot * minus.ai_prime;
    // C+ = d-, C- = d+ makes both one-sided derivatives equal to d+ d-
    let du = d_plus * d_minus;
    let u_plus = d_minus * plus.ai;
    let u_minus = d_plus * minus.ai;
    // at y = 0 the root makes du vanish, so the values set the scale
    let scale = du.norm() + (1.0 + y) * (u_plus.norm() + u_minus.norm());
    if scale == 0.0 {
        return Err(Error::DegenerateScale);
    }
    Ok((du - y * (u_plus - u_minus)).norm() / scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::Polynomial;

    fn start(n: usize) -> Complex64 {
        neumann_value(n).unwrap()
    }

    #[test]
    fn roots_at_zero_coupling() {
        let l = start(1);
        assert!(char_t(0.0, l).unwrap().norm() <= 1e-11);
        assert!(char_t(0.0, l.conj()).unwrap().norm() <= 1e-11);
    }

    #[test]
    fn real_axis_is_real() {
        for k in 0..50 {
            let t = -3.0 + 0.13 * k as f64;
            let v = char_t(1.7, Complex64::new(t, 0.0)).unwrap() - 1.7;
            assert!(v.im.abs() <= 1e-14 * (1.0 + v.re.abs()));
            assert!(v.re >= 0.0);
        }
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        let z = Complex64::new(0.9, 0.4);
        let h = 1e-6;
        let (_, d) = char_t_with_derivative(2.0, z).unwrap();
        let fd = (char_t(2.0, z + h).unwrap() - char_t(2.0, z - h).unwrap()) / (2.0 * h);
        assert!((d - fd).norm() < 1e-8);
    }

    #[test]
    fn branch_start_and_delta() {
        let b = pair_unit(1, 1.0, 16).unwrap();
        assert!((b.lambda[0] - start(1)).norm() <= 1e-10);
        assert_eq!(b.delta[0], 2.0);
    }

    #[test]
    fn simplicity_at_start_and_along() {
        assert!(simplicity_check(0.0, start(1)).unwrap() > 1e-2);
        let l = eigenvalue_unit(1.0, 1).unwrap();
        assert!(simplicity_check(1.0, l).unwrap() > SIMPLICITY_FLOOR);
    }

    #[test]
    fn simplicity_probe_flags_only_collisions() {
        let a = Complex64::new(0.3, 0.2);
        let b = Complex64::new(0.3 + 1e-9, 0.2);
        let p = Polynomial::from_roots(&[a, b]);
        let mid = (a + b) * 0.5;
        assert!(simplicity_probe(&p, mid).unwrap() < 1e-12);
        let far = Polynomial::from_roots(&[a, Complex64::new(1.3, 0.2)]);
        assert!(simplicity_probe(&far, a).unwrap() > 0.5);
    }

    #[test]
    fn counts_at_zero_coupling() {
        let r = count_zeros(0.0, Rectangle::new(0.0, 2.0, -5.0, 5.0)).unwrap();
        assert_eq!(r.count, 4);
        assert!(r.winding_residual <= WINDING_TOLERANCE);
        let r = count_zeros(0.0, Rectangle::new(0.0, 0.4, -5.0, 5.0)).unwrap();
        assert_eq!(r.count, 0);
    }

    #[test]
    fn eigenfunction_defect_on_and_off_root() {
        let l = eigenvalue_unit(1.0, 1).unwrap();
        assert!(eigenfunction_defect(1.0, l).unwrap() <= 1e-8);
        assert!(eigenfunction_defect(1.0, l + 0.1).unwrap() >= 1e-3);
        // decoupled problem: u'(0) = 0 on the side carrying the mode
        let n = neumann_value(2).unwrap();
        assert!(eigenfunction_defect(0.0, n).unwrap() <= 1e-12);
        assert!(eigenfunction_defect(0.0, n + 0.1).unwrap() >= 1e-3);
    }

    #[test]
    fn small_coupling_defect_is_finite() {
        let l = eigenvalue_unit(1e-6, 1).unwrap();
        let d = eigenfunction_defect(1e-6, l).unwrap();
        assert!(d.is_finite() && d <= 1e-6);
    }

    #[test]
    fn negative_current_conjugates() {
        let p = eigenvalue(8.0, 2.0, 1).unwrap();
        let m = eigenvalue(-8.0, 2.0, 1).unwrap();
        assert_eq!(p.conj(), m);
        assert!((p - eigenvalue_unit(1.0, 1).unwrap() * 4.0).norm() < 1e-11);
    }
}
