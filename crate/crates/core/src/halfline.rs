//! Spectrum of -d^2/dx^2 + i j x on the half-line with Dirichlet, Neumann or
//! Robin (u'(0) = kappa u(0)) conditions.
//!
//! With `c = e^{2 pi i/3}` the unit problem (`j = 1`) has eigenvalues at the
//! zeros of
//!
//! * Dirichlet: `Ai(c lambda)`
//! * Neumann: `Ai'(c lambda)`
//! * Robin(y): `i c Ai'(c lambda) + y Ai(c lambda)`
//!
//! which lie in the upper-right quadrant, `lambda_n(0) = |a'_n| e^{i pi/3}`.
//! The same equations written with `e^{-2 pi i/3}` have their roots at the
//! complex conjugates; see [`conjugate_characteristic`].
//!
//! For general `(j, kappa)`, `lambda(j, kappa) = j^{2/3} lambda(1, kappa j^{-1/3})`.

use crate::airy::{self, omega, omega_bar, real_zero, ZeroKind};
use crate::error::{Error, Result};
use crate::ode::{self, OdeOptions};
use crate::roots::{newton, NewtonOptions};
use crate::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Above this y the Robin branch is seeded from the Dirichlet limit.
pub const LARGE_Y: f64 = 1e3;
pub const MAX_Y: f64 = 1e4;
pub const MAX_BRANCH: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "y", rename_all = "snake_case")]
pub enum BoundaryKind {
    Dirichlet,
    Neumann,
    Robin(f64),
}

/// Boundary condition family without the Robin parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BcTag {
    Dirichlet,
    Neumann,
    Robin,
}

impl BoundaryKind {
    pub fn tag(&self) -> BcTag {
        match self {
            BoundaryKind::Dirichlet => BcTag::Dirichlet,
            BoundaryKind::Neumann => BcTag::Neumann,
            BoundaryKind::Robin(_) => BcTag::Robin,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalfLineProblem {
    pub j: f64,
    pub kappa: f64,
    pub bc: BcTag,
}

impl HalfLineProblem {
    pub fn new(j: f64, kappa: f64, bc: BcTag) -> Result<Self> {
        if !(j > 0.0 && j.is_finite()) {
            return Err(Error::InvalidInput(format!("j = {j} must be positive")));
        }
        if !(kappa >= 0.0 && kappa.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "kappa = {kappa} must be nonnegative"
            )));
        }
        Ok(Self { j, kappa, bc })
    }

    /// Reduced parameter `kappa j^{-1/3}`.
    pub fn reduced(&self) -> f64 {
        self.kappa * self.j.powf(-1.0 / 3.0)
    }

    /// Boundary condition of the equivalent unit problem.
    pub fn unit_bc(&self) -> BoundaryKind {
        match self.bc {
            BcTag::Dirichlet => BoundaryKind::Dirichlet,
            BcTag::Neumann => BoundaryKind::Neumann,
            BcTag::Robin => BoundaryKind::Robin(self.reduced()),
        }
    }
}

fn check_y(y: f64) -> Result<()> {
    if !(y >= 0.0 && y.is_finite()) {
        return Err(Error::InvalidInput(format!("Robin y = {y} must be nonnegative")));
    }
    Ok(())
}

/// Characteristic function of the unit problem and its lambda-derivative.
pub fn characteristic_with_derivative(
    bc: BoundaryKind,
    lambda: Complex64,
) -> Result<(Complex64, Complex64)> {
    let c = omega();
    let w = c * lambda;
    let p = airy::eval_pair(w)?;
    // d/dlambda Ai(c lambda) = c Ai'(w), d/dlambda Ai'(c lambda) = c w Ai(w)
    Ok(match bc {
        BoundaryKind::Dirichlet => (p.ai, c * p.ai_prime),
        BoundaryKind::Neumann => (p.ai_prime, c * w * p.ai),
        BoundaryKind::Robin(y) => {
            check_y(y)?;
            (
                I * c * p.ai_prime + y * p.ai,
                I * lambda * p.ai + y * c * p.ai_prime,
            )
        }
    })
}

pub fn characteristic(bc: BoundaryKind, lambda: Complex64) -> Result<Complex64> {
    characteristic_with_derivative(bc, lambda).map(|(f, _)| f)
}

/// The characteristic written with `e^{-2 pi i/3}`:
/// Dirichlet `Ai(c' mu)`, Neumann `Ai'(c' mu)`,
/// Robin `i c' Ai'(c' mu) - y Ai(c' mu)` with `c' = e^{-2 pi i/3}`.
///
/// It vanishes at `mu = conj(lambda)` for every root `lambda` of
/// [`characteristic`].
pub fn conjugate_characteristic(bc: BoundaryKind, mu: Complex64) -> Result<Complex64> {
    let cb = omega_bar();
    let p = airy::eval_pair(cb * mu)?;
    Ok(match bc {
        BoundaryKind::Dirichlet => p.ai,
        BoundaryKind::Neumann => p.ai_prime,
        BoundaryKind::Robin(y) => {
            check_y(y)?;
            I * cb * p.ai_prime - y * p.ai
        }
    })
}

/// Denominator of the boundary part of the Robin resolvent kernel,
/// `i c Ai'(c lambda) + kappa Ai(c lambda)`. Its zeros are the poles of the
/// resolvent.
pub fn pole_locus(kappa: f64, lambda: Complex64) -> Result<Complex64> {
    let c = omega();
    let p = airy::eval_pair(c * lambda)?;
    Ok(I * c * p.ai_prime + kappa * p.ai)
}

/// `|a'_n| e^{i pi/3}`, the Neumann eigenvalue.
pub fn neumann_value(n: usize) -> Result<Complex64> {
    let a = real_zero(ZeroKind::OfAiPrime, n)?.value;
    Ok(Complex64::from_polar(-a, PI / 3.0))
}

/// `|a_n| e^{i pi/3}`, the Dirichlet eigenvalue.
pub fn dirichlet_value(n: usize) -> Result<Complex64> {
    let a = real_zero(ZeroKind::OfAi, n)?.value;
    Ok(Complex64::from_polar(-a, PI / 3.0))
}

/// Slope of a Robin branch, `i / (lambda + y^2)`.
pub fn robin_slope(y: f64, lambda: Complex64) -> Complex64 {
    I / (lambda + y * y)
}

fn newton_opts(y: f64) -> NewtonOptions {
    NewtonOptions {
        // the y Ai term carries rounding proportional to y
        residual_tol: 1e-12 * (1.0 + y),
        step_tol: 1e-15,
        max_iter: 25,
    }
}

/// Newton polish of a Robin root from `guess`.
pub fn polish_robin(y: f64, guess: Complex64) -> Result<Complex64> {
    let bc = BoundaryKind::Robin(y);
    let f = |z: Complex64| characteristic_with_derivative(bc, z);
    newton(&f, guess, &newton_opts(y)).map(|(z, _)| z)
}

/// Half of the smallest real-part gap between branch `n` and its
/// neighbours at `y = 0`; used as the branch-jump threshold scale.
pub(crate) fn branch_gap(n: usize) -> Result<f64> {
    let here = neumann_value(n)?.re;
    let next = neumann_value(n + 1)?.re;
    let mut gap = next - here;
    if n > 1 {
        gap = gap.min(here - neumann_value(n - 1)?.re);
    }
    Ok(gap)
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_BRANCH {
        return Err(Error::Domain(format!("branch index {n} outside 1..={MAX_BRANCH}")));
    }
    Ok(())
}

fn ode_options(y0: f64, y1: f64) -> OdeOptions {
    OdeOptions {
        rtol: 1e-12,
        atol: 1e-14,
        initial_step: 0.05,
        max_step: if y0.min(y1) > 10.0 { 1.0 } else { 0.5 },
        min_step: 1e-12,
    }
}

/// One predictor-corrector segment: integrate the branch ODE from
/// `(y0, lambda0)` to `y1`, then Newton-polish. On a predictor mismatch the
/// segment is halved, up to `depth` times.
fn advance(y0: f64, lambda0: Complex64, y1: f64, gap: f64, depth: u32) -> Result<Complex64> {
    let predicted = ode::integrate(
        |y, l| Ok(robin_slope(y, l)),
        y0,
        lambda0,
        y1,
        &ode_options(y0, y1),
    )?;
    let polished = polish_robin(y1, predicted);
    match polished {
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

/// Eigenvalue `n` of the unit problem.
pub fn eigenvalue_unit(bc: BoundaryKind, n: usize) -> Result<Complex64> {
    check_n(n)?;
    match bc {
        BoundaryKind::Dirichlet => dirichlet_value(n),
        BoundaryKind::Neumann => neumann_value(n),
        BoundaryKind::Robin(y) => {
            check_y(y)?;
            if y > MAX_Y {
                return Err(Error::Domain(format!("Robin y = {y} > {MAX_Y}")));
            }
            let gap = branch_gap(n)?;
            if y > LARGE_Y {
                let seed = dirichlet_value(n)? - I / y;
                let root = polish_robin(y, seed)?;
                if (root - seed).norm() > 0.1 * gap {
                    return Err(Error::BranchJump(format!(
                        "Dirichlet seed {seed} polished to {root}"
                    )));
                }
                return Ok(root);
            }
            let start = neumann_value(n)?;
            if y == 0.0 {
                return Ok(start);
            }
            advance(0.0, start, y, gap, 10)
        }
    }
}

/// Eigenvalue `n` of the problem with general `(j, kappa)`.
pub fn eigenvalue(problem: &HalfLineProblem, n: usize) -> Result<Complex64> {
    let unit = eigenvalue_unit(problem.unit_bc(), n)?;
    Ok(unit * problem.j.powf(2.0 / 3.0))
}

/// d lambda / d j at fixed kappa.
pub fn dlambda_dj(problem: &HalfLineProblem, n: usize) -> Result<Complex64> {
    let y = problem.reduced();
    let unit = eigenvalue_unit(problem.unit_bc(), n)?;
    let slope = match problem.bc {
        BcTag::Robin => robin_slope(y, unit),
        _ => Complex64::new(0.0, 0.0),
    };
    let y_term = match problem.bc {
        BcTag::Robin => slope * y,
        _ => Complex64::new(0.0, 0.0),
    };
    Ok((unit * 2.0 - y_term) / (3.0 * problem.j.cbrt()))
}

/// A Robin branch sampled on a uniform y-grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub bc: BcTag,
    pub n: usize,
    pub y_grid: Vec<f64>,
    pub lambda: Vec<Complex64>,
    pub dlambda_dy: Vec<Complex64>,
    pub delta: Vec<f64>,
}

impl Trajectory {
    /// CSV with columns y, re_lambda, im_lambda, re_dlambda, im_dlambda, delta.
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

pub fn delta(y: f64, lambda: Complex64, slope: Complex64) -> f64 {
    2.0 - y * slope.re / lambda.re
}

/// Robin branch `n` on `steps + 1` equispaced points of `[0, y_max]`.
pub fn trajectory(n: usize, y_max: f64, steps: usize) -> Result<Trajectory> {
    check_n(n)?;
    if !(y_max > 0.0 && y_max <= MAX_Y) {
        return Err(Error::Domain(format!("y_max = {y_max} outside (0, {MAX_Y}]")));
    }
    if steps < 64 {
        return Err(Error::InvalidInput(format!("steps = {steps} < 64")));
    }
    let gap = branch_gap(n)?;
    let mut y_grid = Vec::with_capacity(steps + 1);
    let mut lambda = Vec::with_capacity(steps + 1);
    let mut current = neumann_value(n)?;
    let mut y_prev = 0.0;
    for k in 0..=steps {
        let y = y_max * k as f64 / steps as f64;
        if k > 0 {
            current = advance(y_prev, current, y, gap, 10)?;
        }
        y_grid.push(y);
        lambda.push(current);
        y_prev = y;
    }
    let dlambda_dy: Vec<Complex64> = y_grid
        .iter()
        .zip(&lambda)
        .map(|(&y, &l)| robin_slope(y, l))
        .collect();
    let delta = y_grid
        .iter()
        .zip(lambda.iter().zip(&dlambda_dy))
        .map(|(&y, (&l, &d))| delta(y, l, d))
        .collect();
    Ok(Trajectory {
        bc: BcTag::Robin,
        n,
        y_grid,
        lambda,
        dlambda_dy,
        delta,
    })
}

/// Maximum over the grid of `y u'/u` with `u = Re lambda`.
pub fn delta_bound_check(traj: &Trajectory) -> f64 {
    traj.max_log_slope()
}

/// `1 / (2 sqrt 2 |a'_1|^{3/2})`, the bound quoted for `max y u'/u`.
pub fn quoted_log_slope_bound() -> Result<f64> {
    let a = real_zero(ZeroKind::OfAiPrime, 1)?.value.abs();
    Ok(1.0 / (2.0 * 2f64.sqrt() * a.powf(1.5)))
}

/// `1 / (2 sqrt 2 u_min^{3/2})` with `u_min = |a'_1|/2`, the bound that
/// follows from `u >= |a'_1|/2`.
pub fn derived_log_slope_bound() -> Result<f64> {
    let a = real_zero(ZeroKind::OfAiPrime, 1)?.value.abs();
    Ok(1.0 / (2.0 * 2f64.sqrt() * (0.5 * a).powf(1.5)))
}
