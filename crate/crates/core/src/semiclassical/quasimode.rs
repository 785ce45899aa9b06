//! Boundary quasimodes `(Lambda(h), U_h)` of `-h^2 Delta + i V` near a perp
//! point, and the finite-difference residual `||(A_h - Lambda) U_h||`.
//!
//! In boundary coordinates `(s, rho)` with `s = h^{1/2} sigma` along the
//! boundary and `rho = h^{2/3} tau` across it,
//!
//! ```text
//! U_h = chi_h(|x - x0|) w(j0^{1/3} tau) exp(-m sigma^2 / 2)
//! Lambda = i V(x0) + h^{2/3} j0^{2/3} lambda_1(kappa j0^{-1/3}) + h m
//! ```
//!
//! where `w` is the leftmost eigenfunction of the boundary model, `m` the
//! ground state energy of `-d^2/dsigma^2 + i (alpha/2) sigma^2` and `chi_h` a
//! smooth cutoff equal to 1 below `h^gamma` and 0 above `2 h^gamma`. Where `V`
//! decreases into the domain the model is the complex conjugate one and
//! `lambda_1`, `w` are conjugated.
//!
//! The residual is evaluated for disks and annuli only, where `(r, phi)`
//! polar coordinates are boundary coordinates and the Laplacian is exact.

use super::curve::{dot, BoundaryCurve, Domain, Role};
use super::margin::Model;
use super::perp::PerpPoint;
use super::potential::Potential;
use crate::airy::{self, omega, omega_bar};
use crate::error::{Error, Result};
use crate::export::csv_row;
use crate::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Tangential Gaussian of the quasimode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tangential {
    /// `m = (|alpha|/2)^{1/2} e^{i pi/4 sign alpha}`, the exact ground state
    /// of the harmonic approximation `V = V(x0) + alpha s^2 / 2`.
    Oscillator,
    /// `m = |alpha|^{1/2} e^{i pi/4 sign alpha}` ([`PerpPoint::mu1`]).
    Quoted,
}

impl Tangential {
    fn coefficient(self, point: &PerpPoint) -> Complex64 {
        match self {
            Tangential::Oscillator => point.oscillator_mu1(),
            Tangential::Quoted => point.mu1,
        }
    }
}

pub const MAX_H: f64 = 0.5;

fn check_h(h: f64) -> Result<()> {
    if !(h > 0.0 && h <= MAX_H) {
        return Err(Error::InvalidInput(format!("h = {h} outside (0, {MAX_H}]")));
    }
    Ok(())
}

/// Whether the model eigenvalue enters conjugated at `point`.
fn conjugated(point: &PerpPoint, model: Model) -> bool {
    model != Model::Transmission && point.normal_sign > 0.0
}

/// Leftmost eigenvalue of the unit boundary model at reduced coupling
/// `kappa j0^{-1/3}`, conjugated where the model is.
fn unit_eigenvalue(point: &PerpPoint, model: Model, kappa: f64) -> Result<Complex64> {
    let l = model.eigenvalue(1.0, kappa * point.j0.powf(-1.0 / 3.0))?;
    Ok(if conjugated(point, model) { l.conj() } else { l })
}

/// `Lambda(h)` with the oscillator tangential term.
pub fn quasimode_value<V: Potential + ?Sized>(
    point: &PerpPoint,
    v: &V,
    model: Model,
    kappa: f64,
    h: f64,
) -> Result<Complex64> {
    quasimode_value_with(point, v, model, kappa, h, Tangential::Oscillator)
}

pub fn quasimode_value_with<V: Potential + ?Sized>(
    point: &PerpPoint,
    v: &V,
    model: Model,
    kappa: f64,
    h: f64,
    tangential: Tangential,
) -> Result<Complex64> {
    check_h(h)?;
    if !point.nondegenerate {
        return Err(Error::Nondegeneracy);
    }
    let lambda = unit_eigenvalue(point, model, kappa)?;
    Ok(Complex64::new(0.0, v.value(point.location))
        + lambda * (h.powf(2.0 / 3.0) * point.j0.powf(2.0 / 3.0))
        + tangential.coefficient(point) * h)
}

/// Normal profile `w(t)` of the unit boundary model, `t = j0^{1/3} rho`.
///
/// Half-line models: `w = Ai(c lambda + e^{i pi/6} t)`, conjugated if
/// requested. Transmission: `w = A+ Ai(c lambda + e^{i pi/6} t)` for `t > 0`
/// and `A- Ai(c' lambda + e^{-i pi/6} |t|)` for `t < 0` with
/// `A+ = -e^{-i pi/6} Ai'(c' lambda)`, `A- = e^{i pi/6} Ai'(c lambda)`,
/// which makes `w'` continuous at 0.
#[derive(Debug, Clone, Copy)]
pub struct NormalProfile {
    pub lambda: Complex64,
    pub transmission: bool,
    pub conjugate: bool,
    plus: Complex64,
    minus: Complex64,
}

impl NormalProfile {
    pub fn new(lambda: Complex64, transmission: bool, conjugate: bool) -> Result<Self> {
        let rot = Complex64::from_polar(1.0, PI / 6.0);
        let (plus, minus) = if transmission {
            let p = airy::eval_pair(omega() * lambda)?;
            let m = airy::eval_pair(omega_bar() * lambda)?;
            (-rot.conj() * m.ai_prime, rot * p.ai_prime)
        } else {
            (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
        };
        Ok(Self {
            lambda,
            transmission,
            conjugate,
            plus,
            minus,
        })
    }

    /// `(w, w')` on the side `t >= 0` (`positive`) or `t <= 0`; `t` is the
    /// signed coordinate.
    pub fn eval(&self, t: f64, positive: bool) -> Result<(Complex64, Complex64)> {
        let rot = Complex64::from_polar(1.0, PI / 6.0);
        let (w, dw) = if positive {
            let p = airy::eval_pair(omega() * self.lambda + rot * t)?;
            (self.plus * p.ai, self.plus * rot * p.ai_prime)
        } else if self.transmission {
            let m = airy::eval_pair(omega_bar() * self.lambda - rot.conj() * t)?;
            (self.minus * m.ai, -self.minus * rot.conj() * m.ai_prime)
        } else {
            return Err(Error::InvalidInput("half-line profile has no t < 0 side".into()));
        };
        Ok(if self.conjugate { (w.conj(), dw.conj()) } else { (w, dw) })
    }
}

/// `C^infinity` step: 1 on `[0, 1]`, 0 on `[2, inf)`, slope at most 2.
pub fn cutoff(x: f64) -> f64 {
    let f = |t: f64| if t > 0.0 { (-1.0 / t).exp() } else { 0.0 };
    let (a, b) = (f(2.0 - x), f(x - 1.0));
    a / (a + b)
}

/// Grid resolution in units of the boundary-layer scales.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    /// Radial points per normal length `h^{2/3} j0^{-1/3}`.
    pub radial_per_layer: usize,
    /// Tangential points per `h^{1/2}`.
    pub tangential_per_width: usize,
}

pub const MIN_LAYER_POINTS: usize = 12;

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            radial_per_layer: 24,
            tangential_per_width: 12,
        }
    }
}

impl GridSpec {
    pub fn refined(self) -> Self {
        Self {
            radial_per_layer: 2 * self.radial_per_layer,
            tangential_per_width: 2 * self.tangential_per_width,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuasimodeOptions {
    /// Cutoff exponent in (0, 1/2).
    pub gamma: f64,
    pub tangential: Tangential,
    /// Added to `Lambda` as `lambda_shift * h`; zero for the true quasimode.
    pub lambda_shift: f64,
    /// Apply the cutoff `chi_h`. Without it the grid covers the whole
    /// boundary collar and the residual measures the expansion alone.
    pub truncate: bool,
}

impl Default for QuasimodeOptions {
    fn default() -> Self {
        Self {
            gamma: 0.4,
            tangential: Tangential::Oscillator,
            lambda_shift: 0.0,
            truncate: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuasimodeReport {
    pub h_list: Vec<f64>,
    #[serde(rename = "Lambda_values")]
    pub lambda_values: Vec<Complex64>,
    /// `||(A_h - Lambda) U|| / ||U||`.
    pub residual_norms: Vec<f64>,
    pub fitted_slope: f64,
    pub gamma: f64,
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

impl QuasimodeReport {
    /// Columns h, residual, slope of the fit through the rows so far.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("h,re_lambda,im_lambda,residual,running_slope\n");
        for k in 0..self.h_list.len() {
            let slope = if k == 0 {
                f64::NAN
            } else {
                log_slope(&self.h_list[..=k], &self.residual_norms[..=k])
            };
            out.push_str(&csv_row(&[
                self.h_list[k],
                self.lambda_values[k].re,
                self.lambda_values[k].im,
                self.residual_norms[k],
                slope,
            ]));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).unwrap_or(serde_json::Value::Null)
    }
}

/// One side of the boundary: `r = radius + dir q`, `q >= 0`, and the model
/// coordinate `t = tsign j0^{1/3} q / h^{2/3}`.
struct Side {
    dir: f64,
    tsign: f64,
}

/// Polar sample of the quasimode on one side of the boundary circle.
struct SideGrid {
    r: Vec<f64>,
    phi: Vec<f64>,
    /// Row-major, `u[i * phi.len() + k]` at `(r[i], phi[k])`.
    u: Vec<Complex64>,
}

struct Setup<'a, V: Potential + ?Sized> {
    v: &'a V,
    center: [f64; 2],
    radius: f64,
    phi0: f64,
    j0: f64,
    m: Complex64,
    profile: NormalProfile,
    sides: Vec<Side>,
    gamma: f64,
    /// Collar width used when the cutoff is off.
    collar: Option<f64>,
}

impl<V: Potential + ?Sized> Setup<'_, V> {
    fn sample(&self, side: &Side, h: f64, grid: &GridSpec) -> Result<SideGrid> {
        let layer = h.powf(2.0 / 3.0) * self.j0.powf(-1.0 / 3.0);
        let dq = layer / grid.radial_per_layer as f64;
        let ds = h.sqrt() / grid.tangential_per_width as f64;
        let dphi = ds / self.radius;
        let (rows, half) = match self.collar {
            Some(width) => ((width / dq).floor() as usize, (PI / dphi).floor() as usize - 1),
            None => {
                let reach = 2.0 * h.powf(self.gamma);
                (
                    (reach / dq).ceil() as usize + 2,
                    ((reach / self.radius).min(1.0).asin() / dphi).ceil() as usize + 2,
                )
            }
        };

        let r: Vec<f64> = (0..=rows).map(|i| self.radius + side.dir * i as f64 * dq).collect();
        let phi: Vec<f64> = (0..=2 * half)
            .map(|k| self.phi0 + (k as f64 - half as f64) * dphi)
            .collect();
        let scale_t = self.j0.cbrt() / h.powf(2.0 / 3.0);
        let positive = side.tsign > 0.0;
        let normal: Vec<Complex64> = (0..=rows)
            .map(|i| {
                let t = side.tsign * scale_t * i as f64 * dq;
                self.profile.eval(t, positive).map(|p| p.0)
            })
            .collect::<Result<_>>()?;
        let along: Vec<Complex64> = phi
            .iter()
            .map(|&p| {
                let sigma2 = (self.radius * (p - self.phi0)).powi(2) / h;
                (-self.m * sigma2 * 0.5).exp()
            })
            .collect();
        let x0 = [
            self.center[0] + self.radius * self.phi0.cos(),
            self.center[1] + self.radius * self.phi0.sin(),
        ];
        let cut_scale = h.powf(-self.gamma);
        let mut u = Vec::with_capacity(r.len() * phi.len());
        for (i, &ri) in r.iter().enumerate() {
            for (k, &pk) in phi.iter().enumerate() {
                let x = [self.center[0] + ri * pk.cos(), self.center[1] + ri * pk.sin()];
                let d = ((x[0] - x0[0]).powi(2) + (x[1] - x0[1]).powi(2)).sqrt();
                let chi = if self.collar.is_some() { 1.0 } else { cutoff(d * cut_scale) };
                u.push(normal[i] * along[k] * chi);
            }
        }
        Ok(SideGrid { r, phi, u })
    }

    /// Squared residual and squared norm on one side.
    fn side_sums(&self, g: &SideGrid, h: f64, lambda: Complex64) -> (f64, f64) {
        let nphi = g.phi.len();
        let dr = (g.r[1] - g.r[0]).abs();
        let dphi = g.phi[1] - g.phi[0];
        let at = |i: usize, k: usize| g.u[i * nphi + k];
        let h2 = h * h;
        let mut res = 0.0;
        let mut norm = 0.0;
        for i in 0..g.r.len() {
            let w_r = if i == 0 || i + 1 == g.r.len() { 0.5 } else { 1.0 };
            for k in 0..nphi {
                norm += w_r * at(i, k).norm_sqr() * g.r[i] * dr * dphi;
            }
        }
        for i in 1..g.r.len() - 1 {
            let r = g.r[i];
            let span = g.r[i + 1] - g.r[i - 1];
            for k in 1..nphi - 1 {
                let u = at(i, k);
                let u_rr = (at(i + 1, k) - u * 2.0 + at(i - 1, k)) / (dr * dr);
                let u_r = (at(i + 1, k) - at(i - 1, k)) / span;
                let u_pp = (at(i, k + 1) - u * 2.0 + at(i, k - 1)) / (dphi * dphi);
                let lap = u_rr + u_r / r + u_pp / (r * r);
                let x = [
                    self.center[0] + r * g.phi[k].cos(),
                    self.center[1] + r * g.phi[k].sin(),
                ];
                let v = self.v.value(x);
                let out = -lap * h2 + u * Complex64::new(0.0, v) - u * lambda;
                res += out.norm_sqr() * r * dr * dphi;
            }
        }
        (res, norm)
    }
}

/// Relative residual of the quasimode at one `h`.
pub fn residual_norm<V: Potential + ?Sized>(
    domain: &Domain,
    point: &PerpPoint,
    v: &V,
    model: Model,
    kappa: f64,
    h: f64,
    grid: &GridSpec,
    options: &QuasimodeOptions,
) -> Result<(Complex64, f64)> {
    let setup = setup(domain, point, v, model, kappa, grid, options)?;
    let lambda = quasimode_value_with(point, v, model, kappa, h, options.tangential)?
        + Complex64::new(options.lambda_shift * h, 0.0);
    let reach = 2.0 * h.powf(options.gamma);
    if options.truncate && reach >= room(domain) {
        return Err(Error::InvalidInput(format!(
            "cutoff radius {reach} does not fit in the domain"
        )));
    }
    let mut res = 0.0;
    let mut norm = 0.0;
    for side in &setup.sides {
        let g = setup.sample(side, h, grid)?;
        let (r, n) = setup.side_sums(&g, h, lambda);
        res += r;
        norm += n;
    }
    if !(norm > 0.0) {
        return Err(Error::DegenerateScale);
    }
    Ok((lambda, (res / norm).sqrt()))
}

/// Distance available on either side of a boundary circle.
fn room(domain: &Domain) -> f64 {
    match *domain {
        Domain::Disk { radius, .. } => radius,
        Domain::Annulus { inner, outer, .. } => (outer - inner).min(inner),
    }
}

fn setup<'a, V: Potential + ?Sized>(
    domain: &Domain,
    point: &PerpPoint,
    v: &'a V,
    model: Model,
    kappa: f64,
    grid: &GridSpec,
    options: &QuasimodeOptions,
) -> Result<Setup<'a, V>> {
    domain.validate()?;
    if grid.radial_per_layer < MIN_LAYER_POINTS {
        return Err(Error::GridResolution(grid.radial_per_layer));
    }
    if grid.tangential_per_width < 2 {
        return Err(Error::InvalidInput("tangential resolution below 2".into()));
    }
    if !(options.gamma > 0.0 && options.gamma < 0.5) {
        return Err(Error::InvalidInput(format!("gamma = {} outside (0, 1/2)", options.gamma)));
    }
    if !point.nondegenerate {
        return Err(Error::Nondegeneracy);
    }
    let transmission = model == Model::Transmission;
    let components = domain.components(transmission);
    let comp = components
        .get(point.component)
        .ok_or_else(|| Error::InvalidInput(format!("no boundary component {}", point.component)))?;
    if transmission != (comp.role == Role::Interface) {
        return Err(Error::InvalidInput(format!(
            "model {model:?} does not apply on a {:?} component",
            comp.role
        )));
    }
    let curve = comp.curve;
    let x = curve.point(point.s_star);
    if ((x[0] - point.location[0]).powi(2) + (x[1] - point.location[1]).powi(2)).sqrt() > 1e-9 {
        return Err(Error::InvalidInput("point does not lie on its component".into()));
    }
    // +1 when the normal points away from the center
    let outward = dot(curve.normal(point.s_star), [
        x[0] - curve.center[0],
        x[1] - curve.center[1],
    ])
    .signum();
    let sides = if transmission {
        // V increases along normal_sign * normal
        let up = point.normal_sign * outward;
        vec![
            Side { dir: 1.0, tsign: up },
            Side { dir: -1.0, tsign: -up },
        ]
    } else {
        vec![Side {
            dir: -outward,
            tsign: 1.0,
        }]
    };
    let unit = model.eigenvalue(1.0, kappa * point.j0.powf(-1.0 / 3.0))?;
    let profile = NormalProfile::new(unit, transmission, conjugated(point, model))?;
    Ok(Setup {
        v,
        center: curve.center,
        radius: curve.radius,
        phi0: curve.angle(point.s_star),
        j0: point.j0,
        m: options.tangential.coefficient(point),
        profile,
        sides,
        gamma: options.gamma,
        collar: (!options.truncate).then(|| 0.9 * room(domain)),
    })
}

/// Residuals over `h_list` (strictly decreasing, within [0.01, 0.1]) and the
/// log-log slope.
pub fn residual_scaling<V: Potential + Sync + ?Sized>(
    domain: &Domain,
    point: &PerpPoint,
    v: &V,
    model: Model,
    kappa: f64,
    h_list: &[f64],
    grid: &GridSpec,
    options: &QuasimodeOptions,
) -> Result<QuasimodeReport> {
    if h_list.len() < 2 {
        return Err(Error::InvalidInput("need at least two values of h".into()));
    }
    if h_list.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::InvalidInput("h_list must be strictly decreasing".into()));
    }
    if h_list.iter().any(|&h| !(0.01 - 1e-12..=0.1 + 1e-12).contains(&h)) {
        return Err(Error::InvalidInput("h must lie in [0.01, 0.1]".into()));
    }
    let rows: Vec<(Complex64, f64)> = h_list
        .par_iter()
        .map(|&h| residual_norm(domain, point, v, model, kappa, h, grid, options))
        .collect::<Result<_>>()?;
    let lambda_values: Vec<Complex64> = rows.iter().map(|r| r.0).collect();
    let residual_norms: Vec<f64> = rows.iter().map(|r| r.1).collect();
    Ok(QuasimodeReport {
        fitted_slope: log_slope(h_list, &residual_norms),
        h_list: h_list.to_vec(),
        lambda_values,
        residual_norms,
        gamma: options.gamma,
    })
}
