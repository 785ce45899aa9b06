//! Galerkin discretization of -d^2/dx^2 + i j (x - origin) on [0, L].
//!
//! The basis is the set of eigenfunctions of -d^2/dx^2 with the configured
//! left condition and u(L) = 0, so the Laplacian part is diagonal and the
//! potential gives `X_mn = \int x phi_m phi_n`. The matrix is
//! `diag(k_n^2) + i j (X - origin I)`.

pub mod basis;
pub mod eigen;
pub mod expm;

pub use eigen::{eigensolve, schur, sigma_min_dense, SchurForm, SpectrumResult};

use crate::error::{Error, Result};
use crate::export::{csv_row, fmt_f64};
use crate::quadrature::composite_rule;
use crate::Complex64;
use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

pub type ComplexMatrix = DMatrix<Complex64>;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "kappa", rename_all = "snake_case")]
pub enum LeftBc {
    Dirichlet,
    Neumann,
    /// u'(0) = kappa u(0)
    Robin(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RightBc {
    Dirichlet,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GalerkinConfig {
    pub length: f64,
    pub size: usize,
    pub j: f64,
    pub left: LeftBc,
    pub right: RightBc,
    /// The potential is `i j (x - origin)`.
    pub origin: f64,
}

pub const GAUSS_ORDER: usize = 64;

impl GalerkinConfig {
    pub fn new(length: f64, size: usize, j: f64, left: LeftBc) -> Self {
        Self {
            length,
            size,
            j,
            left,
            right: RightBc::Dirichlet,
            origin: 0.0,
        }
    }

    /// Dirichlet problem on [-half_length, half_length], stored on
    /// [0, 2 half_length] with the potential origin moved to the midpoint.
    pub fn whole_line_surrogate(half_length: f64, size: usize, j: f64) -> Self {
        Self {
            origin: half_length,
            ..Self::new(2.0 * half_length, size, j, LeftBc::Dirichlet)
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.length >= 5.0 && self.length.is_finite()) {
            return Err(Error::InvalidInput(format!("L = {} < 5", self.length)));
        }
        if self.size < 16 || self.size > 1024 {
            return Err(Error::InvalidInput(format!(
                "N = {} outside 16..=1024",
                self.size
            )));
        }
        if !(self.j >= 0.0 && self.j.is_finite()) {
            return Err(Error::InvalidInput(format!("j = {} must be >= 0", self.j)));
        }
        if let LeftBc::Robin(k) = self.left {
            if !(k >= 0.0 && k.is_finite()) {
                return Err(Error::InvalidInput(format!("kappa = {k} must be >= 0")));
            }
        }
        Ok(())
    }
}

/// Basis frequencies `k_1 < ... < k_N`.
pub fn frequencies(config: &GalerkinConfig) -> Result<Vec<f64>> {
    (1..=config.size)
        .map(|n| basis::frequency(config.left, config.length, n))
        .collect()
}

/// Position matrix `X_mn = \int_0^L x phi_m phi_n dx` by composite
/// 64-point Gauss–Legendre with one panel per period of the top frequency.
pub fn position_matrix(config: &GalerkinConfig, k: &[f64]) -> DMatrix<f64> {
    let l = config.length;
    let k_max = k.iter().cloned().fold(0.0, f64::max);
    let panels = ((k_max * l / (2.0 * PI)).ceil() as usize).max(4);
    let (x, w) = composite_rule(0.0, l, panels, GAUSS_ORDER);
    let inv_norm: Vec<f64> = k.iter().map(|&k| basis::norm_squared(k, l).sqrt().recip()).collect();
    let n = k.len();
    let p = x.len();
    let phi = DMatrix::from_fn(n, p, |i, q| (k[i] * (l - x[q])).sin() * inv_norm[i] * w[q].sqrt());
    let weighted = DMatrix::from_fn(n, p, |i, q| phi[(i, q)] * x[q]);
    let mut out = &weighted * phi.transpose();
    // symmetrize away rounding
    for i in 0..n {
        for j in 0..i {
            let s = 0.5 * (out[(i, j)] + out[(j, i)]);
            out[(i, j)] = s;
            out[(j, i)] = s;
        }
    }
    out
}

pub fn assemble(config: &GalerkinConfig) -> Result<ComplexMatrix> {
    config.validate()?;
    let k = frequencies(config)?;
    let x = position_matrix(config, &k);
    let n = config.size;
    let mut m = DMatrix::<Complex64>::from_fn(n, n, |a, b| Complex64::new(0.0, config.j * x[(a, b)]));
    for (a, ka) in k.iter().enumerate() {
        m[(a, a)] += Complex64::new(ka * ka, -config.j * config.origin);
    }
    Ok(m)
}

/// Eigenvalue of least real part.
pub fn leftmost(config: &GalerkinConfig) -> Result<Complex64> {
    let m = assemble(config)?;
    let s = eigensolve(&m)?;
    s.eigenvalues
        .first()
        .copied()
        .ok_or_else(|| Error::EigenFailure("empty spectrum".into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResolventScan {
    pub sup_norm: f64,
    pub argmax_nu: f64,
}

/// Minimum distance between the line `Re z = gamma` and the spectrum.
pub const LINE_CLEARANCE: f64 = 1e-6;

/// `sup_nu ||(M - gamma - i nu)^{-1}||` over `samples` equispaced `nu` in
/// `nu_range`, refined by golden-section search around the three largest
/// samples.
pub fn resolvent_scan(
    matrix: &ComplexMatrix,
    gamma: f64,
    nu_range: (f64, f64),
    samples: usize,
) -> Result<ResolventScan> {
    let form = schur(matrix)?;
    resolvent_scan_schur(&form, gamma, nu_range, samples)
}

pub fn resolvent_scan_schur(
    form: &SchurForm,
    gamma: f64,
    nu_range: (f64, f64),
    samples: usize,
) -> Result<ResolventScan> {
    let (lo, hi) = nu_range;
    if !(hi >= lo) || samples < 2 {
        return Err(Error::InvalidInput("empty nu range".into()));
    }
    let closest = (0..form.t.nrows())
        .map(|k| (form.t[(k, k)].re - gamma).abs())
        .fold(f64::INFINITY, f64::min);
    if closest < LINE_CLEARANCE {
        return Err(Error::NearSpectrum(closest));
    }
    let step = (hi - lo) / (samples - 1) as f64;
    let norm_at = |nu: f64| 1.0 / form.sigma_min(Complex64::new(gamma, nu));
    let values: Vec<f64> = (0..samples)
        .into_par_iter()
        .map(|i| norm_at(lo + step * i as f64))
        .collect();
    let mut order: Vec<usize> = (0..samples).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    let mut best = ResolventScan {
        sup_norm: values[order[0]],
        argmax_nu: lo + step * order[0] as f64,
    };
    for &i in order.iter().take(3) {
        let centre = lo + step * i as f64;
        let (nu, v) = golden_max(&norm_at, (centre - step).max(lo), (centre + step).min(hi));
        if v > best.sup_norm {
            best = ResolventScan {
                sup_norm: v,
                argmax_nu: nu,
            };
        }
    }
    Ok(best)
}

fn golden_max<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64) -> (f64, f64) {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..40 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
        if (b - a).abs() < 1e-10 * (1.0 + a.abs()) {
            break;
        }
    }
    if fc > fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

pub const MAX_SEMIGROUP_TIME: f64 = 10.0;

/// `||exp(-t M)||_2`.
pub fn semigroup_norm(matrix: &ComplexMatrix, t: f64) -> Result<f64> {
    if !(t >= 0.0 && t <= MAX_SEMIGROUP_TIME) {
        return Err(Error::InvalidInput(format!(
            "t = {t} outside [0, {MAX_SEMIGROUP_TIME}]"
        )));
    }
    if t == 0.0 {
        return Ok(1.0);
    }
    let e = expm::expm(&(matrix * Complex64::new(-t, 0.0)))?;
    let norm = expm::two_norm(&e);
    if !norm.is_finite() {
        return Err(Error::Overflow(format!("semigroup norm at t = {t}")));
    }
    Ok(norm)
}

/// `||exp(-t M)||_2` at each of `times`, in input order.
pub fn semigroup_norms(matrix: &ComplexMatrix, times: &[f64]) -> Result<Vec<f64>> {
    times.par_iter().map(|&t| semigroup_norm(matrix, t)).collect()
}

/// Row-major entries as CSV: row, col, re, im.
pub fn matrix_csv(m: &ComplexMatrix) -> String {
    let mut out = String::from("row,col,re,im\n");
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let z = m[(i, j)];
            out.push_str(&format!("{i},{j},{},{}\n", fmt_f64(z.re), fmt_f64(z.im)));
        }
    }
    out
}

impl SpectrumResult {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("re,im,residual\n");
        for (l, r) in self.eigenvalues.iter().zip(&self.residuals) {
            out.push_str(&csv_row(&[l.re, l.im, *r]));
        }
        out
    }

    /// `{"eigenvalues": [[re, im], ...], "residuals": [...]}`
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "eigenvalues": self.eigenvalues.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
            "residuals": self.residuals,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Closed form of X for the Dirichlet–Dirichlet basis, written in
    /// s = L - x where phi_n = sin(k_n s) sqrt(2/L).
    fn x_oracle(l: f64, m: usize, n: usize) -> f64 {
        let a = m as f64 * PI / l;
        let b = n as f64 * PI / l;
        // \int_0^L (L - s) sin(a s) sin(b s) ds, G(w) = \int_0^L (L - s) cos(w s) ds
        let g = |w: f64| {
            if w == 0.0 {
                l * l / 2.0
            } else {
                (1.0 - (w * l).cos()) / (w * w)
            }
        };
        (g(a - b) - g(a + b)) / 2.0 * (2.0 / l)
    }

    #[test]
    fn position_matrix_matches_closed_form() {
        let cfg = GalerkinConfig::new(10.0, 40, 1.0, LeftBc::Dirichlet);
        let k = frequencies(&cfg).unwrap();
        let x = position_matrix(&cfg, &k);
        for m in 0..40 {
            for n in 0..40 {
                assert!(
                    (x[(m, n)] - x_oracle(10.0, m + 1, n + 1)).abs() <= 1e-12,
                    "{m} {n}"
                );
            }
        }
    }

    #[test]
    fn zero_current_gives_laplacian() {
        let cfg = GalerkinConfig::new(10.0, 20, 0.0, LeftBc::Dirichlet);
        let s = eigensolve(&assemble(&cfg).unwrap()).unwrap();
        for (n, l) in s.eigenvalues.iter().enumerate() {
            let exact = ((n + 1) as f64 * PI / 10.0).powi(2);
            assert!((l - exact).norm() < 1e-10);
        }
    }

    #[test]
    fn structure_of_matrix() {
        let cfg = GalerkinConfig::new(8.0, 24, 2.0, LeftBc::Robin(0.7));
        let m = assemble(&cfg).unwrap();
        for a in 0..24 {
            assert!(m[(a, a)].re > 0.0);
            for b in 0..24 {
                assert_eq!(m[(a, b)], m[(b, a)]);
                if a != b {
                    assert_eq!(m[(a, b)].re, 0.0);
                }
            }
        }
    }

    #[test]
    fn surrogate_shift_is_a_phase() {
        let plain = GalerkinConfig::new(16.0, 32, 1.0, LeftBc::Dirichlet);
        let shifted = GalerkinConfig::whole_line_surrogate(8.0, 32, 1.0);
        let a = semigroup_norm(&assemble(&plain).unwrap(), 0.7).unwrap();
        let b = semigroup_norm(&assemble(&shifted).unwrap(), 0.7).unwrap();
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn semigroup_at_zero() {
        let m = assemble(&GalerkinConfig::new(10.0, 16, 1.0, LeftBc::Neumann)).unwrap();
        assert_eq!(semigroup_norm(&m, 0.0).unwrap(), 1.0);
        assert!(semigroup_norm(&m, 11.0).is_err());
    }

    #[test]
    fn resolvent_left_of_numerical_range() {
        let m = assemble(&GalerkinConfig::new(10.0, 32, 1.0, LeftBc::Robin(1.0))).unwrap();
        let r = resolvent_scan(&m, -1.0, (-5.0, 5.0), 64).unwrap();
        assert!(r.sup_norm <= 1.0);
        let r = resolvent_scan(&m, -10.0, (-5.0, 5.0), 64).unwrap();
        assert!(r.sup_norm <= 0.1);
    }

    #[test]
    fn rejects_invalid_configs() {
        assert!(assemble(&GalerkinConfig::new(4.0, 32, 1.0, LeftBc::Dirichlet)).is_err());
        assert!(assemble(&GalerkinConfig::new(10.0, 8, 1.0, LeftBc::Dirichlet)).is_err());
        assert!(assemble(&GalerkinConfig::new(10.0, 32, 1.0, LeftBc::Robin(-1.0))).is_err());
    }
}
