//! Dense non-Hermitian eigensolver and smallest singular values, both via
//! the complex Schur form `M = Q T Q*`.

use crate::error::{Error, Result};
use crate::Complex64;
use nalgebra::{DMatrix, DVector};

pub struct SchurForm {
    pub q: DMatrix<Complex64>,
    pub t: DMatrix<Complex64>,
}

pub fn schur(m: &DMatrix<Complex64>) -> Result<SchurForm> {
    if m.nrows() != m.ncols() {
        return Err(Error::InvalidInput("matrix is not square".into()));
    }
    let s = nalgebra::Schur::try_new(m.clone(), f64::EPSILON, 0)
        .ok_or_else(|| Error::EigenFailure("Schur iteration did not converge".into()))?;
    let (q, t) = s.unpack();
    Ok(SchurForm { q, t })
}

fn frobenius(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Eigenvector of the triangular factor for diagonal entry `k`.
///
/// Near-zero pivots (repeated eigenvalues, Jordan blocks) are replaced by
/// `eps ||T||`, which steers the vector towards the invariant direction.
fn triangular_eigenvector(t: &DMatrix<Complex64>, k: usize, floor: f64) -> DVector<Complex64> {
    let n = t.nrows();
    let lambda = t[(k, k)];
    let mut y = DVector::<Complex64>::zeros(n);
    y[k] = Complex64::new(1.0, 0.0);
    for i in (0..k).rev() {
        let mut s = Complex64::new(0.0, 0.0);
        for l in i + 1..=k {
            s += t[(i, l)] * y[l];
        }
        let mut den = t[(i, i)] - lambda;
        if den.norm() < floor {
            den = Complex64::new(floor, 0.0);
        }
        y[i] = -s / den;
        let size = y[i].norm();
        if size > 1e100 {
            y.scale_mut(1.0 / size);
        }
    }
    let norm = y.norm();
    y.unscale(norm)
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SpectrumResult {
    /// Sorted by ascending real part.
    pub eigenvalues: Vec<Complex64>,
    /// `||M v - lambda v|| / ||M||_F` with `||v|| = 1`.
    pub residuals: Vec<f64>,
}

/// Largest residual accepted by [`eigensolve`].
pub const RESIDUAL_CONTRACT: f64 = 1e-9;

pub fn eigensolve(m: &DMatrix<Complex64>) -> Result<SpectrumResult> {
    let n = m.nrows();
    if n > 1024 {
        return Err(Error::InvalidInput(format!("dimension {n} > 1024")));
    }
    let form = schur(m)?;
    let scale = frobenius(m).max(f64::MIN_POSITIVE);
    let floor = f64::EPSILON * frobenius(&form.t).max(f64::MIN_POSITIVE);
    let mut pairs: Vec<(Complex64, f64)> = (0..n)
        .map(|k| {
            let lambda = form.t[(k, k)];
            let v = &form.q * triangular_eigenvector(&form.t, k, floor);
            let r = (m * &v - &v * lambda).norm() / scale;
            (lambda, r)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
    if let Some(&(l, r)) = pairs.iter().find(|p| !(p.1 <= RESIDUAL_CONTRACT)) {
        return Err(Error::EigenFailure(format!(
            "residual {r:e} for eigenvalue {l}"
        )));
    }
    Ok(SpectrumResult {
        eigenvalues: pairs.iter().map(|p| p.0).collect(),
        residuals: pairs.iter().map(|p| p.1).collect(),
    })
}

impl SchurForm {
    /// Smallest singular value of `M - z I` by inverse iteration on
    /// `(T - z)^* (T - z)`.
    pub fn sigma_min(&self, z: Complex64) -> f64 {
        let n = self.t.nrows();
        let mut x = DVector::<Complex64>::from_fn(n, |i, _| {
            // fixed, non-symmetric start vector
            Complex64::new(1.0 + (i as f64 * 0.618).sin(), 0.3 * (i as f64 * 1.7).cos())
        });
        let nx = x.norm();
        x.unscale_mut(nx);
        let mut estimate = f64::INFINITY;
        for _ in 0..300 {
            let w = self.solve_upper(z, &x);
            let u = self.solve_upper_adjoint(z, &w);
            let size = u.norm();
            if !(size.is_finite()) || size == 0.0 {
                return 0.0;
            }
            let next = 1.0 / size.sqrt();
            x = u.unscale(size);
            if (estimate - next).abs() <= 1e-12 * next {
                return next;
            }
            estimate = next;
        }
        estimate
    }

    /// Solves `(T - z) w = b`.
    fn solve_upper(&self, z: Complex64, b: &DVector<Complex64>) -> DVector<Complex64> {
        let n = self.t.nrows();
        let mut w = b.clone();
        for i in (0..n).rev() {
            let mut s = w[i];
            for l in i + 1..n {
                s -= self.t[(i, l)] * w[l];
            }
            w[i] = s / (self.t[(i, i)] - z);
        }
        w
    }

    /// Solves `(T - z)^* u = b`.
    fn solve_upper_adjoint(&self, z: Complex64, b: &DVector<Complex64>) -> DVector<Complex64> {
        let n = self.t.nrows();
        let mut u = b.clone();
        for i in 0..n {
            let mut s = u[i];
            for l in 0..i {
                s -= self.t[(l, i)].conj() * u[l];
            }
            u[i] = s / (self.t[(i, i)] - z).conj();
        }
        u
    }
}

/// Smallest singular value of `M - z I` from a full SVD.
pub fn sigma_min_dense(m: &DMatrix<Complex64>, z: Complex64) -> f64 {
    let n = m.nrows();
    let shifted = m - DMatrix::<Complex64>::identity(n, n) * z;
    shifted
        .singular_values()
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal() {
        let m = DMatrix::from_row_slice(2, 2, &[c(3.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 2.0)]);
        let s = eigensolve(&m).unwrap();
        assert_eq!(s.eigenvalues.len(), 2);
        assert!((s.eigenvalues[0] - c(-1.0, 2.0)).norm() < 1e-15);
        assert!((s.eigenvalues[1] - c(3.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn jordan_block() {
        let m = DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let s = eigensolve(&m).unwrap();
        for (l, r) in s.eigenvalues.iter().zip(&s.residuals) {
            assert!(l.norm() < 1e-15);
            assert!(*r <= RESIDUAL_CONTRACT);
        }
    }

    #[test]
    fn sigma_min_matches_svd() {
        let n = 12;
        let m = DMatrix::from_fn(n, n, |i, j| {
            let d = if i == j { (i * i) as f64 } else { 0.0 };
            c(d + 0.1 * ((i + 2 * j) as f64).sin(), (i as f64 - j as f64) * 0.3)
        });
        let form = schur(&m).unwrap();
        for z in [c(-1.0, 0.0), c(2.5, 3.0), c(10.0, -1.0)] {
            let a = form.sigma_min(z);
            let b = sigma_min_dense(&m, z);
            assert!((a - b).abs() <= 1e-9 * b.max(1e-3), "{z}: {a} vs {b}");
        }
    }
}
