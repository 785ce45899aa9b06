//! Root polishing and contour zero counting for analytic functions.

use crate::error::{Error, Result};
use crate::Complex64;
use std::f64::consts::PI;

/// An analytic function with its derivative.
pub trait Analytic {
    fn value_and_derivative(&self, z: Complex64) -> Result<(Complex64, Complex64)>;

    fn value(&self, z: Complex64) -> Result<Complex64> {
        self.value_and_derivative(z).map(|(f, _)| f)
    }
}

impl<F> Analytic for F
where
    F: Fn(Complex64) -> Result<(Complex64, Complex64)>,
{
    fn value_and_derivative(&self, z: Complex64) -> Result<(Complex64, Complex64)> {
        self(z)
    }
}

/// Polynomial given by coefficients in increasing degree.
#[derive(Debug, Clone)]
pub struct Polynomial(pub Vec<Complex64>);

impl Polynomial {
    pub fn from_roots(roots: &[Complex64]) -> Self {
        let mut c = vec![Complex64::new(1.0, 0.0)];
        for &r in roots {
            let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
            for (k, &ck) in c.iter().enumerate() {
                next[k + 1] += ck;
                next[k] -= ck * r;
            }
            c = next;
        }
        Polynomial(c)
    }
}

impl Analytic for Polynomial {
    fn value_and_derivative(&self, z: Complex64) -> Result<(Complex64, Complex64)> {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in self.0.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        Ok((p, dp))
    }
}

#[derive(Debug, Clone, Copy)]
pub struct NewtonOptions {
    /// Stop when `|f| <= residual_tol`.
    pub residual_tol: f64,
    /// Or when the step is below `step_tol * (1 + |z|)`.
    pub step_tol: f64,
    pub max_iter: usize,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        Self {
            residual_tol: 1e-12,
            step_tol: 1e-15,
            max_iter: 25,
        }
    }
}

/// Newton iteration from `z0`. Returns the root and its final residual.
pub fn newton<F: Analytic + ?Sized>(
    f: &F,
    z0: Complex64,
    opts: &NewtonOptions,
) -> Result<(Complex64, f64)> {
    let mut z = z0;
    for _ in 0..opts.max_iter {
        let (v, d) = f.value_and_derivative(z)?;
        if v.norm() <= opts.residual_tol {
            return Ok((z, v.norm()));
        }
        if d.norm() == 0.0 {
            return Err(Error::Convergence(format!("zero derivative at {z}")));
        }
        let step = v / d;
        z -= step;
        if step.norm() <= opts.step_tol * (1.0 + z.norm()) {
            let r = f.value(z)?.norm();
            return Ok((z, r));
        }
    }
    let r = f.value(z)?.norm();
    if r <= opts.residual_tol {
        Ok((z, r))
    } else {
        Err(Error::Convergence(format!(
            "Newton stalled at {z} with residual {r:e}"
        )))
    }
}

/// Axis-aligned rectangle in the complex plane.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Rectangle {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Rectangle {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Self {
        Self {
            re_min,
            re_max,
            im_min,
            im_max,
        }
    }

    pub fn contains(&self, z: Complex64) -> bool {
        z.re > self.re_min && z.re < self.re_max && z.im > self.im_min && z.im < self.im_max
    }

    pub fn grown(&self, d: f64) -> Self {
        Self::new(
            self.re_min - d,
            self.re_max + d,
            self.im_min - d,
            self.im_max + d,
        )
    }

    fn corners(&self) -> [Complex64; 5] {
        [
            Complex64::new(self.re_min, self.im_min),
            Complex64::new(self.re_max, self.im_min),
            Complex64::new(self.re_max, self.im_max),
            Complex64::new(self.re_min, self.im_max),
            Complex64::new(self.re_min, self.im_min),
        ]
    }
}

/// Raw winding integral `(1/2 pi i) \oint f'/f` and the smallest Newton
/// distance `|f/f'|` seen on the contour (a first-order estimate of the
/// distance to the nearest zero).
///
/// Each side is split into `per_side` panels and integrated with the
/// trapezoid rule in f'/f.
pub fn winding_integral<F: Analytic + ?Sized>(
    f: &F,
    rect: &Rectangle,
    per_side: usize,
) -> Result<(f64, f64)> {
    let corners = rect.corners();
    let mut total = Complex64::new(0.0, 0.0);
    let mut min_distance = f64::INFINITY;
    for side in 0..4 {
        let (a, b) = (corners[side], corners[side + 1]);
        let dz = (b - a) / per_side as f64;
        let mut prev = None;
        for k in 0..=per_side {
            let z = a + dz * k as f64;
            let (v, d) = f.value_and_derivative(z)?;
            min_distance = min_distance.min(v.norm() / d.norm());
            let g = d / v;
            if let Some(p) = prev {
                total += (g + p) * 0.5 * dz;
            }
            prev = Some(g);
        }
    }
    let winding = total / Complex64::new(0.0, 2.0 * PI);
    Ok((winding.re, min_distance))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn newton_finds_cube_root() {
        let p = Polynomial(vec![
            Complex64::new(-8.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
        ]);
        let (z, r) = newton(&p, Complex64::new(1.5, 0.1), &NewtonOptions::default()).unwrap();
        assert!((z - Complex64::new(2.0, 0.0)).norm() < 1e-12);
        assert!(r <= 1e-12);
    }

    #[test]
    fn from_roots_vanishes_at_roots() {
        let roots = [Complex64::new(1.0, 2.0), Complex64::new(-0.5, 0.3)];
        let p = Polynomial::from_roots(&roots);
        for r in roots {
            assert!(p.value(r).unwrap().norm() < 1e-14);
        }
    }

    #[test]
    fn winding_counts_polynomial_roots() {
        let roots = [
            Complex64::new(0.5, 0.5),
            Complex64::new(-0.3, 0.1),
            Complex64::new(3.0, 0.0),
        ];
        let p = Polynomial::from_roots(&roots);
        let (w, _) = winding_integral(&p, &Rectangle::new(-1.0, 1.0, -1.0, 1.0), 512).unwrap();
        assert!((w - 2.0).abs() < 1e-3);
    }
}
