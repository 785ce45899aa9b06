//! Boundary points where the gradient of the potential is normal.

use super::curve::{dot, BoundaryCurve, Point};
use super::potential::Potential;
use crate::error::{Error, Result};
use crate::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_4;

pub const SCAN_POINTS: usize = 2048;
/// Threshold on `|alpha|` below which a point is degenerate.
pub const NONDEGENERACY_FLOOR: f64 = 1e-10;
const TANGENTIAL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerpPoint {
    pub location: Point,
    pub s_star: f64,
    /// Index of the boundary component carrying the point.
    pub component: usize,
    /// `|grad V|` at the point.
    pub j0: f64,
    /// Sign of the normal derivative of `V`.
    pub normal_sign: f64,
    /// Eigenvalues of the Hessian of `V` restricted to the boundary.
    pub alpha: Vec<f64>,
    pub nondegenerate: bool,
    /// `sum |alpha_j|^{1/2} e^{i pi/4 sign alpha_j}`.
    pub mu1: Complex64,
}

impl PerpPoint {
    /// Ground state energy of the tangential model `-d^2/ds^2 + i (alpha/2) s^2`,
    /// `sum (|alpha_j|/2)^{1/2} e^{i pi/4 sign alpha_j}`.
    pub fn oscillator_mu1(&self) -> Complex64 {
        self.alpha.iter().map(|&a| tangential_root(a / 2.0)).sum()
    }
}

/// `|a|^{1/2} e^{i pi/4 sign a}`, the root of `i a` with positive real part.
pub fn tangential_root(a: f64) -> Complex64 {
    Complex64::from_polar(a.abs().sqrt(), FRAC_PI_4 * a.signum())
}

/// `<grad V(gamma(s)), gamma'(s)>`.
fn tangential<C: BoundaryCurve + ?Sized, V: Potential + ?Sized>(curve: &C, v: &V, s: f64) -> f64 {
    dot(v.gradient(curve.point(s)), curve.tangent(s))
}

/// Second arclength derivative of `s -> V(gamma(s))`.
fn second_derivative<C: BoundaryCurve + ?Sized, V: Potential + ?Sized>(curve: &C, v: &V, s: f64) -> f64 {
    let x = curve.point(s);
    let t = curve.tangent(s);
    let h = v.hessian(x);
    let ht = [h[0][0] * t[0] + h[0][1] * t[1], h[1][0] * t[0] + h[1][1] * t[1]];
    dot(ht, t) + dot(v.gradient(x), curve.acceleration(s))
}

/// Hessian eigenvalues of `V` restricted to the curve at `s_star`; one value
/// in the plane.
pub fn restricted_hessian<C: BoundaryCurve + ?Sized, V: Potential + ?Sized>(
    curve: &C,
    v: &V,
    s_star: f64,
) -> Vec<f64> {
    vec![second_derivative(curve, v, s_star)]
}

fn bisect<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64) -> f64 {
    let mut f_lo = f(lo);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-14 * (1.0 + hi.abs()) {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Golden-section minimum of `|f|` on `[lo, hi]`.
fn minimise_abs<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut a = hi - g * (hi - lo);
    let mut b = lo + g * (hi - lo);
    let (mut fa, mut fb) = (f(a).abs(), f(b).abs());
    for _ in 0..120 {
        if fa < fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - g * (hi - lo);
            fa = f(a).abs();
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + g * (hi - lo);
            fb = f(b).abs();
        }
    }
    if fa < fb {
        (a, fa)
    } else {
        (b, fb)
    }
}

/// All zeros of the tangential derivative on `curve`.
///
/// Sign changes on a uniform scan are bisected and polished by Newton.
/// Zeros of odd multiplicity above one are returned with
/// `nondegenerate = false`; local minima of `|<grad V, gamma'>|` that touch
/// zero without a sign change raise [`Error::DegenerateZero`].
pub fn find_perp_points<C: BoundaryCurve + ?Sized, V: Potential + ?Sized>(
    curve: &C,
    v: &V,
) -> Result<Vec<PerpPoint>> {
    find_on_component(curve, v, 0)
}

pub(crate) fn find_on_component<C: BoundaryCurve + ?Sized, V: Potential + ?Sized>(
    curve: &C,
    v: &V,
    component: usize,
) -> Result<Vec<PerpPoint>> {
    let length = curve.length();
    let ds = length / SCAN_POINTS as f64;
    let f = |s: f64| tangential(curve, v, s);
    let samples: Vec<f64> = (0..SCAN_POINTS).map(|k| f(k as f64 * ds)).collect();
    let mut scale = 0.0f64;
    for k in 0..SCAN_POINTS {
        let g = v.gradient(curve.point(k as f64 * ds));
        let size = dot(g, g).sqrt();
        if size == 0.0 || !size.is_finite() {
            return Err(Error::InvalidInput(format!(
                "gradient vanishes or is not finite at s = {}",
                k as f64 * ds
            )));
        }
        scale = scale.max(size);
    }

    let mut zeros = Vec::new();
    for k in 0..SCAN_POINTS {
        let (a, b) = (samples[k], samples[(k + 1) % SCAN_POINTS]);
        let s0 = k as f64 * ds;
        if a == 0.0 {
            let c = samples[(k + SCAN_POINTS - 1) % SCAN_POINTS];
            if b != 0.0 && c.signum() == b.signum() {
                return Err(Error::DegenerateZero(s0));
            }
            zeros.push(s0);
        } else if b != 0.0 && a.signum() != b.signum() {
            zeros.push(bisect(&f, s0, s0 + ds));
        } else if b != 0.0 {
            let c = samples[(k + SCAN_POINTS - 1) % SCAN_POINTS];
            if a.abs() < b.abs() && a.abs() < c.abs() && c.signum() == a.signum() {
                let (s, m) = minimise_abs(&f, s0 - ds, s0 + ds);
                if m <= TANGENTIAL_TOL * scale {
                    return Err(Error::DegenerateZero(s.rem_euclid(length)));
                }
            }
        }
    }

    let mut points: Vec<PerpPoint> = Vec::with_capacity(zeros.len());
    for s in zeros {
        let mut s = s;
        for _ in 0..8 {
            let d = second_derivative(curve, v, s);
            if d.abs() <= NONDEGENERACY_FLOOR {
                break;
            }
            let step = f(s) / d;
            if step.abs() > ds {
                break;
            }
            s -= step;
            if step.abs() <= 1e-15 * length {
                break;
            }
        }
        let s = s.rem_euclid(length);
        if points
            .iter()
            .any(|p| (p.s_star - s).abs().min(length - (p.s_star - s).abs()) < 1e-8 * length)
        {
            continue;
        }
        if f(s).abs() > TANGENTIAL_TOL * scale {
            return Err(Error::DegenerateZero(s));
        }
        let x = curve.point(s);
        let g = v.gradient(x);
        let alpha = restricted_hessian(curve, v, s);
        let nondegenerate = alpha.iter().all(|a| a.abs() > NONDEGENERACY_FLOOR);
        let mu1 = alpha.iter().map(|&a| tangential_root(a)).sum();
        points.push(PerpPoint {
            location: x,
            s_star: s,
            component,
            j0: dot(g, g).sqrt(),
            normal_sign: dot(g, curve.normal(s)).signum(),
            alpha,
            nondegenerate,
            mu1,
        });
    }
    points.sort_by(|a, b| a.s_star.total_cmp(&b.s_star));
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::super::curve::Circle;
    use super::super::potential::PotentialModel;
    use super::*;

    #[test]
    fn disk_with_linear_potential() {
        let pts = find_perp_points(&Circle::new([0.0, 0.0], 1.0), &PotentialModel::x1()).unwrap();
        assert_eq!(pts.len(), 2);
        let right = &pts[0];
        let left = &pts[1];
        assert!((right.location[0] - 1.0).abs() < 1e-12 && right.location[1].abs() < 1e-12);
        assert!((left.location[0] + 1.0).abs() < 1e-12 && left.location[1].abs() < 1e-12);
        // d^2/ds^2 cos s = -1 at 0, d^2/ds^2 (-cos s) = +1
        assert!((right.alpha[0] + 1.0).abs() < 1e-12);
        assert!((left.alpha[0] - 1.0).abs() < 1e-12);
        assert_eq!(right.normal_sign, 1.0);
        assert_eq!(left.normal_sign, -1.0);
        for p in &pts {
            assert!((p.j0 - 1.0).abs() < 1e-14);
            assert!(p.nondegenerate);
        }
        let expected = Complex64::from_polar(1.0, -FRAC_PI_4);
        assert!((right.mu1 - expected).norm() < 1e-12);
        assert!((right.oscillator_mu1() - expected / 2f64.sqrt()).norm() < 1e-12);
    }

    #[test]
    fn tangential_derivative_vanishes() {
        let v = PotentialModel::Linear { c: [0.3, -1.2] };
        let c = Circle::new([0.5, 0.1], 1.7);
        for p in find_perp_points(&c, &v).unwrap() {
            assert!(tangential(&c, &v, p.s_star).abs() <= 1e-10);
        }
    }

    #[test]
    fn higher_order_zero_is_flagged() {
        // on the unit circle V = cos s + sin^2 s / 2, whose derivative
        // sin s (cos s - 1) has a triple zero at s = 0
        let v = PotentialModel::Quadratic {
            a: [[0.0, 0.0], [0.0, 0.5]],
            b: [1.0, 0.0],
            c0: 0.0,
        };
        let pts = find_perp_points(&Circle::new([0.0, 0.0], 1.0), &v).unwrap();
        let at_zero = pts.iter().find(|p| p.s_star < 1e-3 || p.s_star > 6.28).unwrap();
        assert!(!at_zero.nondegenerate);
    }

    #[test]
    fn touching_zero_is_an_error() {
        // V = |x|^2 + (x_2 - x_1 x_2)/3 restricts to (sin s - sin 2s / 2)/3
        // plus a constant; its derivative has a double zero at s = 0
        let v = PotentialModel::Quadratic {
            a: [[1.0, -1.0 / 6.0], [-1.0 / 6.0, 1.0]],
            b: [0.0, 1.0 / 3.0],
            c0: 0.0,
        };
        let r = find_perp_points(&Circle::new([0.0, 0.0], 1.0), &v);
        assert!(matches!(r, Err(Error::DegenerateZero(_))), "{r:?}");
    }

    #[test]
    fn vanishing_gradient_is_rejected() {
        let v = PotentialModel::Quadratic {
            a: [[1.0, 0.0], [0.0, 1.0]],
            b: [-2.0, 0.0],
            c0: 0.0,
        };
        assert!(find_perp_points(&Circle::new([0.0, 0.0], 1.0), &v).is_err());
    }
}
