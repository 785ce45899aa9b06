//! The integral `I(alpha, beta) = int_0^inf exp(-alpha t^3 + beta t) dt`
//! against its closed-form upper bound
//! `sqrt(pi) (3 alpha beta)^{-1/4} exp(beta^{3/2} / (3 alpha)^{1/2})`.
//!
//! Everything is carried in log space: the integrand is scaled by its peak
//! value before quadrature.

use crate::error::{Error, Result};
use crate::export::csv_row;
use crate::quadrature::adaptive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

pub const PARAM_MIN: f64 = 1e-3;
pub const PARAM_MAX: f64 = 10.0;
/// Target for `exp(-alpha T^3 / 2)` at the truncation point.
pub const TAIL: f64 = 1e-14;
pub const RTOL: f64 = 1e-13;
const MAX_INTERVALS: usize = 4000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LaplacePair {
    pub alpha: f64,
    pub beta: f64,
    pub log_integral: f64,
    pub log_bound: f64,
}

impl LaplacePair {
    /// `I`, infinite if it overflows.
    pub fn integral(&self) -> f64 {
        self.log_integral.exp()
    }

    pub fn bound(&self) -> f64 {
        self.log_bound.exp()
    }

    /// `log(bound / integral)`; nonnegative when the bound holds.
    pub fn log_margin(&self) -> f64 {
        self.log_bound - self.log_integral
    }

    pub fn holds(&self) -> bool {
        self.log_integral <= self.log_bound
    }
}

pub fn log_bound(alpha: f64, beta: f64) -> f64 {
    0.5 * PI.ln() - 0.25 * (3.0 * beta * alpha).ln() + beta.powf(1.5) / (3.0 * alpha).sqrt()
}

/// Truncation point: the tail target is met and `beta t <= alpha t^3 / 2`
/// beyond it, so the neglected tail is below `TAIL / (3 alpha T^2 / 2)`.
pub fn truncation(alpha: f64, beta: f64) -> f64 {
    let t_tail = (-2.0 * TAIL.ln() / alpha).cbrt();
    let t_dominate = (2.0 * beta / alpha).sqrt();
    t_tail.max(t_dominate)
}

/// `log I` to relative tolerance `rtol`.
pub fn log_integral(alpha: f64, beta: f64, rtol: f64) -> Result<f64> {
    if !(alpha > 0.0 && beta >= 0.0 && alpha.is_finite() && beta.is_finite()) {
        return Err(Error::InvalidInput(format!("alpha = {alpha}, beta = {beta}")));
    }
    let t_star = (beta / (3.0 * alpha)).sqrt();
    let peak = beta * t_star - alpha * t_star.powi(3);
    let t_end = truncation(alpha, beta);
    let f = |t: f64| (beta * t - alpha * t * t * t - peak).exp();
    // split at the peak so both pieces are monotone
    let mut total = 0.0;
    for (a, b) in [(0.0, t_star.min(t_end)), (t_star.min(t_end), t_end)] {
        if b > a {
            total += adaptive(f, a, b, rtol, MAX_INTERVALS)?.value;
        }
    }
    if !(total > 0.0 && total.is_finite()) {
        return Err(Error::Quadrature(format!("integral {total} for alpha = {alpha}, beta = {beta}")));
    }
    Ok(peak + total.ln())
}

pub fn laplace_pair(alpha: f64, beta: f64) -> Result<LaplacePair> {
    for (name, x) in [("alpha", alpha), ("beta", beta)] {
        if !(PARAM_MIN..=PARAM_MAX).contains(&x) {
            return Err(Error::Domain(format!("{name} = {x} outside [{PARAM_MIN}, {PARAM_MAX}]")));
        }
    }
    Ok(LaplacePair {
        alpha,
        beta,
        log_integral: log_integral(alpha, beta, RTOL)?,
        log_bound: log_bound(alpha, beta),
    })
}

pub const OMEGA_MIN: f64 = 5.0;
pub const OMEGA_MAX: f64 = 50.0;

/// `I(1/12, omega) / (omega^{-1/4} e^{(4/3) omega^{3/2}})`.
pub fn laplace_asymptotic_ratio(omega: f64) -> Result<f64> {
    if !(OMEGA_MIN..=OMEGA_MAX).contains(&omega) {
        return Err(Error::Domain(format!("omega = {omega} outside [{OMEGA_MIN}, {OMEGA_MAX}]")));
    }
    let li = log_integral(1.0 / 12.0, omega, RTOL)?;
    let ratio = (li + 0.25 * omega.ln() - 4.0 / 3.0 * omega.powf(1.5)).exp();
    if !ratio.is_finite() {
        return Err(Error::Overflow(format!("ratio at omega = {omega}")));
    }
    Ok(ratio)
}

/// `n` log-spaced values on `[PARAM_MIN, PARAM_MAX]`.
pub fn log_grid(n: usize) -> Vec<f64> {
    let (a, b) = (PARAM_MIN.ln(), PARAM_MAX.ln());
    (0..n)
        .map(|k| match k {
            0 => PARAM_MIN,
            _ if k == n - 1 => PARAM_MAX,
            _ => (a + (b - a) * k as f64 / (n - 1) as f64).exp(),
        })
        .collect()
}

/// The bound on an `n x n` log grid, in row order (alpha outer).
pub fn grid(n: usize) -> Result<Vec<LaplacePair>> {
    let axis = log_grid(n);
    let pairs: Vec<(f64, f64)> = axis
        .iter()
        .flat_map(|&a| axis.iter().map(move |&b| (a, b)))
        .collect();
    pairs.par_iter().map(|&(a, b)| laplace_pair(a, b)).collect()
}

/// Columns alpha, beta, integral, bound, margin with `margin = log(bound/integral)`.
pub fn grid_csv(rows: &[LaplacePair]) -> String {
    let mut out = String::from("alpha,beta,integral,bound,margin\n");
    for r in rows {
        out.push_str(&csv_row(&[r.alpha, r.beta, r.integral(), r.bound(), r.log_margin()]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_at_unit_parameters() {
        let p = laplace_pair(1.0, 1.0).unwrap();
        let direct = PI.sqrt() * 3f64.powf(-0.25) * (1.0 / 3f64.sqrt()).exp();
        assert!((p.bound() - direct).abs() < 1e-14 * direct);
        assert!(p.holds());
    }

    #[test]
    fn integral_matches_closed_forms() {
        // beta -> 0: Gamma(4/3) alpha^{-1/3}
        let gamma_4_3 = 0.892_979_511_569_249_2;
        let li = log_integral(2.0, 0.0, 1e-13).unwrap();
        assert!((li.exp() - gamma_4_3 / 2f64.cbrt()).abs() < 1e-13);
        // alpha = 1, beta = 1 from an independent composite Gauss rule
        let (x, w) = crate::quadrature::composite_rule(0.0, 8.0, 40, 32);
        let direct: f64 = x.iter().zip(&w).map(|(t, w)| w * (t - t * t * t).exp()).sum();
        let li = log_integral(1.0, 1.0, 1e-13).unwrap();
        assert!((li.exp() - direct).abs() < 1e-12 * direct);
    }

    #[test]
    fn section_instance() {
        assert!(laplace_pair(1.0 / 12.0, 2.0).unwrap().holds());
    }

    #[test]
    fn halving_tolerance_is_stable() {
        for (a, b) in [(1e-3, 10.0), (10.0, 1e-3), (0.05, 3.0)] {
            let x = log_integral(a, b, 1e-12).unwrap();
            let y = log_integral(a, b, 5e-13).unwrap();
            assert!((x - y).abs() <= 1e-10, "{a} {b}");
        }
    }

    #[test]
    fn ratio_tends_to_sqrt_two_pi() {
        // Laplace's method gives the constant sqrt(2 pi)
        let r50 = laplace_asymptotic_ratio(50.0).unwrap();
        assert!((r50 - (2.0 * PI).sqrt()).abs() < 5e-3, "{r50}");
        let r30 = laplace_asymptotic_ratio(30.0).unwrap();
        assert!((r30 / r50 - 1.0).abs() <= 0.02);
        let r5 = laplace_asymptotic_ratio(5.0).unwrap();
        assert!((0.5..=2.0).contains(&(r5 / r50)));
    }

    #[test]
    fn grid_spans_the_parameter_box() {
        let g = log_grid(20);
        assert_eq!((g[0], g[19]), (PARAM_MIN, PARAM_MAX));
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(log_grid(1), vec![PARAM_MIN]);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(matches!(laplace_pair(0.0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(laplace_asymptotic_ratio(60.0), Err(Error::Domain(_))));
    }
}
