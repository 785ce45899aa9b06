//! Plain-text output helpers shared by the report types.

use crate::Complex64;

/// Formats a float with 17 significant digits, which round-trips exactly.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// One CSV line, newline-terminated.
pub fn csv_row(values: &[f64]) -> String {
    let mut line = values.iter().map(|&v| fmt_f64(v)).collect::<Vec<_>>().join(",");
    line.push('\n');
    line
}

/// CSV for a sampled eigenvalue branch:
/// y, re_lambda, im_lambda, re_dlambda, im_dlambda, delta.
pub fn branch_csv(y: &[f64], lambda: &[Complex64], dlambda: &[Complex64], delta: &[f64]) -> String {
    let mut out = String::from("y,re_lambda,im_lambda,re_dlambda,im_dlambda,delta\n");
    for k in 0..y.len() {
        out.push_str(&csv_row(&[
            y[k],
            lambda[k].re,
            lambda[k].im,
            dlambda[k].re,
            dlambda[k].im,
            delta[k],
        ]));
    }
    out
}
