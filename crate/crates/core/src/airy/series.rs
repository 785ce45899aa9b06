//! Maclaurin expansion of Ai and Ai'.

use super::{AI0, AIP0};
use crate::Complex64;

const MAX_TERMS: usize = 200;

/// Returns `(Ai(z), Ai'(z), sum of term moduli)`.
///
/// The modulus sum bounds the cancellation in the two hypergeometric parts
/// and feeds the error estimate.
pub(crate) fn maclaurin(z: Complex64) -> (Complex64, Complex64, f64) {
    let z3 = z * z * z;

    // Ai = c1 f - c2 g with f = sum a_k z^{3k}, g = sum b_k z^{3k+1}
    let mut f_term = Complex64::new(1.0, 0.0);
    let mut g_term = z;
    let mut fp_term = z * z * 0.5;
    let mut gp_term = Complex64::new(1.0, 0.0);

    let mut f = f_term;
    let mut g = g_term;
    let mut fp = fp_term;
    let mut gp = gp_term;
    let mut magnitude =
        AI0 * f_term.norm() + AIP0 * g_term.norm() + AI0 * fp_term.norm() + AIP0 * gp_term.norm();

    for k in 1..MAX_TERMS {
        let kf = k as f64;
        f_term *= z3 / ((3.0 * kf - 1.0) * (3.0 * kf));
        g_term *= z3 / ((3.0 * kf) * (3.0 * kf + 1.0));
        if k >= 2 {
            fp_term *= z3 / ((3.0 * kf - 1.0) * (3.0 * kf - 3.0));
        }
        gp_term *= z3 / ((3.0 * kf) * (3.0 * kf - 2.0));

        f += f_term;
        g += g_term;
        if k >= 2 {
            fp += fp_term;
        }
        gp += gp_term;

        let tail = AI0 * f_term.norm()
            + AIP0 * g_term.norm()
            + AI0 * fp_term.norm()
            + AIP0 * gp_term.norm();
        magnitude += tail;
        if tail <= 1e-18 * magnitude {
            break;
        }
    }

    let ai = f * AI0 - g * AIP0;
    let aip = fp * AI0 - gp * AIP0;
    (ai, aip, magnitude)
}
