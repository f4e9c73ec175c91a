//! Floating-point cross-check of the exact PSD decision. A Hermitian Gram
//! matrix `A + iB` embeds as the real symmetric matrix `[[A, -B], [B, A]]`
//! with each eigenvalue doubled, so the smallest eigenvalue of the embedding
//! is the smallest eigenvalue of the Gram matrix. Verdicts inside the dead
//! zone `|lambda_min| <= 1e-6` are withheld. This oracle is an independent
//! bug detector; it is never authoritative.

use crate::hermitian::GramMatrix;
use nalgebra::DMatrix;

/// Dead zone half-width for withholding a float verdict.
pub const DEAD_ZONE: f64 = 1e-6;

fn to_f64(r: &num::BigRational) -> f64 {
    let numer = r.numer();
    let denom = r.denom();
    // split to keep precision reasonable for the moderate values used here
    let nf = numer.to_string().parse::<f64>().unwrap_or(f64::NAN);
    let df = denom.to_string().parse::<f64>().unwrap_or(f64::NAN);
    nf / df
}

/// Smallest eigenvalue of the Gram matrix, in floating point.
pub fn min_eigenvalue(gram: &GramMatrix) -> f64 {
    let m = gram.size();
    if m == 0 {
        return 0.0;
    }
    let mut embed = DMatrix::<f64>::zeros(2 * m, 2 * m);
    for i in 0..m {
        for j in 0..m {
            let v = gram.matrix().get(i, j);
            let re = to_f64(&v.re);
            let im = to_f64(&v.im);
            embed[(i, j)] = re;
            embed[(m + i, m + j)] = re;
            embed[(i, m + j)] = -im;
            embed[(m + i, j)] = im;
        }
    }
    let eigen = embed.symmetric_eigen();
    eigen.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min)
}

/// `Some(true)` for a confident PSD verdict, `Some(false)` for a confident
/// non-PSD verdict, `None` inside the dead zone.
pub fn float_psd_verdict(gram: &GramMatrix) -> Option<bool> {
    let lambda = min_eigenvalue(gram);
    if lambda.abs() <= DEAD_ZONE || !lambda.is_finite() {
        return None;
    }
    Some(lambda > 0.0)
}
