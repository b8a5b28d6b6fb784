use num_complex::Complex64;

use super::SumsError;
use crate::reduce::{pairwise_sum, pairwise_sum_complex};

/// Both sides of the Weyl–van der Corput differencing inequality for
/// `z_m`, `M < m <= 2M` (`z[0]` is `z_{M+1}`):
///
/// `|sum z_m|^2 <= (2 + M/Q) sum_{|q| < Q} (1 - |q|/Q) sum_m z_{m+q} conj(z_{m-q})`
///
/// where the inner sum runs over `m` with both `m + q` and `m - q` in
/// `(M, 2M]`. Returns `(lhs, rhs)`.
pub fn weyl_differencing_check(z: &[Complex64], q: usize) -> Result<(f64, f64), SumsError> {
    if z.is_empty() {
        return Err(SumsError::Malformed("empty coefficient list".into()));
    }
    if q == 0 {
        return Err(SumsError::Malformed("Q must be at least 1".into()));
    }
    let m = z.len();
    let lhs = pairwise_sum_complex(z).norm_sqr();
    let qf = q as f64;
    // Terms for q and -q are conjugate, so only q >= 0 is summed.
    let mut terms = Vec::with_capacity(q);
    for d in 0..q {
        let shift = 2 * d;
        if shift >= m {
            break;
        }
        let inner: Vec<Complex64> = (0..m - shift).map(|i| z[i + shift] * z[i].conj()).collect();
        let c = pairwise_sum_complex(&inner).re;
        let w = 1.0 - d as f64 / qf;
        terms.push(if d == 0 { w * c } else { 2.0 * w * c });
    }
    let rhs = (2.0 + m as f64 / qf) * pairwise_sum(&terms);
    Ok((lhs, rhs))
}
