use num_complex::Complex64;
use rayon::prelude::*;

use super::expsum::e;
use super::SumsError;
use crate::dd::Dd;
use crate::reduce::pairwise_sum_complex;
use crate::scalar::PowerScalar;

/// Largest `M * L` accepted by [`bilinear_sum`].
pub const BILINEAR_LIMIT: u64 = 1_000_000_000;

/// `sum_{M < m <= 2M} sum_{L < l <= 2L} a(m) b(l) e(x m^c l^c)` by direct
/// summation; `a[i]` is `a(M + 1 + i)` and `b` defaults to 1.
pub fn bilinear_sum(
    m: u64,
    l: u64,
    a: &[f64],
    b: Option<&[f64]>,
    c: f64,
    x: f64,
) -> Result<Complex64, SumsError> {
    if m == 0 || l == 0 {
        return Err(SumsError::Malformed("ranges must be non-empty".into()));
    }
    if m.saturating_mul(l) > BILINEAR_LIMIT {
        return Err(SumsError::SizeGuard(format!("M*L = {} exceeds {BILINEAR_LIMIT}", m as u128 * l as u128)));
    }
    if a.len() as u64 != m {
        return Err(SumsError::Malformed(format!("expected {m} coefficients a(m), got {}", a.len())));
    }
    if let Some(b) = b {
        if b.len() as u64 != l {
            return Err(SumsError::Malformed(format!("expected {l} coefficients b(l), got {}", b.len())));
        }
    }
    let lpow: Vec<Dd> = (l + 1..=2 * l).map(|n| Dd::from_u64(n).powf(c)).collect();
    let rows: Vec<Complex64> = (0..m as usize)
        .into_par_iter()
        .map(|i| {
            let mp = Dd::from_u64(m + 1 + i as u64).powf(c);
            let inner: Vec<Complex64> = lpow
                .iter()
                .enumerate()
                .map(|(j, lp)| {
                    let w = b.map_or(1.0, |b| b[j]);
                    e((mp * *lp).phase(x)) * w
                })
                .collect();
            pairwise_sum_complex(&inner) * a[i]
        })
        .collect();
    Ok(pairwise_sum_complex(&rows))
}
