//! Order-fixed summation. Every parallel reduction in the crate collects
//! per-item or per-chunk values in index order and folds them here, so
//! results do not depend on the worker count.

use num_complex::Complex64;
use rayon::prelude::*;

/// Neumaier compensated accumulator.
#[derive(Clone, Copy, Debug, Default)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

const LEAF: usize = 32;

/// Pairwise sum with Neumaier-compensated leaves.
pub fn pairwise_sum(v: &[f64]) -> f64 {
    if v.len() <= LEAF {
        let mut acc = Neumaier::default();
        for &x in v {
            acc.add(x);
        }
        return acc.value();
    }
    let mid = v.len() / 2;
    pairwise_sum(&v[..mid]) + pairwise_sum(&v[mid..])
}

pub fn pairwise_sum_complex(v: &[Complex64]) -> Complex64 {
    if v.len() <= LEAF {
        let mut re = Neumaier::default();
        let mut im = Neumaier::default();
        for z in v {
            re.add(z.re);
            im.add(z.im);
        }
        return Complex64::new(re.value(), im.value());
    }
    let mid = v.len() / 2;
    pairwise_sum_complex(&v[..mid]) + pairwise_sum_complex(&v[mid..])
}

/// Chunk size for parallel maps over index ranges.
pub const CHUNK: usize = 1024;

/// `sum_{i < n} f(i)` computed in parallel with a fixed reduction tree.
pub fn par_sum<F>(n: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    let parts: Vec<f64> = (0..n.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let lo = c * CHUNK;
            let hi = (lo + CHUNK).min(n);
            let vals: Vec<f64> = (lo..hi).map(&f).collect();
            pairwise_sum(&vals)
        })
        .collect();
    pairwise_sum(&parts)
}

/// Complex analogue of [`par_sum`].
pub fn par_sum_complex<F>(n: usize, f: F) -> Complex64
where
    F: Fn(usize) -> Complex64 + Sync,
{
    let parts: Vec<Complex64> = (0..n.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let lo = c * CHUNK;
            let hi = (lo + CHUNK).min(n);
            let vals: Vec<Complex64> = (lo..hi).map(&f).collect();
            pairwise_sum_complex(&vals)
        })
        .collect();
    pairwise_sum_complex(&parts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut v = vec![1e16, 1.0, -1e16];
        v.extend(std::iter::repeat_n(1e-3, 1000));
        assert!((pairwise_sum(&v) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn par_sum_is_pool_independent() {
        let f = |i: usize| ((i as f64) * 0.37).sin() / (1.0 + i as f64);
        let run = |t: usize| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .unwrap()
                .install(|| par_sum(100_000, f))
        };
        let a = run(1);
        assert_eq!(a.to_bits(), run(3).to_bits());
        assert_eq!(a.to_bits(), run(8).to_bits());
    }
}
