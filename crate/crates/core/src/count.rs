//! Counting `|n1^c + n2^c - n3^c - n4^c| < gamma` over `Y < n_i <= 2Y`,
//! and the harmonic sum of the same differences beyond `1/tau`.
//!
//! Both counters evaluate the predicate on the same double-double pair sums
//! `n1^c + n2^c`, so the fast counter reproduces the naive one exactly,
//! boundary-ambiguous tuples (`||D| - gamma| < delta`) included.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::dd::Dd;
use crate::reduce::Neumaier;
use crate::scalar::PowerScalar;

/// Largest `Y^4` for the naive counter.
pub const NAIVE_LIMIT: u64 = 1_000_000_000;
/// Largest `Y` for pair-sum based algorithms (`Y^2` double-double values).
pub const FAST_MAX_Y: u64 = 8192;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CountError {
    #[error("invalid count parameters: {0}")]
    Invalid(String),
    #[error("size guard: {0}")]
    SizeGuard(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CountSpec {
    #[serde(rename = "Y")]
    pub y: u64,
    pub c: f64,
    pub gamma: f64,
    pub delta: f64,
}

impl CountSpec {
    pub const DEFAULT_DELTA: f64 = 1e-9;

    pub fn new(y: u64, c: f64, gamma: f64) -> Result<Self, CountError> {
        let s = CountSpec {
            y,
            c,
            gamma,
            delta: Self::DEFAULT_DELTA,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn with_delta(mut self, delta: f64) -> Result<Self, CountError> {
        self.delta = delta;
        self.validate()?;
        Ok(self)
    }

    fn validate(&self) -> Result<(), CountError> {
        if self.y < 2 {
            return Err(CountError::Invalid(format!("Y = {} must be at least 2", self.y)));
        }
        if !(self.gamma > 0.0) {
            return Err(CountError::Invalid(format!("gamma = {} must be positive", self.gamma)));
        }
        if !(self.delta >= 0.0) {
            return Err(CountError::Invalid(format!("delta = {} must be non-negative", self.delta)));
        }
        if !(self.c >= 1.0 && self.c < 3.0) {
            return Err(CountError::Invalid(format!("c = {} must lie in [1, 3)", self.c)));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CountResult {
    pub count: u64,
    /// Tuples with `gamma - delta < |D| < gamma + delta`.
    pub ambiguous: u64,
}

struct Window<P> {
    gamma: P,
    below: P,
    above: P,
}

impl<P: PowerScalar> Window<P> {
    fn new(s: &CountSpec) -> Self {
        Window {
            gamma: P::from_f64(s.gamma),
            below: P::from_f64(s.gamma - s.delta),
            above: P::from_f64(s.gamma + s.delta),
        }
    }

    fn inside(&self, d: P) -> bool {
        d < self.gamma
    }

    fn ambiguous(&self, d: P) -> bool {
        d < self.above && !(d <= self.below)
    }
}

fn powers<P: PowerScalar>(s: &CountSpec) -> Vec<P> {
    (s.y + 1..=2 * s.y)
        .into_par_iter()
        .map(|n| P::int_pow(n, s.c))
        .collect()
}

/// Exhaustive count over ordered 4-tuples.
pub fn count_tuples_naive(s: &CountSpec) -> Result<CountResult, CountError> {
    count_tuples_naive_in::<Dd>(s)
}

/// [`count_tuples_naive`] with `n^c` held in `P`.
pub fn count_tuples_naive_in<P: PowerScalar>(s: &CountSpec) -> Result<CountResult, CountError> {
    let y4 = (s.y as u128).pow(4);
    if y4 > NAIVE_LIMIT as u128 {
        return Err(CountError::SizeGuard(format!("Y^4 = {y4} exceeds {NAIVE_LIMIT}")));
    }
    let pw = powers::<P>(s);
    let w = Window::new(s);
    let n = pw.len();
    let rows: Vec<CountResult> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut r = CountResult::default();
            for j in 0..n {
                let s12 = pw[i] + pw[j];
                for k in 0..n {
                    for l in 0..n {
                        let s34 = pw[k] + pw[l];
                        let d = (s12 - s34).abs();
                        r.count += w.inside(d) as u64;
                        r.ambiguous += w.ambiguous(d) as u64;
                    }
                }
            }
            r
        })
        .collect();
    Ok(rows.iter().fold(CountResult::default(), |a, b| CountResult {
        count: a.count + b.count,
        ambiguous: a.ambiguous + b.ambiguous,
    }))
}

fn check_fast(s: &CountSpec) -> Result<(), CountError> {
    if s.y > FAST_MAX_Y {
        return Err(CountError::SizeGuard(format!(
            "Y = {} exceeds {FAST_MAX_Y} (Y^2 pair sums must fit in memory)",
            s.y
        )));
    }
    Ok(())
}

/// All `n1^c + n2^c` over ordered pairs, sorted ascending.
pub fn sorted_pair_sums<P: PowerScalar>(pw: &[P]) -> Vec<P> {
    let mut v: Vec<P> = pw
        .par_iter()
        .flat_map_iter(|&a| pw.iter().map(move |&b| a + b))
        .collect();
    v.par_sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite pair sums"));
    v
}

const BLOCK: usize = 4096;

/// Ordered pairs `(a, b)` of sorted values with `pred(|v_a - v_b|)`, where
/// `pred` is monotone in the distance and `radius` bounds its support.
fn window_pairs<P: PowerScalar>(v: &[P], radius: f64, pred: impl Fn(P) -> bool + Sync) -> u64 {
    let n = v.len();
    if n == 0 || !pred(P::from_f64(0.0)) {
        return 0;
    }
    (0..n.div_ceil(BLOCK))
        .into_par_iter()
        .map(|blk| {
            let start = blk * BLOCK;
            let end = (start + BLOCK).min(n);
            let guard = v[start].to_f64() - radius.abs() * 2.0 - 1.0;
            let mut lo = v.partition_point(|x| x.to_f64() < guard);
            let mut hi = lo;
            let mut total = 0u64;
            for a in start..end {
                let sa = v[a];
                while lo < n && v[lo] < sa && !pred((sa - v[lo]).abs()) {
                    lo += 1;
                }
                if hi < lo {
                    hi = lo;
                }
                while hi < n && pred((sa - v[hi]).abs()) {
                    hi += 1;
                }
                total += (hi - lo) as u64;
            }
            total
        })
        .sum()
}

/// Sort-and-sweep count over ordered pairs of pair sums.
pub fn count_tuples_fast(s: &CountSpec) -> Result<CountResult, CountError> {
    count_tuples_fast_in::<Dd>(s)
}

/// [`count_tuples_fast`] with `n^c` held in `P`.
pub fn count_tuples_fast_in<P: PowerScalar>(s: &CountSpec) -> Result<CountResult, CountError> {
    check_fast(s)?;
    let sums = sorted_pair_sums(&powers::<P>(s));
    let w = Window::new(s);
    let count = window_pairs(&sums, s.gamma, |d| w.inside(d));
    let wide = window_pairs(&sums, s.gamma + s.delta, |d| d < w.above);
    let narrow = window_pairs(&sums, s.gamma, |d| d <= w.below);
    Ok(CountResult {
        count,
        ambiguous: wide - narrow,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalingPoint {
    #[serde(rename = "Y")]
    pub y: u64,
    pub count: u64,
    pub ambiguous: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalingReport {
    pub c: f64,
    pub gamma: f64,
    pub points: Vec<ScalingPoint>,
    /// Least-squares slope of `ln count` against `ln Y`.
    pub slope: f64,
    /// `max(4 - c, 2)`.
    pub predicted: f64,
    pub allowance: f64,
    pub pass: bool,
    /// Set when `gamma >= Y^c` at the smallest `Y`: the window is no longer
    /// thin and every tuple tends to be counted.
    pub out_of_regime: bool,
}

/// Least-squares slope of `ys` against `xs`.
pub fn fit_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Counts along a ladder of `Y` and compares the growth rate with
/// `max(4 - c, 2)` plus 0.15.
pub fn rs_scaling_report(c: f64, gamma: f64, ys: &[u64]) -> Result<ScalingReport, CountError> {
    if ys.len() < 4 {
        return Err(CountError::Invalid("ladder needs at least 4 values".into()));
    }
    let mut points = Vec::with_capacity(ys.len());
    for &y in ys {
        let r = count_tuples_fast(&CountSpec::new(y, c, gamma)?)?;
        points.push(ScalingPoint {
            y,
            count: r.count,
            ambiguous: r.ambiguous,
        });
    }
    let lx: Vec<f64> = ys.iter().map(|&y| (y as f64).ln()).collect();
    let ly: Vec<f64> = points.iter().map(|p| (p.count as f64).ln()).collect();
    let slope = fit_slope(&lx, &ly);
    let predicted = (4.0 - c).max(2.0);
    let allowance = 0.15;
    let ymin = *ys.iter().min().unwrap() as f64;
    Ok(ScalingReport {
        c,
        gamma,
        points,
        slope,
        predicted,
        allowance,
        pass: slope <= predicted + allowance,
        out_of_regime: gamma >= ymin.powf(c),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VBucket {
    /// `ell = 2^k / tau`; the bucket holds `ell < |D| <= 2 ell`.
    pub ell: f64,
    pub value: f64,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VResult {
    pub total: f64,
    pub buckets: Vec<VBucket>,
}

/// `sum 1/|D|` over ordered 4-tuples with `|D| > 1/tau`, split into dyadic
/// buckets. Pair sums are held in `f64`: all differences involved exceed
/// `1/tau`.
pub fn harmonic_v(s: &CountSpec, tau: f64) -> Result<VResult, CountError> {
    check_fast(s)?;
    if !(tau > 0.0) {
        return Err(CountError::Invalid(format!("tau = {tau} must be positive")));
    }
    let sums = sorted_pair_sums(&powers::<f64>(s));
    let inv = 1.0 / tau;
    let n = sums.len();
    const ROWS: usize = 256;
    let parts: Vec<Vec<(Neumaier, u64)>> = (0..n.div_ceil(ROWS))
        .into_par_iter()
        .map(|blk| {
            let mut acc: Vec<(Neumaier, u64)> = Vec::new();
            for a in blk * ROWS..((blk + 1) * ROWS).min(n) {
                let sa = sums[a];
                let first = a + 1 + sums[a + 1..].partition_point(|&x| x - sa <= inv);
                let mut k = 0usize;
                let mut upper = 2.0 * inv;
                for &sb in &sums[first..] {
                    let d = sb - sa;
                    while d > upper {
                        k += 1;
                        upper = inv * 2f64.powi(k as i32 + 1);
                    }
                    if acc.len() <= k {
                        acc.resize(k + 1, (Neumaier::default(), 0));
                    }
                    acc[k].0.add(2.0 / d);
                    acc[k].1 += 2;
                }
            }
            acc
        })
        .collect();
    let width = parts.iter().map(Vec::len).max().unwrap_or(0);
    let mut buckets = Vec::with_capacity(width);
    for k in 0..width {
        let mut v = Neumaier::default();
        let mut cnt = 0;
        for p in &parts {
            if let Some((s, c)) = p.get(k) {
                v.add(s.value());
                cnt += c;
            }
        }
        buckets.push(VBucket {
            ell: inv * 2f64.powi(k as i32),
            value: v.value(),
            count: cnt,
        });
    }
    let mut total = Neumaier::default();
    for b in &buckets {
        total.add(b.value);
    }
    Ok(VResult {
        total: total.value(),
        buckets,
    })
}

impl VResult {
    /// Largest single dyadic piece.
    pub fn max_bucket(&self) -> f64 {
        self.buckets.iter().map(|b| b.value).fold(0.0, f64::max)
    }
}
