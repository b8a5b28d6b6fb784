//! Gauss–Legendre quadrature, composite and with panel halving.

use std::ops::{Add, Mul};

use num_traits::Zero;

use crate::scalar::Real;

/// Gauss–Legendre rule on `[-1, 1]`.
#[derive(Clone, Debug)]
pub struct GaussLegendre<T> {
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> GaussLegendre<T> {
    /// `n`-point rule; nodes found by Newton iteration in `f64`.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        let nf = n as f64;
        for i in 0..n {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            nodes.push(T::lit(x));
            weights.push(T::lit(2.0 / ((1.0 - x * x) * dp * dp)));
        }
        GaussLegendre { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `int_a^b f`.
    pub fn integrate<V, F>(&self, f: F, a: T, b: T) -> V
    where
        V: Copy + Zero + Add<Output = V> + Mul<T, Output = V>,
        F: Fn(T) -> V,
    {
        let half = (b - a) / T::lit(2.0);
        let mid = (a + b) / T::lit(2.0);
        let mut acc = V::zero();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc = acc + f(mid + half * *x) * *w;
        }
        acc * half
    }

    /// Nodes and weights of the composite rule over `panels` equal panels
    /// of `[a, b]`, in increasing order of panel.
    pub fn points(&self, a: T, b: T, panels: usize) -> Vec<(T, T)> {
        let n = panels.max(1);
        let h = (b - a) / T::from_usize(n).unwrap();
        let half = h / T::lit(2.0);
        let mut out = Vec::with_capacity(n * self.len());
        for i in 0..n {
            let mid = a + h * T::from_usize(i).unwrap() + half;
            for (x, w) in self.nodes.iter().zip(&self.weights) {
                out.push((mid + half * *x, *w * half));
            }
        }
        out
    }

    /// Sum of the rule over `panels` equal panels of `[a, b]`.
    pub fn composite<V, F>(&self, f: F, a: T, b: T, panels: usize) -> V
    where
        V: Copy + Zero + Add<Output = V> + Mul<T, Output = V>,
        F: Fn(T) -> V,
    {
        let n = panels.max(1);
        let h = (b - a) / T::from_usize(n).unwrap();
        let mut acc = V::zero();
        for i in 0..n {
            let lo = a + h * T::from_usize(i).unwrap();
            let hi = if i + 1 == n { b } else { lo + h };
            acc = acc + self.integrate(&f, lo, hi);
        }
        acc
    }

    /// Recursive panel halving until two successive estimates agree to
    /// `tol` (absolute). Returns the value and the final error estimate.
    pub fn adaptive<F>(&self, f: &F, a: T, b: T, tol: T, depth: u32) -> (T, T)
    where
        F: Fn(T) -> T,
    {
        let whole: T = self.integrate(f, a, b);
        self.adapt(f, a, b, whole, tol, depth)
    }

    fn adapt<F>(&self, f: &F, a: T, b: T, whole: T, tol: T, depth: u32) -> (T, T)
    where
        F: Fn(T) -> T,
    {
        let m = (a + b) / T::lit(2.0);
        let l: T = self.integrate(f, a, m);
        let r: T = self.integrate(f, m, b);
        let err = (l + r - whole).abs();
        if err <= tol || depth == 0 {
            return (l + r, err);
        }
        let half = tol / T::lit(2.0);
        let (lv, le) = self.adapt(f, a, m, l, half, depth - 1);
        let (rv, re) = self.adapt(f, m, b, r, half, depth - 1);
        (lv + rv, le + re)
    }
}

/// Legendre polynomial `P_n(x)` and its derivative.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}
