//! Smoothing kernel `phi`: the indicator of `[-a, a]` convolved with the
//! density of a sum of `m` independent uniforms on `[-h, h]`, `h = b/m`.
//!
//! `phi` equals 1 on `|y| <= a - b`, vanishes for `|y| >= a + b`, and its
//! Fourier transform is
//! `Phi(x) = sin(2 pi a x)/(pi x) * (sin(2 pi h x)/(2 pi h x))^m`.
//! By default `m = r`, which matches the bound
//! `|Phi(x)| <= min(2a, 1/(pi|x|), (1/(pi|x|)) (r/(2 pi |x| b))^r)` term by
//! term and makes `phi` of class `C^{r-1}`. The strict variant uses
//! `m = r + 1` boxes, giving `C^r` with `r + 1` in place of `r` in the last
//! branch of the bound.

use thiserror::Error;

use crate::scalar::Real;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KernelError {
    #[error("kernel needs 0 < b < a/4, got a = {a}, b = {b}")]
    Shape { a: f64, b: f64 },
    #[error("smoothing order r must be at least 1")]
    ZeroOrder,
    #[error("kernel_from_instance needs eps > 0 and X >= 3, got eps = {eps}, X = {x}")]
    Instance { eps: f64, x: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelParams<T> {
    a: T,
    b: T,
    r: u32,
    strict: bool,
}

impl<T: Real> KernelParams<T> {
    pub fn new(a: T, b: T, r: u32) -> Result<Self, KernelError> {
        if !(b > T::zero() && b * T::lit(4.0) < a) {
            return Err(KernelError::Shape {
                a: a.to_f64().unwrap_or(f64::NAN),
                b: b.to_f64().unwrap_or(f64::NAN),
            });
        }
        if r == 0 {
            return Err(KernelError::ZeroOrder);
        }
        Ok(KernelParams {
            a,
            b,
            r,
            strict: false,
        })
    }

    /// Same shape with `r + 1` boxes, so that `phi` is `r` times
    /// continuously differentiable.
    pub fn strict(a: T, b: T, r: u32) -> Result<Self, KernelError> {
        let mut k = Self::new(a, b, r)?;
        k.strict = true;
        Ok(k)
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn b(&self) -> T {
        self.b
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    /// Number of uniform factors in the convolution.
    pub fn boxes(&self) -> u32 {
        if self.strict {
            self.r + 1
        } else {
            self.r
        }
    }

    /// Half-width of each uniform factor.
    pub fn h(&self) -> T {
        self.b / T::from_u32(self.boxes()).unwrap()
    }

    /// `phi(y)` in `[0, 1]`.
    pub fn phi(&self, y: T) -> T {
        let y = y.abs();
        if y <= self.a - self.b {
            return T::one();
        }
        if y >= self.a + self.b {
            return T::zero();
        }
        // Since b < a, the upper window edge is never reached for y >= 0:
        // phi(y) = P(S >= y - a) = P(S <= a - y) with S symmetric.
        let m = self.boxes();
        let h = self.h();
        let t = (self.a - y + T::from_u32(m).unwrap() * h) / (h + h);
        irwin_hall_cdf(m, t)
    }

    /// `Phi(x) = int e(-x y) phi(y) dy`.
    pub fn fourier(&self, x: T) -> T {
        if x == T::zero() {
            return self.a + self.a;
        }
        let pi = T::PI();
        let two_pi = pi + pi;
        let first = (two_pi * self.a * x).sin() / (pi * x);
        let u = two_pi * self.h() * x;
        let s = u.sin() / u;
        first * s.powi(self.boxes() as i32)
    }

    /// `min(2a, 1/(pi|x|), (1/(pi|x|)) (m/(2 pi |x| b))^m)` with `m` the
    /// number of boxes.
    pub fn fourier_bound(&self, x: T) -> T {
        let two_a = self.a + self.a;
        if x == T::zero() {
            return two_a;
        }
        let ax = x.abs();
        let pi = T::PI();
        let inv = (pi * ax).recip();
        let m = self.boxes();
        let ratio = T::from_u32(m).unwrap() / ((pi + pi) * ax * self.b);
        two_a.min(inv).min(inv * ratio.powi(m as i32))
    }
}

impl KernelParams<f64> {
    /// `a = 9 eps / 10`, `b = eps / 10`, `r = floor(ln X)`.
    pub fn from_instance(eps: f64, x: f64) -> Result<Self, KernelError> {
        if !(eps > 0.0 && x >= 3.0) {
            return Err(KernelError::Instance { eps, x });
        }
        Self::new(0.9 * eps, 0.1 * eps, x.ln().floor() as u32)
    }
}

/// Free-function form of [`KernelParams::from_instance`].
pub fn kernel_from_instance(eps: f64, x: f64) -> Result<KernelParams<f64>, KernelError> {
    KernelParams::from_instance(eps, x)
}

pub fn phi_eval<T: Real>(p: &KernelParams<T>, y: T) -> T {
    p.phi(y)
}

pub fn phi_fourier<T: Real>(p: &KernelParams<T>, x: T) -> T {
    p.fourier(x)
}

pub fn phi_fourier_bound<T: Real>(p: &KernelParams<T>, x: T) -> T {
    p.fourier_bound(x)
}

/// CDF of the sum of `m` independent uniforms on `[0, 1]`, by the
/// recursion `F_j(x) = (x F_{j-1}(x) + (j - x) F_{j-1}(x - 1)) / j`, whose
/// terms are all non-negative.
pub fn irwin_hall_cdf<T: Real>(m: u32, x: T) -> T {
    let mf = T::from_u32(m).unwrap();
    if x <= T::zero() {
        return T::zero();
    }
    if x >= mf {
        return T::one();
    }
    let m = m as usize;
    // f[i] holds F_j(x - i).
    let mut f: Vec<T> = (0..m)
        .map(|i| (x - T::from_usize(i).unwrap()).max(T::zero()).min(T::one()))
        .collect();
    for j in 2..=m {
        let jf = T::from_usize(j).unwrap();
        for i in 0..=(m - j) {
            let y = x - T::from_usize(i).unwrap();
            f[i] = if y <= T::zero() {
                T::zero()
            } else if y >= jf {
                T::one()
            } else {
                (y * f[i] + (jf - y) * f[i + 1]) / jf
            };
        }
    }
    f[0]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, Rational};
    use crate::quad::GaussLegendre;
    use num_bigint::BigInt;
    use num_traits::{One, ToPrimitive, Zero};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    /// Exact alternating-sum CDF at a rational point.
    fn irwin_hall_exact(m: u32, x: &Rational) -> Rational {
        let mut fact = BigInt::one();
        for i in 1..=m {
            fact *= i;
        }
        let mut acc = Rational::zero();
        let mut binom = BigInt::one();
        for k in 0..=m {
            let t = x - int(k as i64);
            if t > Rational::zero() {
                let mut pw = Rational::one();
                for _ in 0..m {
                    pw *= &t;
                }
                let term = pw * Rational::from_integer(binom.clone());
                if k % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            binom = binom * (m - k) / (k + 1);
        }
        acc / Rational::from_integer(fact)
    }

    #[test]
    fn recursion_matches_exact_sum() {
        for m in 1..=24u32 {
            for j in 0..=40 {
                let x = Rational::new(BigInt::from(j * m as i64), BigInt::from(40));
                let exact = irwin_hall_exact(m, &x).to_f64().unwrap();
                let got = irwin_hall_cdf(m, x.to_f64().unwrap());
                assert!((got - exact).abs() < 1e-13, "m={m} x={x}: {got} vs {exact}");
            }
        }
    }

    #[test]
    fn from_instance_examples() {
        let k = kernel_from_instance(1.0, 10f64.exp()).unwrap();
        assert!((k.a() - 0.9).abs() < 1e-15 && (k.b() - 0.1).abs() < 1e-15);
        assert_eq!(k.r(), 10);
        let k = kernel_from_instance(1e-4, 10f64.exp()).unwrap();
        assert!((k.a() - 0.9e-4).abs() < 1e-18 && (k.b() - 1e-5).abs() < 1e-19);
        let k = kernel_from_instance(0.108, 1e4).unwrap();
        assert!((k.a() - 0.0972).abs() < 1e-15 && (k.b() - 0.0108).abs() < 1e-15);
        assert_eq!(k.r(), 9);
        assert!(kernel_from_instance(0.0, 10.0).is_err());
        assert!(kernel_from_instance(0.1, 2.0).is_err());
    }

    #[test]
    fn phi_examples() {
        for r in 1..=8 {
            let k = KernelParams::<f64>::new(0.9, 0.1, r).unwrap();
            assert_eq!(k.phi(0.0), 1.0);
            assert_eq!(k.phi(1.0), 0.0);
            assert!((k.phi(0.9) - 0.5).abs() < 1e-15);
            let s = KernelParams::<f64>::strict(0.9, 0.1, r).unwrap();
            assert!((s.phi(0.9) - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn phi_edge_matches_numeric_convolution() {
        // phi(a) = P(S <= 0) by direct quadrature of the box indicator
        // against the two-fold uniform density (triangle on [-2h, 2h]).
        let k = KernelParams::new(0.9, 0.1, 2).unwrap();
        let h = k.h();
        let g = GaussLegendre::<f64>::new(20);
        let (v, _) = g.adaptive(
            &|s: f64| {
                let dens = ((2.0 * h - s.abs()) / (4.0 * h * h)).max(0.0);
                let inside = (0.9 - s).abs() <= 0.9;
                if inside { dens } else { 0.0 }
            },
            -2.0 * h,
            2.0 * h,
            1e-14,
            30,
        );
        assert!((v - 0.5).abs() < 1e-10);
    }

    #[test]
    fn phi_shape_on_dense_grid() {
        for r in 1..=8 {
            for strict in [false, true] {
                let k = if strict {
                    KernelParams::strict(0.9, 0.1, r).unwrap()
                } else {
                    KernelParams::new(0.9, 0.1, r).unwrap()
                };
                let mut prev = 1.0;
                for i in 0..=20000 {
                    let y = i as f64 * 1.2 / 20000.0;
                    let v = k.phi(y);
                    assert!((0.0..=1.0).contains(&v));
                    assert!(v <= prev + 1e-15, "r={r} y={y}");
                    assert_eq!(v, k.phi(-y));
                    prev = v;
                }
            }
        }
    }

    fn quad_fourier(k: &KernelParams<f64>, x: f64) -> f64 {
        // phi even: Phi(x) = 2 int_0^{a+b} phi(y) cos(2 pi x y) dy.
        let g = GaussLegendre::<f64>::new(16);
        let w = 2.0 * std::f64::consts::PI * x;
        let flat = k.a() - k.b();
        let f = |y: f64| k.phi(y) * (w * y).cos();
        let panels = (x.abs() * 4.0).ceil() as usize + 8;
        let first: f64 = g.composite(f, 0.0, flat, panels);
        // The transition region holds the polynomial breakpoints at
        // multiples of 2h; integrate piece by piece.
        let m = k.boxes() as usize;
        let mut rest = 0.0;
        for j in 0..m {
            let lo = flat + 2.0 * k.h() * j as f64;
            let hi = lo + 2.0 * k.h();
            rest += g.composite(f, lo, hi, 4);
        }
        2.0 * (first + rest)
    }

    #[test]
    fn fourier_examples() {
        let k = KernelParams::new(0.9, 0.1, 4).unwrap();
        assert_eq!(k.fourier(0.0), 1.8);
        let v = k.fourier(1.3);
        assert!((v - quad_fourier(&k, 1.3)).abs() < 1e-8);
        for n in [1, 2, 5, -3] {
            let x = n as f64 / 1.8;
            assert!(k.fourier(x).abs() < 1e-14);
        }
    }

    #[test]
    fn fourier_matches_quadrature() {
        for r in [1, 3, 4, 8] {
            for strict in [false, true] {
                let k = if strict {
                    KernelParams::strict(0.9, 0.1, r).unwrap()
                } else {
                    KernelParams::new(0.9, 0.1, r).unwrap()
                };
                for i in 0..20 {
                    let x = -7.3 + i as f64 * 0.77;
                    let exact = k.fourier(x);
                    let q = quad_fourier(&k, x);
                    let scale = exact.abs().max(1e-3);
                    assert!((exact - q).abs() <= 1e-6 * scale, "r={r} x={x}: {exact} vs {q}");
                }
            }
        }
    }

    #[test]
    fn bound_examples() {
        let k = KernelParams::new(0.9, 0.1, 4).unwrap();
        assert_eq!(k.fourier_bound(0.0), 1.8);
        let inv = 1.0 / (10.0 * std::f64::consts::PI);
        let expect = 1.8f64.min(inv).min(inv * (4.0 / (2.0 * std::f64::consts::PI)).powi(4));
        assert_eq!(k.fourier_bound(10.0), expect);
        // Strictly decreasing beyond r / (2 pi b).
        let start = 4.0 / (2.0 * std::f64::consts::PI * 0.1);
        let mut prev = k.fourier_bound(start);
        for i in 1..200 {
            let v = k.fourier_bound(start * (1.0 + i as f64 * 0.1));
            assert!(v < prev);
            prev = v;
        }
        assert!(prev < 1e-5);
    }

    #[test]
    fn single_precision_kernel() {
        let k = KernelParams::<f32>::new(0.9, 0.1, 5).unwrap();
        let d = KernelParams::<f64>::new(0.9, 0.1, 5).unwrap();
        for i in 0..50 {
            let y = i as f64 * 0.02;
            assert!((k.phi(y as f32) as f64 - d.phi(y)).abs() < 1e-5);
            let x = i as f64 * 0.37;
            assert!((k.fourier(x as f32) as f64 - d.fourier(x)).abs() < 1e-5);
        }
    }

    #[test]
    fn fourier_within_bound_random() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for r in 1..=8 {
            let k = KernelParams::new(0.9, 0.1, r).unwrap();
            let s = KernelParams::strict(0.9, 0.1, r).unwrap();
            for _ in 0..2000 {
                let x: f64 = rng.gen_range(-1e3..1e3);
                assert!(k.fourier(x).abs() <= k.fourier_bound(x) + 1e-12);
                assert!(s.fourier(x).abs() <= s.fourier_bound(x) + 1e-12);
            }
        }
    }

    proptest! {
        #[test]
        fn fourier_bound_holds(a in 0.01f64..5.0, frac in 0.01f64..0.24, r in 1u32..12, x in -1e4f64..1e4) {
            let k = KernelParams::new(a, a * frac, r).unwrap();
            prop_assert!(k.fourier(x).abs() <= k.fourier_bound(x) + 1e-12);
        }

        #[test]
        fn plateau_and_support(a in 0.01f64..5.0, frac in 0.01f64..0.24, r in 1u32..10, t in 0.0f64..1.0) {
            let k = KernelParams::new(a, a * frac, r).unwrap();
            let b = a * frac;
            prop_assert_eq!(k.phi((a - b) * t), 1.0);
            prop_assert_eq!(k.phi(a + b + t), 0.0);
        }
    }
}
