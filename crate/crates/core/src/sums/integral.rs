use std::f64::consts::PI;

use num_complex::Complex64;

use super::expsum::e;
use crate::dd::Dd;
use crate::quad::GaussLegendre;
use crate::scalar::PowerScalar;

/// Above this value of `2 pi |x| X^c` the endpoint expansion is used.
const ASYMPTOTIC_FROM: f64 = 60.0;

/// `I(x) = int_X^{2X} e(t^c x) dt`.
///
/// For `2 pi |x| X^c >= 60` the integral is evaluated, after `u = t^c`, by
/// repeated integration by parts at both endpoints; the series converges
/// to below `1e-17` relative there. Otherwise composite Gauss–Legendre
/// panels no wider than a quarter of the shortest local period are refined
/// by halving until two estimates agree to `1e-9 X`.
pub fn integral_i(c: f64, big_x: f64, x: f64) -> Complex64 {
    if x == 0.0 {
        return Complex64::new(big_x, 0.0);
    }
    if c == 1.0 {
        // (e(2Xx) - e(Xx)) / (2 pi i x)
        let num = e(Dd::from(2.0 * big_x).phase(x)) - e(Dd::from(big_x).phase(x));
        return num / Complex64::new(0.0, 2.0 * PI * x);
    }
    let omega = 2.0 * PI * x.abs() * big_x.powf(c);
    if omega >= ASYMPTOTIC_FROM {
        endpoint_series(c, big_x, x)
    } else {
        direct(c, big_x, x)
    }
}

fn direct(c: f64, big_x: f64, x: f64) -> Complex64 {
    let g = GaussLegendre::<f64>::new(8);
    let f = |t: f64| e(t.powf(c) * x);
    // Local period 1/(c t^{c-1} |x|) is shortest at t = 2X for c > 1.
    let period = 1.0 / (c * (2.0 * big_x).powf(c - 1.0) * x.abs());
    let mut panels = ((4.0 * big_x / period).ceil() as usize).max(8);
    let mut prev: Complex64 = g.composite(f, big_x, 2.0 * big_x, panels);
    loop {
        panels *= 2;
        let next: Complex64 = g.composite(f, big_x, 2.0 * big_x, panels);
        if (next - prev).norm() <= 1e-9 * big_x || panels > 1 << 20 {
            return next;
        }
        prev = next;
    }
}

fn endpoint_series(c: f64, big_x: f64, x: f64) -> Complex64 {
    let u0 = Dd::from(big_x).powf(c);
    let u1 = Dd::from(2.0 * big_x).powf(c);
    boundary(c, u1, x) - boundary(c, u0, x)
}

/// `sum_k (-1)^k g^{(k)}(u) e(u x) / (2 pi i x)^{k+1}` for
/// `g(u) = u^{1/c - 1} / c`, truncated at the smallest term.
fn boundary(c: f64, u: Dd, x: f64) -> Complex64 {
    let uf = u.to_f64();
    let alpha = 1.0 / c - 1.0;
    let z = Complex64::new(0.0, -1.0 / (2.0 * PI * x));
    let mut term = z * (uf.powf(alpha) / c);
    let mut sum = term;
    let mut k = 0.0;
    loop {
        let next = term * z * (-(alpha - k) / uf);
        if next.norm() >= term.norm() || next.norm() <= 1e-18 * sum.norm() || k > 400.0 {
            break;
        }
        sum += next;
        term = next;
        k += 1.0;
    }
    sum * e(u.phase(x))
}
