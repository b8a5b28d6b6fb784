//! Double-double arithmetic: an unevaluated sum `hi + lo` of two `f64`
//! values with `|lo| <= ulp(hi)/2`, giving roughly 106 significant bits.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    hi: f64,
    lo: f64,
}

const LN2: Dd = Dd {
    hi: std::f64::consts::LN_2,
    lo: 2.319_046_813_846_299_6e-17,
};

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    /// Builds a value from components, renormalising them.
    pub fn new(hi: f64, lo: f64) -> Self {
        let (h, l) = two_sum(hi, lo);
        Dd { hi: h, lo: l }
    }

    /// Exact for `n < 2^106`.
    pub fn from_u64(n: u64) -> Self {
        let hi = n as f64;
        // `hi` may be rounded for n > 2^53; the remainder is exact in i128.
        let lo = (n as i128 - hi as i128) as f64;
        Dd::new(hi, lo)
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    pub fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let (h, l) = quick_two_sum(p, e + self.lo * b);
        Dd { hi: h, lo: l }
    }

    /// Multiplication by `2^k`, exact barring overflow or underflow.
    pub fn ldexp(self, k: i32) -> Self {
        let s = 2f64.powi(k);
        Dd {
            hi: self.hi * s,
            lo: self.lo * s,
        }
    }

    /// Nearest integer, ties away from zero on the leading component.
    pub fn round(self) -> Self {
        let h = self.hi.round();
        if h == self.hi {
            let l = self.lo.round();
            let (s, e) = quick_two_sum(h, l);
            Dd { hi: s, lo: e }
        } else if (h - self.hi).abs() == 0.5 {
            // hi sits on a half-integer; lo decides the direction.
            let h = if self.lo > 0.0 {
                self.hi.ceil()
            } else if self.lo < 0.0 {
                self.hi.floor()
            } else {
                h
            };
            Dd { hi: h, lo: 0.0 }
        } else {
            Dd { hi: h, lo: 0.0 }
        }
    }

    pub fn exp(self) -> Self {
        if self.hi > 709.7 {
            return Dd {
                hi: f64::INFINITY,
                lo: 0.0,
            };
        }
        if self.hi < -745.0 {
            return Dd::ZERO;
        }
        let k = (self.hi / LN2.hi).round();
        let r = (self - LN2.mul_f64(k)).ldexp(-10);
        // Taylor series of exp(r) - 1 for |r| <= ln2 / 2048.
        let mut term = r;
        let mut sum = r;
        let mut i = 2.0;
        while term.hi.abs() > 1e-36 * sum.hi.abs().max(1e-300) {
            term = term * r / Dd::from(i);
            sum = sum + term;
            i += 1.0;
            if i > 30.0 {
                break;
            }
        }
        // exp(2r) - 1 = s (s + 2)
        for _ in 0..10 {
            sum = sum * (sum + Dd::from(2.0));
        }
        (sum + Dd::ONE).ldexp(k as i32)
    }

    /// Natural logarithm; returns NaN for non-positive input.
    pub fn ln(self) -> Self {
        if self.hi <= 0.0 {
            return Dd {
                hi: f64::NAN,
                lo: f64::NAN,
            };
        }
        let mut y = Dd::from(self.hi.ln());
        for _ in 0..2 {
            y = y + self * (-y).exp() - Dd::ONE;
        }
        y
    }

    /// `self^c` for positive `self`.
    pub fn powf(self, c: f64) -> Self {
        if c == 1.0 {
            return self;
        }
        (self.ln().mul_f64(c)).exp()
    }

    pub fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return Dd::ZERO;
        }
        let x = Dd::from(self.hi.sqrt());
        // One Newton step on x^2 = self.
        x + (self - x * x) / x.mul_f64(2.0)
    }
}

impl From<f64> for Dd {
    fn from(v: f64) -> Self {
        Dd { hi: v, lo: 0.0 }
    }
}

impl Add for Dd {
    type Output = Dd;

    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (h, l) = quick_two_sum(s, e + f);
        Dd { hi: h, lo: l }
    }
}

impl Neg for Dd {
    type Output = Dd;

    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for Dd {
    type Output = Dd;

    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;

    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (h, l) = quick_two_sum(p, e);
        Dd { hi: h, lo: l }
    }
}

impl Div for Dd {
    type Output = Dd;

    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (h, l) = quick_two_sum(q1, q2);
        Dd { hi: h, lo: l } + Dd::from(q3)
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Dd) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            o => o,
        }
    }
}

impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}{:+e}", self.hi, self.lo)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference values (hi, lo) from a 50-digit evaluation.
    fn close(v: Dd, hi: f64, lo: f64, rel: f64) {
        let d = (v - Dd::new(hi, lo)).to_f64().abs();
        assert!(d <= rel * hi.abs(), "{v} vs {hi:e}{lo:+e}: diff {d:e}");
    }

    #[test]
    fn powers_match_reference() {
        close(
            Dd::from_u64(1000).powf(2.05),
            1412537.5446227526,
            -1.3772483520912288e-11,
            1e-29,
        );
        close(
            Dd::from_u64(123457).powf(1.5),
            43378404.99286474,
            1.6901872562484544e-09,
            1e-29,
        );
        close(
            Dd::from_u64(2000003).powf(2.120677676),
            23038544011799.1,
            -0.00131497783718164,
            1e-28,
        );
        close(
            Dd::from_u64(7).powf(0.5),
            2.6457513110645907,
            -1.2566948082017735e-16,
            1e-30,
        );
    }

    #[test]
    fn elementary_functions_match_reference() {
        close(
            Dd::from(10.0).ln(),
            std::f64::consts::LN_10,
            -2.1707562233822494e-16,
            1e-30,
        );
        close(
            Dd::ONE.exp(),
            std::f64::consts::E,
            1.4456468917292502e-16,
            1e-30,
        );
        close(
            Dd::from(37.5).exp(),
            1.9321599304402836e16,
            0.20844227592091974,
            1e-30,
        );
    }

    #[test]
    fn arithmetic_round_trips() {
        let a = Dd::from(1.0) / Dd::from(3.0);
        let back = a * Dd::from(3.0);
        assert!((back - Dd::ONE).to_f64().abs() < 1e-31);
        let s = Dd::from(2.0).sqrt();
        assert!((s * s - Dd::from(2.0)).to_f64().abs() < 1e-31);
    }

    #[test]
    fn round_uses_low_word() {
        let v = Dd::new(2.5, 1e-20);
        assert_eq!(v.round().to_f64(), 3.0);
        let v = Dd::new(2.5, -1e-20);
        assert_eq!(v.round().to_f64(), 2.0);
        let v = Dd::new(1e17, 0.75);
        assert_eq!(v.round(), Dd::new(1e17, 1.0));
    }

    #[test]
    fn from_u64_is_exact_above_2_53() {
        let n = (1u64 << 60) + 12345;
        let d = Dd::from_u64(n);
        assert_eq!(d.hi() as i128 + d.lo() as i128, n as i128);
    }
}
