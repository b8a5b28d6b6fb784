use rayon::prelude::*;
use serde::Serialize;

use super::{ExpSums, SumsError};
use crate::quad::GaussLegendre;
use crate::reduce::pairwise_sum;
use crate::scalar::PowerScalar;

/// Which function a moment is taken of.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Which {
    S,
    I,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MomentResult {
    pub value: f64,
    /// Sum over panels of |fine - coarse| between one panel and its halves.
    pub error_estimate: f64,
    pub panels: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Profile {
    pub points: Vec<(f64, f64)>,
    pub max: f64,
}

/// `n` Chebyshev points of the first kind scaled to `[-tau, tau]`.
pub fn chebyshev_points(n: usize, tau: f64) -> Vec<f64> {
    (0..n)
        .map(|k| {
            let t = std::f64::consts::PI * (2 * k + 1) as f64 / (2 * n) as f64;
            tau * t.cos()
        })
        .collect()
}

impl<P: PowerScalar> ExpSums<P> {
    fn eval(&self, which: Which, x: f64) -> f64 {
        let z = match which {
            Which::S => self.sum_s_serial(x),
            Which::I => self.integral_i(x),
        };
        z.norm_sqr() * z.norm_sqr()
    }

    /// `int_{-tau}^{tau} |F(x)|^4 dx` for `F = S` or `I`, using symmetry.
    /// Uniform panels of width at most `X^{-c}/8` resolve the oscillation
    /// of `|F|^4`, which persists across the whole range; each panel gets
    /// an 8-point rule and its two halves, the difference feeding the error
    /// estimate.
    pub fn moment4(&self, which: Which) -> MomentResult {
        let inst = self.instance();
        let width = inst.x.powf(-inst.c) / 8.0;
        let panels = (inst.tau / width).ceil().max(1.0) as usize;
        let h = inst.tau / panels as f64;
        let g = GaussLegendre::<f64>::new(8);
        let parts: Vec<(f64, f64)> = (0..panels)
            .into_par_iter()
            .map(|i| {
                let a = h * i as f64;
                let b = a + h;
                let m = a + h / 2.0;
                let f = |x: f64| self.eval(which, x);
                let coarse: f64 = g.integrate(f, a, b);
                let fine: f64 = g.integrate(f, a, m) + g.integrate(f, m, b);
                (fine, (fine - coarse).abs())
            })
            .collect();
        let vals: Vec<f64> = parts.iter().map(|p| p.0).collect();
        let errs: Vec<f64> = parts.iter().map(|p| p.1).collect();
        MomentResult {
            value: 2.0 * pairwise_sum(&vals),
            error_estimate: 2.0 * pairwise_sum(&errs),
            panels,
        }
    }

    /// `|S(x) - I(x)|` at each sample, which must lie in `[-tau, tau]`.
    pub fn s_minus_i_profile(&self, xs: &[f64]) -> Result<Profile, SumsError> {
        let tau = self.instance().tau;
        if let Some(&x) = xs.iter().find(|x| !(x.abs() <= tau * (1.0 + 1e-12))) {
            return Err(SumsError::OutOfRange { x, tau });
        }
        let points: Vec<(f64, f64)> = xs
            .par_iter()
            .map(|&x| (x, (self.sum_s_serial(x) - self.integral_i(x)).norm()))
            .collect();
        let max = points.iter().map(|p| p.1).fold(0.0, f64::max);
        Ok(Profile { points, max })
    }
}
