use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::SolverError;
use crate::kernel::KernelParams;
use crate::quad::GaussLegendre;
use crate::reduce::par_sum;
use crate::sums::{integral_i, ProblemInstance};

/// The truncation tail must be at most this fraction of `|H|`.
pub const TAIL_FRACTION: f64 = 1e-3;

const MAX_NODES: usize = 1 << 23;

/// `H(R) = int I(x)^k Phi(x) e(-R x) dx` for one instance.
///
/// Quadrature nodes on `[0, T]` and the values `I^k Phi` there are cached
/// and reused across `R`; `T` doubles until the analytic tail bound
/// `2 X^{k(1-c)} / (pi k T^k)` (from `|I(x)| <= 1/(|x| X^{c-1})` and
/// `|Phi(x)| <= 1/(pi |x|)`) drops below [`TAIL_FRACTION`] of `|H|`.
/// Panels are a quarter of the shortest period of the integrand, which
/// oscillates at frequency at most `R + k (2X)^c`.
pub struct MainTerm {
    inst: ProblemInstance,
    k: u32,
    kernel: KernelParams<f64>,
    r_max: f64,
    width: f64,
    reach: f64,
    nodes: Vec<f64>,
    vals: Vec<Complex64>,
}

impl MainTerm {
    /// Prepares for `|R| <= r_max`, with `k = inst.k`.
    pub fn new(inst: ProblemInstance, r_max: f64) -> Result<Self, SolverError> {
        let k = inst.k;
        if k != 3 && k != 6 {
            return Err(SolverError::Arity { got: k, want: 3 });
        }
        let kernel = KernelParams::from_instance(inst.eps, inst.x)?;
        let freq = r_max.abs() + k as f64 * (2.0 * inst.x).powf(inst.c);
        Ok(MainTerm {
            inst,
            k,
            kernel,
            r_max: r_max.abs(),
            width: 0.25 / freq,
            reach: 0.0,
            nodes: Vec::new(),
            vals: Vec::new(),
        })
    }

    pub fn kernel(&self) -> &KernelParams<f64> {
        &self.kernel
    }

    /// Current truncation point.
    pub fn reach(&self) -> f64 {
        self.reach
    }

    /// Analytic bound on `int_{|x| > T} |I^k Phi|`.
    pub fn tail_bound(&self, t: f64) -> f64 {
        let k = self.k as f64;
        2.0 * self.inst.x.powf(k * (1.0 - self.inst.c)) / (PI * k * t.powf(k))
    }

    fn extend(&mut self) {
        let (a, b) = if self.reach == 0.0 {
            (0.0, self.inst.x.powf(-self.inst.c))
        } else {
            (self.reach, 2.0 * self.reach)
        };
        let panels = ((b - a) / self.width).ceil() as usize;
        let pts = GaussLegendre::<f64>::new(8).points(a, b, panels);
        let (c, big_x, k) = (self.inst.c, self.inst.x, self.k as i32);
        let kernel = self.kernel;
        let vals: Vec<Complex64> = pts
            .par_iter()
            .map(|&(x, w)| integral_i(c, big_x, x).powi(k) * (kernel.fourier(x) * w))
            .collect();
        self.nodes.extend(pts.iter().map(|p| p.0));
        self.vals.extend(vals);
        self.reach = b;
    }

    fn integrate(&self, r: f64) -> f64 {
        // Integrand at -x is the conjugate of that at x.
        2.0 * par_sum(self.nodes.len(), |i| {
            let (s, c) = (2.0 * PI * (r * self.nodes[i]).fract()).sin_cos();
            (self.vals[i] * Complex64::new(c, -s)).re
        })
    }

    /// `H(R)`, extending the grid as needed.
    pub fn eval(&mut self, r: f64) -> Result<f64, SolverError> {
        if r.abs() > self.r_max * (1.0 + 1e-12) {
            return Err(SolverError::NonConvergence(format!(
                "R = {r} exceeds the resolved frequency bound {}",
                self.r_max
            )));
        }
        if self.reach == 0.0 {
            self.extend();
        }
        loop {
            let h = self.integrate(r);
            if self.tail_bound(self.reach) <= TAIL_FRACTION * h.abs() {
                return Ok(h);
            }
            if self.nodes.len() >= MAX_NODES {
                return Err(SolverError::NonConvergence(format!(
                    "tail bound {} still above {TAIL_FRACTION} * |H| = {} at T = {}",
                    self.tail_bound(self.reach),
                    TAIL_FRACTION * h.abs(),
                    self.reach
                )));
            }
            self.extend();
        }
    }
}

/// One-shot `H(R)` with `k = inst.k`.
pub fn main_term_h(inst: &ProblemInstance, r: f64) -> Result<f64, SolverError> {
    MainTerm::new(*inst, r)?.eval(r)
}
