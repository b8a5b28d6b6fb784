use std::f64::consts::PI;
use std::fmt::Write as _;
use std::sync::OnceLock;

use num_complex::Complex64;
use rayon::prelude::*;

use super::{integral_i, PrimeTable, ProblemInstance, SumsError};
use crate::dd::Dd;
use crate::reduce::{pairwise_sum_complex, CHUNK};
use crate::scalar::PowerScalar;

/// `e(theta) = exp(2 pi i theta)` for a reduced phase.
pub(crate) fn e(frac: f64) -> Complex64 {
    let (s, c) = (2.0 * PI * frac).sin_cos();
    Complex64::new(c, s)
}

/// Exponential sums over one instance. `P` holds `n^c`; [`Dd`] is the
/// production choice and `f64` a low-precision reference.
pub struct ExpSums<P: PowerScalar = Dd> {
    inst: ProblemInstance,
    table: PrimeTable,
    prime_pows: Vec<P>,
    int_pows: OnceLock<Vec<P>>,
}

impl<P: PowerScalar> ExpSums<P> {
    /// Sieves the primes of the instance.
    pub fn new(inst: ProblemInstance) -> Result<Self, SumsError> {
        inst.validate()?;
        let table = PrimeTable::sieve(inst.x)?;
        Ok(Self::with_table(inst, table))
    }

    pub fn with_table(inst: ProblemInstance, table: PrimeTable) -> Self {
        let prime_pows = table
            .primes()
            .par_iter()
            .map(|&p| P::int_pow(p, inst.c))
            .collect();
        ExpSums {
            inst,
            table,
            prime_pows,
            int_pows: OnceLock::new(),
        }
    }

    pub fn instance(&self) -> &ProblemInstance {
        &self.inst
    }

    pub fn table(&self) -> &PrimeTable {
        &self.table
    }

    pub fn prime_pows(&self) -> &[P] {
        &self.prime_pows
    }

    fn int_pows(&self) -> &[P] {
        self.int_pows.get_or_init(|| {
            let (lo, hi) = (self.inst.n_lo(), self.inst.n_hi());
            (lo..=hi)
                .into_par_iter()
                .map(|n| P::int_pow(n, self.inst.c))
                .collect()
        })
    }

    /// `T(x) = sum_{X < n <= 2X} e(n^c x)`.
    pub fn sum_t(&self, x: f64) -> Complex64 {
        let pows = self.int_pows();
        chunked(pows.len(), |i| e(pows[i].phase(x)))
    }

    /// `S(x) = sum_{X < p <= 2X} log p e(p^c x)`.
    pub fn sum_s(&self, x: f64) -> Complex64 {
        let logs = self.table.logs();
        chunked(self.prime_pows.len(), |i| {
            e(self.prime_pows[i].phase(x)) * logs[i]
        })
    }

    /// `S(x)` accumulated sequentially, for callers already running inside
    /// a parallel loop.
    pub fn sum_s_serial(&self, x: f64) -> Complex64 {
        let logs = self.table.logs();
        let terms: Vec<Complex64> = self
            .prime_pows
            .iter()
            .zip(logs)
            .map(|(p, l)| e(p.phase(x)) * *l)
            .collect();
        pairwise_sum_complex(&terms)
    }

    /// `I(x) = int_X^{2X} e(t^c x) dt`.
    pub fn integral_i(&self, x: f64) -> Complex64 {
        integral_i(self.inst.c, self.inst.x, x)
    }
}

fn chunked<F: Fn(usize) -> Complex64 + Sync>(n: usize, f: F) -> Complex64 {
    if n <= CHUNK {
        let v: Vec<Complex64> = (0..n).map(f).collect();
        return pairwise_sum_complex(&v);
    }
    crate::reduce::par_sum_complex(n, f)
}

/// CSV table `x,re,im,abs` with a header row.
pub fn sum_table_csv(rows: &[(f64, Complex64)]) -> String {
    let mut s = String::from("x,re,im,abs\n");
    for (x, z) in rows {
        let _ = writeln!(s, "{x:e},{:e},{:e},{:e}", z.re, z.im, z.norm());
    }
    s
}
