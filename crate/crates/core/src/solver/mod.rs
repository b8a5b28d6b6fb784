//! Direct solvers for `|p_1^c + ... + p_k^c - R| < eps` with primes in
//! `(X, 2X]`, the smoothed count `B_1`, the main term `H` and seeded scans
//! for unsolvable `R`.
//!
//! Triples are studied at `c < 2` and sextuples at `c` slightly above 2:
//! for `c > 2` ternary solutions are too sparse to observe at desk scale.

mod index;
mod mainterm;
mod scan;
mod sextuple;

use serde::Serialize;
use thiserror::Error;

use crate::kernel::KernelError;
use crate::sums::{ProblemInstance, SumsError};

pub use index::{count_b, weighted_b1, BResult, TripleSolver, PAIR_LIMIT};
pub use mainterm::{main_term_h, MainTerm, TAIL_FRACTION};
pub use scan::{exceptional_scan, scan_with, ScanReport};
pub use sextuple::{feasibility, find_sextuple, find_sextuple_in, Feasibility, SextupleOutcome, TRIPLE_LIMIT};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error("degenerate range: {0}")]
    DegenerateRange(String),
    #[error("size guard: {0}")]
    SizeGuard(String),
    #[error("instance has k = {got}, expected {want}")]
    Arity { got: u32, want: u32 },
    #[error("main term did not converge: {0}")]
    NonConvergence(String),
    #[error(transparent)]
    Sums(#[from] SumsError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// One solution, with the sum recomputed in double-double.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolutionRecord {
    pub primes: Vec<u64>,
    pub value: f64,
    pub deviation: f64,
    /// Set when the `f64` and double-double evaluations disagree on
    /// whether the deviation is below `eps`.
    pub ambiguous: bool,
}

/// `X = (N/3)^{1/c}` without any range checks.
pub fn ternary_scale(n: f64, c: f64) -> f64 {
    (n / 3.0).powf(1.0 / c)
}

/// `X = (N/5)^{1/c} / 2` without any range checks.
pub fn senary_scale(n: f64, c: f64) -> f64 {
    0.5 * (n / 5.0).powf(1.0 / c)
}

fn instance_at(n: f64, c: f64, x: f64, k: u32, eps: Option<f64>) -> Result<ProblemInstance, SolverError> {
    if !(n > 1.0) {
        return Err(SolverError::DegenerateRange(format!("N = {n} must exceed 1")));
    }
    let primes = crate::sums::primes_in(x.max(0.0).floor() as u64, (2.0 * x).max(0.0).floor() as u64);
    if x < 3.0 || primes.len() < 2 {
        return Err(SolverError::DegenerateRange(format!(
            "X = {x} gives {} primes in (X, 2X]; need X >= 3 and at least 2",
            primes.len()
        )));
    }
    let inst = ProblemInstance::new(c, x, k)?;
    Ok(inst.with_eps(eps.unwrap_or(1.0 / n.ln()))?)
}

/// Ternary instance: `X = (N/3)^{1/c}`, `k = 3`, `eps = 1/ln N` by default.
pub fn ternary_instance(n: f64, c: f64, eps: Option<f64>) -> Result<ProblemInstance, SolverError> {
    instance_at(n, c, ternary_scale(n, c), 3, eps)
}

/// Senary instance: `X = (N/5)^{1/c}/2`, `k = 6`, `eps = 1/ln N` by default.
pub fn senary_instance(n: f64, c: f64, eps: Option<f64>) -> Result<ProblemInstance, SolverError> {
    instance_at(n, c, senary_scale(n, c), 6, eps)
}

fn expect_k(inst: &ProblemInstance, want: u32) -> Result<(), SolverError> {
    if inst.k != want {
        return Err(SolverError::Arity { got: inst.k, want });
    }
    Ok(())
}
