//! Primes in `(X, 2X]`, the exponential sums `T(x)`, `S(x)`, the integral
//! `I(x)`, fourth moments, the `S - I` profile, the Weyl differencing
//! inequality and bilinear sums.
//!
//! `n^c` is held in double-double precision; phases are reduced modulo 1
//! before the trigonometric call. All sums go through the fixed-tree
//! reductions of [`crate::reduce`], so results are identical for any rayon
//! pool size.

mod bilinear;
mod expsum;
mod instance;
mod integral;
mod moment;
mod primes;
mod weyl;

use thiserror::Error;

pub use bilinear::{bilinear_sum, BILINEAR_LIMIT};
pub use expsum::{sum_table_csv, ExpSums};
pub use instance::ProblemInstance;
pub use integral::integral_i;
pub use moment::{chebyshev_points, MomentResult, Profile, Which};
pub use primes::{is_prime, primes_in, PrimeTable, MAX_UPPER};
pub use weyl::weyl_differencing_check;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SumsError {
    #[error("2X = {0} exceeds the supported sieve range")]
    Overflow(f64),
    #[error("invalid instance: {0}")]
    Instance(String),
    #[error("x = {x} lies outside [-tau, tau] with tau = {tau}")]
    OutOfRange { x: f64, tau: f64 },
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("size guard: {0}")]
    SizeGuard(String),
    #[error("prime cache: {0}")]
    Cache(String),
}
