//! Exact exponent bookkeeping and desk-scale numerics for Diophantine
//! inequalities `|p_1^c + ... + p_k^c - R| < eps` over primes.
//!
//! The crate is organised bottom-up:
//!
//! * [`exact`]: rationals, monomials in named symbols, and the
//!   Graham–Kolesnik style optimiser over a free parameter `Q`.
//! * [`exppair`]: exponent pairs, the A and B processes, chain words and
//!   chain search.
//! * [`ledger`]: exact re-derivation of every exponent identity used by the
//!   ternary and senary arguments.
//! * [`kernel`]: the smoothing kernel `phi` and its Fourier transform.
//! * [`sums`]: primes, exponential sums, the oscillatory integral `I(x)`,
//!   fourth moments and bilinear sums.
//! * [`count`]: four-tuple counting and the harmonic sum over pair-sum gaps.
//! * [`solver`]: direct prime solvers, the main term and exceptional scans.
//!
//! Numeric code is generic over the scalar type; the aliases below pin the
//! common instantiations.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` also rejects NaN

pub mod count;
pub mod dd;
pub mod exact;
pub mod exppair;
pub mod kernel;
pub mod ledger;
pub mod quad;
pub mod reduce;
pub mod scalar;
pub mod solver;
pub mod sums;

pub use dd::Dd;
pub use exact::{BoundExpr, Monomial, Rational, Symbol};
pub use exppair::{ChainWord, ExponentPair};
pub use kernel::KernelParams;
pub use scalar::{PairScalar, PowerScalar, Real};
pub use sums::{PrimeTable, ProblemInstance};

/// Exponent pair with exact rational coordinates.
pub type ExactPair = ExponentPair<Rational>;
/// Exponent pair with `f64` coordinates, used by numeric searches.
pub type FloatPair = ExponentPair<f64>;
/// Monomial with exact rational exponents.
pub type ExactMonomial = Monomial<Rational>;
/// Bound expression with exact rational exponents.
pub type ExactBound = BoundExpr<Rational>;
/// Kernel evaluated in double precision.
pub type KernelF64 = KernelParams<f64>;
/// Kernel evaluated in single precision.
pub type KernelF32 = KernelParams<f32>;
