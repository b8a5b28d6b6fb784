//! Exact rationals and the monomial algebra used for symbolic bound
//! optimisation.
//!
//! A [`Monomial`] is a coefficient-free product of named symbols raised to
//! rational powers. A [`BoundExpr`] is a set of monomials read as a sum with
//! implied constants dropped, so two expressions differing only in
//! multiplicities are the same bound. Numeric comparisons against a
//! `BoundExpr` must therefore allow a multiplicative slack of at least the
//! number of terms.

mod bound;
mod monomial;

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed};
use thiserror::Error;

pub use bound::{bound_root, drop_dominated, gk_optimize, monomial_cross, BoundExpr};
pub use monomial::{Monomial, Symbol};

/// Arbitrary-precision rational, always stored reduced with a positive
/// denominator.
pub type Rational = BigRational;

/// Exponent type of a monomial: any exact ordered field element.
pub trait Exponent: Clone + Ord + Num + Signed + Debug + Display + FromStr {}

impl<T: Clone + Ord + Num + Signed + Debug + Display + FromStr> Exponent for T {}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("term {term} has {symbol}-exponent of the wrong sign for {role}")]
    WrongSign {
        term: String,
        symbol: String,
        role: &'static str,
    },
    #[error("endpoint {0} must not contain the optimised symbol")]
    EndpointContainsSymbol(String),
    #[error("root index must be positive")]
    ZeroRoot,
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// `n/d` as a reduced rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Renders `p/q` always, including integers (`3/1`).
pub fn fmt_ratio(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q`, `p`, or a signed form of either.
pub fn parse_ratio(s: &str) -> Result<Rational, ExactError> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let err = |reason: &str| ExactError::Parse {
        input: s.to_string(),
        reason: reason.to_string(),
    };
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n, d),
        None => (t.as_str(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| err("bad numerator"))?;
    let d: BigInt = d.parse().map_err(|_| err("bad denominator"))?;
    if d == BigInt::from(0) {
        return Err(err("zero denominator"));
    }
    Ok(Rational::new(n, d))
}
