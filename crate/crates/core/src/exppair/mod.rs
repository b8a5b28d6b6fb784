//! Exponent pairs `(kappa, lambda)`, the A and B processes, chain words and
//! a search over chains.
//!
//! A pair bounds `sum_{a < n <= 2a} e(f(n)) << lambda1^kappa a^lambda +
//! 1/lambda1` when `|f'| ~ lambda1` on the range. Words act right to left,
//! so `"A^2B"` on `(0, 1)` means `A(A(B((0, 1))))`.

mod search;
mod word;

use std::fmt;

use thiserror::Error;

use crate::scalar::{PairScalar, Real};

pub use search::{search_pairs, SearchOptions, SearchResult};
pub use word::{ChainWord, Process};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PairError {
    #[error("pair ({kappa}, {lambda}) is outside 0 <= kappa <= 1/2 <= lambda <= 1")]
    NotAdmissible { kappa: String, lambda: String },
    #[error("bad chain word {word:?} at byte {pos}: {reason}")]
    Parse {
        word: String,
        pos: usize,
        reason: &'static str,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExponentPair<T> {
    kappa: T,
    lambda: T,
}

impl<T: PairScalar> ExponentPair<T> {
    /// Checked constructor; rejects pairs outside the admissible region.
    pub fn new(kappa: T, lambda: T) -> Result<Self, PairError> {
        let p = ExponentPair { kappa, lambda };
        if p.is_admissible() {
            Ok(p)
        } else {
            Err(PairError::NotAdmissible {
                kappa: format!("{:?}", p.kappa),
                lambda: format!("{:?}", p.lambda),
            })
        }
    }

    /// The trivial pair `(0, 1)`.
    pub fn trivial() -> Self {
        ExponentPair {
            kappa: T::zero(),
            lambda: T::one(),
        }
    }

    pub fn kappa(&self) -> &T {
        &self.kappa
    }

    pub fn lambda(&self) -> &T {
        &self.lambda
    }

    pub fn is_admissible(&self) -> bool {
        let half = T::half();
        T::zero() <= self.kappa
            && self.kappa <= half
            && half <= self.lambda
            && self.lambda <= T::one()
    }

    /// `(kappa / (2 kappa + 2), (kappa + lambda + 1) / (2 kappa + 2))`.
    pub fn a_process(&self) -> Self {
        let d = T::two() * self.kappa.clone() + T::two();
        ExponentPair {
            kappa: self.kappa.clone() / d.clone(),
            lambda: (self.kappa.clone() + self.lambda.clone() + T::one()) / d,
        }
    }

    /// `(lambda - 1/2, kappa + 1/2)`.
    pub fn b_process(&self) -> Self {
        ExponentPair {
            kappa: self.lambda.clone() - T::half(),
            lambda: self.kappa.clone() + T::half(),
        }
    }

    pub fn apply(&self, p: Process) -> Self {
        match p {
            Process::A => self.a_process(),
            Process::B => self.b_process(),
        }
    }

    /// Folds `word` over `self`, rightmost letter first.
    pub fn apply_word(&self, word: &ChainWord) -> Self {
        word.letters()
            .iter()
            .rev()
            .fold(self.clone(), |p, &l| p.apply(l))
    }

    /// Coordinates as `f64`.
    pub fn to_f64(&self) -> (f64, f64) {
        (self.kappa.as_f64(), self.lambda.as_f64())
    }
}

/// `A(p)`.
pub fn a_process<T: PairScalar>(p: &ExponentPair<T>) -> ExponentPair<T> {
    p.a_process()
}

/// `B(p)`.
pub fn b_process<T: PairScalar>(p: &ExponentPair<T>) -> ExponentPair<T> {
    p.b_process()
}

/// Applies `word` to `seed`, rightmost letter first.
pub fn apply_word<T: PairScalar>(word: &ChainWord, seed: &ExponentPair<T>) -> ExponentPair<T> {
    seed.apply_word(word)
}

/// `lambda1^kappa * a^lambda + 1/lambda1` in the scalar type `R`.
pub fn pair_bound<T: PairScalar, R: Real>(p: &ExponentPair<T>, lambda1: R, a: R) -> R {
    let (k, l) = p.to_f64();
    lambda1.powf(R::lit(k)) * a.powf(R::lit(l)) + lambda1.recip()
}

impl<T: fmt::Display> fmt::Display for ExponentPair<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.kappa, self.lambda)
    }
}
