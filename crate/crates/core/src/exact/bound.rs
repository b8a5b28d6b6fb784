use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::{ExactError, Exponent, Monomial, Rational};

/// Sum of monomials with implied constants dropped; duplicates collapse.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoundExpr<E = Rational> {
    terms: BTreeSet<Monomial<E>>,
}

impl<E: Exponent> Default for BoundExpr<E> {
    fn default() -> Self {
        BoundExpr {
            terms: BTreeSet::new(),
        }
    }
}

impl<E: Exponent> BoundExpr<E> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, m: Monomial<E>) -> bool {
        self.terms.insert(m)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, m: &Monomial<E>) -> bool {
        self.terms.contains(m)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Monomial<E>> {
        self.terms.iter()
    }

    /// Sum of the terms evaluated at concrete symbol values.
    pub fn eval(&self, value: impl Fn(&str) -> Option<f64>) -> Option<f64>
    where
        E: num_traits::ToPrimitive,
    {
        let mut acc = 0.0;
        for t in &self.terms {
            acc += t.eval(&value)?;
        }
        Some(acc)
    }
}

impl<E: Exponent> FromIterator<Monomial<E>> for BoundExpr<E> {
    fn from_iter<I: IntoIterator<Item = Monomial<E>>>(iter: I) -> Self {
        BoundExpr {
            terms: iter.into_iter().collect(),
        }
    }
}

impl<E: Exponent> IntoIterator for BoundExpr<E> {
    type Item = Monomial<E>;
    type IntoIter = std::collections::btree_set::IntoIter<Monomial<E>>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl<E: Exponent> fmt::Display for BoundExpr<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl<E: Exponent> FromStr for BoundExpr<E> {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, ExactError> {
        if s.trim() == "0" {
            return Ok(Self::new());
        }
        s.split('+').map(|t| t.parse()).collect()
    }
}

/// Cross term `(A^b B^a)^{1/(a+b)}` for `A Q^a` with `a > 0` and `B Q^{-b}`
/// with `b > 0`: the value of `A Q^a + B Q^{-b}` at its balancing point.
pub fn monomial_cross<E: Exponent>(
    inc: &Monomial<E>,
    dec: &Monomial<E>,
    q: &str,
) -> Result<Monomial<E>, ExactError> {
    let a = inc.exponent(q);
    let b = -dec.exponent(q);
    if !a.is_positive() {
        return Err(ExactError::WrongSign {
            term: inc.to_string(),
            symbol: q.to_string(),
            role: "the increasing side",
        });
    }
    if !b.is_positive() {
        return Err(ExactError::WrongSign {
            term: dec.to_string(),
            symbol: q.to_string(),
            role: "the decreasing side",
        });
    }
    let w = a.clone() + b.clone();
    let left = inc.without(q).powr(&(b / w.clone()));
    let right = dec.without(q).powr(&(a / w));
    Ok(left.mul(&right))
}

/// Eliminates `q` from a bound holding for every `q` in `[q1, q2]`:
/// increasing terms are taken at `q1`, decreasing terms at `q2`, terms free
/// of `q` pass through, and every increasing/decreasing pair contributes its
/// cross term. All terms are emitted, dominated ones included.
pub fn gk_optimize<E: Exponent>(
    terms: &BoundExpr<E>,
    q: &str,
    q1: &Monomial<E>,
    q2: &Monomial<E>,
) -> Result<BoundExpr<E>, ExactError> {
    for end in [q1, q2] {
        if end.contains(q) {
            return Err(ExactError::EndpointContainsSymbol(end.to_string()));
        }
    }
    let mut inc = Vec::new();
    let mut dec = Vec::new();
    let mut out = BoundExpr::new();
    for t in terms.iter() {
        let e = t.exponent(q);
        if e.is_positive() {
            out.insert(t.without(q).mul(&q1.powr(&e)));
            inc.push(t);
        } else if e.is_negative() {
            out.insert(t.without(q).mul(&q2.powr(&e)));
            dec.push(t);
        } else {
            out.insert(t.clone());
        }
    }
    for a in &inc {
        for b in &dec {
            out.insert(monomial_cross(a, b, q)?);
        }
    }
    Ok(out)
}

/// Divides every exponent of every term by `k`.
pub fn bound_root<E: Exponent>(expr: &BoundExpr<E>, k: u32) -> Result<BoundExpr<E>, ExactError> {
    expr.iter().map(|t| t.root(k)).collect()
}

/// Removes terms bounded by another term for all symbol values `>= 1`.
/// Returns the kept expression and the removed terms.
pub fn drop_dominated<E: Exponent>(expr: &BoundExpr<E>) -> (BoundExpr<E>, Vec<Monomial<E>>) {
    let terms: Vec<&Monomial<E>> = expr.iter().collect();
    let mut kept = BoundExpr::new();
    let mut dropped = Vec::new();
    for (i, t) in terms.iter().enumerate() {
        let dominated = terms
            .iter()
            .enumerate()
            .any(|(j, u)| i != j && t.dominated_by(u));
        if dominated {
            dropped.push((*t).clone());
        } else {
            kept.insert((*t).clone());
        }
    }
    (kept, dropped)
}
