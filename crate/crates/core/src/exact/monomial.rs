use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::{ExactError, Exponent, Rational};

/// Canonical symbols, ordered first in every rendering.
const CANONICAL: [&str; 6] = ["M", "L", "F", "Q", "X", "K"];

/// Case-sensitive symbol name. Canonical symbols sort first in the order
/// `M, L, F, Q, X, K`; all others follow alphabetically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Symbol(String);

impl Symbol {
    pub fn new(name: impl Into<String>) -> Self {
        Symbol(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    fn rank(&self) -> usize {
        CANONICAL
            .iter()
            .position(|c| *c == self.0)
            .unwrap_or(CANONICAL.len())
    }
}

impl Ord for Symbol {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank()
            .cmp(&other.rank())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Symbol {
    fn from(s: &str) -> Self {
        Symbol::new(s)
    }
}

/// Product of symbols raised to exact exponents. Zero exponents are never
/// stored, so structural equality is mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial<E = Rational> {
    exps: BTreeMap<Symbol, E>,
}

impl<E: Exponent> Default for Monomial<E> {
    fn default() -> Self {
        Self::one()
    }
}

impl<E: Exponent> Monomial<E> {
    /// The constant monomial 1.
    pub fn one() -> Self {
        Monomial {
            exps: BTreeMap::new(),
        }
    }

    /// `name^e`.
    pub fn pow(name: impl Into<Symbol>, e: E) -> Self {
        Self::from_pairs([(name.into(), e)])
    }

    pub fn var(name: impl Into<Symbol>) -> Self {
        Self::pow(name, E::one())
    }

    /// Builds from `(symbol, exponent)` pairs; repeated symbols multiply.
    pub fn from_pairs<S: Into<Symbol>>(pairs: impl IntoIterator<Item = (S, E)>) -> Self {
        let mut m = Self::one();
        for (s, e) in pairs {
            m.mul_symbol(s.into(), e);
        }
        m
    }

    fn mul_symbol(&mut self, s: Symbol, e: E) {
        let cur = self.exps.remove(&s).unwrap_or_else(E::zero);
        let next = cur + e;
        if !next.is_zero() {
            self.exps.insert(s, next);
        }
    }

    /// Exponent of `s`, zero when absent.
    pub fn exponent(&self, s: &str) -> E {
        self.exps
            .get(&Symbol::new(s))
            .cloned()
            .unwrap_or_else(E::zero)
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn contains(&self, s: &str) -> bool {
        self.exps.contains_key(&Symbol::new(s))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Symbol, &E)> {
        self.exps.iter()
    }

    pub fn symbols(&self) -> impl Iterator<Item = &Symbol> {
        self.exps.keys()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, e) in &other.exps {
            out.mul_symbol(s.clone(), e.clone());
        }
        out
    }

    /// `self^e`.
    pub fn powr(&self, e: &E) -> Self {
        if e.is_zero() {
            return Self::one();
        }
        Monomial {
            exps: self
                .exps
                .iter()
                .map(|(s, x)| (s.clone(), x.clone() * e.clone()))
                .collect(),
        }
    }

    /// The monomial with symbol `s` removed.
    pub fn without(&self, s: &str) -> Self {
        let mut out = self.clone();
        out.exps.remove(&Symbol::new(s));
        out
    }

    /// Divides every exponent by `k`.
    pub fn root(&self, k: u32) -> Result<Self, ExactError> {
        if k == 0 {
            return Err(ExactError::ZeroRoot);
        }
        let mut d = E::zero();
        for _ in 0..k {
            d = d + E::one();
        }
        Ok(Monomial {
            exps: self
                .exps
                .iter()
                .map(|(s, x)| (s.clone(), x.clone() / d.clone()))
                .collect(),
        })
    }

    /// Evaluates with `f64` values for every symbol; a missing value is an
    /// error reported as `None`.
    pub fn eval(&self, value: impl Fn(&str) -> Option<f64>) -> Option<f64>
    where
        E: num_traits::ToPrimitive,
    {
        let mut log = 0.0;
        for (s, e) in &self.exps {
            let v = value(s.as_str())?;
            log += e.to_f64()? * v.ln();
        }
        Some(log.exp())
    }

    /// `self <= other` for all symbol values `>= 1`, i.e. componentwise
    /// exponent domination.
    pub fn dominated_by(&self, other: &Self) -> bool {
        let keys: std::collections::BTreeSet<&Symbol> =
            self.exps.keys().chain(other.exps.keys()).collect();
        keys.into_iter().all(|s| {
            let a = self.exps.get(s).cloned().unwrap_or_else(E::zero);
            let b = other.exps.get(s).cloned().unwrap_or_else(E::zero);
            a <= b
        })
    }
}

impl<E: Exponent> fmt::Display for Monomial<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return f.write_str("1");
        }
        for (i, (s, e)) in self.exps.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if e.is_one() {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{{{e}}}")?;
            }
        }
        Ok(())
    }
}

impl<E: Exponent> FromStr for Monomial<E> {
    type Err = ExactError;

    /// Accepts `1` or factors `S`, `S^n`, `S^{p/q}` joined by `*`.
    fn from_str(input: &str) -> Result<Self, ExactError> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |reason: &str| ExactError::Parse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        if s == "1" {
            return Ok(Self::one());
        }
        if s.is_empty() {
            return Err(err("empty monomial"));
        }
        let mut m = Self::one();
        for factor in s.split('*') {
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => {
                    let e = e
                        .strip_prefix('{')
                        .and_then(|e| e.strip_suffix('}'))
                        .unwrap_or(e);
                    let v: E = e.parse().map_err(|_| err("bad exponent"))?;
                    (n, v)
                }
                None => (factor, E::one()),
            };
            let mut chars = name.chars();
            let ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic())
                && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(err("bad symbol"));
            }
            m.mul_symbol(Symbol::new(name), exp);
        }
        Ok(m)
    }
}
