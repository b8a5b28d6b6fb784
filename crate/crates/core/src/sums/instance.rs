use serde::{Deserialize, Serialize};

use super::SumsError;

/// Parameters of one experiment. Defaults: `eps = (ln X)^-4`,
/// `eta = 0.05`, `tau = X^{1 - c - eta}`, `K = (ln X)^10`.
///
/// `c = 1` is accepted as a degenerate test mode where closed forms exist.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProblemInstance {
    pub c: f64,
    #[serde(rename = "X")]
    pub x: f64,
    pub eps: f64,
    pub tau: f64,
    #[serde(rename = "K")]
    pub k_cap: f64,
    pub k: u32,
    pub eta: f64,
}

impl ProblemInstance {
    pub const DEFAULT_ETA: f64 = 0.05;

    pub fn new(c: f64, x: f64, k: u32) -> Result<Self, SumsError> {
        let l = x.ln();
        let eta = Self::DEFAULT_ETA;
        let p = ProblemInstance {
            c,
            x,
            eps: l.powi(-4),
            tau: x.powf(1.0 - c - eta),
            k_cap: l.powi(10),
            k,
            eta,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_eps(mut self, eps: f64) -> Result<Self, SumsError> {
        self.eps = eps;
        self.validate()?;
        Ok(self)
    }

    /// Sets `eta` and recomputes `tau`.
    pub fn with_eta(mut self, eta: f64) -> Result<Self, SumsError> {
        self.eta = eta;
        self.tau = self.x.powf(1.0 - self.c - eta);
        self.validate()?;
        Ok(self)
    }

    /// Sets `K = (ln X)^e`.
    pub fn with_k_exponent(mut self, e: f64) -> Result<Self, SumsError> {
        self.k_cap = self.x.ln().powf(e);
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), SumsError> {
        let bad = |m: String| Err(SumsError::Instance(m));
        let c = self.c;
        if !(c == 1.0 || (c > 1.0 && c < 3.0 && c != 2.0)) {
            return bad(format!("c = {c} must lie in (1, 3) without 2, or equal 1"));
        }
        if !(self.x >= 3.0 && self.x.is_finite()) {
            return bad(format!("X = {} must be at least 3", self.x));
        }
        if !(self.eps > 0.0) {
            return bad(format!("eps = {} must be positive", self.eps));
        }
        if !(self.eta > 0.0) {
            return bad(format!("eta = {} must be positive", self.eta));
        }
        if !(self.tau > 0.0 && self.tau < self.k_cap) {
            return bad(format!("need 0 < tau < K, got tau = {}, K = {}", self.tau, self.k_cap));
        }
        if self.k == 0 {
            return bad("k must be positive".into());
        }
        Ok(())
    }

    pub fn is_degenerate(&self) -> bool {
        self.c == 1.0
    }

    /// `exp(-(ln X)^{1/5})`, carried for reporting.
    pub fn e_factor(&self) -> f64 {
        (-self.x.ln().powf(0.2)).exp()
    }

    /// Smallest integer in `(X, 2X]`.
    pub fn n_lo(&self) -> u64 {
        self.x.floor() as u64 + 1
    }

    /// Largest integer in `(X, 2X]`.
    pub fn n_hi(&self) -> u64 {
        (2.0 * self.x).floor() as u64
    }
}
