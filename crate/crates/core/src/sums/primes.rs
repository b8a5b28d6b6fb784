use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use super::SumsError;

/// Largest supported upper sieve bound.
pub const MAX_UPPER: u64 = 1 << 40;

const SEGMENT: u64 = 1 << 18;
const MAGIC: &[u8; 4] = b"PTB1";

/// Sorted primes in `(X, 2X]` with their natural logarithms.
#[derive(Clone, Debug, PartialEq)]
pub struct PrimeTable {
    x: f64,
    primes: Vec<u64>,
    logs: Vec<f64>,
}

impl PrimeTable {
    /// Segmented sieve over `(X, 2X]`, each hit re-checked by Miller–Rabin.
    pub fn sieve(x: f64) -> Result<Self, SumsError> {
        let (lo, hi) = bounds(x)?;
        Self::from_primes(x, primes_in(lo, hi))
    }

    /// Wraps an explicit list after verifying range, order and primality.
    pub fn from_primes(x: f64, primes: Vec<u64>) -> Result<Self, SumsError> {
        let (lo, hi) = bounds(x)?;
        for w in primes.windows(2) {
            if w[0] >= w[1] {
                return Err(SumsError::Malformed("primes not strictly increasing".into()));
            }
        }
        for &p in &primes {
            if p <= lo || p > hi || !is_prime(p) {
                return Err(SumsError::Malformed(format!("{p} is not a prime in ({x}, {}]", 2.0 * x)));
            }
        }
        let logs = primes.iter().map(|&p| (p as f64).ln()).collect();
        Ok(PrimeTable { x, primes, logs })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn logs(&self) -> &[f64] {
        &self.logs
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// `theta(2X) - theta(X)`.
    pub fn theta(&self) -> f64 {
        crate::reduce::pairwise_sum(&self.logs)
    }

    /// Cache file name for this `X` inside `dir`.
    pub fn cache_path(dir: &Path, x: f64) -> PathBuf {
        dir.join(format!("primes-{:016x}.bin", x.to_bits()))
    }

    pub fn write_cache(&self, path: &Path) -> Result<(), SumsError> {
        let io = |e: std::io::Error| SumsError::Cache(e.to_string());
        let mut buf = Vec::with_capacity(20 + 8 * self.primes.len());
        buf.extend_from_slice(MAGIC);
        buf.extend_from_slice(&self.x.to_bits().to_le_bytes());
        buf.extend_from_slice(&(self.primes.len() as u64).to_le_bytes());
        for p in &self.primes {
            buf.extend_from_slice(&p.to_le_bytes());
        }
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent).map_err(io)?;
        }
        let mut f = fs::File::create(path).map_err(io)?;
        f.write_all(&buf).map_err(io)
    }

    /// Loads a cache file and re-verifies every entry.
    pub fn read_cache(path: &Path, x: f64) -> Result<Self, SumsError> {
        let io = |e: std::io::Error| SumsError::Cache(e.to_string());
        let mut buf = Vec::new();
        fs::File::open(path).map_err(io)?.read_to_end(&mut buf).map_err(io)?;
        let bad = |m: &str| SumsError::Cache(format!("{}: {m}", path.display()));
        if buf.len() < 20 || &buf[..4] != MAGIC {
            return Err(bad("bad header"));
        }
        let word = |i: usize| u64::from_le_bytes(buf[i..i + 8].try_into().unwrap());
        if word(4) != x.to_bits() {
            return Err(bad("cached for a different X"));
        }
        let n = word(12) as usize;
        if buf.len() != 20 + 8 * n {
            return Err(bad("truncated"));
        }
        let primes = (0..n).map(|i| word(20 + 8 * i)).collect();
        let t = Self::from_primes(x, primes)?;
        // A complete table must match the sieve count.
        let (lo, hi) = bounds(x)?;
        if t.len() != primes_in(lo, hi).len() {
            return Err(bad("incomplete"));
        }
        Ok(t)
    }

    /// Reads the cache in `dir` if valid, otherwise sieves and writes it.
    pub fn cached(dir: &Path, x: f64) -> Result<Self, SumsError> {
        let path = Self::cache_path(dir, x);
        if let Ok(t) = Self::read_cache(&path, x) {
            return Ok(t);
        }
        let t = Self::sieve(x)?;
        t.write_cache(&path)?;
        Ok(t)
    }
}

fn bounds(x: f64) -> Result<(u64, u64), SumsError> {
    if !(x > 0.0) || !(2.0 * x <= MAX_UPPER as f64) {
        return Err(SumsError::Overflow(2.0 * x));
    }
    Ok((x.floor() as u64, (2.0 * x).floor() as u64))
}

fn small_primes(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    let mut comp = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !comp[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                comp[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Primes `p` with `lo < p <= hi`, by a segmented sieve.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    if hi <= lo || hi < 2 {
        return Vec::new();
    }
    let base = small_primes(hi.isqrt());
    let mut out = Vec::new();
    let mut start = (lo + 1).max(2);
    while start <= hi {
        let end = (start + SEGMENT - 1).min(hi);
        let mut comp = vec![false; (end - start + 1) as usize];
        for &p in &base {
            if p * p > end {
                break;
            }
            let mut m = (start.div_ceil(p) * p).max(p * p);
            while m <= end {
                comp[(m - start) as usize] = true;
                m += p;
            }
        }
        out.extend(
            comp.iter()
                .enumerate()
                .filter(|(_, &c)| !c)
                .map(|(i, _)| start + i as u64),
        );
        start = end + 1;
    }
    out
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}
