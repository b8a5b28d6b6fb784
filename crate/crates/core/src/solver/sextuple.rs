use rayon::prelude::*;
use serde::Serialize;

use super::{expect_k, SolutionRecord, SolverError};
use crate::dd::Dd;
use crate::scalar::PowerScalar;
use crate::sums::{PrimeTable, ProblemInstance};

/// Largest `pi^3` accepted for the triple table.
pub const TRIPLE_LIMIT: usize = 100_000_000;

/// Whether `N` lies in the range of sums of `k` values `t^c`, `X < t <= 2X`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Feasibility {
    pub lower: f64,
    pub upper: f64,
    pub feasible: bool,
}

pub fn feasibility(inst: &ProblemInstance, n: f64) -> Feasibility {
    let k = inst.k as f64;
    let lower = k * inst.x.powf(inst.c);
    let upper = k * (2.0 * inst.x).powf(inst.c);
    Feasibility {
        lower,
        upper,
        feasible: n > lower - inst.eps && n < upper + inst.eps,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SextupleOutcome {
    pub feasibility: Feasibility,
    pub primes: usize,
    pub record: Option<SolutionRecord>,
}

/// Searches six primes in `(X, 2X]` with `|sum p_i^c - N| < eps`.
///
/// Sums over non-decreasing index triples are sorted (ties by index); the
/// first table entry, in that order, which has a partner within `eps` of
/// `N - t` gives the record, the partner being the first such entry.
pub fn find_sextuple(inst: &ProblemInstance, n: f64) -> Result<SextupleOutcome, SolverError> {
    expect_k(inst, 6)?;
    let f = feasibility(inst, n);
    let table = PrimeTable::sieve(inst.x)?;
    let record = if f.feasible {
        find_sextuple_in(table.primes(), inst.c, n, inst.eps)?
    } else {
        None
    };
    Ok(SextupleOutcome {
        feasibility: f,
        primes: table.len(),
        record,
    })
}

/// [`find_sextuple`] over an arbitrary sorted prime list.
pub fn find_sextuple_in(primes: &[u64], c: f64, n: f64, eps: f64) -> Result<Option<SolutionRecord>, SolverError> {
    let m = primes.len();
    if m.saturating_pow(3) > TRIPLE_LIMIT {
        return Err(SolverError::SizeGuard(format!("{m}^3 prime triples exceed {TRIPLE_LIMIT}")));
    }
    let pows: Vec<f64> = primes.iter().map(|&p| (p as f64).powf(c)).collect();
    let mut table: Vec<(f64, [u32; 3])> = Vec::new();
    for i in 0..m {
        for j in i..m {
            for k in j..m {
                table.push((pows[i] + pows[j] + pows[k], [i as u32, j as u32, k as u32]));
            }
        }
    }
    table.par_sort_unstable_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
    let vals: Vec<f64> = table.iter().map(|e| e.0).collect();
    let hit = (0..table.len()).into_par_iter().find_map_first(|a| {
        let want = n - vals[a];
        let start = vals.partition_point(|&v| v <= want - eps);
        (start..vals.len())
            .take_while(|&b| vals[b] < want + eps)
            .find(|&b| (vals[a] + vals[b] - n).abs() < eps)
            .map(|b| (a, b))
    });
    Ok(hit.map(|(a, b)| {
        let mut ps: Vec<u64> = table[a].1.iter().chain(&table[b].1).map(|&i| primes[i as usize]).collect();
        ps.sort_unstable();
        let total = ps.iter().fold(Dd::ZERO, |acc, &p| acc + Dd::int_pow(p, c));
        let deviation = (total - Dd::from(n)).abs();
        SolutionRecord {
            value: total.to_f64(),
            deviation: deviation.to_f64(),
            ambiguous: !(deviation < Dd::from(eps)),
            primes: ps,
        }
    }))
}
