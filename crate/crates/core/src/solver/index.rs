use rayon::prelude::*;
use serde::Serialize;

use super::{expect_k, SolutionRecord, SolverError};
use crate::dd::Dd;
use crate::kernel::KernelParams;
use crate::reduce::pairwise_sum;
use crate::scalar::PowerScalar;
use crate::sums::{PrimeTable, ProblemInstance};

/// Largest number of ordered prime pairs held in the index.
pub const PAIR_LIMIT: usize = 100_000_000;

/// Ordered prime pairs sorted by `p_i^c + p_j^c`.
struct PairIndex {
    sums: Vec<Dd>,
    approx: Vec<f64>,
    pairs: Vec<(u32, u32)>,
}

impl PairIndex {
    fn new(pows: &[Dd]) -> Self {
        let n = pows.len();
        let mut all: Vec<(Dd, (u32, u32))> = (0..n)
            .into_par_iter()
            .flat_map_iter(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| (pows[i] + pows[j], (i as u32, j as u32)))
            .collect();
        all.par_sort_unstable_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
        PairIndex {
            approx: all.iter().map(|e| e.0.to_f64()).collect(),
            sums: all.iter().map(|e| e.0).collect(),
            pairs: all.into_iter().map(|e| e.1).collect(),
        }
    }

    /// Index range whose `f64` sums may lie in `(lo, hi)`; callers decide
    /// membership in double-double.
    fn candidates(&self, lo: f64, hi: f64) -> std::ops::Range<usize> {
        let slack = 1e-9 * hi.abs().max(1.0);
        let a = self.approx.partition_point(|&v| v < lo - slack);
        let b = self.approx.partition_point(|&v| v <= hi + slack);
        a..b.max(a)
    }
}

/// Triple counts for one `R`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BResult {
    #[serde(rename = "R")]
    pub r: f64,
    pub count: u64,
    pub weighted: f64,
    pub records: Vec<SolutionRecord>,
}

/// Ternary counting over one prime table, reusable across many `R`.
pub struct TripleSolver {
    inst: ProblemInstance,
    table: PrimeTable,
    pows: Vec<Dd>,
    index: PairIndex,
}

struct Hit {
    third: usize,
    pair: usize,
    dev: Dd,
    approx_inside: bool,
}

impl TripleSolver {
    pub fn new(inst: ProblemInstance) -> Result<Self, SolverError> {
        let table = PrimeTable::sieve(inst.x)?;
        Self::with_table(inst, table)
    }

    pub fn with_table(inst: ProblemInstance, table: PrimeTable) -> Result<Self, SolverError> {
        expect_k(&inst, 3)?;
        let n = table.len();
        if n.saturating_mul(n) > PAIR_LIMIT {
            return Err(SolverError::SizeGuard(format!("{n}^2 prime pairs exceed {PAIR_LIMIT}")));
        }
        let pows: Vec<Dd> = table.primes().iter().map(|&p| Dd::int_pow(p, inst.c)).collect();
        let index = PairIndex::new(&pows);
        Ok(TripleSolver {
            inst,
            table,
            pows,
            index,
        })
    }

    pub fn instance(&self) -> &ProblemInstance {
        &self.inst
    }

    pub fn table(&self) -> &PrimeTable {
        &self.table
    }

    /// Ordered triples with `|sum - R| < w`, grouped by third prime.
    fn hits(&self, r: f64, w: f64) -> Vec<Vec<Hit>> {
        let rd = Dd::from(r);
        let wd = Dd::from(w);
        let primes = self.table.primes();
        (0..self.pows.len())
            .into_par_iter()
            .map(|k| {
                let rest = r - self.pows[k].to_f64();
                let pk = primes[k] as f64;
                self.index
                    .candidates(rest - w, rest + w)
                    .filter_map(|idx| {
                        let dev = (self.index.sums[idx] + self.pows[k] - rd).abs();
                        if !(dev < wd) {
                            return None;
                        }
                        let (i, j) = self.index.pairs[idx];
                        let approx: f64 = [primes[i as usize] as f64, primes[j as usize] as f64, pk]
                            .iter()
                            .map(|p| p.powf(self.inst.c))
                            .sum();
                        Some(Hit {
                            third: k,
                            pair: idx,
                            dev,
                            approx_inside: (approx - r).abs() < w,
                        })
                    })
                    .collect()
            })
            .collect()
    }

    fn weight(&self, h: &Hit) -> f64 {
        let (i, j) = self.index.pairs[h.pair];
        let logs = self.table.logs();
        logs[i as usize] * logs[j as usize] * logs[h.third]
    }

    /// `B(R)`: ordered triples with `|p_1^c + p_2^c + p_3^c - R| < eps`,
    /// unweighted and weighted by `ln p_1 ln p_2 ln p_3`.
    pub fn count_b(&self, r: f64, keep_records: bool) -> BResult {
        let groups = self.hits(r, self.inst.eps);
        let count = groups.iter().map(|g| g.len() as u64).sum();
        let weights: Vec<f64> = groups
            .iter()
            .map(|g| pairwise_sum(&g.iter().map(|h| self.weight(h)).collect::<Vec<_>>()))
            .collect();
        let records = if keep_records {
            let primes = self.table.primes();
            groups
                .iter()
                .flatten()
                .map(|h| {
                    let (i, j) = self.index.pairs[h.pair];
                    SolutionRecord {
                        primes: vec![primes[i as usize], primes[j as usize], primes[h.third]],
                        value: (self.index.sums[h.pair] + self.pows[h.third]).to_f64(),
                        deviation: h.dev.to_f64(),
                        ambiguous: !h.approx_inside,
                    }
                })
                .collect()
        } else {
            Vec::new()
        };
        BResult {
            r,
            count,
            weighted: pairwise_sum(&weights),
            records,
        }
    }

    /// `B_1(R) = sum ln p_1 ln p_2 ln p_3 phi(p_1^c + p_2^c + p_3^c - R)`.
    pub fn weighted_b1(&self, r: f64, kernel: &KernelParams<f64>) -> f64 {
        let w = kernel.a() + kernel.b();
        let groups = self.hits(r, w);
        let rd = Dd::from(r);
        let parts: Vec<f64> = groups
            .iter()
            .map(|g| {
                let v: Vec<f64> = g
                    .iter()
                    .map(|h| {
                        let delta = (self.index.sums[h.pair] + self.pows[h.third] - rd).to_f64();
                        self.weight(h) * kernel.phi(delta)
                    })
                    .collect();
                pairwise_sum(&v)
            })
            .collect();
        pairwise_sum(&parts)
    }
}

/// One-shot [`TripleSolver::count_b`] with records.
pub fn count_b(inst: &ProblemInstance, r: f64) -> Result<BResult, SolverError> {
    Ok(TripleSolver::new(*inst)?.count_b(r, true))
}

/// One-shot [`TripleSolver::weighted_b1`] with the instance kernel.
pub fn weighted_b1(inst: &ProblemInstance, r: f64) -> Result<f64, SolverError> {
    let kernel = KernelParams::from_instance(inst.eps, inst.x)?;
    Ok(TripleSolver::new(*inst)?.weighted_b1(r, &kernel))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::ternary_instance;
    use rand::{Rng, SeedableRng};

    fn brute(inst: &ProblemInstance, r: f64) -> (u64, f64) {
        let t = PrimeTable::sieve(inst.x).unwrap();
        let p = t.primes();
        let mut n = 0;
        let mut w = 0.0;
        for &a in p {
            for &b in p {
                for &c in p {
                    let s = Dd::int_pow(a, inst.c) + Dd::int_pow(b, inst.c) + Dd::int_pow(c, inst.c);
                    if (s - Dd::from(r)).abs() < Dd::from(inst.eps) {
                        n += 1;
                        w += (a as f64).ln() * (b as f64).ln() * (c as f64).ln();
                    }
                }
            }
        }
        (n, w)
    }

    #[test]
    fn integer_case() {
        let inst = ProblemInstance::new(1.0, 5.0, 3).unwrap().with_eps(0.4).unwrap();
        let b = count_b(&inst, 21.0).unwrap();
        assert_eq!(b.count, 1);
        assert_eq!(b.records[0].primes, vec![7, 7, 7]);
        assert!(!b.records[0].ambiguous);
        assert_eq!(count_b(&inst, 21.5).unwrap().count, 0);
    }

    #[test]
    fn matches_brute_force() {
        let inst = ProblemInstance::new(1.5, 120.0, 3).unwrap().with_eps(0.5).unwrap();
        let s = TripleSolver::new(inst).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let lo = 3.0 * 120f64.powf(1.5);
        for _ in 0..20 {
            let r = lo * rng.gen_range(1.2..2.5);
            let (n, w) = brute(&inst, r);
            let b = s.count_b(r, true);
            assert_eq!(b.count, n);
            assert!((b.weighted - w).abs() < 1e-9 * w.max(1.0));
            for rec in &b.records {
                assert!(rec.deviation < inst.eps);
            }
        }
    }

    #[test]
    fn permutation_invariance() {
        // Reversing the prime list reorders every enumeration; counts agree.
        let inst = ProblemInstance::new(1.5, 200.0, 3).unwrap().with_eps(0.3).unwrap();
        let t = PrimeTable::sieve(200.0).unwrap();
        let s = TripleSolver::with_table(inst, t.clone()).unwrap();
        let mut rev = Vec::new();
        let pows: Vec<Dd> = t.primes().iter().rev().map(|&p| Dd::int_pow(p, 1.5)).collect();
        for i in 0..pows.len() {
            for j in 0..pows.len() {
                rev.push(pows[i] + pows[j]);
            }
        }
        let r = 2.0 * 3.0 * 200f64.powf(1.5);
        let mut n = 0;
        for v in &rev {
            for p in &pows {
                n += ((*v + *p - Dd::from(r)).abs() < Dd::from(0.3)) as u64;
            }
        }
        assert_eq!(s.count_b(r, false).count, n);
    }

    #[test]
    fn smoothed_below_sharp() {
        let inst = ternary_instance(2e4, 1.5, None).unwrap();
        let s = TripleSolver::new(inst).unwrap();
        let k = KernelParams::from_instance(inst.eps, inst.x).unwrap();
        let lo = 3.0 * inst.x.powf(1.5);
        let mut positive = 0;
        for f in [1.3, 1.5, 1.8, 2.2, 2.6] {
            let b = s.count_b(f * lo, false);
            let b1 = s.weighted_b1(f * lo, &k);
            assert!(b1 <= b.weighted + 1e-9, "{b1} > {}", b.weighted);
            assert!(b.weighted >= 0.0);
            assert!(b.weighted <= (2.0 * inst.x).ln().powi(3) * b.count as f64);
            positive += (b1 > 0.0) as u32;
        }
        assert!(positive > 0);
        assert_eq!(s.weighted_b1(lo - 1.0, &k), 0.0);
    }

    #[test]
    fn flat_region_full_weight() {
        let inst = ProblemInstance::new(1.5, 150.0, 3).unwrap().with_eps(0.5).unwrap();
        let s = TripleSolver::new(inst).unwrap();
        let k = KernelParams::from_instance(0.5, 150.0).unwrap();
        let lo = 3.0 * 150f64.powf(1.5);
        for f in [1.5, 2.0] {
            let flat = ProblemInstance { eps: k.a() - k.b(), ..inst };
            let in_flat = TripleSolver::new(flat).unwrap().count_b(f * lo, false);
            // B_1 >= weight of the flat region, which counts in full.
            assert!(s.weighted_b1(f * lo, &k) >= in_flat.weighted - 1e-9);
        }
    }

    #[test]
    fn rejects_wrong_arity() {
        let inst = ProblemInstance::new(1.5, 100.0, 6).unwrap();
        assert!(matches!(TripleSolver::new(inst), Err(SolverError::Arity { .. })));
    }
}
