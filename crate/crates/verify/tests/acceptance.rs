//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Runs under `cargo test` as a harness-less target.
//!
//! Criteria 5 to 10 are evaluated inside rayon pools of 1, 4 and 8 threads;
//! the 1-thread run supplies the verdicts and timings, and criterion 12
//! compares the `Debug` renderings of all three runs byte for byte.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use prime_ineq::count::{count_tuples_fast, count_tuples_naive, rs_scaling_report, CountSpec};
use prime_ineq::exact::Rational;
use prime_ineq::exppair::ChainWord;
use prime_ineq::kernel::KernelParams;
use prime_ineq::ledger::{
    self, derive_c_threshold, minor_arc_exponent, verify_bilinear_16th, verify_typeii_exponent, HbParams,
};
use prime_ineq::quad::GaussLegendre;
use prime_ineq::solver::{
    find_sextuple, find_sextuple_in, ternary_instance, senary_instance, scan_with, MainTerm,
    SolverError, TripleSolver,
};
use prime_ineq::sums::{chebyshev_points, primes_in, weyl_differencing_check, ExpSums, ProblemInstance, Which};
use prime_ineq::{Dd, ExactPair};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
    /// Full-precision rendering compared across pool sizes.
    report: String,
    notes: Vec<String>,
}

impl Outcome {
    fn new(pass: bool, detail: String) -> Self {
        Outcome {
            pass,
            detail,
            report: String::new(),
            notes: Vec::new(),
        }
    }

    fn with_report(mut self, report: String) -> Self {
        self.report = report;
        self
    }
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn timed<F: FnOnce() -> Outcome>(f: F) -> (Outcome, Duration) {
    let t = Instant::now();
    let o = f();
    (o, t.elapsed())
}

fn pair_fixtures() -> Outcome {
    let cases = [
        ("AB", rat(1, 6), rat(2, 3)),
        ("A^2B", rat(1, 14), rat(11, 14)),
        ("A^3B", rat(1, 30), rat(13, 15)),
        (ledger::LONG_CHAIN, rat(156989, 1244758), rat(875691, 1244758)),
    ];
    let mut bad = Vec::new();
    for (w, k, l) in &cases {
        let word: ChainWord = w.parse().expect("word");
        let p = ExactPair::trivial().apply_word(&word);
        if p.kappa() != k || p.lambda() != l {
            bad.push(format!("{w} -> ({}, {})", p.kappa(), p.lambda()));
        }
    }
    let detail = if bad.is_empty() {
        "4 words reproduce their pairs exactly".into()
    } else {
        bad.join("; ")
    };
    Outcome::new(bad.is_empty(), detail)
}

fn exact_ledger() -> Outcome {
    let c = derive_c_threshold();
    let c_ok = c == rat(26088036, 12301745);
    let t2 = verify_typeii_exponent();
    let t2_ok = t2.passed() && minor_arc_exponent() == rat(12195706, 12301745);
    let hb = HbParams::standard();
    let two = rat(2, 1);
    let hb_ok = &two * &hb.z + &hb.u == rat(1, 1);
    let comp = rat(1, 1) - &hb.z;
    let comp_ok = comp == rat(12513823, 24603490);
    let pass = c_ok && t2_ok && hb_ok && comp_ok;
    Outcome::new(
        pass,
        format!("c = {c}, type II ok = {t2_ok}, 2z+u = {}, 1-z = {comp}", &two * &hb.z + &hb.u),
    )
}

fn bilinear() -> Outcome {
    let r = verify_bilinear_16th();
    let pass = r.matched.len() == 21 && r.missing.is_empty() && r.extra.is_empty();
    Outcome::new(
        pass,
        format!(
            "matched {}, missing {}, extra {} ({} dominated terms pruned)",
            r.matched.len(),
            r.missing.len(),
            r.extra.len(),
            r.pruned.len()
        ),
    )
}

/// `int phi(y) cos(2 pi x y) dy` with panels aligned to the breakpoints
/// of the piecewise polynomial `phi`.
fn fourier_by_quadrature(k: &KernelParams<f64>, x: f64, g: &GaussLegendre<f64>) -> f64 {
    let m = k.boxes();
    let mut knots = vec![0.0, k.a() - k.b()];
    for i in 1..=m {
        knots.push(k.a() - k.b() + 2.0 * k.h() * i as f64);
    }
    let f = |y: f64| k.phi(y) * (2.0 * std::f64::consts::PI * x * y).cos();
    let mut total = 0.0;
    for w in knots.windows(2) {
        total += g.composite(f, w[0], w[1], 16);
    }
    2.0 * total
}

fn kernel_bound() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let g = GaussLegendre::<f64>::new(8);
    let mut worst_excess = f64::NEG_INFINITY;
    let mut worst_rel: f64 = 0.0;
    for r in 1..=8 {
        let k = KernelParams::new(0.9, 0.1, r).expect("kernel");
        for _ in 0..100_000 {
            let x: f64 = rng.gen_range(-1e3..=1e3);
            worst_excess = worst_excess.max(k.fourier(x).abs() - k.fourier_bound(x));
        }
        for j in 0..20 {
            let x = 0.17 + 0.3 * j as f64;
            let q = fourier_by_quadrature(&k, x, &g);
            let c = k.fourier(x);
            worst_rel = worst_rel.max((q - c).abs() / c.abs());
        }
    }
    let pass = worst_excess <= 1e-12 && worst_rel <= 1e-6;
    Outcome::new(
        pass,
        format!("max |Phi| - bound = {worst_excess:.3e}, max relative quadrature gap = {worst_rel:.3e}"),
    )
}

fn counting_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut results = Vec::new();
    let mut mismatches = 0;
    for _ in 0..100 {
        let y = [8, 16, 32][rng.gen_range(0..3)];
        let c = loop {
            let c: f64 = rng.gen_range(1.0..3.0);
            if c > 1.0 && (c - 2.0).abs() > 1e-3 {
                break c;
            }
        };
        let gamma = [0.01, 1.0][rng.gen_range(0..2)];
        let s = CountSpec::new(y, c, gamma).expect("spec");
        let f = count_tuples_fast(&s).expect("fast");
        let n = count_tuples_naive(&s).expect("naive");
        if f != n {
            mismatches += 1;
        }
        results.push((y, c, gamma, f));
    }
    let small = count_tuples_fast(&CountSpec::new(2, 1.5, 0.1).expect("spec")).expect("fast");
    let pass = mismatches == 0 && small.count == 6;
    Outcome::new(pass, format!("{mismatches} mismatches in 100 instances; Y=2 count = {}", small.count))
        .with_report(format!("{results:?} {small:?}"))
}

fn scaling() -> Outcome {
    let rep = rs_scaling_report(1.5, 1.0, &[64, 128, 256, 512, 1024]).expect("ladder");
    let pass = rep.slope <= 2.65;
    Outcome::new(pass, format!("slope {:.4} (limit 2.65)", rep.slope)).with_report(format!("{rep:?}"))
}

fn moments() -> Outcome {
    let c = 2.05;
    let mut ratios = [Vec::new(), Vec::new()];
    let mut raw = Vec::new();
    for x in [256.0, 512.0, 1024.0] {
        let s = ExpSums::<Dd>::new(ProblemInstance::new(c, x, 3).expect("instance")).expect("sums");
        let norm = x.powf(4.0 - c) * x.ln().powi(5);
        for (i, w) in [Which::S, Which::I].into_iter().enumerate() {
            let m = s.moment4(w);
            ratios[i].push(m.value / norm);
            raw.push(m);
        }
    }
    let spread = |v: &[f64]| v.iter().cloned().fold(0.0, f64::max) / v.iter().cloned().fold(f64::INFINITY, f64::min);
    let (ss, si) = (spread(&ratios[0]), spread(&ratios[1]));
    let pass = ss < 8.0 && si < 8.0;
    Outcome::new(
        pass,
        format!(
            "normalised ratios S {:.3e} {:.3e} {:.3e} (spread {ss:.2}), I {:.3e} {:.3e} {:.3e} (spread {si:.2})",
            ratios[0][0], ratios[0][1], ratios[0][2], ratios[1][0], ratios[1][1], ratios[1][2]
        ),
    )
    .with_report(format!("{raw:?}"))
}

fn s_versus_i() -> Outcome {
    let inst = ProblemInstance::new(2.05, 4096.0, 3).expect("instance");
    let s = ExpSums::<Dd>::new(inst).expect("sums");
    let xs = chebyshev_points(20, inst.tau);
    let p = s.s_minus_i_profile(&xs).expect("profile");
    let limit = 5.0 * 4096f64.powf(0.75);
    Outcome::new(p.max <= limit, format!("max |S - I| = {:.2} (limit {limit})", p.max)).with_report(format!("{p:?}"))
}

fn triple_regime() -> Outcome {
    let n = 1e5;
    let inst = ternary_instance(n, 1.5, None).expect("instance");
    let solver = TripleSolver::new(inst).expect("solver");
    let scan = scan_with(&solver, n, 50, 1);
    let mut mt = MainTerm::new(inst, 2.0 * n).expect("main term");
    let mut ratios = Vec::new();
    let mut rows = Vec::new();
    let mut unresolved = 0;
    for &r in &scan.samples {
        let b1 = solver.weighted_b1(r, mt.kernel());
        match mt.eval(r) {
            Ok(h) => {
                ratios.push(b1 / h);
                rows.push((r, b1, Some(h)));
            }
            Err(SolverError::NonConvergence(_)) => {
                unresolved += 1;
                rows.push((r, b1, None));
            }
            Err(e) => panic!("main term: {e}"),
        }
    }
    ratios.sort_by(f64::total_cmp);
    let median = match ratios.len() {
        0 => f64::NAN,
        l if l % 2 == 1 => ratios[l / 2],
        l => 0.5 * (ratios[l / 2 - 1] + ratios[l / 2]),
    };
    let pass = scan.zero_fraction <= 0.4 && (0.5..=2.0).contains(&median);
    let mut o = Outcome::new(
        pass,
        format!(
            "zero fraction {:.2} (limit 0.4), median count {}, median B1/H {median:.3} over {} R (band [0.5, 2]), H unresolved at {unresolved} R",
            scan.zero_fraction,
            scan.median,
            ratios.len()
        ),
    )
    .with_report(format!("{scan:?} {rows:?}"));
    if !pass {
        o.notes.push("known shortfall: sums of three prime powers are sparse just above 3X^c at this scale".into());
    }
    o
}

/// `sum p^c` in double-double.
fn power_sum_dd(primes: &[u64], c: f64) -> Dd {
    primes
        .iter()
        .fold(Dd::from_u64(0), |acc, &p| acc + Dd::from_u64(p).powf(c))
}

fn sextuple_regime() -> Outcome {
    let n = 1e6;
    let inst = senary_instance(n, 2.05, None).expect("instance");
    let out = find_sextuple(&inst, n).expect("search");
    let revalidated = |primes: &[u64]| (power_sum_dd(primes, inst.c) - Dd::from_u64(1_000_000)).abs().to_f64();
    let (pass, detail) = match &out.record {
        Some(rec) => {
            let dev = revalidated(&rec.primes);
            (
                rec.deviation < inst.eps && dev < inst.eps && !rec.ambiguous,
                format!("record {:?}, deviation {:.4e}, double-double deviation {dev:.4e}", rec.primes, rec.deviation),
            )
        }
        None => (
            false,
            format!(
                "no sextuple in (X, 2X] with X = {:.2} ({} primes, eps = {:.4})",
                inst.x, out.primes, inst.eps
            ),
        ),
    };
    let mut o = Outcome::new(pass, detail);
    let wide = primes_in(2, n.powf(1.0 / inst.c) as u64);
    let free = find_sextuple_in(&wide, inst.c, n, inst.eps).expect("unrestricted search");
    if let Some(rec) = &free {
        o.notes.push(format!(
            "primes up to N^(1/c) without the dyadic box: {:?}, deviation {:.4e}, double-double deviation {:.4e}",
            rec.primes,
            rec.deviation,
            revalidated(&rec.primes)
        ));
    }
    o.report = format!("{out:?} {free:?}");
    o
}

fn weyl() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut failures = 0;
    let mut tightest: f64 = 0.0;
    for _ in 0..1000 {
        let m = rng.gen_range(1..=128usize);
        let q = rng.gen_range(1..=m);
        let alpha: f64 = rng.gen();
        let beta: f64 = rng.gen_range(1.0..3.0);
        let noise: f64 = rng.gen();
        let z: Vec<Complex64> = (1..=m)
            .map(|i| {
                let t = alpha * (i as f64).powf(beta) + noise * rng.gen::<f64>();
                Complex64::from_polar(rng.gen_range(0.5..1.0), 2.0 * std::f64::consts::PI * t)
            })
            .collect();
        let (lhs, rhs) = weyl_differencing_check(&z, q).expect("check");
        if lhs > rhs {
            failures += 1;
        }
        tightest = tightest.max(lhs / rhs);
    }
    Outcome::new(failures == 0, format!("{failures} violations in 1000 instances, max lhs/rhs = {tightest:.4}"))
}

/// Id, name, verdict, detail, elapsed, budget, notes.
type Row = (usize, &'static str, bool, String, Duration, Duration, Vec<String>);

fn main() -> ExitCode {
    let mut rows: Vec<Row> = Vec::new();
    let mut record = |id: usize, name: &'static str, budget: Duration, (o, t): (Outcome, Duration)| {
        let within = t <= budget;
        rows.push((id, name, o.pass && within, o.detail, t, budget, o.notes));
    };

    record(1, "exponent-pair fixtures", Duration::from_millis(1), timed(pair_fixtures));
    record(2, "exact exponent ledger", Duration::from_millis(10), timed(exact_ledger));
    record(3, "bilinear term list", Duration::from_millis(100), timed(bilinear));
    record(4, "kernel bound and transform", Duration::from_secs(5), timed(kernel_bound));

    type Crit = (usize, &'static str, Duration, fn() -> Outcome);
    let pooled: [Crit; 6] = [
        (5, "counting oracle equivalence", Duration::from_secs(30), counting_oracle),
        (6, "four-tuple count scaling", Duration::from_secs(120), scaling),
        (7, "fourth moments", Duration::from_secs(300), moments),
        (8, "S versus I", Duration::from_secs(60), s_versus_i),
        (9, "ternary density", Duration::from_secs(300), triple_regime),
        (10, "senary solution", Duration::from_secs(10), sextuple_regime),
    ];
    let mut reports: Vec<Vec<String>> = Vec::new();
    for threads in [1, 4, 8] {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("pool");
        let mut these = Vec::new();
        for &(id, name, budget, f) in &pooled {
            let (o, t) = pool.install(|| timed(f));
            these.push(o.report.clone());
            if threads == 1 {
                record(id, name, budget, (o, t));
            }
        }
        reports.push(these);
    }
    record(11, "Weyl differencing", Duration::from_secs(10), timed(weyl));

    let differing: Vec<usize> = (0..pooled.len())
        .filter(|&i| reports[1][i] != reports[0][i] || reports[2][i] != reports[0][i])
        .map(|i| pooled[i].0)
        .collect();
    let det_detail = if differing.is_empty() {
        "reports for criteria 5-10 identical across 1, 4 and 8 threads".to_string()
    } else {
        format!("reports differ across thread counts for criteria {differing:?}")
    };
    rows.push((12, "determinism", differing.is_empty(), det_detail, Duration::ZERO, Duration::MAX, Vec::new()));

    rows.sort_by_key(|r| r.0);
    let mut failed = 0;
    for (id, name, pass, detail, t, budget, notes) in &rows {
        if !pass {
            failed += 1;
        }
        let time = if *budget == Duration::MAX {
            String::new()
        } else {
            format!(" [{:.3}s, budget {}s]", t.as_secs_f64(), budget.as_secs_f64())
        };
        println!("{} {id:>2} {name}: {detail}{time}", if *pass { "PASS" } else { "FAIL" });
        for n in notes {
            println!("        note: {n}");
        }
    }
    println!("acceptance: {} passed, {failed} failed", rows.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
