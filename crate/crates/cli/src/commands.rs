use anyhow::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use prime_ineq::count::{count_tuples_fast, count_tuples_naive, harmonic_v, rs_scaling_report, CountSpec};
use prime_ineq::exact::fmt_ratio;
use prime_ineq::exppair::{search_pairs, ChainWord, SearchOptions};
use prime_ineq::ledger::{self, LedgerReport};
use prime_ineq::solver::{
    exceptional_scan, find_sextuple, ternary_instance, senary_instance, MainTerm, TripleSolver,
};
use prime_ineq::sums::{chebyshev_points, ExpSums, ProblemInstance, Which};
use prime_ineq::{ExactPair, KernelParams};

use crate::config::{Config, Format};
use crate::emit::{num, Output};
use crate::{Command, CountCmd, KernelArgs, KernelCmd, Objective, PairsCmd, SolveCmd, Status, SumsCmd, Usage, WhichArg};

pub fn dispatch(cmd: &Command, cfg: &Config, out: &mut Output) -> Result<Status> {
    match cmd {
        Command::Pairs(p) => pairs(p, out),
        Command::Ledger { check } => ledger_cmd(check, out),
        Command::Kernel(k) => kernel(k, cfg, out),
        Command::Sums(s) => sums(s, cfg, out),
        Command::Count(c) => count(c, cfg, out),
        Command::Solve(s) => solve(s, cfg, out),
        Command::Scan { samples } => scan(*samples, cfg, out),
        Command::Mainterm { r, k } => mainterm(*r, *k, cfg, out),
    }
}

fn pair_json(p: &ExactPair) -> Value {
    json!({ "kappa": fmt_ratio(p.kappa()), "lambda": fmt_ratio(p.lambda()) })
}

fn pairs(cmd: &PairsCmd, out: &mut Output) -> Result<Status> {
    match cmd {
        PairsCmd::Eval { word } => {
            let w: ChainWord = word
                .parse()
                .map_err(|e| Usage(format!("--word `{word}`: {e}")))?;
            let p = ExactPair::trivial().apply_word(&w);
            match out.format(Format::Text) {
                Format::Json => out.json("pairs eval", json!({ "word": w.to_string(), "pair": pair_json(&p) }))?,
                Format::Csv => out.csv(&["word", "kappa", "lambda"], [[w.to_string(), fmt_ratio(p.kappa()), fmt_ratio(p.lambda())]])?,
                Format::Text => out.text(&format!("{} {}\n", fmt_ratio(p.kappa()), fmt_ratio(p.lambda()))),
            }
        }
        PairsCmd::Search { depth, objective, at, width } => {
            if *depth == 0 {
                return Err(Usage("--depth must be at least 1".into()).into());
            }
            if *width == 0 {
                return Err(Usage("--width must be at least 1".into()).into());
            }
            let c = match (objective, at) {
                (Objective::Chain, None) => return Err(Usage("--objective chain needs --at <c>".into()).into()),
                (_, Some(c)) => *c,
                (_, None) => 0.0,
            };
            let obj = *objective;
            let f = move |p: &ExactPair| {
                let (k, l) = p.to_f64();
                match obj {
                    Objective::Sum => k + l,
                    Objective::Kappa => k,
                    Objective::Lambda => l,
                    Objective::Chain => k * c + l - k,
                }
            };
            let r = search_pairs(f, *depth, SearchOptions { width: *width });
            match out.format(Format::Json) {
                Format::Csv => out.csv(
                    &["word", "kappa", "lambda", "value", "exhaustive"],
                    [[
                        r.word.to_string(),
                        fmt_ratio(r.pair.kappa()),
                        fmt_ratio(r.pair.lambda()),
                        num(r.value),
                        r.exhaustive.to_string(),
                    ]],
                )?,
                Format::Text => out.text(&format!("{} {} {}\n", fmt_ratio(r.pair.kappa()), fmt_ratio(r.pair.lambda()), r.word)),
                Format::Json => out.json(
                    "pairs search",
                    json!({
                        "depth": depth,
                        "objective": format!("{obj:?}").to_lowercase(),
                        "width": width,
                        "word": r.word.to_string(),
                        "pair": pair_json(&r.pair),
                        "value": r.value,
                        "exhaustive": r.exhaustive,
                    }),
                )?,
            }
        }
    }
    Ok(Status::Ok)
}

const LEDGER_CHECKS: [&str; 6] = ["c_threshold", "heathbrown", "typei", "typeii", "bilinear", "longchain"];

fn ledger_cmd(check: &str, out: &mut Output) -> Result<Status> {
    let one = |name: &str| -> LedgerReport {
        match name {
            "c_threshold" => ledger::verify_c_threshold(),
            "heathbrown" => ledger::verify_heathbrown_params(&ledger::HbParams::standard()),
            "typei" => ledger::verify_typei_thresholds(),
            "typeii" => ledger::verify_typeii_exponent(),
            "bilinear" => ledger::verify_bilinear_16th_terms(),
            _ => ledger::verify_longchain_usage(&ledger::derive_c_threshold()),
        }
    };
    let reports: Vec<LedgerReport> = if check == "all" {
        ledger::all_reports()
    } else if LEDGER_CHECKS.contains(&check) {
        vec![one(check)]
    } else {
        return Err(Usage(format!(
            "ledger check `{check}`: expected all or one of {}",
            LEDGER_CHECKS.join(", ")
        ))
        .into());
    };
    let pass = reports.iter().all(LedgerReport::passed);
    match out.format(Format::Text) {
        Format::Text => {
            for r in &reports {
                out.text(&r.to_string());
            }
            out.text(if pass { "ALL PASS\n" } else { "FAILED\n" });
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = reports
                .iter()
                .flat_map(|r| {
                    r.checks.iter().map(move |c| {
                        vec![
                            r.name.clone(),
                            c.check.clone(),
                            fmt_ratio(&c.lhs),
                            c.rel.symbol().to_string(),
                            fmt_ratio(&c.rhs),
                            c.pass.to_string(),
                            fmt_ratio(&c.slack()),
                        ]
                    })
                })
                .collect();
            out.csv(&["report", "check", "lhs", "rel", "rhs", "pass", "slack"], rows)?;
        }
        Format::Json => {
            let mut body = json!({
                "pass": pass,
                "reports": reports.iter().map(LedgerReport::to_json).collect::<Vec<_>>(),
            });
            if check == "bilinear" || check == "all" {
                body["bilinear_terms"] = ledger::verify_bilinear_16th().to_json();
            }
            out.json("ledger", body)?;
        }
    }
    Ok(if pass { Status::Ok } else { Status::CheckFailed })
}

fn kernel_params(k: &KernelArgs) -> Result<KernelParams<f64>> {
    let p = if k.strict {
        KernelParams::strict(k.a, k.b, k.r)
    } else {
        KernelParams::new(k.a, k.b, k.r)
    };
    Ok(p.map_err(|e| Usage(format!("--a/--b/--r: {e}")))?)
}

fn kernel_rows(p: &KernelParams<f64>, xs: &[f64]) -> Vec<[f64; 4]> {
    xs.iter()
        .map(|&x| [x, p.phi(x), p.fourier(x), p.fourier_bound(x)])
        .collect()
}

fn kernel(cmd: &KernelCmd, cfg: &Config, out: &mut Output) -> Result<Status> {
    let header = ["x", "phi", "Phi", "bound"];
    match cmd {
        KernelCmd::Eval { kernel, x } => {
            let p = kernel_params(kernel)?;
            if x.is_empty() {
                return Err(Usage("--x needs at least one value".into()).into());
            }
            let rows = kernel_rows(&p, x);
            if out.format(Format::Csv) == Format::Json {
                out.json("kernel eval", json!({ "rows": rows }))?;
            } else {
                out.csv(&header, rows.iter().map(|r| r.iter().map(|v| num(*v))))?;
            }
            Ok(Status::Ok)
        }
        KernelCmd::Check { kernel, samples, range } => {
            let p = kernel_params(kernel)?;
            if !range.is_finite() || *range <= 0.0 {
                return Err(Usage(format!("--range = {range}: must be positive")).into());
            }
            let seed = cfg.seed.unwrap_or(0);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let xs: Vec<f64> = (0..*samples).map(|_| rng.gen_range(-range..*range)).collect();
            let rows = kernel_rows(&p, &xs);
            let violations = rows.iter().filter(|r| r[2].abs() > r[3] + 1e-12).count();
            if out.format(Format::Csv) == Format::Json {
                out.json(
                    "kernel check",
                    json!({ "seed": seed, "samples": samples, "violations": violations, "rows": rows }),
                )?;
            } else {
                out.csv(&header, rows.iter().map(|r| r.iter().map(|v| num(*v))))?;
            }
            Ok(if violations == 0 { Status::Ok } else { Status::CheckFailed })
        }
    }
}

fn sums_instance(cfg: &Config) -> Result<ProblemInstance> {
    let mut inst = ProblemInstance::new(cfg.require_c()?, cfg.require_x()?, 3).map_err(|e| Usage(e.to_string()))?;
    if let Some(eta) = cfg.eta {
        inst = inst.with_eta(eta).map_err(|e| Usage(format!("--eta: {e}")))?;
    }
    if let Some(e) = cfg.k_exp {
        inst = inst.with_k_exponent(e).map_err(|e| Usage(format!("--k-exp: {e}")))?;
    }
    if let Some(eps) = cfg.eps {
        inst = inst.with_eps(eps).map_err(|e| Usage(format!("--eps: {e}")))?;
    }
    Ok(inst)
}

fn sums(cmd: &SumsCmd, cfg: &Config, out: &mut Output) -> Result<Status> {
    let inst = sums_instance(cfg)?;
    let s = ExpSums::<prime_ineq::Dd>::new(inst)?;
    match cmd {
        SumsCmd::Eval { at } => {
            if at.is_empty() {
                return Err(Usage("--at needs at least one value".into()).into());
            }
            let rows: Vec<_> = at.iter().map(|&x| (x, s.sum_s(x))).collect();
            if out.format(Format::Csv) == Format::Json {
                let v: Vec<Value> = rows
                    .iter()
                    .map(|(x, z)| json!({ "x": x, "re": z.re, "im": z.im, "abs": z.norm() }))
                    .collect();
                out.json("sums eval", json!({ "rows": v }))?;
            } else {
                out.csv(
                    &["x", "re", "im", "abs"],
                    rows.iter().map(|(x, z)| [num(*x), num(z.re), num(z.im), num(z.norm())]),
                )?;
            }
        }
        SumsCmd::Moment { which } => {
            let w = match which {
                WhichArg::S => Which::S,
                WhichArg::I => Which::I,
            };
            let m = s.moment4(w);
            let big_x = inst.x;
            let scale = big_x.powf(4.0 - inst.c) * big_x.ln().powi(5);
            out.json(
                "sums moment",
                json!({
                    "which": w,
                    "tau": inst.tau,
                    "moment": m,
                    "normalised": m.value / scale,
                }),
            )?;
        }
        SumsCmd::Profile { points } => {
            if *points == 0 {
                return Err(Usage("--points must be at least 1".into()).into());
            }
            let p = s.s_minus_i_profile(&chebyshev_points(*points, inst.tau))?;
            out.json(
                "sums profile",
                json!({ "tau": inst.tau, "profile": p, "reference": 5.0 * inst.x.powf(0.75) }),
            )?;
        }
    }
    Ok(Status::Ok)
}

fn count(cmd: &CountCmd, cfg: &Config, out: &mut Output) -> Result<Status> {
    let c = cfg.require_c()?;
    match cmd {
        CountCmd::Rs { y, gamma, delta, naive } => {
            let spec = CountSpec::new(*y, c, *gamma)?.with_delta(*delta)?;
            let r = if *naive { count_tuples_naive(&spec)? } else { count_tuples_fast(&spec)? };
            out.json(
                "count rs",
                json!({ "spec": spec, "algorithm": if *naive { "naive" } else { "fast" }, "count": r.count, "ambiguous": r.ambiguous }),
            )?;
            Ok(Status::Ok)
        }
        CountCmd::Ladder { ys, gamma } => {
            let r = rs_scaling_report(c, *gamma, ys)?;
            if out.format(Format::Csv) == Format::Json {
                out.json("count ladder", serde_json::to_value(&r)?)?;
            } else {
                out.csv(
                    &["Y", "count", "ambiguous"],
                    r.points.iter().map(|p| [p.y.to_string(), p.count.to_string(), p.ambiguous.to_string()]),
                )?;
                eprintln!(
                    "slope {:.4} vs {} + {}: {}{}",
                    r.slope,
                    r.predicted,
                    r.allowance,
                    if r.pass { "pass" } else { "FAIL" },
                    if r.out_of_regime { " (out of regime)" } else { "" }
                );
            }
            Ok(if r.pass { Status::Ok } else { Status::CheckFailed })
        }
        CountCmd::V { y, tau } => {
            let v = harmonic_v(&CountSpec::new(*y, c, 1.0)?, *tau)?;
            if out.format(Format::Json) == Format::Csv {
                out.csv(
                    &["ell", "value", "count"],
                    v.buckets.iter().map(|b| [num(b.ell), num(b.value), b.count.to_string()]),
                )?;
            } else {
                out.json("count V", json!({ "Y": y, "tau": tau, "V": v }))?;
            }
            Ok(Status::Ok)
        }
    }
}

fn ternary(cfg: &Config) -> Result<(f64, ProblemInstance)> {
    let n = cfg.require_n()?;
    Ok((n, ternary_instance(n, cfg.require_c()?, cfg.eps)?))
}

fn main_term_json(mt: &mut MainTerm, r: f64) -> Value {
    match mt.eval(r) {
        Ok(h) => json!(h),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

fn solve(cmd: &SolveCmd, cfg: &Config, out: &mut Output) -> Result<Status> {
    match cmd {
        SolveCmd::Triple { r, no_records } => {
            let (_, inst) = ternary(cfg)?;
            let solver = TripleSolver::new(inst)?;
            let b = solver.count_b(*r, !no_records);
            let mut mt = MainTerm::new(inst, *r)?;
            let b1 = solver.weighted_b1(*r, mt.kernel());
            let h = main_term_json(&mut mt, *r);
            out.json(
                "solve triple",
                json!({
                    "X": inst.x,
                    "eps": inst.eps,
                    "R": b.r,
                    "count": b.count,
                    "weighted": b.weighted,
                    "B1": b1,
                    "H": h,
                    "records": b.records,
                }),
            )?;
        }
        SolveCmd::Sextuple => {
            let n = cfg.require_n()?;
            let inst = senary_instance(n, cfg.require_c()?, cfg.eps)?;
            let s = find_sextuple(&inst, n)?;
            out.json(
                "solve sextuple",
                json!({ "N": n, "X": inst.x, "eps": inst.eps, "outcome": s }),
            )?;
        }
    }
    Ok(Status::Ok)
}

fn scan(samples: usize, cfg: &Config, out: &mut Output) -> Result<Status> {
    if samples == 0 {
        return Err(Usage("--samples must be at least 1".into()).into());
    }
    let (n, inst) = ternary(cfg)?;
    let rep = exceptional_scan(&inst, n, samples, cfg.seed.unwrap_or(1))?;
    if out.format(Format::Csv) == Format::Json {
        out.json("scan", json!({ "X": inst.x, "eps": inst.eps, "report": rep }))?;
    } else {
        out.text(&rep.to_csv());
    }
    Ok(Status::Ok)
}

fn mainterm(r: Option<f64>, k: u32, cfg: &Config, out: &mut Output) -> Result<Status> {
    let n = cfg.require_n()?;
    let c = cfg.require_c()?;
    let inst = match k {
        3 => ternary_instance(n, c, cfg.eps)?,
        6 => senary_instance(n, c, cfg.eps)?,
        _ => return Err(Usage(format!("--k = {k}: must be 3 or 6")).into()),
    };
    let r = r.unwrap_or(n);
    let mut mt = MainTerm::new(inst, r)?;
    let h = mt.eval(r)?;
    out.json(
        "mainterm",
        json!({
            "k": k,
            "X": inst.x,
            "eps": inst.eps,
            "R": r,
            "H": h,
            "reach": mt.reach(),
            "normalised": h / (inst.eps * inst.x.powf(k as f64 - c)),
        }),
    )?;
    Ok(Status::Ok)
}
