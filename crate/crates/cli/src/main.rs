//! Command-line front end: exponent pairs, exact ledger checks, kernel,
//! exponential sums, tuple counts and the prime solvers.
//!
//! Exit status: 0 on success, 1 when a check fails or a computation does
//! not converge, 2 on a usage error.

mod commands;
mod config;
mod emit;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use config::{Config, Format};

/// Invalid flags or flag combinations (exit status 2).
#[derive(Debug)]
pub struct Usage(pub String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

/// Outcome of a command that ran to completion.
#[derive(Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    CheckFailed,
}

#[derive(Parser, Debug)]
#[command(name = "prime-ineq", version, about = "Exponent pairs, exact exponent ledger and desk-scale prime solvers")]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Command,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Args, Debug, Default)]
pub struct Global {
    /// Flat `key = value` file; command-line flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Exponent c.
    #[arg(long, global = true)]
    pub c: Option<f64>,
    /// Target scale N.
    #[arg(long = "N", id = "big_n", global = true)]
    pub n: Option<f64>,
    /// Prime range (X, 2X].
    #[arg(long = "X", id = "big_x", global = true)]
    pub x: Option<f64>,
    /// Window half-width.
    #[arg(long, global = true)]
    pub eps: Option<f64>,
    /// Exponent in tau = X^{1-c-eta}.
    #[arg(long, global = true)]
    pub eta: Option<f64>,
    /// Exponent e in K = (ln X)^e.
    #[arg(long = "k-exp", global = true)]
    pub k_exp: Option<f64>,
    /// Random seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Output file (default stdout); relative paths honour PRIME_INEQ_OUT_DIR.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Add wall-clock time to reports (makes output run-dependent).
    #[arg(long, global = true)]
    pub timing: bool,
}

impl Global {
    fn flags(&self) -> Config {
        Config {
            c: self.c,
            n: self.n,
            x: self.x,
            eps: self.eps,
            eta: self.eta,
            k_exp: self.k_exp,
            seed: self.seed,
            workers: self.workers,
            out: self.out.clone(),
            format: self.format,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exponent pairs.
    #[command(subcommand)]
    Pairs(PairsCmd),
    /// Exact exponent checks.
    Ledger {
        /// `all`, or one of c_threshold, heathbrown, typei, typeii, bilinear, longchain.
        check: String,
    },
    /// Smoothing kernel.
    #[command(subcommand)]
    Kernel(KernelCmd),
    /// Exponential sums over primes.
    #[command(subcommand)]
    Sums(SumsCmd),
    /// Four-tuple counts.
    #[command(subcommand)]
    Count(CountCmd),
    /// Direct prime solvers.
    #[command(subcommand)]
    Solve(SolveCmd),
    /// Seeded scan of ternary counts over R in (N, 2N].
    Scan {
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Main term H(R).
    Mainterm {
        #[arg(long = "R")]
        r: Option<f64>,
        /// 3 (ternary scale) or 6 (senary scale).
        #[arg(long, default_value_t = 3)]
        k: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum PairsCmd {
    /// Apply a word such as `A^2B` to (0, 1).
    Eval {
        #[arg(long)]
        word: String,
    },
    /// Minimise an objective over words up to a depth.
    Search {
        #[arg(long)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = Objective::Sum)]
        objective: Objective,
        /// Value of c for `--objective chain`.
        #[arg(long)]
        at: Option<f64>,
        #[arg(long, default_value_t = 1 << 14)]
        width: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Objective {
    /// kappa + lambda
    Sum,
    Kappa,
    Lambda,
    /// kappa * c + lambda - kappa, with c from --at
    Chain,
}

#[derive(Args, Debug)]
pub struct KernelArgs {
    #[arg(long)]
    pub a: f64,
    #[arg(long)]
    pub b: f64,
    #[arg(long)]
    pub r: u32,
    /// Use r + 1 boxes.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Subcommand, Debug)]
pub enum KernelCmd {
    /// Tabulate phi, Phi and the bound at given points.
    Eval {
        #[command(flatten)]
        kernel: KernelArgs,
        /// Comma-separated x values.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        x: Vec<f64>,
    },
    /// Check |Phi| against the bound at seeded random points in [-range, range].
    Check {
        #[command(flatten)]
        kernel: KernelArgs,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 1000.0)]
        range: f64,
    },
}

#[derive(Subcommand, Debug)]
pub enum SumsCmd {
    /// S(x) at given points.
    Eval {
        #[arg(long = "at", value_delimiter = ',', allow_hyphen_values = true)]
        at: Vec<f64>,
    },
    /// Fourth moment of S or I over [-tau, tau].
    Moment {
        #[arg(long, value_enum, default_value_t = WhichArg::S)]
        which: WhichArg,
    },
    /// |S - I| at Chebyshev points of [-tau, tau].
    Profile {
        #[arg(long, default_value_t = 20)]
        points: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WhichArg {
    S,
    I,
}

#[derive(Subcommand, Debug)]
pub enum CountCmd {
    /// Count 4-tuples with |n1^c + n2^c - n3^c - n4^c| < gamma.
    Rs {
        #[arg(long = "Y")]
        y: u64,
        #[arg(long)]
        gamma: f64,
        #[arg(long, default_value_t = 1e-9)]
        delta: f64,
        /// Use the exhaustive counter.
        #[arg(long)]
        naive: bool,
    },
    /// Counts along a ladder of Y with the fitted growth rate.
    Ladder {
        #[arg(long = "Y", value_delimiter = ',')]
        ys: Vec<u64>,
        #[arg(long)]
        gamma: f64,
    },
    /// Sum of 1/|D| over tuples with |D| > 1/tau, by dyadic piece.
    V {
        #[arg(long = "Y")]
        y: u64,
        #[arg(long)]
        tau: f64,
    },
}

#[derive(Subcommand, Debug)]
pub enum SolveCmd {
    /// Ternary counts B, B_1 and H at one R.
    Triple {
        #[arg(long = "R")]
        r: f64,
        /// Omit the solution list.
        #[arg(long)]
        no_records: bool,
    },
    /// First six primes with |sum p^c - N| < eps.
    Sextuple,
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<Usage>().is_some() {
        return 2;
    }
    use prime_ineq::solver::SolverError;
    match err.downcast_ref::<SolverError>() {
        Some(SolverError::NonConvergence(_)) => 1,
        _ => 2,
    }
}

fn run(cli: Cli) -> anyhow::Result<Status> {
    let base = match &cli.global.config {
        Some(p) => Config::from_file(p)?,
        None => Config::default(),
    };
    let cfg = cli.global.flags().over(base);
    cfg.validate()?;
    if let Some(w) = cfg.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
            .map_err(|e| Usage(format!("--workers: {e}")))?;
    }
    let start = Instant::now();
    let mut out = emit::Output::new(&cfg, cli.global.timing.then_some(start));
    let status = commands::dispatch(&cli.cmd, &cfg, &mut out)?;
    out.finish()?;
    Ok(status)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::CheckFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
