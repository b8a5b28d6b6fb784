use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::Usage;

/// Environment variable that relocates relative output paths.
pub const OUT_DIR_ENV: &str = "PRIME_INEQ_OUT_DIR";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

/// Settings shared by all subcommands, after merging the config file under
/// the command-line flags.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Config {
    pub c: Option<f64>,
    #[serde(rename = "N")]
    pub n: Option<f64>,
    #[serde(rename = "X")]
    pub x: Option<f64>,
    pub eps: Option<f64>,
    pub eta: Option<f64>,
    pub k_exp: Option<f64>,
    pub seed: Option<u64>,
    pub workers: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, Usage> {
    v.parse()
        .map_err(|_| Usage(format!("config key `{key}`: cannot parse `{v}`")))
}

impl Config {
    /// Reads `key = value` lines; `#` starts a comment.
    pub fn from_file(path: &Path) -> Result<Self, Usage> {
        let text = fs::read_to_string(path)
            .map_err(|e| Usage(format!("--config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, Usage> {
        let mut map = BTreeMap::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Usage(format!("config line {}: expected key = value", no + 1)))?;
            map.insert(k.trim().to_string(), v.trim().to_string());
        }
        let mut cfg = Config::default();
        for (k, v) in &map {
            match k.as_str() {
                "c" => cfg.c = Some(parse_num(k, v)?),
                "N" | "n" => cfg.n = Some(parse_num(k, v)?),
                "X" | "x" => cfg.x = Some(parse_num(k, v)?),
                "eps" => cfg.eps = Some(parse_num(k, v)?),
                "eta" => cfg.eta = Some(parse_num(k, v)?),
                "k_exp" => cfg.k_exp = Some(parse_num(k, v)?),
                "seed" => cfg.seed = Some(parse_num(k, v)?),
                "workers" => cfg.workers = Some(parse_num(k, v)?),
                "out" => cfg.out = Some(PathBuf::from(v)),
                "format" => {
                    cfg.format = Some(match v.as_str() {
                        "json" => Format::Json,
                        "csv" => Format::Csv,
                        "text" => Format::Text,
                        _ => return Err(Usage(format!("config key `format`: expected json, csv or text, got `{v}`"))),
                    })
                }
                _ => return Err(Usage(format!("unknown config key `{k}`"))),
            }
        }
        Ok(cfg)
    }

    /// Fills every unset field of `self` from `base`.
    pub fn over(self, base: Config) -> Config {
        Config {
            c: self.c.or(base.c),
            n: self.n.or(base.n),
            x: self.x.or(base.x),
            eps: self.eps.or(base.eps),
            eta: self.eta.or(base.eta),
            k_exp: self.k_exp.or(base.k_exp),
            seed: self.seed.or(base.seed),
            workers: self.workers.or(base.workers),
            out: self.out.or(base.out),
            format: self.format.or(base.format),
        }
    }

    pub fn validate(&self) -> Result<(), Usage> {
        let positive = |name: &str, v: Option<f64>| match v {
            Some(v) if !(v > 0.0 && v.is_finite()) => Err(Usage(format!("--{name} = {v}: must be positive and finite"))),
            _ => Ok(()),
        };
        positive("c", self.c)?;
        positive("N", self.n)?;
        positive("X", self.x)?;
        positive("eps", self.eps)?;
        positive("eta", self.eta)?;
        positive("k-exp", self.k_exp)?;
        if self.workers == Some(0) {
            return Err(Usage("--workers = 0: must be at least 1".into()));
        }
        Ok(())
    }

    pub fn require_c(&self) -> Result<f64, Usage> {
        self.c.ok_or_else(|| Usage("--c is required for this command".into()))
    }

    pub fn require_n(&self) -> Result<f64, Usage> {
        self.n.ok_or_else(|| Usage("--N is required for this command".into()))
    }

    pub fn require_x(&self) -> Result<f64, Usage> {
        self.x.ok_or_else(|| Usage("--X is required for this command".into()))
    }

    /// Output path, relative paths resolved under [`OUT_DIR_ENV`] if set.
    pub fn out_path(&self) -> Option<PathBuf> {
        let p = self.out.clone()?;
        if p.is_relative() {
            if let Ok(dir) = std::env::var(OUT_DIR_ENV) {
                return Some(Path::new(&dir).join(p));
            }
        }
        Some(p)
    }
}
