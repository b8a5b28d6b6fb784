use std::fs;
use std::io::Write;
use std::time::Instant;

use serde_json::{json, Map, Value};

use crate::config::{Config, Format};

pub const SCHEMA: u64 = 1;

/// Buffers one command's report and writes it to the configured target.
pub struct Output {
    cfg: Config,
    start: Option<Instant>,
    buf: Vec<u8>,
}

impl Output {
    pub fn new(cfg: &Config, start: Option<Instant>) -> Self {
        Output {
            cfg: cfg.clone(),
            start,
            buf: Vec::new(),
        }
    }

    /// Requested format, or `default` when none was given.
    pub fn format(&self, default: Format) -> Format {
        self.cfg.format.unwrap_or(default)
    }

    /// Writes `{"schema": 1, "command": .., "config": {..}, ..body}`.
    pub fn json(&mut self, command: &str, body: Value) -> anyhow::Result<()> {
        let mut m = Map::new();
        m.insert("schema".into(), json!(SCHEMA));
        m.insert("command".into(), json!(command));
        m.insert("config".into(), serde_json::to_value(&self.cfg)?);
        if let Value::Object(b) = body {
            m.extend(b);
        } else {
            m.insert("result".into(), body);
        }
        if let Some(t) = self.start {
            m.insert("elapsed".into(), json!(t.elapsed().as_secs_f64()));
        }
        serde_json::to_writer_pretty(&mut self.buf, &Value::Object(m))?;
        self.buf.push(b'\n');
        Ok(())
    }

    /// Header row then records, RFC 4180 quoting.
    pub fn csv<R, I>(&mut self, header: &[&str], rows: R) -> anyhow::Result<()>
    where
        R: IntoIterator<Item = I>,
        I: IntoIterator<Item = String>,
    {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(header)?;
        for r in rows {
            w.write_record(r)?;
        }
        self.buf.extend(w.into_inner()?);
        Ok(())
    }

    pub fn text(&mut self, s: &str) {
        self.buf.extend_from_slice(s.as_bytes());
    }

    pub fn finish(self) -> anyhow::Result<()> {
        if let (Some(t), false) = (self.start, self.buf.starts_with(b"{")) {
            eprintln!("elapsed {:.3}s", t.elapsed().as_secs_f64());
        }
        match self.cfg.out_path() {
            Some(p) => {
                if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                    fs::create_dir_all(dir)?;
                }
                fs::write(&p, &self.buf)?;
            }
            None => {
                let mut o = std::io::stdout().lock();
                o.write_all(&self.buf)?;
                o.flush()?;
            }
        }
        Ok(())
    }
}

/// Shortest round-trip decimal form.
pub fn num(v: f64) -> String {
    format!("{v:?}")
}
