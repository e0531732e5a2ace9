//! Sweep configuration: defaults, a flat `key = value` file format, and the
//! `SUMFREE_LAB_LIMIT` override for census limits.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, ensure, Context, Result};
use sumfree_core::{CheckName, ConstantsConfig, Limits};

use crate::rng::RNG_ALGORITHM;

pub const LIMIT_ENV: &str = "SUMFREE_LAB_LIMIT";
pub const DEFAULT_CHAR_BUDGET: u64 = 1_000_000;
pub const DEFAULT_EXHAUSTIVE_ORDER: u64 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Jsonl,
}

impl FromStr for Format {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "csv" => Ok(Format::Csv),
            "jsonl" => Ok(Format::Jsonl),
            other => bail!("unknown format {other:?} (expected csv or jsonl)"),
        }
    }
}

impl Format {
    pub fn as_str(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Jsonl => "jsonl",
        }
    }
}

/// Which rows end up in the report file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Emit {
    All,
    /// Rows whose outcome is `false`, hard or report-only.
    Failures,
}

impl FromStr for Emit {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "all" => Ok(Emit::All),
            "failures" => Ok(Emit::Failures),
            other => bail!("unknown emit mode {other:?} (expected all or failures)"),
        }
    }
}

impl Emit {
    pub fn as_str(self) -> &'static str {
        match self {
            Emit::All => "all",
            Emit::Failures => "failures",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub min_order: u64,
    pub max_order: u64,
    /// Random subsets per group above the exhaustive order.
    pub samples: u64,
    pub seed: u64,
    pub checks: Vec<CheckName>,
    pub out: PathBuf,
    pub format: Format,
    pub workers: usize,
    pub emit: Emit,
    /// Groups up to this order get every subset instead of samples.
    pub exhaustive_order: u64,
    /// When `n (n - 1)` exceeds this, characters are sampled down to `budget / n`.
    pub char_budget: u64,
    pub rng: String,
    pub constants: ConstantsConfig,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            min_order: 2,
            max_order: 12,
            samples: 20,
            seed: 1,
            checks: CheckName::ALL.to_vec(),
            out: PathBuf::from("reports.csv"),
            format: Format::Csv,
            workers: 1,
            emit: Emit::All,
            exhaustive_order: DEFAULT_EXHAUSTIVE_ORDER,
            char_budget: DEFAULT_CHAR_BUDGET,
            rng: RNG_ALGORITHM.to_string(),
            constants: ConstantsConfig::default(),
        }
    }
}

pub fn parse_checks(list: &str) -> Result<Vec<CheckName>> {
    let list = list.trim();
    if list.is_empty() || list == "all" {
        return Ok(CheckName::ALL.to_vec());
    }
    let mut out = Vec::new();
    for name in list.split(',') {
        let c: CheckName = name.parse().map_err(|e| anyhow::anyhow!("{e}"))?;
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out.sort();
    Ok(out)
}

fn number<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| anyhow::anyhow!("{key}: cannot parse {value:?}"))
}

impl SweepConfig {
    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        match key.trim() {
            "min_order" => self.min_order = number(key, value)?,
            "max_order" => self.max_order = number(key, value)?,
            "samples" => self.samples = number(key, value)?,
            "seed" => self.seed = number(key, value)?,
            "checks" => self.checks = parse_checks(value)?,
            "out" => self.out = PathBuf::from(value),
            "format" => self.format = value.parse()?,
            "workers" => self.workers = number(key, value)?,
            "emit" => self.emit = value.parse()?,
            "exhaustive_order" => self.exhaustive_order = number(key, value)?,
            "char_budget" => self.char_budget = number(key, value)?,
            "rng" => self.rng = value.to_string(),
            "eta" => self.constants.eta = number(key, value)?,
            "eta_small_order" => self.constants.eta_small_order = number(key, value)?,
            "delta0" => self.constants.delta0 = number(key, value)?,
            "q0" => self.constants.q0 = number(key, value)?,
            "c" => self.constants.c = number(key, value)?,
            "c_empirical" => self.constants.c_empirical = number(key, value)?,
            other => bail!("unknown config key {other:?}"),
        }
        Ok(())
    }

    /// Parses the flat format: one `key = value` per line, `#` starts a comment.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut cfg = SweepConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .with_context(|| format!("line {}: expected key = value", i + 1))?;
            cfg.set(k, v).with_context(|| format!("line {}", i + 1))?;
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        Self::parse_text(&text).with_context(|| format!("in config {}", path.display()))
    }

    /// The same settings in file form; `parse_text(to_text())` round-trips.
    pub fn to_text(&self) -> String {
        let c = &self.constants;
        let checks: Vec<&str> = self.checks.iter().map(|c| c.as_str()).collect();
        let mut s = String::new();
        let _ = writeln!(s, "min_order = {}", self.min_order);
        let _ = writeln!(s, "max_order = {}", self.max_order);
        let _ = writeln!(s, "samples = {}", self.samples);
        let _ = writeln!(s, "seed = {}", self.seed);
        let _ = writeln!(s, "checks = {}", checks.join(","));
        let _ = writeln!(s, "out = {}", self.out.display());
        let _ = writeln!(s, "format = {}", self.format.as_str());
        let _ = writeln!(s, "workers = {}", self.workers);
        let _ = writeln!(s, "emit = {}", self.emit.as_str());
        let _ = writeln!(s, "exhaustive_order = {}", self.exhaustive_order);
        let _ = writeln!(s, "char_budget = {}", self.char_budget);
        let _ = writeln!(s, "rng = {}", self.rng);
        let _ = writeln!(s, "eta = {:?}", c.eta);
        let _ = writeln!(s, "eta_small_order = {:?}", c.eta_small_order);
        let _ = writeln!(s, "delta0 = {:?}", c.delta0);
        let _ = writeln!(s, "q0 = {}", c.q0);
        let _ = writeln!(s, "c = {:?}", c.c);
        let _ = writeln!(s, "c_empirical = {:?}", c.c_empirical);
        s
    }

    pub fn validate(&self) -> Result<()> {
        ensure!(self.max_order >= 2, "max_order must be at least 2");
        ensure!(
            self.min_order <= self.max_order,
            "min_order exceeds max_order"
        );
        ensure!(self.workers >= 1, "workers must be at least 1");
        ensure!(self.char_budget >= 1, "char_budget must be positive");
        ensure!(!self.checks.is_empty(), "no checks selected");
        ensure!(
            self.rng == RNG_ALGORITHM,
            "unsupported rng {:?} (this build implements {RNG_ALGORITHM})",
            self.rng
        );
        self.constants
            .validate()
            .map_err(|e| anyhow::anyhow!("{e}"))?;
        Ok(())
    }
}

/// Census limits, with both overridden by `SUMFREE_LAB_LIMIT` when it is set.
pub fn limits_from_env() -> Result<Limits> {
    limits_from(std::env::var(LIMIT_ENV).ok().as_deref())
}

pub fn limits_from(value: Option<&str>) -> Result<Limits> {
    let mut limits = Limits::default();
    if let Some(v) = value.map(str::trim).filter(|v| !v.is_empty()) {
        let n: usize = v
            .parse()
            .map_err(|_| anyhow::anyhow!("{LIMIT_ENV}: expected an integer, got {v:?}"))?;
        limits.count = n;
        limits.search = n;
    }
    Ok(limits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let mut cfg = SweepConfig {
            max_order: 30,
            checks: vec![CheckName::MiddleSum, CheckName::DensityThird],
            format: Format::Jsonl,
            ..SweepConfig::default()
        };
        cfg.constants.c = 2.5;
        let back = SweepConfig::parse_text(&cfg.to_text()).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn comments_and_errors() {
        let cfg = SweepConfig::parse_text("# sweep\nmax_order = 20 # inline\n\nseed=9\n").unwrap();
        assert_eq!((cfg.max_order, cfg.seed), (20, 9));
        assert!(SweepConfig::parse_text("bogus = 1").is_err());
        assert!(SweepConfig::parse_text("max_order").is_err());
        assert!(SweepConfig::parse_text("format = xml").is_err());
        assert!(SweepConfig::parse_text("checks = middle_sum,nope").is_err());
    }

    #[test]
    fn validation() {
        let mut cfg = SweepConfig::default();
        assert!(cfg.validate().is_ok());
        cfg.max_order = 1;
        assert!(cfg.validate().is_err());
        cfg.max_order = 10;
        cfg.rng = "mt19937".into();
        assert!(cfg.validate().is_err());
        cfg.rng = RNG_ALGORITHM.into();
        cfg.constants.eta = 0.0;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn limit_override() {
        assert_eq!(limits_from(None).unwrap(), Limits::default());
        let l = limits_from(Some("60")).unwrap();
        assert_eq!((l.count, l.search), (60, 60));
        assert!(limits_from(Some("many")).is_err());
    }

    #[test]
    fn check_lists_are_sorted_and_deduplicated() {
        let c = parse_checks("middle_sum,triple_lower_bound,middle_sum").unwrap();
        assert_eq!(c, vec![CheckName::TripleLowerBound, CheckName::MiddleSum]);
        assert_eq!(parse_checks("all").unwrap().len(), CheckName::ALL.len());
    }
}
