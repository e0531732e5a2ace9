use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};
use sumfree_lab::config::{limits_from_env, parse_checks, Emit, Format, SweepConfig};
use sumfree_lab::output::{write_report, Row};
use sumfree_lab::{commands, run_sweep};

/// Sum-free sets in finite abelian groups.
#[derive(Parser)]
#[command(name = "sumfree-lab", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Largest sum-free density of a group given by its factors, e.g. `2,6`.
    Mu { group: String },
    /// Order, exponent and type of a group.
    Classify { group: String },
    /// Number of sum-free subsets, sigma, mu and sigma - mu.
    Census { group: String },
    /// Size of a largest sum-free subset, with a witness.
    Maxsf { group: String },
    /// Ordered Schur triples of a subset (`1,2,3`, `0x..`, `all`, or empty).
    Schur { group: String, subset: String },
    /// Sweep groups up to an order bound and write one row per check.
    Verify(VerifyArgs),
    /// Minimise the capacity- and mass-constrained cosine sum.
    Extremal {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        l: u64,
        #[arg(long)]
        cap: String,
        #[arg(long)]
        mass: String,
        /// Re-solve by vertex enumeration and require agreement.
        #[arg(long)]
        oracle: bool,
    },
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// Flat `key = value` file; flags given here override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    min_order: Option<u64>,
    #[arg(long)]
    max_order: Option<u64>,
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated check names, or `all`.
    #[arg(long)]
    checks: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    format: Option<Format>,
    #[arg(long)]
    workers: Option<usize>,
    /// `all` rows or only `failures`.
    #[arg(long)]
    emit: Option<Emit>,
    #[arg(long)]
    exhaustive_order: Option<u64>,
    #[arg(long)]
    char_budget: Option<u64>,
}

impl VerifyArgs {
    fn resolve(self) -> Result<SweepConfig> {
        let mut cfg = match &self.config {
            Some(p) => SweepConfig::load(p)?,
            None => SweepConfig::default(),
        };
        if let Some(v) = self.min_order {
            cfg.min_order = v;
        }
        if let Some(v) = self.max_order {
            cfg.max_order = v;
        }
        if let Some(v) = self.samples {
            cfg.samples = v;
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = self.checks {
            cfg.checks = parse_checks(&v)?;
        }
        if let Some(v) = self.out {
            cfg.out = v;
        }
        if let Some(v) = self.format {
            cfg.format = v;
        }
        if let Some(v) = self.workers {
            cfg.workers = v;
        }
        if let Some(v) = self.emit {
            cfg.emit = v;
        }
        if let Some(v) = self.exhaustive_order {
            cfg.exhaustive_order = v;
        }
        if let Some(v) = self.char_budget {
            cfg.char_budget = v;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn verify(args: VerifyArgs) -> Result<ExitCode> {
    let cfg = args.resolve()?;
    let res = run_sweep(&cfg)?;
    let rows = res.entries.iter().map(|e| Row::from_entry(&res.groups, e));
    write_report(&cfg.out, cfg.format, rows)?;
    let s = &res.summary;
    for (check, t) in &s.per_check {
        eprintln!(
            "{:<24} holds={:<9} fails={:<6} n/a={}",
            check.as_str(),
            t.holds,
            t.fails,
            t.not_applicable
        );
    }
    println!(
        "groups={} subsets={} triples={} rows={} hard_failures={} report_only_failures={} out={}",
        s.groups,
        s.subsets,
        s.triples,
        s.rows(),
        s.hard_failures(),
        s.soft_failures(),
        cfg.out.display()
    );
    Ok(if s.hard_failures() > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    let text = match cli.cmd {
        Cmd::Mu { group } => commands::mu(&group)?,
        Cmd::Classify { group } => commands::classify(&group)?,
        Cmd::Census { group } => commands::census(&group, limits_from_env()?)?,
        Cmd::Maxsf { group } => commands::maxsf(&group, limits_from_env()?)?,
        Cmd::Schur { group, subset } => commands::schur(&group, &subset)?,
        Cmd::Extremal {
            q,
            l,
            cap,
            mass,
            oracle,
        } => commands::extremal(q, l, &cap, &mass, oracle)?,
        Cmd::Verify(args) => return verify(args),
    };
    print!("{text}");
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
