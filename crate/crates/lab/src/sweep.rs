//! Exhaustive and sampled verification sweeps over all groups up to an order bound.

use std::collections::BTreeMap;
use std::sync::Arc;

use anyhow::{Context, Result};
use rayon::prelude::*;
use sumfree_core::coset::{
    balanced_threshold, check_backend_agreement, check_cosine_sum_with, check_density_bounds,
    check_large_pair_mass, check_middle_sum, check_small_order_coset,
    check_special_direction_bound_with, tightest_coset_pair_sum, tightest_triple_lower_bound,
};
use sumfree_core::report::Value;
use sumfree_core::{
    coset_profile, enumerate_groups, schur_count_bruteforce, special_direction, AbelianGroup,
    BoundReport, Character, CheckName, ConstantsConfig, Outcome, Rational, Subset,
};

use crate::config::{Emit, SweepConfig};
use crate::rng::{item_rng, sample_indices, sample_subset};

/// Subsets per work item in exhaustive mode.
const BATCH: u64 = 256;
/// Separates the character-sampling streams from the subset streams.
const CHAR_SALT: u64 = 0x6368_6172_6163_7465;

pub fn na(check: CheckName) -> BoundReport {
    BoundReport::not_applicable(check, Value::Real(f64::NAN), Value::Real(f64::NAN))
}

/// One report tagged with where it came from.
#[derive(Debug, Clone)]
pub struct Entry {
    pub group_idx: usize,
    pub subset_idx: u64,
    pub subset: Arc<str>,
    pub report: BoundReport,
}

impl Entry {
    fn key(&self) -> (usize, u64, CheckName, &[u64]) {
        (
            self.group_idx,
            self.subset_idx,
            self.report.check,
            self.report.character.as_deref().unwrap_or(&[]),
        )
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Tally {
    pub holds: u64,
    pub fails: u64,
    pub not_applicable: u64,
}

impl Tally {
    fn add(&mut self, o: Outcome) {
        match o {
            Outcome::Holds => self.holds += 1,
            Outcome::Fails => self.fails += 1,
            Outcome::NotApplicable => self.not_applicable += 1,
        }
    }

    fn merge(&mut self, other: &Tally) {
        self.holds += other.holds;
        self.fails += other.fails;
        self.not_applicable += other.not_applicable;
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Summary {
    pub groups: u64,
    pub subsets: u64,
    /// `(G, F, gamma)` triples that went through the per-character checks.
    pub triples: u64,
    pub per_check: BTreeMap<CheckName, Tally>,
}

impl Summary {
    fn merge(&mut self, other: &Summary) {
        self.subsets += other.subsets;
        self.triples += other.triples;
        for (c, t) in &other.per_check {
            self.per_check.entry(*c).or_default().merge(t);
        }
    }

    pub fn hard_failures(&self) -> u64 {
        self.per_check
            .iter()
            .filter(|(c, _)| c.is_hard())
            .map(|(_, t)| t.fails)
            .sum()
    }

    pub fn soft_failures(&self) -> u64 {
        self.per_check
            .iter()
            .filter(|(c, _)| !c.is_hard())
            .map(|(_, t)| t.fails)
            .sum()
    }

    pub fn rows(&self) -> u64 {
        self.per_check
            .values()
            .map(|t| t.holds + t.fails + t.not_applicable)
            .sum()
    }
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub groups: Vec<AbelianGroup>,
    /// Emitted entries in report order.
    pub entries: Vec<Entry>,
    pub summary: Summary,
}

/// Characters a subset is checked along: all nontrivial ones, or a seeded
/// sample of `budget / n` of them when `n (n - 1)` exceeds the budget.
pub fn select_characters(
    g: &AbelianGroup,
    budget: u64,
    seed: u64,
    group_idx: u64,
    subset_idx: u64,
) -> Vec<Character> {
    let n = g.len();
    if n < 2 {
        return Vec::new();
    }
    let ranks: Vec<usize> = if (n as u64) * (n as u64 - 1) <= budget {
        (1..n).collect()
    } else {
        let mut rng = item_rng(seed ^ CHAR_SALT, group_idx, subset_idx);
        let count = (budget / n as u64).max(1) as usize;
        sample_indices(n - 1, count, &mut rng)
            .into_iter()
            .map(|i| i + 1)
            .collect()
    };
    ranks
        .into_iter()
        .map(|r| Character::from_rank(g, r).expect("rank below order"))
        .collect()
}

/// Runs the enabled checks on one subset. Per-character checks report the
/// tightest `(l, j)` along each character; `large_pair_mass` runs at `t = 1/2`
/// and at the balanced threshold `~ sqrt(delta q)`.
pub fn subset_reports(
    f: &Subset,
    chars: &[Character],
    checks: &[CheckName],
    consts: &ConstantsConfig,
) -> Result<Vec<BoundReport>> {
    let on = |c: CheckName| checks.contains(&c);
    let g = f.group();
    let stats = schur_count_bruteforce(f);
    let delta = stats.delta();
    let mut out = Vec::new();

    if on(CheckName::BackendAgreement) {
        out.push(check_backend_agreement(f));
    }
    if on(CheckName::DensityThird)
        || on(CheckName::DensityExponent)
        || on(CheckName::DensityCubeRoot)
    {
        out.extend(
            check_density_bounds(f, &stats, consts)
                .into_iter()
                .filter(|r| on(r.check)),
        );
    }
    let wants_direction = on(CheckName::SpecialDirectionBound)
        || on(CheckName::CosineSum)
        || on(CheckName::SmallOrderCoset);
    if wants_direction && !g.is_trivial() {
        let dir = special_direction(f)?;
        if on(CheckName::SpecialDirectionBound) {
            out.push(
                check_special_direction_bound_with(f, &stats, &dir)
                    .unwrap_or_else(|_| na(CheckName::SpecialDirectionBound)),
            );
        }
        if on(CheckName::CosineSum) {
            out.push(check_cosine_sum_with(f, &stats, &dir, consts)?);
        }
        if on(CheckName::SmallOrderCoset) {
            out.push(check_small_order_coset(f, &stats, &dir, consts, None)?);
        }
    }

    for c in chars {
        let p = coset_profile(f, c)?;
        let coeffs = c.coeffs().coords();
        if on(CheckName::TripleLowerBound) {
            out.push(tightest_triple_lower_bound(f, &p));
        }
        if on(CheckName::CosetPairSum) {
            out.push(
                tightest_coset_pair_sum(&p, delta)
                    .unwrap_or_else(|| na(CheckName::CosetPairSum).along(coeffs)),
            );
        }
        if on(CheckName::LargePairMass) {
            let half = Rational::new(1, 2);
            out.push(check_large_pair_mass(&p, half, delta)?);
            if let Some(t) = balanced_threshold(delta, p.q()).filter(|&t| t != half) {
                out.push(check_large_pair_mass(&p, t, delta)?);
            }
        }
        if on(CheckName::MiddleSum) && p.k().is_some() {
            out.push(check_middle_sum(&p, delta)?);
        }
    }
    Ok(out)
}

struct Item {
    group_idx: usize,
    first: u64,
    end: u64,
}

fn plan(cfg: &SweepConfig, groups: &[AbelianGroup]) -> Vec<Item> {
    let mut items = Vec::new();
    for (gi, g) in groups.iter().enumerate() {
        let n = g.order();
        if n <= cfg.exhaustive_order {
            let total = 1u64 << n;
            let mut first = 0;
            while first < total {
                let end = (first + BATCH).min(total);
                items.push(Item {
                    group_idx: gi,
                    first,
                    end,
                });
                first = end;
            }
        } else {
            for s in 0..cfg.samples {
                items.push(Item {
                    group_idx: gi,
                    first: s,
                    end: s + 1,
                });
            }
        }
    }
    items
}

/// The subset with index `idx` of group number `group_idx` under `cfg`.
pub fn subset_for(cfg: &SweepConfig, g: &AbelianGroup, group_idx: usize, idx: u64) -> Subset {
    if g.order() <= cfg.exhaustive_order {
        Subset::from_bits(g, idx)
    } else {
        sample_subset(g, cfg.seed, group_idx as u64, idx)
    }
}

fn run_item(
    cfg: &SweepConfig,
    groups: &[AbelianGroup],
    item: &Item,
) -> Result<(Vec<Entry>, Summary)> {
    let g = &groups[item.group_idx];
    let per_char = cfg.checks.iter().any(|c| c.is_per_character());
    let mut entries = Vec::new();
    let mut summary = Summary::default();
    for idx in item.first..item.end {
        let f = subset_for(cfg, g, item.group_idx, idx);
        let chars = if per_char {
            select_characters(g, cfg.char_budget, cfg.seed, item.group_idx as u64, idx)
        } else {
            Vec::new()
        };
        let reports = subset_reports(&f, &chars, &cfg.checks, &cfg.constants)
            .with_context(|| format!("group {g}, subset {}", f.to_hex()))?;
        summary.subsets += 1;
        summary.triples += chars.len() as u64;
        let label: Arc<str> = Arc::from(f.to_hex());
        for r in reports {
            summary.per_check.entry(r.check).or_default().add(r.outcome);
            if cfg.emit == Emit::All || r.outcome == Outcome::Fails {
                entries.push(Entry {
                    group_idx: item.group_idx,
                    subset_idx: idx,
                    subset: label.clone(),
                    report: r,
                });
            }
        }
    }
    Ok((entries, summary))
}

/// Groups of order in `[max(2, min_order), max_order]`, in enumeration order.
pub fn sweep_groups(cfg: &SweepConfig) -> Vec<AbelianGroup> {
    let lo = cfg.min_order.max(2);
    enumerate_groups(cfg.max_order)
        .filter(|g| g.order() >= lo)
        .collect()
}

pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepResult> {
    cfg.validate()?;
    let groups = sweep_groups(cfg);
    let items = plan(cfg, &groups);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .context("starting worker pool")?;
    let parts: Vec<(Vec<Entry>, Summary)> = pool.install(|| {
        items
            .par_iter()
            .map(|item| run_item(cfg, &groups, item))
            .collect::<Result<Vec<_>>>()
    })?;

    let mut summary = Summary {
        groups: groups.len() as u64,
        ..Summary::default()
    };
    let mut entries = Vec::new();
    for (e, s) in parts {
        summary.merge(&s);
        entries.extend(e);
    }
    // items already come back in plan order; the stable sort pins the contract
    entries.sort_by(|a, b| a.key().cmp(&b.key()));
    Ok(SweepResult {
        groups,
        entries,
        summary,
    })
}
