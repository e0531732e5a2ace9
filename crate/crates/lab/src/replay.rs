//! Recomputes a report row from its context columns alone.

use anyhow::{anyhow, bail, ensure, Context, Result};
use sumfree_core::coset::{
    check_backend_agreement, check_coset_pair_sums, check_cosine_sum_with, check_density_bounds,
    check_large_pair_mass, check_middle_sum, check_small_order_coset,
    check_special_direction_bound_with, check_triple_lower_bound,
};
use sumfree_core::fourier::real_transform;
use sumfree_core::report::Params;
use sumfree_core::{
    coset_profile, schur_count_bruteforce, special_direction, AbelianGroup, BoundReport, Character,
    CheckName, ConstantsConfig, Subset,
};

use crate::output::Row;
use crate::sweep::na;

fn parse_character(g: &AbelianGroup, label: &str) -> Result<Option<Character>> {
    if label.is_empty() {
        return Ok(None);
    }
    let coeffs = label
        .split(':')
        .map(|a| {
            a.parse::<u64>()
                .with_context(|| format!("bad character {label:?}"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Some(
        Character::from_coeffs(g, &coeffs).map_err(|e| anyhow!("{e}"))?,
    ))
}

/// The report a row describes, recomputed through the library.
pub fn replay(row: &Row, consts: &ConstantsConfig) -> Result<BoundReport> {
    let err = |e: sumfree_core::Error| anyhow!("{e}");
    let check: CheckName = row.check_name.parse().map_err(err)?;
    let g: AbelianGroup = row.group.parse().map_err(err)?;
    let f = Subset::parse(&g, &row.subset).map_err(err)?;
    let c = parse_character(&g, &row.char)?;
    let params: Params = row.params.parse().map_err(err)?;
    let stats = schur_count_bruteforce(&f);
    let delta = stats.delta();
    if let Some(d) = params.delta {
        ensure!(
            d == delta,
            "recorded delta {d} differs from recomputed {delta}"
        );
    }

    if check.is_per_character() {
        let c = c.ok_or_else(|| anyhow!("{check} row has no character"))?;
        let p = coset_profile(&f, &c).map_err(err)?;
        let report = match check {
            CheckName::TripleLowerBound => {
                let (l, j) = params.l.zip(params.j).context("missing l or j")?;
                check_triple_lower_bound(&f, &p, l, j)
            }
            CheckName::CosetPairSum => match params.l.zip(params.j) {
                Some((l, j)) => check_coset_pair_sums(&p, delta)
                    .into_iter()
                    .find(|r| r.params.l == Some(l) && r.params.j == Some(j))
                    .context("no pair-sum report for that (l, j)")?,
                None => na(check).along(c.coeffs().coords()),
            },
            CheckName::LargePairMass => {
                let t = params.t.context("missing t")?;
                check_large_pair_mass(&p, t, delta).map_err(err)?
            }
            CheckName::MiddleSum => check_middle_sum(&p, delta).map_err(err)?,
            _ => unreachable!("per-character checks are listed above"),
        };
        return Ok(report);
    }

    match check {
        CheckName::BackendAgreement => Ok(check_backend_agreement(&f)),
        CheckName::DensityThird | CheckName::DensityExponent | CheckName::DensityCubeRoot => {
            check_density_bounds(&f, &stats, consts)
                .into_iter()
                .find(|r| r.check == check)
                .context("density report missing")
        }
        CheckName::SpecialDirectionBound | CheckName::CosineSum | CheckName::SmallOrderCoset => {
            if g.is_trivial() {
                bail!("{check} is undefined on the trivial group");
            }
            // rows that were not applicable carry no character; find the direction again
            let dir = match c {
                Some(c) => {
                    let v = real_transform(&f, &c);
                    (c, v)
                }
                None => special_direction(&f).map_err(err)?,
            };
            Ok(match check {
                CheckName::SpecialDirectionBound => {
                    check_special_direction_bound_with(&f, &stats, &dir)
                        .unwrap_or_else(|_| na(check))
                }
                CheckName::CosineSum => {
                    check_cosine_sum_with(&f, &stats, &dir, consts).map_err(err)?
                }
                _ => check_small_order_coset(&f, &stats, &dir, consts, None).map_err(err)?,
            })
        }
        _ => unreachable!("subset checks are listed above"),
    }
}

/// Replays `row` and reports whether every column comes back identical.
pub fn replay_matches(row: &Row, consts: &ConstantsConfig) -> Result<bool> {
    let g: AbelianGroup = row.group.parse().map_err(|e| anyhow!("{e}"))?;
    let r = replay(row, consts)?;
    Ok(Row::new(&g, &row.subset, &r) == *row)
}
