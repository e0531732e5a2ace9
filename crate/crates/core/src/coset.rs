//! Coset-density profiles along a character and the inequality checkers built on them.
//!
//! For a character `gamma` of order `q`, `H_j` is the set where `gamma` equals
//! `exp(2 pi i j / q)`; these are the cosets of `H = ker gamma`, each of size
//! `n / q`. For a subset `F`, `F_j = F ∩ H_j` and `alpha_j = |F_j| / |H_j|`.
//!
//! When `q = 6k + 1` the residues are split into
//! `LOW = {k+1..2k}`, `MID = {2k+1..4k}` and `TOP = {4k+1..5k}`; doubling
//! `LOW ∪ TOP` lands exactly on `MID`.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::character::{cos_turn, Character};
use crate::error::{Error, Result};
use crate::fourier::{schur_count_bruteforce, special_direction, SchurStats};
use crate::group::{AbelianGroup, GroupType};
use crate::report::{BoundReport, CheckName, Params, Value};
use crate::subset::Subset;
use crate::{to_f64, Rational};

/// Additive slack for comparisons against irrational right-hand sides.
pub const IRRATIONAL_TOLERANCE: f64 = 1e-9;
/// Slack, per group element, for the special-direction bound.
pub const DIRECTION_BOUND_TOLERANCE: f64 = 1e-6;

/// Constants that the inequalities leave unspecified.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantsConfig {
    /// Upper limit `eta / 5` on `delta` for the cosine-sum check.
    pub eta: f64,
    /// `eta` for the small-order coset check, which uses `delta <= eta / q^5`.
    pub eta_small_order: f64,
    pub delta0: f64,
    /// Largest character order the small-order coset check applies to.
    pub q0: u64,
    /// Capacity parameter: weights are bounded by `(1 + 1/c) / 2`.
    pub c: f64,
    /// Constant used by the report-only cube-root density bound.
    pub c_empirical: f64,
}

impl Default for ConstantsConfig {
    fn default() -> Self {
        let eta = libm::ldexp(1.0, -20);
        ConstantsConfig {
            eta,
            eta_small_order: libm::ldexp(1.0, -50),
            // 8 delta0 = 1/6 - 1/(2 pi) - eta
            delta0: (1.0 / 6.0 - 1.0 / (2.0 * core::f64::consts::PI) - eta) / 8.0,
            q0: 11,
            c: 4.0,
            c_empirical: 4.0,
        }
    }
}

impl ConstantsConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = self.eta > 0.0
            && self.eta_small_order > 0.0
            && self.delta0 > 0.0
            && self.q0 > 0
            && self.c > 0.0
            && self.c_empirical > 0.0;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(
                "constants must be strictly positive",
            ))
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CosetProfile {
    character: Character,
    coset_size: u64,
    counts: Vec<u64>,
}

impl CosetProfile {
    pub fn character(&self) -> &Character {
        &self.character
    }

    pub fn q(&self) -> u64 {
        self.character.order()
    }

    /// `|H| = n / q`.
    pub fn coset_size(&self) -> u64 {
        self.coset_size
    }

    /// `|F_j|` for `j` in `0..q`.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// `|F_j|` with `j` read modulo `q`.
    pub fn count(&self, j: u64) -> u64 {
        self.counts[(j % self.q()) as usize]
    }

    pub fn alpha(&self, j: u64) -> Rational {
        Rational::new(self.count(j) as i128, self.coset_size as i128)
    }

    pub fn alphas(&self) -> Vec<Rational> {
        (0..self.q()).map(|j| self.alpha(j)).collect()
    }

    /// `k` with `q = 6k + 1`, when `q` has that form.
    pub fn k(&self) -> Option<u64> {
        let q = self.q();
        (q % 6 == 1 && q > 1).then_some((q - 1) / 6)
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    fn coeffs(&self) -> &[u64] {
        self.character.coeffs().coords()
    }
}

/// Splits `f` across the cosets of `ker c`.
pub fn coset_profile(f: &Subset, c: &Character) -> Result<CosetProfile> {
    if f.group() != c.group() {
        return Err(Error::GroupMismatch);
    }
    if c.is_trivial() {
        return Err(Error::TrivialCharacter);
    }
    let q = c.order();
    let n = f.group().order();
    let mut counts = vec![0u64; q as usize];
    for x in f.iter() {
        counts[c.phase(x) as usize] += 1;
    }
    let profile = CosetProfile {
        character: c.clone(),
        coset_size: n / q,
        counts,
    };
    debug_assert_eq!(n % q, 0);
    debug_assert_eq!(profile.total() as usize, f.len());
    debug_assert!(profile.counts.iter().all(|&x| x <= profile.coset_size));
    Ok(profile)
}

/// Ordered Schur-triple counts bucketed by the cosets of `x` and `y`:
/// entry `[l * q + j]` counts `x in F_l`, `y in F_j` with `x + y in F_{j+l}`.
pub fn triple_counts_by_coset(f: &Subset, p: &CosetProfile) -> Vec<u64> {
    let g = f.group();
    let q = p.q();
    let c = &p.character;
    let members: Vec<(usize, u64)> = f.iter().map(|x| (x, c.phase(x))).collect();
    let mut out = vec![0u64; (q * q) as usize];
    for &(x, l) in &members {
        for &(y, j) in &members {
            let z = g.add_ranks(x, y);
            if f.contains(z) && c.phase(z) == (j + l) % q {
                out[(l * q + j) as usize] += 1;
            }
        }
    }
    out
}

fn triple_lower_bound(p: &CosetProfile, l: u64, j: u64) -> i128 {
    let (fl, fj, fjl) = (p.count(l), p.count(j), p.count(j + l));
    let h = p.coset_size as i128;
    (fl as i128 * (fj as i128 + fjl as i128 - h)).max(0)
}

fn triple_report(p: &CosetProfile, l: u64, j: u64, lower: i128, actual: u64) -> BoundReport {
    BoundReport::new(
        CheckName::TripleLowerBound,
        Rational::from_integer(lower),
        Rational::from_integer(actual as i128),
        lower <= actual as i128,
    )
    .along(p.coeffs())
    .with_params(Params {
        l: Some(l % p.q()),
        j: Some(j % p.q()),
        ..Params::default()
    })
}

/// Lower bound on the triples with `x in F_l`, `y in F_j`, `z in F_{j+l}` against a direct count.
pub fn check_triple_lower_bound(f: &Subset, p: &CosetProfile, l: u64, j: u64) -> BoundReport {
    let g = f.group();
    let c = &p.character;
    let q = p.q();
    let (l, j) = (l % q, j % q);
    let mut actual = 0u64;
    for x in f.iter().filter(|&x| c.phase(x) == l) {
        for y in f.iter().filter(|&y| c.phase(y) == j) {
            let z = g.add_ranks(x, y);
            if f.contains(z) && c.phase(z) == (j + l) % q {
                actual += 1;
            }
        }
    }
    triple_report(p, l, j, triple_lower_bound(p, l, j), actual)
}

/// [`check_triple_lower_bound`] for every `(l, j)`, sharing one pass over `F x F`.
pub fn check_triple_lower_bounds(f: &Subset, p: &CosetProfile) -> Vec<BoundReport> {
    let q = p.q();
    let table = triple_counts_by_coset(f, p);
    let mut out = Vec::with_capacity((q * q) as usize);
    for l in 0..q {
        for j in 0..q {
            let actual = table[(l * q + j) as usize];
            out.push(triple_report(p, l, j, triple_lower_bound(p, l, j), actual));
        }
    }
    out
}

/// The `(l, j)` pair with the least slack in [`check_triple_lower_bounds`].
pub fn tightest_triple_lower_bound(f: &Subset, p: &CosetProfile) -> BoundReport {
    let q = p.q();
    let table = triple_counts_by_coset(f, p);
    let mut best: Option<(i128, u64, u64)> = None;
    for l in 0..q {
        for j in 0..q {
            let slack = table[(l * q + j) as usize] as i128 - triple_lower_bound(p, l, j);
            if best.is_none_or(|(s, _, _)| slack < s) {
                best = Some((slack, l, j));
            }
        }
    }
    let (_, l, j) = best.expect("q >= 1");
    triple_report(
        p,
        l,
        j,
        triple_lower_bound(p, l, j),
        table[(l * q + j) as usize],
    )
}

fn pair_sum_report(p: &CosetProfile, delta: Rational, l: u64, j: u64) -> BoundReport {
    let q = p.q() as i128;
    let lhs = p.alpha(j) + p.alpha(j + l);
    let rhs = Rational::from_integer(1) + delta * Rational::from_integer(q * q) / p.alpha(l);
    BoundReport::new(CheckName::CosetPairSum, lhs, rhs, lhs <= rhs)
        .along(p.coeffs())
        .with_params(Params {
            l: Some(l),
            j: Some(j),
            delta: Some(delta),
            ..Params::default()
        })
}

/// Slack of the coset pair-sum inequality scaled by `|H| |F_l| denom(delta)`, in integers.
fn pair_sum_slack(p: &CosetProfile, delta: Rational, l: u64, j: u64) -> (i128, i128) {
    let h = p.coset_size as i128;
    let q = p.q() as i128;
    let (cl, cj, cjl) = (
        p.count(l) as i128,
        p.count(j) as i128,
        p.count(j + l) as i128,
    );
    let (dn, dd) = (*delta.numer(), *delta.denom());
    // alpha_j + alpha_{j+l} <= 1 + delta q^2 / alpha_l, times h * c_l * dd
    let slack = dd * h * cl + dn * q * q * h * h - dd * cl * (cj + cjl);
    (slack, h * cl * dd)
}

/// One report per `(l, j)` with `alpha_l > 0`: `alpha_j + alpha_{j+l} <= 1 + delta q^2 / alpha_l`.
pub fn check_coset_pair_sums(p: &CosetProfile, delta: Rational) -> Vec<BoundReport> {
    let q = p.q();
    let mut out = Vec::new();
    for l in (0..q).filter(|&l| p.count(l) > 0) {
        for j in 0..q {
            out.push(pair_sum_report(p, delta, l, j));
        }
    }
    out
}

/// The pair with the least normalised slack, or `None` when `F` is empty.
pub fn tightest_coset_pair_sum(p: &CosetProfile, delta: Rational) -> Option<BoundReport> {
    let q = p.q();
    let mut best: Option<(Rational, u64, u64)> = None;
    for l in (0..q).filter(|&l| p.count(l) > 0) {
        for j in 0..q {
            let (num, den) = pair_sum_slack(p, delta, l, j);
            let slack = Rational::new(num, den);
            if best.is_none_or(|(s, _, _)| slack < s) {
                best = Some((slack, l, j));
            }
        }
    }
    best.map(|(_, l, j)| pair_sum_report(p, delta, l, j))
}

/// `L(t) = {i : alpha_i + alpha_{2i} >= 1 + t}`.
pub fn large_pair_set(p: &CosetProfile, t: Rational) -> Vec<u64> {
    let bar = Rational::from_integer(1) + t;
    (0..p.q())
        .filter(|&i| p.alpha(i) + p.alpha(2 * i) >= bar)
        .collect()
}

/// `sum_{i in L(t)} alpha_i <= delta q^2 / t`.
pub fn check_large_pair_mass(
    p: &CosetProfile,
    t: Rational,
    delta: Rational,
) -> Result<BoundReport> {
    if t <= Rational::zero() {
        return Err(Error::InvalidParameter("t must be positive"));
    }
    let lhs: Rational = large_pair_set(p, t).into_iter().map(|i| p.alpha(i)).sum();
    let q = p.q() as i128;
    let rhs = delta * Rational::from_integer(q * q) / t;
    Ok(
        BoundReport::new(CheckName::LargePairMass, lhs, rhs, lhs <= rhs)
            .along(p.coeffs())
            .with_params(Params {
                t: Some(t),
                delta: Some(delta),
                ..Params::default()
            }),
    )
}

/// A rational within `2^-24` relative of `sqrt(delta q)`, used as the natural `t`.
pub fn balanced_threshold(delta: Rational, q: u64) -> Option<Rational> {
    if delta <= Rational::zero() {
        return None;
    }
    let x = libm::sqrt(to_f64(delta) * q as f64);
    let den: i128 = 1 << 24;
    let num = libm::round(x * den as f64) as i128;
    (num > 0).then(|| Rational::new(num, den))
}

/// The pairs `(i, 2i mod q)` for `i` in `LOW ∪ TOP`, checked to partition `{k+1..5k}`.
pub fn middle_pairing(q: u64) -> Result<Vec<(u64, u64)>> {
    if q % 6 != 1 || q < 7 {
        return Err(Error::OrderNotOneModSix(q));
    }
    let k = (q - 1) / 6;
    let pairs: Vec<(u64, u64)> = (k + 1..=2 * k)
        .chain(4 * k + 1..=5 * k)
        .map(|i| (i, 2 * i % q))
        .collect();
    let mut seen = vec![false; q as usize];
    for &(a, b) in &pairs {
        for x in [a, b] {
            if !(k + 1..=5 * k).contains(&x) || seen[x as usize] {
                return Err(Error::InvalidParameter(
                    "pairs do not partition the middle interval",
                ));
            }
            seen[x as usize] = true;
        }
    }
    if pairs.len() as u64 != 2 * k {
        return Err(Error::InvalidParameter("wrong number of pairs"));
    }
    Ok(pairs)
}

/// `sum_{i=k+1}^{5k} alpha_i <= 2k + 2 delta^{1/2} q^{3/2}`.
///
/// The comparison is exact (squaring away the root); a float comparison with
/// [`IRRATIONAL_TOLERANCE`] is accepted as well.
pub fn check_middle_sum(p: &CosetProfile, delta: Rational) -> Result<BoundReport> {
    let q = p.q();
    let k = p.k().ok_or(Error::OrderNotOneModSix(q))?;
    let lhs: Rational = (k + 1..=5 * k).map(|i| p.alpha(i)).sum();
    let rhs = 2.0 * k as f64 + 2.0 * libm::sqrt(to_f64(delta)) * libm::pow(q as f64, 1.5);
    let excess = lhs - Rational::from_integer(2 * k as i128);
    let qi = q as i128;
    let exact = excess <= Rational::zero()
        || excess * excess <= Rational::from_integer(4 * qi * qi * qi) * delta;
    let holds = exact || to_f64(lhs) <= rhs + IRRATIONAL_TOLERANCE;
    Ok(BoundReport::new(CheckName::MiddleSum, lhs, rhs, holds)
        .along(p.coeffs())
        .with_params(Params {
            delta: Some(delta),
            ..Params::default()
        }))
}

/// `Re F^(gamma_s) <= (delta - alpha^3) n / (alpha (1 - alpha))`, given the triple count and direction.
pub fn check_special_direction_bound_with(
    f: &Subset,
    stats: &SchurStats,
    direction: &(Character, f64),
) -> Result<BoundReport> {
    let alpha = f.density();
    if alpha.is_zero() || alpha == Rational::from_integer(1) {
        return Err(Error::DegenerateDensity);
    }
    let n = f.group().order() as i128;
    let delta = stats.delta();
    let one = Rational::from_integer(1);
    let rhs = (delta - alpha * alpha * alpha) / (alpha * (one - alpha)) * Rational::from_integer(n);
    let lhs = direction.1;
    let holds = lhs <= to_f64(rhs) + DIRECTION_BOUND_TOLERANCE * n as f64;
    Ok(
        BoundReport::new(CheckName::SpecialDirectionBound, lhs, rhs, holds)
            .along(direction.0.coeffs().coords())
            .with_params(Params {
                delta: Some(delta),
                ..Params::default()
            }),
    )
}

pub fn check_special_direction_bound(f: &Subset) -> Result<BoundReport> {
    let stats = schur_count_bruteforce(f);
    let direction = special_direction(f)?;
    check_special_direction_bound_with(f, &stats, &direction)
}

fn not_applicable(check: CheckName) -> BoundReport {
    BoundReport::not_applicable(check, Value::Real(f64::NAN), Value::Real(f64::NAN))
}

/// `q^-1 sum_j alpha_j cos(2 pi j / q) + mu(Z_q)^2 / (1 - mu(Z_q)) < 6 delta` along the
/// special direction. Report-only; not applicable unless the group is type III,
/// `|F| >= mu n` and `delta <= eta / 5`.
pub fn check_cosine_sum_with(
    f: &Subset,
    stats: &SchurStats,
    direction: &(Character, f64),
    cfg: &ConstantsConfig,
) -> Result<BoundReport> {
    let g = f.group();
    let check = CheckName::CosineSum;
    if g.is_trivial() || g.classify() != GroupType::III {
        return Ok(not_applicable(check));
    }
    let mu = g.mu()?;
    let delta = stats.delta();
    if f.density() < mu || to_f64(delta) > cfg.eta / 5.0 || direction.0.is_trivial() {
        return Ok(not_applicable(check));
    }
    let p = coset_profile(f, &direction.0)?;
    let q = p.q();
    let h = p.coset_size() as f64;
    let weighted: f64 = (0..q)
        .map(|j| p.count(j) as f64 / h * cos_turn(j, q))
        .sum::<f64>()
        / q as f64;
    let mu_q = to_f64(AbelianGroup::cyclic(q)?.mu()?);
    let lhs = weighted + mu_q * mu_q / (1.0 - mu_q);
    let rhs = 6.0 * to_f64(delta);
    Ok(
        BoundReport::new(check, lhs, rhs, lhs < rhs + IRRATIONAL_TOLERANCE)
            .along(direction.0.coeffs().coords())
            .with_params(Params {
                delta: Some(delta),
                ..Params::default()
            }),
    )
}

pub fn check_cosine_sum(f: &Subset, cfg: &ConstantsConfig) -> Result<BoundReport> {
    if f.group().is_trivial() {
        return Ok(not_applicable(CheckName::CosineSum));
    }
    let stats = schur_count_bruteforce(f);
    let direction = special_direction(f)?;
    check_cosine_sum_with(f, &stats, &direction, cfg)
}

/// Exact test of `x <= 3 delta^{1/3}`, i.e. `x <= 0` or `x^3 <= 27 delta`.
fn within_cube_root(x: Rational, delta: Rational) -> bool {
    x <= Rational::zero() || x * x * x <= Rational::from_integer(27) * delta
}

/// Density bounds driven by the triple count: the `max(1/3, ...)` bound, the
/// type III exponent bound, and the report-only bound with `cfg.c_empirical`.
pub fn check_density_bounds(
    f: &Subset,
    stats: &SchurStats,
    cfg: &ConstantsConfig,
) -> Vec<BoundReport> {
    let g = f.group();
    let Ok(mu) = g.mu() else {
        return vec![
            not_applicable(CheckName::DensityThird),
            not_applicable(CheckName::DensityExponent),
            not_applicable(CheckName::DensityCubeRoot),
        ];
    };
    let alpha = f.density();
    let delta = stats.delta();
    let cbrt = libm::cbrt(to_f64(delta));
    let params = Params {
        delta: Some(delta),
        ..Params::default()
    };
    let third = Rational::new(1, 3);

    let rhs_a = f64::max(1.0 / 3.0, to_f64(mu) + 3.0 * cbrt);
    let holds_a = alpha <= third || within_cube_root(alpha - mu, delta);
    let a = BoundReport::new(CheckName::DensityThird, alpha, rhs_a, holds_a)
        .with_params(params.clone());

    let b = if g.classify() == GroupType::III {
        let m = g.exponent() as i128;
        let shift = mu + Rational::new(1, 3 * m);
        let rhs_b = to_f64(shift) + 3.0 * cbrt;
        BoundReport::new(
            CheckName::DensityExponent,
            alpha,
            rhs_b,
            within_cube_root(alpha - shift, delta),
        )
        .with_params(params.clone())
    } else {
        not_applicable(CheckName::DensityExponent)
    };

    let rhs_c = to_f64(mu) + cfg.c_empirical * cbrt;
    let c = BoundReport::new(
        CheckName::DensityCubeRoot,
        alpha,
        rhs_c,
        to_f64(alpha) <= rhs_c + IRRATIONAL_TOLERANCE,
    )
    .with_params(params);
    vec![a, b, c]
}

/// Default index set `{0..k} ∪ {5k+1..6k}` for [`check_small_order_coset`].
pub fn outer_indices(q: u64) -> Vec<u64> {
    let k = (q - 1) / 6;
    (0..=k).chain(5 * k + 1..q).collect()
}

/// `max_{i in indices} alpha_i <= 64 delta^{1/3} q^{2/3}` along the special direction.
///
/// Report-only. Applicable for type III groups with `delta^{1/3} m < 1`,
/// `q <= q0`, `delta <= eta_small_order / q^5` and `|F| > mu n`.
pub fn check_small_order_coset(
    f: &Subset,
    stats: &SchurStats,
    direction: &(Character, f64),
    cfg: &ConstantsConfig,
    indices: Option<&[u64]>,
) -> Result<BoundReport> {
    let g = f.group();
    let check = CheckName::SmallOrderCoset;
    if g.is_trivial() || g.classify() != GroupType::III {
        return Ok(not_applicable(check));
    }
    let delta = to_f64(stats.delta());
    let q = direction.0.order();
    let applicable = libm::cbrt(delta) * (g.exponent() as f64) < 1.0
        && q <= cfg.q0
        && delta <= cfg.eta_small_order / libm::pow(q as f64, 5.0)
        && f.density() > g.mu()?;
    if !applicable {
        return Ok(not_applicable(check));
    }
    let p = coset_profile(f, &direction.0)?;
    let default = outer_indices(q);
    let indices = indices.unwrap_or(&default);
    let lhs = indices
        .iter()
        .map(|&i| p.alpha(i))
        .max()
        .unwrap_or_else(Rational::zero);
    let rhs = 64.0 * libm::cbrt(delta) * libm::pow(q as f64, 2.0 / 3.0);
    Ok(
        BoundReport::new(check, lhs, rhs, to_f64(lhs) <= rhs + IRRATIONAL_TOLERANCE)
            .along(direction.0.coeffs().coords())
            .with_params(Params {
                delta: Some(stats.delta()),
                ..Params::default()
            }),
    )
}

/// Absolute difference of the two triple counts; nonzero or a Fourier fault fails.
pub fn check_backend_agreement(f: &Subset) -> BoundReport {
    let brute = schur_count_bruteforce(f);
    let (fourier, ok) = match crate::fourier::schur_count_fourier(f) {
        Ok(s) => (s.triples() as i128, true),
        Err(_) => (-1, false),
    };
    let diff = (fourier - brute.triples() as i128).abs();
    BoundReport::new(
        CheckName::BackendAgreement,
        Rational::from_integer(if ok { diff } else { -1 }),
        Rational::zero(),
        ok && diff == 0,
    )
    .with_params(Params {
        delta: Some(brute.delta()),
        ..Params::default()
    })
}
