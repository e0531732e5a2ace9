//! Exact enumeration of sum-free subsets.
//!
//! Both searches run over `u128` masks, so groups above 128 elements are
//! always refused regardless of the configured limits.

use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use crate::subset::Subset;
use crate::Rational;

pub const DEFAULT_COUNT_LIMIT: usize = 48;
pub const DEFAULT_SEARCH_LIMIT: usize = 128;
/// Width of the search masks.
pub const MAX_MASK_ORDER: usize = 128;

/// Largest group orders accepted by [`count_sumfree`] and [`max_sumfree`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub count: usize,
    pub search: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            count: DEFAULT_COUNT_LIMIT,
            search: DEFAULT_SEARCH_LIMIT,
        }
    }
}

impl Limits {
    fn admit(limit: usize, g: &AbelianGroup) -> Result<()> {
        let limit = limit.min(MAX_MASK_ORDER);
        if g.len() > limit {
            return Err(Error::LimitExceeded {
                order: g.len(),
                limit,
            });
        }
        Ok(())
    }
}

/// True iff no `x, y` in `f` (possibly equal) have `x + y` in `f`.
pub fn is_sumfree(f: &Subset) -> bool {
    let g = f.group();
    let members: Vec<usize> = f.iter().collect();
    members
        .iter()
        .all(|&x| members.iter().all(|&y| !f.contains(g.add_ranks(x, y))))
}

#[inline]
fn bit(x: usize) -> u128 {
    1u128 << x
}

#[inline]
fn below(hi: usize) -> u128 {
    if hi >= 128 {
        u128::MAX
    } else {
        bit(hi) - 1
    }
}

/// Shared state for both searches.
///
/// A chosen set `C` forbids `{0} + (C + C) + (C - C) + {y : 2y in C}`; adding
/// `x` to `C` therefore forbids `x + C`, `x - C`, `C - x`, `2x` and the halves of `x`.
struct Search {
    n: usize,
    sum: Vec<u8>,
    neg: Vec<u8>,
    halves: Vec<u128>,
}

impl Search {
    fn new(g: &AbelianGroup) -> Self {
        let n = g.len();
        let t = g.table();
        let mut sum = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                sum.push(t.add(a, b) as u8);
            }
        }
        let neg = (0..n).map(|a| t.neg(a) as u8).collect();
        let mut halves = alloc::vec![0u128; n];
        for y in 0..n {
            halves[t.add(y, y)] |= bit(y);
        }
        Search {
            n,
            sum,
            neg,
            halves,
        }
    }

    #[inline]
    fn add(&self, a: usize, b: usize) -> usize {
        self.sum[a * self.n + b] as usize
    }

    #[inline]
    fn forbid_after(&self, chosen: &[usize], forb: u128, x: usize) -> u128 {
        let nx = self.neg[x] as usize;
        let mut f = forb | bit(self.add(x, x)) | self.halves[x];
        for &c in chosen {
            let nc = self.neg[c] as usize;
            f |= bit(self.add(x, c)) | bit(self.add(x, nc)) | bit(self.add(c, nx));
        }
        f
    }

    fn count(&self, chosen: &mut Vec<usize>, forb: u128, hi: usize) -> u128 {
        let mut total = 1u128;
        let mut avail = !forb & below(hi);
        while avail != 0 {
            let x = 127 - avail.leading_zeros() as usize;
            avail &= !bit(x);
            let next = self.forbid_after(chosen, forb, x);
            chosen.push(x);
            total += self.count(chosen, next, x);
            chosen.pop();
        }
        total
    }

    fn maximise(
        &self,
        chosen: &mut Vec<usize>,
        forb: u128,
        hi: usize,
        cap: usize,
        best: &mut (usize, u128),
    ) {
        if chosen.len() > best.0 {
            *best = (chosen.len(), chosen.iter().fold(0u128, |m, &x| m | bit(x)));
        }
        let avail = !forb & below(hi);
        let mut rest = avail;
        while rest != 0 {
            if best.0 >= cap {
                return;
            }
            let x = 127 - rest.leading_zeros() as usize;
            // x and everything below it that is still available
            if chosen.len() + (rest & below(x + 1)).count_ones() as usize <= best.0 {
                return;
            }
            rest &= !bit(x);
            let next = self.forbid_after(chosen, forb, x);
            chosen.push(x);
            self.maximise(chosen, next, x, cap, best);
            chosen.pop();
        }
    }
}

/// `|SF(G)|`, the number of sum-free subsets including the empty set.
pub fn count_sumfree(g: &AbelianGroup, limits: Limits) -> Result<BigUint> {
    Limits::admit(limits.count, g)?;
    let search = Search::new(g);
    let total = search.count(&mut Vec::new(), bit(0), g.len());
    Ok(BigUint::from(total))
}

/// `log2(x)` from the top 64 bits of `x`; absolute error far below 1e-12.
pub fn log2_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 64 {
        let v = x.iter_u64_digits().next().unwrap_or(0);
        return log2_u64(v);
    }
    let shift = bits - 64;
    let top: BigUint = x >> shift;
    log2_u64(top.iter_u64_digits().next().unwrap_or(0)) + shift as f64
}

fn log2_u64(v: u64) -> f64 {
    // split so the f64 conversion is exact
    let bits = 64 - v.leading_zeros() as u64;
    if bits <= 53 {
        return libm::log2(v as f64);
    }
    let shift = bits - 53;
    let head = v >> shift;
    let tail = v & ((1u64 << shift) - 1);
    let frac = tail as f64 / (1u64 << shift) as f64;
    libm::log2(head as f64)
        + libm::log1p(frac / head as f64) / core::f64::consts::LN_2
        + shift as f64
}

/// `sigma(G) = log2 |SF(G)| / n`.
pub fn sigma(g: &AbelianGroup, limits: Limits) -> Result<f64> {
    let count = count_sumfree(g, limits)?;
    Ok(log2_biguint(&count) / g.order() as f64)
}

/// Size of a largest sum-free subset together with a witness.
///
/// Branch and bound over elements in descending rank; a branch is cut when
/// the chosen set plus every remaining candidate cannot beat the incumbent,
/// and the search stops once `floor(n / 2)` is reached (a sum-free `S` is
/// disjoint from `S + s`).
pub fn max_sumfree(g: &AbelianGroup, limits: Limits) -> Result<(usize, Subset)> {
    Limits::admit(limits.search, g)?;
    let search = Search::new(g);
    let mut best = (0usize, 0u128);
    search.maximise(&mut Vec::new(), bit(0), g.len(), g.len() / 2, &mut best);
    let witness = Subset::from_ranks(g, (0..g.len()).filter(|&x| best.1 & bit(x) != 0))?;
    Ok((best.0, witness))
}

#[derive(Debug, Clone)]
pub struct SumFreeCensus {
    pub group: AbelianGroup,
    pub sf_count: BigUint,
    pub sigma: f64,
    pub max_size: usize,
    pub witness: Subset,
    /// `None` for the trivial group.
    pub mu: Option<Rational>,
}

impl SumFreeCensus {
    /// `sigma - mu`, when `mu` is defined.
    pub fn excess(&self) -> Option<f64> {
        self.mu.map(|m| self.sigma - crate::to_f64(m))
    }

    pub fn check_invariants(&self) -> core::result::Result<(), &'static str> {
        if !is_sumfree(&self.witness) || self.witness.len() != self.max_size {
            return Err("witness is not a sum-free set of the reported size");
        }
        if self.sf_count < (BigUint::from(1u8) << self.max_size) {
            return Err("fewer sum-free sets than subsets of the witness");
        }
        if let Some(mu) = self.mu {
            let n = self.group.order() as i128;
            if mu * Rational::from_integer(n) != Rational::from_integer(self.max_size as i128) {
                return Err("largest sum-free set disagrees with the density formula");
            }
            if self.sigma < crate::to_f64(mu) - 1e-12 {
                return Err("sigma below mu");
            }
        }
        Ok(())
    }
}

/// Counts, maximises and cross-checks everything for one group.
///
/// # Panics
/// If the census contradicts the density formula or its own witness.
pub fn census(g: &AbelianGroup, limits: Limits) -> Result<SumFreeCensus> {
    let sf_count = count_sumfree(g, limits)?;
    let (max_size, witness) = max_sumfree(g, limits)?;
    let out = SumFreeCensus {
        group: g.clone(),
        sigma: log2_biguint(&sf_count) / g.order() as f64,
        sf_count,
        max_size,
        witness,
        mu: g.mu().ok(),
    };
    if let Err(e) = out.check_invariants() {
        panic!("census of {g}: {e}");
    }
    Ok(out)
}
