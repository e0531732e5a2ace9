//! Finite abelian groups in invariant-factor form.
//!
//! A group is stored as a chain `m_1 | m_2 | ... | m_r` of cyclic factors.
//! Elements are coordinate tuples and are also addressed by a mixed-radix
//! rank in `[0, n)` with `m_1` as the most significant digit. Every other
//! module works on ranks.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    factors: Vec<u64>,
    order: u64,
}

impl AbelianGroup {
    /// Canonical invariant-factor form of `Z_{f_1} x ... x Z_{f_k}`.
    ///
    /// The factors may be given in any order and need not form a divisibility
    /// chain; they are split into prime powers and regrouped.
    pub fn new(factors: &[u64]) -> Result<Self> {
        if let Some(&bad) = factors.iter().find(|&&f| f < 2) {
            return Err(Error::InvalidFactor(bad));
        }
        let mut order: u64 = 1;
        for &f in factors {
            order = order.checked_mul(f).ok_or(Error::OrderOverflow)?;
        }
        if usize::try_from(order).is_err() {
            return Err(Error::OrderOverflow);
        }

        // prime -> exponents of that prime across the input factors
        let mut parts: Vec<(u64, Vec<u32>)> = Vec::new();
        for &f in factors {
            for (p, e) in factorize(f) {
                match parts.iter_mut().find(|(q, _)| *q == p) {
                    Some((_, exps)) => exps.push(e),
                    None => parts.push((p, vec![e])),
                }
            }
        }
        let rank = parts.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
        let mut chain = vec![1u64; rank];
        for (p, exps) in &mut parts {
            exps.sort_unstable();
            // largest exponent goes into the last (largest) invariant factor
            for (slot, &e) in chain.iter_mut().rev().zip(exps.iter().rev()) {
                *slot *= p.pow(e);
            }
        }
        Ok(AbelianGroup {
            factors: chain,
            order,
        })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        if n == 1 {
            return Ok(Self::trivial());
        }
        Self::new(&[n])
    }

    pub fn trivial() -> Self {
        AbelianGroup {
            factors: Vec::new(),
            order: 1,
        }
    }

    /// Invariant factors in ascending divisibility order.
    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Order as an index bound. Never zero, so there is no `is_empty`.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.order as usize
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// Largest element order, i.e. the last invariant factor (1 for the trivial group).
    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            coords: vec![0; self.rank()],
            rank: 0,
        }
    }

    pub fn element(&self, coords: &[u64]) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                found: coords.len(),
            });
        }
        let mut rank = 0usize;
        for (index, (&x, &m)) in coords.iter().zip(&self.factors).enumerate() {
            if x >= m {
                return Err(Error::CoordinateOutOfRange {
                    index,
                    value: x,
                    modulus: m,
                });
            }
            rank = rank * m as usize + x as usize;
        }
        Ok(GroupElement {
            coords: coords.to_vec(),
            rank,
        })
    }

    pub fn element_at(&self, rank: usize) -> Result<GroupElement> {
        if rank >= self.len() {
            return Err(Error::RankOutOfRange {
                rank,
                order: self.len(),
            });
        }
        Ok(GroupElement {
            coords: self.coords_of(rank),
            rank,
        })
    }

    pub fn coords_of(&self, rank: usize) -> Vec<u64> {
        let mut coords = vec![0; self.rank()];
        let mut rest = rank;
        for (slot, &m) in coords.iter_mut().zip(&self.factors).rev() {
            let m = m as usize;
            *slot = (rest % m) as u64;
            rest /= m;
        }
        coords
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.len()).map(move |r| GroupElement {
            coords: self.coords_of(r),
            rank: r,
        })
    }

    fn check(&self, x: &GroupElement) -> Result<()> {
        if x.coords.len() != self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                found: x.coords.len(),
            });
        }
        Ok(())
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.check(x)?;
        self.check(y)?;
        let coords: Vec<u64> = x
            .coords
            .iter()
            .zip(&y.coords)
            .zip(&self.factors)
            .map(|((&a, &b), &m)| (a + b) % m)
            .collect();
        self.element(&coords)
    }

    pub fn neg(&self, x: &GroupElement) -> Result<GroupElement> {
        self.check(x)?;
        let coords: Vec<u64> = x
            .coords
            .iter()
            .zip(&self.factors)
            .map(|(&a, &m)| (m - a) % m)
            .collect();
        self.element(&coords)
    }

    /// Sum of two elements given by rank.
    pub fn add_ranks(&self, a: usize, b: usize) -> usize {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for &m in self.factors.iter().rev() {
            let m = m as usize;
            out += ((a % m + b % m) % m) * place;
            place *= m;
            a /= m;
            b /= m;
        }
        out
    }

    pub fn neg_rank(&self, a: usize) -> usize {
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for &m in self.factors.iter().rev() {
            let m = m as usize;
            out += ((m - a % m) % m) * place;
            place *= m;
            a /= m;
        }
        out
    }

    /// Builds the full addition table. Intended for groups of at most a few thousand elements.
    pub fn table(&self) -> CayleyTable {
        let n = self.len();
        let mut sum = vec![0u32; n * n];
        for a in 0..n {
            for b in a..n {
                let s = self.add_ranks(a, b) as u32;
                sum[a * n + b] = s;
                sum[b * n + a] = s;
            }
        }
        let neg = (0..n).map(|a| self.neg_rank(a) as u32).collect();
        CayleyTable { n, sum, neg }
    }

    pub fn classify(&self) -> GroupType {
        let primes: Vec<u64> = factorize(self.order).into_iter().map(|(p, _)| p).collect();
        // factorize returns primes in ascending order
        if let Some(&p) = primes.iter().find(|&&p| p % 3 == 2) {
            GroupType::I(p)
        } else if self.order.is_multiple_of(3) {
            GroupType::II
        } else {
            GroupType::III
        }
    }

    /// Density of a largest sum-free subset.
    pub fn mu(&self) -> Result<Rational> {
        if self.is_trivial() {
            return Err(Error::TrivialGroup);
        }
        Ok(match self.classify() {
            GroupType::I(p) => Rational::new(p as i128 + 1, 3 * p as i128),
            GroupType::II => Rational::new(1, 3),
            GroupType::III => {
                let m = self.exponent() as i128;
                Rational::new(m - 1, 3 * m)
            }
        })
    }
}

impl PartialOrd for AbelianGroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Ascending order, then lexicographic invariant factors.
impl Ord for AbelianGroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order
            .cmp(&other.order)
            .then_with(|| self.factors.cmp(&other.factors))
    }
}

/// Comma-separated factors; the trivial group prints as `1`.
impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, m) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl FromStr for AbelianGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Self::trivial());
        }
        let factors = s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(alloc::format!("bad group factor {:?}", part)))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(&factors)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    coords: Vec<u64>,
    rank: usize,
}

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// Precomputed addition and negation over ranks.
#[derive(Debug, Clone)]
pub struct CayleyTable {
    n: usize,
    sum: Vec<u32>,
    neg: Vec<u32>,
}

impl CayleyTable {
    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.sum[a * self.n + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupType {
    /// Some prime `p = 2 (mod 3)` divides the order; `p` is the least such.
    I(u64),
    /// No such prime, but 3 divides the order.
    II,
    /// Every prime divisor of the order is `1 (mod 3)`.
    III,
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupType::I(p) => write!(f, "I({p})"),
            GroupType::II => f.write_str("II"),
            GroupType::III => f.write_str("III"),
        }
    }
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Integer partitions of `e` as non-increasing part lists.
fn partitions(e: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(e, e, &mut Vec::new(), &mut out);
    out
}

/// One representative of every isomorphism class of abelian groups of order `n`,
/// sorted lexicographically by invariant factors.
pub fn groups_of_order(n: u64) -> Vec<AbelianGroup> {
    if n == 0 {
        return Vec::new();
    }
    let mut chains: Vec<Vec<u64>> = vec![Vec::new()];
    for (p, e) in factorize(n) {
        let mut next = Vec::new();
        for chain in &chains {
            for part in partitions(e) {
                // part is non-increasing; align largest powers with the largest factors
                let len = chain.len().max(part.len());
                let mut merged = vec![1u64; len];
                for (slot, c) in merged.iter_mut().rev().zip(chain.iter().rev()) {
                    *slot *= c;
                }
                for (slot, &k) in merged.iter_mut().rev().zip(part.iter()) {
                    *slot *= p.pow(k);
                }
                next.push(merged);
            }
        }
        chains = next;
    }
    let mut groups: Vec<AbelianGroup> = chains
        .into_iter()
        .map(|factors| AbelianGroup { factors, order: n })
        .collect();
    groups.sort();
    groups
}

/// All abelian groups of order `1..=max_order`, ascending order then lexicographic factors.
pub fn enumerate_groups(max_order: u64) -> impl Iterator<Item = AbelianGroup> {
    (1..=max_order).flat_map(groups_of_order)
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn g(f: &[u64]) -> AbelianGroup {
        AbelianGroup::new(f).unwrap()
    }

    #[test]
    fn canonical_forms() {
        let z2z6 = g(&[6, 2]);
        assert_eq!(z2z6.factors(), &[2, 6]);
        assert_eq!((z2z6.order(), z2z6.exponent()), (12, 6));

        let z6 = g(&[3, 2]);
        assert_eq!(z6.factors(), &[6]);
        assert_eq!((z6.order(), z6.exponent()), (6, 6));

        let t = g(&[]);
        assert!(t.is_trivial());
        assert_eq!((t.order(), t.exponent(), t.rank()), (1, 1, 0));

        assert_eq!(g(&[4, 6, 9]).factors(), &[6, 36]);
        assert_eq!(g(&[2, 2, 2]).factors(), &[2, 2, 2]);
    }

    #[test]
    fn rejects_small_factors() {
        assert_eq!(AbelianGroup::new(&[1]), Err(Error::InvalidFactor(1)));
        assert_eq!(AbelianGroup::new(&[3, 0]), Err(Error::InvalidFactor(0)));
    }

    #[test]
    fn parses_and_prints() {
        let z = "6, 2".parse::<AbelianGroup>().unwrap();
        assert_eq!(z.to_string(), "2,6");
        assert_eq!(
            "1".parse::<AbelianGroup>().unwrap(),
            AbelianGroup::trivial()
        );
        assert_eq!(AbelianGroup::trivial().to_string(), "1");
        assert!("2,x".parse::<AbelianGroup>().is_err());
    }

    #[test]
    fn group_law_examples() {
        let z10 = g(&[10]);
        let s = z10
            .add(&z10.element(&[7]).unwrap(), &z10.element(&[8]).unwrap())
            .unwrap();
        assert_eq!(s.coords(), &[5]);

        let z2z6 = g(&[2, 6]);
        let s = z2z6
            .add(
                &z2z6.element(&[1, 5]).unwrap(),
                &z2z6.element(&[1, 3]).unwrap(),
            )
            .unwrap();
        assert_eq!(s.coords(), &[0, 2]);

        let zero = z2z6.zero();
        assert_eq!(z2z6.neg(&zero).unwrap(), zero);

        let z3 = g(&[3]);
        assert!(matches!(
            z3.add(&zero, &z3.zero()),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn classification() {
        assert_eq!(g(&[10]).classify(), GroupType::I(2));
        assert_eq!(g(&[9]).classify(), GroupType::II);
        assert_eq!(g(&[7]).classify(), GroupType::III);
        assert_eq!(g(&[3, 5, 11]).classify(), GroupType::I(5));
        assert_eq!(g(&[7, 13]).classify(), GroupType::III);
        assert_eq!(AbelianGroup::trivial().classify(), GroupType::III);
    }

    #[test]
    fn mu_formula() {
        assert_eq!(g(&[10]).mu().unwrap(), Rational::new(1, 2));
        assert_eq!(g(&[9]).mu().unwrap(), Rational::new(1, 3));
        assert_eq!(g(&[7]).mu().unwrap(), Rational::new(2, 7));
        assert_eq!(AbelianGroup::trivial().mu(), Err(Error::TrivialGroup));
    }

    #[test]
    fn mu_times_order_is_integral() {
        for grp in enumerate_groups(200).skip(1) {
            let k = grp.mu().unwrap() * Rational::from_integer(grp.order() as i128);
            assert!(k.is_integer(), "{grp}: {k}");
        }
    }

    #[test]
    fn enumeration_counts() {
        let order8: Vec<_> = groups_of_order(8);
        assert_eq!(order8.len(), 3);
        let one: Vec<_> = enumerate_groups(1).collect();
        assert_eq!(one, vec![AbelianGroup::trivial()]);
        let order12: Vec<Vec<u64>> = groups_of_order(12)
            .iter()
            .map(|g| g.factors().to_vec())
            .collect();
        assert_eq!(order12, vec![vec![2, 6], vec![12]]);
        // 1,1,1,2,1,1,1,3,2,1,1,2 classes for orders 1..=12
        assert_eq!(enumerate_groups(12).count(), 17);
    }

    #[test]
    fn enumeration_matches_canonical_construction() {
        for grp in enumerate_groups(120) {
            let rebuilt = AbelianGroup::new(grp.factors()).unwrap();
            assert_eq!(rebuilt, grp);
            for w in grp.factors().windows(2) {
                assert_eq!(w[1] % w[0], 0);
            }
        }
    }

    #[test]
    fn rank_round_trip() {
        for grp in enumerate_groups(100) {
            for x in grp.elements() {
                assert_eq!(grp.element(x.coords()).unwrap().rank(), x.rank());
                assert_eq!(grp.element_at(x.rank()).unwrap(), x);
            }
        }
    }

    #[test]
    fn group_axioms_exhaustive() {
        for grp in enumerate_groups(24) {
            let t = grp.table();
            let n = grp.len();
            for a in 0..n {
                assert_eq!(t.add(a, t.neg(a)), 0);
                assert_eq!(t.add(a, 0), a);
                for b in 0..n {
                    assert_eq!(t.add(a, b), t.add(b, a));
                    for c in 0..n {
                        assert_eq!(t.add(t.add(a, b), c), t.add(a, t.add(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn rank_arithmetic_matches_coordinates() {
        let grp = g(&[2, 6, 12]);
        for x in grp.elements() {
            for y in grp.elements().step_by(7) {
                let s = grp.add(&x, &y).unwrap();
                assert_eq!(grp.add_ranks(x.rank(), y.rank()), s.rank());
            }
            assert_eq!(grp.neg_rank(x.rank()), grp.neg(&x).unwrap().rank());
        }
    }
}
