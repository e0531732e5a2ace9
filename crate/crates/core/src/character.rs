//! Characters of a finite abelian group.
//!
//! The dual group is identified with the group itself: the coefficient
//! vector `a` gives `gamma_a(x) = exp(2 pi i sum_i a_i x_i / m_i)`. All phases
//! are kept as integers modulo the character order `q`, so the coset of an
//! element is read off exactly and never recovered from a float.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::{gcd, lcm, AbelianGroup, GroupElement};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Character {
    group: AbelianGroup,
    coeffs: GroupElement,
    order: u64,
    /// `m / m_i` for each coordinate, with `m` the exponent.
    lift: Vec<u64>,
}

impl Character {
    pub fn new(group: &AbelianGroup, coeffs: GroupElement) -> Result<Self> {
        if coeffs.coords().len() != group.rank() {
            return Err(Error::RankMismatch {
                expected: group.rank(),
                found: coeffs.coords().len(),
            });
        }
        let order = coeffs
            .coords()
            .iter()
            .zip(group.factors())
            .map(|(&a, &m)| m / gcd(a, m))
            .fold(1, lcm);
        let m = group.exponent();
        let lift = group.factors().iter().map(|&mi| m / mi).collect();
        Ok(Character {
            group: group.clone(),
            coeffs,
            order,
            lift,
        })
    }

    pub fn from_coeffs(group: &AbelianGroup, coeffs: &[u64]) -> Result<Self> {
        Self::new(group, group.element(coeffs)?)
    }

    pub fn from_rank(group: &AbelianGroup, rank: usize) -> Result<Self> {
        Self::new(group, group.element_at(rank)?)
    }

    pub fn trivial(group: &AbelianGroup) -> Self {
        Self::new(group, group.zero()).expect("zero has matching rank")
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn coeffs(&self) -> &GroupElement {
        &self.coeffs
    }

    /// `q`, the multiplicative order of the character.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// The index `j` in `Z/qZ` with `gamma(x) = exp(2 pi i j / q)`.
    pub fn phase(&self, x_rank: usize) -> u64 {
        let m = self.group.exponent();
        let mut rest = x_rank;
        let mut acc: u64 = 0;
        for ((&a, &mi), &lift) in self
            .coeffs
            .coords()
            .iter()
            .zip(self.group.factors())
            .zip(&self.lift)
            .rev()
        {
            let xi = (rest % mi as usize) as u64;
            rest /= mi as usize;
            acc = (acc + (a * xi % mi) * lift) % m;
        }
        // acc is a multiple of m/q since q annihilates every phase
        acc / (m / self.order)
    }

    /// Phases of every element, indexed by rank.
    pub fn phases(&self) -> Vec<u64> {
        (0..self.group.len()).map(|r| self.phase(r)).collect()
    }

    pub fn eval(&self, x_rank: usize) -> Complex64 {
        root_of_unity(self.phase(x_rank), self.order)
    }
}

/// Every character of `group`, trivial first, in coefficient-rank order.
pub fn all_characters(group: &AbelianGroup) -> impl Iterator<Item = Character> + '_ {
    (0..group.len()).map(move |r| Character::from_rank(group, r).expect("rank in range"))
}

/// `exp(2 pi i t / q)`, evaluated so that `t` and `q - t` give exact conjugates.
pub fn root_of_unity(t: u64, q: u64) -> Complex64 {
    let t = t % q;
    let folded = t.min(q - t);
    let angle = 2.0 * core::f64::consts::PI * folded as f64 / q as f64;
    let (s, c) = (libm::sin(angle), libm::cos(angle));
    if t == 0 {
        Complex64::new(1.0, 0.0)
    } else if 2 * t == q {
        Complex64::new(-1.0, 0.0)
    } else if folded == t {
        Complex64::new(c, s)
    } else {
        Complex64::new(c, -s)
    }
}

/// `cos(2 pi t / q)` via the same folding as [`root_of_unity`].
pub fn cos_turn(t: u64, q: u64) -> f64 {
    root_of_unity(t, q).re
}
