//! Minimising a capacity- and mass-constrained cosine sum.
//!
//! For odd `q`, an offset `l` in `[0, (q-1)/2]`, a per-weight capacity `cap`
//! and a required mass, find weights `w_j` with `0 <= w_j <= cap` and
//! `sum_j w_j >= mass` minimising `sum_j w_j cos((2j + l) pi / q)`.
//!
//! The problem is separable with one coupling constraint, so filling weights
//! in order of increasing coefficient is optimal: every negative coefficient
//! is saturated, then the cheapest nonnegative coefficients absorb whatever
//! mass is still missing.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::character::cos_turn;
use crate::error::{Error, Result};
use crate::{to_f64, Rational};

#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalCosineProblem {
    q: u64,
    l: u64,
    cap: Rational,
    mass: Rational,
}

impl ExtremalCosineProblem {
    pub fn new(q: u64, l: u64, cap: Rational, mass: Rational) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidParameter("q must be positive"));
        }
        if l > (q - 1) / 2 {
            return Err(Error::InvalidParameter("l must lie in [0, (q-1)/2]"));
        }
        if cap < Rational::zero() || mass < Rational::zero() {
            return Err(Error::InvalidParameter("cap and mass must be nonnegative"));
        }
        Ok(ExtremalCosineProblem { q, l, cap, mass })
    }

    /// Capacity `(1 + 1/c) / 2` and mass `2k` for `q = 6k + 1`.
    pub fn with_constant(q: u64, l: u64, c: Rational) -> Result<Self> {
        if c <= Rational::zero() {
            return Err(Error::InvalidParameter("c must be positive"));
        }
        let cap = (Rational::from_integer(1) + c.recip()) / Rational::from_integer(2);
        let k = (q.saturating_sub(1) / 6) as i128;
        Self::new(q, l, cap, Rational::from_integer(2 * k))
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    pub fn cap(&self) -> Rational {
        self.cap
    }

    pub fn mass(&self) -> Rational {
        self.mass
    }

    /// `cos((2j + l) pi / q)`.
    pub fn coefficient(&self, j: u64) -> f64 {
        let two_q = 2 * self.q;
        cos_turn((2 * j + self.l) % two_q, two_q)
    }

    pub fn coefficients(&self) -> Vec<f64> {
        (0..self.q).map(|j| self.coefficient(j)).collect()
    }

    pub fn is_feasible(&self) -> bool {
        self.cap * Rational::from_integer(self.q as i128) >= self.mass
    }

    pub fn objective(&self, weights: &[Rational]) -> f64 {
        weights
            .iter()
            .zip(self.coefficients())
            .map(|(&w, c)| to_f64(w) * c)
            .sum()
    }
}

/// Reduces an offset modulo `q` to `[0, (q-1)/2]`, using `l -> -l`
/// (the profile of `-F` along the same character is the reflection of that of `F`).
pub fn canonical_offset(q: u64, l: u64) -> u64 {
    let l = l % q;
    l.min(q - l)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalSolution {
    pub value: f64,
    pub weights: Vec<Rational>,
}

pub fn minimize_weighted_cosine(prob: &ExtremalCosineProblem) -> Result<ExtremalSolution> {
    if !prob.is_feasible() {
        return Err(Error::Infeasible);
    }
    let coeffs = prob.coefficients();
    let mut order: Vec<usize> = (0..coeffs.len()).collect();
    order.sort_by(|&a, &b| coeffs[a].total_cmp(&coeffs[b]).then(a.cmp(&b)));

    let mut weights = vec![Rational::zero(); coeffs.len()];
    let mut placed = Rational::zero();
    for j in order {
        if coeffs[j] < 0.0 {
            weights[j] = prob.cap;
        } else if placed < prob.mass {
            weights[j] = prob.cap.min(prob.mass - placed);
        } else {
            break;
        }
        placed += weights[j];
    }
    Ok(ExtremalSolution {
        value: prob.objective(&weights),
        weights,
    })
}

/// `f(x) = cos((q + x) pi / q)`, increasing on `0..=q`.
pub fn cosine_step(q: u64, x: u64) -> f64 {
    cos_turn((q + x) % (2 * q), 2 * q)
}
