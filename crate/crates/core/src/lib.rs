//! Sum-free sets in finite abelian groups.
//!
//! The crate computes the largest sum-free density `mu(G)`, the exact number
//! of sum-free subsets, ordered Schur-triple counts (directly and through
//! character sums), coset-density profiles along characters, and a family of
//! checkers for inequalities relating those quantities.
//!
//! It is `no_std` and only needs `alloc`. File formats, sweeps and the command
//! line live in the `sumfree-lab` crate.

#![no_std]

extern crate alloc;

pub mod census;
pub mod character;
pub mod coset;
pub mod error;
pub mod extremal;
pub mod fourier;
pub mod group;
pub mod report;
pub mod subset;

pub use census::{census, count_sumfree, is_sumfree, max_sumfree, sigma, Limits, SumFreeCensus};
pub use character::{all_characters, Character};
pub use coset::{coset_profile, ConstantsConfig, CosetProfile};
pub use error::{Error, Result};
pub use extremal::{minimize_weighted_cosine, ExtremalCosineProblem, ExtremalSolution};
pub use fourier::{
    fourier_transform, schur_count_bruteforce, schur_count_fourier, special_direction, SchurStats,
};
pub use group::{enumerate_groups, AbelianGroup, GroupElement, GroupType};
pub use report::{BoundReport, CheckName, Outcome, Value};
pub use subset::Subset;

/// Exact rational used for densities, `delta` and inequality sides.
pub type Rational = num_rational::Ratio<i128>;

pub fn to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}
