//! Fourier coefficients of subsets and Schur-triple counts.
//!
//! A Schur triple of `F` is an ordered triple `(x, y, z)` in `F^3` with
//! `x + y = z`. The count is computed twice: by a direct pair scan and
//! through the identity
//!
//! ```text
//! T(F) = n^-1 * sum_gamma |F^(gamma)|^2 * F^(gamma)
//! ```
//!
//! which is `n^-1 sum_gamma F^(gamma)^2 conj(F^(gamma))` after conjugation.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::character::{all_characters, cos_turn, root_of_unity, Character};
use crate::error::{Error, Result};
use crate::subset::Subset;
use crate::Rational;

/// Distance from an integer beyond which the Fourier count is treated as corrupt.
pub const FOURIER_ROUNDING_LIMIT: f64 = 1e-3;

/// Values of `Re F^(gamma)` closer than this (times `max(1, |F|)`) count as ties.
pub const DIRECTION_TIE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SchurStats {
    triples: u64,
    order: u64,
}

impl SchurStats {
    pub fn new(triples: u64, order: u64) -> Self {
        SchurStats { triples, order }
    }

    /// Number of ordered Schur triples `T`.
    pub fn triples(&self) -> u64 {
        self.triples
    }

    /// `T / n^2`.
    pub fn delta(&self) -> Rational {
        let n = self.order as i128;
        Rational::new(self.triples as i128, n * n)
    }

    pub fn delta_f64(&self) -> f64 {
        let n = self.order as f64;
        self.triples as f64 / (n * n)
    }
}

/// How many members of `f` fall on each phase of `c`.
pub fn phase_histogram(f: &Subset, c: &Character) -> Vec<u64> {
    let mut h = vec![0u64; c.order() as usize];
    for x in f.iter() {
        h[c.phase(x) as usize] += 1;
    }
    h
}

/// `sum_t h[t] exp(2 pi i t / q)` summed over conjugate pairs, so that a
/// histogram and its reflection `t -> -t` yield bit-identical real parts.
pub fn histogram_sum(h: &[u64]) -> Complex64 {
    let q = h.len() as u64;
    if q == 0 {
        return Complex64::new(0.0, 0.0);
    }
    let mut re = h[0] as f64;
    let mut im = 0.0;
    for t in 1..q.div_ceil(2) {
        let (a, b) = (h[t as usize], h[(q - t) as usize]);
        let w = root_of_unity(t, q);
        re += (a + b) as f64 * w.re;
        im += (a as f64 - b as f64) * w.im;
    }
    if q.is_multiple_of(2) {
        re -= h[(q / 2) as usize] as f64;
    }
    Complex64::new(re, im)
}

/// `F^(gamma) = sum_{b in F} gamma(b)`.
pub fn fourier_transform(f: &Subset, c: &Character) -> Result<Complex64> {
    if f.group() != c.group() {
        return Err(Error::GroupMismatch);
    }
    Ok(histogram_sum(&phase_histogram(f, c)))
}

/// `F^(gamma)` for every character, in coefficient-rank order.
pub fn spectrum(f: &Subset) -> Vec<Complex64> {
    all_characters(f.group())
        .map(|c| histogram_sum(&phase_histogram(f, &c)))
        .collect()
}

/// Counts ordered Schur triples by scanning all pairs of members.
pub fn schur_count_bruteforce(f: &Subset) -> SchurStats {
    let g = f.group();
    let members: Vec<usize> = f.iter().collect();
    let mut triples = 0u64;
    for &x in &members {
        for &y in &members {
            if f.contains(g.add_ranks(x, y)) {
                triples += 1;
            }
        }
    }
    SchurStats::new(triples, g.order())
}

/// The complex value `n^-1 sum_gamma |F^(gamma)|^2 F^(gamma)` before rounding.
pub fn fourier_triple_sum(f: &Subset) -> Complex64 {
    let n = f.group().order() as f64;
    let total: Complex64 = spectrum(f).iter().map(|z| z * z.norm_sqr()).sum();
    total / n
}

/// Counts ordered Schur triples through the character-sum identity.
pub fn schur_count_fourier(f: &Subset) -> Result<SchurStats> {
    let raw = fourier_triple_sum(f);
    let rounded = libm::round(raw.re);
    if (raw.re - rounded).abs() > FOURIER_ROUNDING_LIMIT
        || raw.im.abs() > FOURIER_ROUNDING_LIMIT
        || rounded < 0.0
    {
        return Err(Error::FourierInconsistent {
            value: raw.re,
            imaginary: raw.im,
        });
    }
    Ok(SchurStats::new(rounded as u64, f.group().order()))
}

/// `Re F^(gamma)` straight from the phase histogram.
pub fn real_transform(f: &Subset, c: &Character) -> f64 {
    histogram_sum(&phase_histogram(f, c)).re
}

/// The nontrivial character minimising `Re F^(gamma)`, and that minimum.
///
/// Candidates are scanned in coefficient-rank order and a later candidate only
/// replaces the incumbent when it is lower by more than the tie tolerance, so
/// near-equal values resolve to the smallest rank.
pub fn special_direction(f: &Subset) -> Result<(Character, f64)> {
    let g = f.group();
    if g.is_trivial() {
        return Err(Error::TrivialGroup);
    }
    let tol = DIRECTION_TIE_TOLERANCE * (f.len().max(1) as f64);
    let mut best: Option<(Character, f64)> = None;
    for c in all_characters(g).skip(1) {
        let v = real_transform(f, &c);
        match &best {
            Some((_, b)) if v >= b - tol => {}
            _ => best = Some((c, v)),
        }
    }
    Ok(best.expect("nontrivial group has a nontrivial character"))
}

/// `Re F^(gamma)` rebuilt from coset counts: `sum_j |F_j| cos(2 pi j / q)`.
pub fn real_transform_from_counts(counts: &[u64]) -> f64 {
    let q = counts.len() as u64;
    counts
        .iter()
        .enumerate()
        .map(|(j, &c)| c as f64 * cos_turn(j as u64, q))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{enumerate_groups, AbelianGroup};

    fn z(n: u64) -> AbelianGroup {
        AbelianGroup::cyclic(n).unwrap()
    }

    #[test]
    fn transform_examples() {
        for g in enumerate_groups(20).skip(1) {
            let full = Subset::full(&g);
            for c in all_characters(&g) {
                let v = fourier_transform(&full, &c).unwrap();
                if c.is_trivial() {
                    assert_eq!(v.re, g.order() as f64);
                } else {
                    assert!(v.norm() < 1e-9, "{g}");
                }
            }
        }
        let z2 = z(2);
        let one = Subset::from_ranks(&z2, [1]).unwrap();
        let c = Character::from_coeffs(&z2, &[1]).unwrap();
        assert_eq!(
            fourier_transform(&one, &c).unwrap(),
            Complex64::new(-1.0, 0.0)
        );
        let other = Character::trivial(&z(3));
        assert_eq!(fourier_transform(&one, &other), Err(Error::GroupMismatch));
    }

    #[test]
    fn schur_examples() {
        let z10 = z(10);
        for count in [schur_count_bruteforce, |f: &Subset| {
            schur_count_fourier(f).unwrap()
        }] {
            assert_eq!(count(&Subset::empty(&z10)).triples(), 0);
            assert_eq!(count(&Subset::full(&z10)).triples(), 100);
            let f = Subset::from_ranks(&z10, [1, 2, 3]).unwrap();
            let s = count(&f);
            assert_eq!(s.triples(), 3);
            assert_eq!(s.delta(), Rational::new(3, 100));
        }
    }

    #[test]
    fn fourier_matches_bruteforce_exhaustively() {
        for g in enumerate_groups(10) {
            let n = g.len();
            for mask in 0u64..(1 << n) {
                let f = Subset::from_bits(&g, mask);
                let raw = fourier_triple_sum(&f);
                let brute = schur_count_bruteforce(&f).triples() as f64;
                let tol = 1e-6 * (n * n) as f64;
                assert!((raw.re - brute).abs() < tol && raw.im.abs() < tol);
                assert_eq!(schur_count_fourier(&f).unwrap(), schur_count_bruteforce(&f));
            }
        }
    }

    #[test]
    fn parseval() {
        for g in enumerate_groups(16) {
            let n = g.len();
            for mask in (0u64..(1 << n)).step_by(37) {
                let f = Subset::from_bits(&g, mask);
                let total: f64 = spectrum(&f).iter().map(|z| z.norm_sqr()).sum();
                let expect = (n * f.len()) as f64;
                assert!((total - expect).abs() <= 1e-6 * expect.max(1.0));
            }
        }
    }

    #[test]
    fn special_direction_examples() {
        let z2 = z(2);
        let (c, v) = special_direction(&Subset::from_ranks(&z2, [1]).unwrap()).unwrap();
        assert_eq!(c.coeffs().rank(), 1);
        assert_eq!(v, -1.0);

        let z7 = z(7);
        let (c, v) = special_direction(&Subset::empty(&z7)).unwrap();
        assert_eq!((c.coeffs().rank(), v), (1, 0.0));

        // exhaustive scan over the six nontrivial characters
        let f = Subset::from_ranks(&z7, [2, 3]).unwrap();
        let scan: Vec<f64> = (1..7)
            .map(|a| {
                let t = 2.0 * core::f64::consts::PI / 7.0;
                libm::cos(t * (2 * a) as f64) + libm::cos(t * (3 * a) as f64)
            })
            .collect();
        let min = scan.iter().cloned().fold(f64::INFINITY, f64::min);
        let first = scan.iter().position(|&v| (v - min).abs() < 1e-9).unwrap() + 1;
        let (c, v) = special_direction(&f).unwrap();
        assert_eq!(c.coeffs().rank(), first);
        assert!((v - min).abs() < 1e-12);

        assert_eq!(
            special_direction(&Subset::empty(&AbelianGroup::trivial())).map(|_| ()),
            Err(Error::TrivialGroup)
        );
    }

    #[test]
    fn conjugate_characters_tie_exactly() {
        for g in enumerate_groups(30).skip(1) {
            let f = Subset::from_bits(&g, 0x2d6b_35a1_9c3f_u64);
            for c in all_characters(&g) {
                let neg = Character::from_rank(&g, g.neg_rank(c.coeffs().rank())).unwrap();
                assert_eq!(real_transform(&f, &c), real_transform(&f, &neg));
            }
        }
    }
}
