//! Seeded random streams for sweeps.
//!
//! Algorithm `pcg64-v1`: every work item `(group, sample)` gets its own
//! PCG-XSL-RR 128/64 generator (`rand_pcg::Pcg64`). The 128-bit state is
//! `splitmix64(seed ^ splitmix64(group)) << 64 | splitmix64(sample ^ splitmix64(seed))`
//! and the stream is the group index, so the draws of one item never depend
//! on how many other items ran before it or on which worker ran it.

use rand_core::Rng;
use rand_pcg::Pcg64;
use sumfree_core::{AbelianGroup, Rational, Subset};

pub const RNG_ALGORITHM: &str = "pcg64-v1";

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Generator for one work item.
pub fn item_rng(seed: u64, group: u64, sample: u64) -> Pcg64 {
    let hi = splitmix64(seed ^ splitmix64(group));
    let lo = splitmix64(sample ^ splitmix64(seed));
    Pcg64::new(((hi as u128) << 64) | lo as u128, group as u128)
}

/// Inclusion probabilities, cycled by sample index; the last is `mu(G)`.
pub fn inclusion_probability(g: &AbelianGroup, sample: u64) -> Rational {
    match sample % 4 {
        0 => Rational::new(1, 10),
        1 => Rational::new(3, 10),
        2 => Rational::new(1, 2),
        _ => g.mu().unwrap_or_else(|_| Rational::new(1, 2)),
    }
}

/// `floor(p * 2^64)`, so that a uniform `u64` below it has probability exactly that.
pub fn bernoulli_threshold(p: Rational) -> u128 {
    let (num, den) = (*p.numer(), *p.denom());
    if num <= 0 {
        return 0;
    }
    if num >= den {
        return 1u128 << 64;
    }
    ((num as u128) << 64) / den as u128
}

/// Includes each element independently with probability `p`, in rank order.
pub fn bernoulli_subset(g: &AbelianGroup, p: Rational, rng: &mut Pcg64) -> Subset {
    let threshold = bernoulli_threshold(p);
    let mut s = Subset::empty(g);
    for x in 0..g.len() {
        if (rng.next_u64() as u128) < threshold {
            s.insert(x);
        }
    }
    s
}

/// The random subset used for `sample` of group number `group`.
pub fn sample_subset(g: &AbelianGroup, seed: u64, group: u64, sample: u64) -> Subset {
    let mut rng = item_rng(seed, group, sample);
    bernoulli_subset(g, inclusion_probability(g, sample), &mut rng)
}

/// `count` distinct values from `0..n`, sorted, by a partial Fisher-Yates shuffle.
pub fn sample_indices(n: usize, count: usize, rng: &mut Pcg64) -> Vec<usize> {
    let count = count.min(n);
    let mut pool: Vec<usize> = (0..n).collect();
    for i in 0..count {
        let span = (n - i) as u64;
        // rejection keeps the draw unbiased
        let zone = u64::MAX - (u64::MAX % span);
        let r = loop {
            let v = rng.next_u64();
            if v < zone {
                break v % span;
            }
        };
        pool.swap(i, i + r as usize);
    }
    let mut out = pool[..count].to_vec();
    out.sort_unstable();
    out
}
