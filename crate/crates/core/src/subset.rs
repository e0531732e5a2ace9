//! Bit-packed subsets of a group, indexed by element rank.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write;

use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subset {
    group: AbelianGroup,
    words: Vec<u64>,
}

impl Subset {
    pub fn empty(group: &AbelianGroup) -> Self {
        Subset {
            group: group.clone(),
            words: vec![0; group.len().div_ceil(64)],
        }
    }

    pub fn full(group: &AbelianGroup) -> Self {
        let mut s = Self::empty(group);
        for r in 0..group.len() {
            s.insert(r);
        }
        s
    }

    pub fn from_ranks<I: IntoIterator<Item = usize>>(
        group: &AbelianGroup,
        ranks: I,
    ) -> Result<Self> {
        let mut s = Self::empty(group);
        for r in ranks {
            if r >= group.len() {
                return Err(Error::RankOutOfRange {
                    rank: r,
                    order: group.len(),
                });
            }
            s.insert(r);
        }
        Ok(s)
    }

    /// Low `n` bits of `mask`; bit `i` is the element of rank `i`.
    pub fn from_bits(group: &AbelianGroup, mask: u64) -> Self {
        let mut s = Self::empty(group);
        if let Some(w) = s.words.first_mut() {
            let n = group.len();
            *w = if n >= 64 {
                mask
            } else {
                mask & ((1u64 << n) - 1)
            };
        }
        s
    }

    /// Accepts `""` (empty), `"all"`, a hex mask such as `"0xE"`, or a rank list such as `"1,2,3"`.
    pub fn parse(group: &AbelianGroup, spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if spec.is_empty() {
            return Ok(Self::empty(group));
        }
        if spec.eq_ignore_ascii_case("all") {
            return Ok(Self::full(group));
        }
        if let Some(hex) = spec.strip_prefix("0x").or_else(|| spec.strip_prefix("0X")) {
            let mut s = Self::empty(group);
            for (bit_group, ch) in hex.chars().rev().enumerate() {
                let nibble = ch
                    .to_digit(16)
                    .ok_or_else(|| Error::Parse(format!("bad hex digit {ch:?}")))?;
                for b in 0..4 {
                    if nibble >> b & 1 == 1 {
                        let r = bit_group * 4 + b;
                        if r >= group.len() {
                            return Err(Error::RankOutOfRange {
                                rank: r,
                                order: group.len(),
                            });
                        }
                        s.insert(r);
                    }
                }
            }
            return Ok(s);
        }
        let ranks = spec
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad element index {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_ranks(group, ranks)
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    #[inline]
    pub fn contains(&self, rank: usize) -> bool {
        self.words[rank / 64] >> (rank % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, rank: usize) {
        self.words[rank / 64] |= 1 << (rank % 64);
    }

    #[inline]
    pub fn remove(&mut self, rank: usize) {
        self.words[rank / 64] &= !(1 << (rank % 64));
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// `|F| / n`.
    pub fn density(&self) -> Rational {
        Rational::new(self.len() as i128, self.group.order() as i128)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Member ranks in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            core::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }

    /// `-F`.
    pub fn negated(&self) -> Self {
        let mut out = Self::empty(&self.group);
        for r in self.iter() {
            out.insert(self.group.neg_rank(r));
        }
        out
    }

    /// Canonical hex mask, `0x0` for the empty set.
    pub fn to_hex(&self) -> String {
        let mut out = String::from("0x");
        let mut started = false;
        for &w in self.words.iter().rev() {
            if started {
                let _ = write!(out, "{w:016x}");
            } else if w != 0 {
                let _ = write!(out, "{w:x}");
                started = true;
            }
        }
        if !started {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}
