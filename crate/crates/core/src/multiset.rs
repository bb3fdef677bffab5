use std::fmt;

use serde::{Deserialize, Serialize};

/// A multiset of residues modulo `level`, stored as a count per residue.
///
/// Eigenvalues `zeta_m^e` are represented only through their exponents `e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ResidueMultiset {
    level: u32,
    counts: Vec<u64>,
}

impl ResidueMultiset {
    pub fn empty(level: u32) -> Self {
        assert!(level > 0, "residue level must be positive");
        Self { level, counts: vec![0; level as usize] }
    }

    pub fn from_residues<I: IntoIterator<Item = u64>>(level: u32, residues: I) -> Self {
        let mut out = Self::empty(level);
        for r in residues {
            out.counts[(r % level as u64) as usize] += 1;
        }
        out
    }

    pub fn from_counts(counts: Vec<u64>) -> Self {
        assert!(!counts.is_empty(), "residue level must be positive");
        Self { level: counts.len() as u32, counts }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn count(&self, residue: u32) -> u64 {
        self.counts[(residue % self.level) as usize]
    }

    pub fn cardinality(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn contains(&self, residue: u32) -> bool {
        self.count(residue) > 0
    }

    /// Distinct residues present, ascending.
    pub fn support(&self) -> Vec<u32> {
        (0..self.level).filter(|&r| self.counts[r as usize] > 0).collect()
    }

    /// Residues with multiplicity, ascending.
    pub fn elements(&self) -> impl Iterator<Item = u32> + '_ {
        self.counts
            .iter()
            .enumerate()
            .flat_map(|(r, &c)| std::iter::repeat_n(r as u32, c as usize))
    }

    /// Sum of all elements modulo the level.
    pub fn total(&self) -> u32 {
        let m = self.level as u128;
        let s: u128 = self
            .counts
            .iter()
            .enumerate()
            .map(|(r, &c)| r as u128 * c as u128 % m)
            .sum();
        (s % m) as u32
    }

    pub fn negated(&self) -> Self {
        let m = self.level as usize;
        let mut counts = vec![0; m];
        for (r, &c) in self.counts.iter().enumerate() {
            counts[(m - r) % m] += c;
        }
        Self { level: self.level, counts }
    }

    /// Every residue shifted by `by`.
    pub fn shifted(&self, by: u32) -> Self {
        let m = self.level as usize;
        let mut counts = vec![0; m];
        for (r, &c) in self.counts.iter().enumerate() {
            counts[(r + by as usize) % m] += c;
        }
        Self { level: self.level, counts }
    }

    /// All pairwise sums `x + y` (the tensor product of eigenvalues).
    /// `None` on count overflow.
    pub fn minkowski_sum(&self, other: &Self) -> Option<Self> {
        assert_eq!(self.level, other.level, "multisets at different levels");
        let m = self.level as usize;
        let mut counts = vec![0u64; m];
        for (x, &cx) in self.counts.iter().enumerate().filter(|(_, &c)| c > 0) {
            for (y, &cy) in other.counts.iter().enumerate().filter(|(_, &c)| c > 0) {
                let slot = &mut counts[(x + y) % m];
                *slot = slot.checked_add(cx.checked_mul(cy)?)?;
            }
        }
        Some(Self { level: self.level, counts })
    }

    /// Multiset union (counts add).
    pub fn disjoint_union(&self, other: &Self) -> Option<Self> {
        assert_eq!(self.level, other.level, "multisets at different levels");
        let counts = self
            .counts
            .iter()
            .zip(&other.counts)
            .map(|(a, b)| a.checked_add(*b))
            .collect::<Option<Vec<_>>>()?;
        Some(Self { level: self.level, counts })
    }
}

impl fmt::Display for ResidueMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, e) in self.elements().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}} mod {}", self.level)
    }
}

/// A set of residues modulo `m <= 256`, as a 256-bit mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub(crate) struct ResidueSet {
    words: [u64; 4],
}

impl ResidueSet {
    pub(crate) const MAX_LEVEL: u32 = 256;

    pub(crate) fn singleton(r: u32) -> Self {
        let mut s = Self::default();
        s.insert(r);
        s
    }

    pub(crate) fn insert(&mut self, r: u32) {
        self.words[(r / 64) as usize] |= 1 << (r % 64);
    }

    pub(crate) fn contains(&self, r: u32) -> bool {
        self.words[(r / 64) as usize] >> (r % 64) & 1 == 1
    }

    pub(crate) fn union(&self, other: &Self) -> Self {
        let mut words = self.words;
        for (w, o) in words.iter_mut().zip(other.words) {
            *w |= o;
        }
        Self { words }
    }

    pub(crate) fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros();
                rest &= rest - 1;
                Some(64 * k as u32 + bit)
            })
        })
    }

    /// `{x + by mod m}`.
    pub(crate) fn rotated(&self, by: u32, m: u32) -> Self {
        let mut out = Self::default();
        for r in self.iter() {
            out.insert((r + by) % m);
        }
        out
    }
}
