//! Labels `(m, a, b)` of the cyclic quotients `y^m = (-1)^{a+b} x^a (1-x)^b`
//! of the Fermat curve, their unit-scaling equivalence classes, genus,
//! hyperelliptic criterion, eigenbasis of regular differentials and
//! subcovers.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{divisors, gcd, gcd_all, units};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelError {
    #[error("level m = {0} must be at least 3")]
    LevelTooSmall(i64),
    #[error("({m}, {a}, {b}): a and b must be nonzero modulo m")]
    RangeViolation { m: u32, a: i64, b: i64 },
    #[error("({m}, {a}, {b}): a + b vanishes modulo m")]
    DegenerateTriple { m: u32, a: u32, b: u32 },
    #[error("({m}, {a}, {b}): gcd(m, a, b, a + b) = {g} is not 1")]
    GcdViolation { m: u32, a: u32, b: u32, g: u32 },
    #[error("labels live at different levels {0} and {1}")]
    MismatchedLevel(u32, u32),
    #[error("{label} has a vanishing entry after scaling by {d}")]
    DegenerateSubcover { label: QuotientLabel, d: u32 },
    #[error("{d} does not divide the level of {label}")]
    NotADivisor { label: QuotientLabel, d: u32 },
}

/// Reduce `x` into `0..m`.
fn residue(x: i64, m: u32) -> u32 {
    x.rem_euclid(m as i64) as u32
}

/// An exponent pair `(a, b)` at level `m` with `a`, `b` and `a + b` all
/// nonzero modulo `m`, but with no coprimality requirement.
///
/// Jacobi sums and infinity types are indexed by such pairs, e.g. the
/// pair `(12, 2, 6)` which is not the label of a level-12 quotient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CharacterPair {
    m: u32,
    a: u32,
    b: u32,
}

impl CharacterPair {
    pub fn new(m: i64, a: i64, b: i64) -> Result<Self, LabelError> {
        if m < 3 {
            return Err(LabelError::LevelTooSmall(m));
        }
        let mm = m as u32;
        let (ra, rb) = (residue(a, mm), residue(b, mm));
        if ra == 0 || rb == 0 {
            return Err(LabelError::RangeViolation { m: mm, a, b });
        }
        if (ra + rb) % mm == 0 {
            return Err(LabelError::DegenerateTriple { m: mm, a: ra, b: rb });
        }
        Ok(Self { m: mm, a: ra, b: rb })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    /// The third entry `<-a-b>` of the triple.
    pub fn c(&self) -> u32 {
        (2 * self.m - self.a - self.b) % self.m
    }

    /// Scale both exponents by `k`; `None` if the result degenerates.
    pub fn scaled(&self, k: u32) -> Option<Self> {
        Self::new(self.m as i64, k as i64 * self.a as i64, k as i64 * self.b as i64).ok()
    }
}

impl fmt::Display for CharacterPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.m, self.a, self.b)
    }
}

/// A valid triple `(m, a, b)` naming the curve `C^m_{a,b}`.
///
/// `a` and `b` are stored reduced to `1..m`; the implicit third entry is
/// `c = <-a-b>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuotientLabel {
    m: u32,
    a: u32,
    b: u32,
}

impl QuotientLabel {
    /// Validate and reduce `(m, a, b)`.
    pub fn new(m: i64, a: i64, b: i64) -> Result<Self, LabelError> {
        let pair = CharacterPair::new(m, a, b)?;
        let (m, a, b) = (pair.m, pair.a, pair.b);
        let g = gcd_all(&[m as u64, a as u64, b as u64, (a + b) as u64]) as u32;
        if g != 1 {
            return Err(LabelError::GcdViolation { m, a, b, g });
        }
        Ok(Self { m, a, b })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn c(&self) -> u32 {
        (2 * self.m - self.a - self.b) % self.m
    }

    pub fn triple(&self) -> [u32; 3] {
        [self.a, self.b, self.c()]
    }

    pub fn pair(&self) -> CharacterPair {
        CharacterPair { m: self.m, a: self.a, b: self.b }
    }

    /// Sorted triple `{ta, tb, tc}` for a unit `t`.
    fn scaled_sorted(&self, t: u32) -> [u32; 3] {
        let mut out = self.triple().map(|x| x * t % self.m);
        out.sort_unstable();
        out
    }

    fn sorted_triple(&self) -> [u32; 3] {
        self.scaled_sorted(1)
    }
}

impl From<QuotientLabel> for CharacterPair {
    fn from(q: QuotientLabel) -> Self {
        q.pair()
    }
}

impl fmt::Display for QuotientLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.m, self.a, self.b)
    }
}

/// Alias for [`QuotientLabel::new`].
pub fn validate_label(m: i64, a: i64, b: i64) -> Result<QuotientLabel, LabelError> {
    QuotientLabel::new(m, a, b)
}

pub fn genus(q: &QuotientLabel) -> u32 {
    let m = q.m as u64;
    let sum = gcd(m, q.a as u64) + gcd(m, q.b as u64) + gcd(m, q.c() as u64);
    let twice = m + 2 - sum;
    debug_assert!(twice.is_multiple_of(2), "odd genus numerator for {q}");
    (twice / 2) as u32
}

/// Smallest unit `t` with `t * {a, b, c} = {a', b', c'}` as multisets,
/// where `q = (a, b)` and `q2 = (a', b')`.
pub fn equivalent(q: &QuotientLabel, q2: &QuotientLabel) -> Result<Option<u32>, LabelError> {
    if q.m != q2.m {
        return Err(LabelError::MismatchedLevel(q.m, q2.m));
    }
    let target = q2.sorted_triple();
    Ok(units(q.m).into_iter().find(|&t| q.scaled_sorted(t) == target))
}

/// The member of the class of `q` whose sorted triple is lexicographically
/// least; its `(a, b)` are the two smallest entries.
pub fn canonical_rep(q: &QuotientLabel) -> QuotientLabel {
    let best = units(q.m)
        .into_iter()
        .map(|t| q.scaled_sorted(t))
        .min()
        .expect("unit group is never empty");
    QuotientLabel { m: q.m, a: best[0], b: best[1] }
}

pub fn is_hyperelliptic(q: &QuotientLabel) -> bool {
    let rep = canonical_rep(q);
    let one_one = QuotientLabel { m: q.m, a: 1, b: 1 };
    if rep == canonical_rep(&one_one) {
        return true;
    }
    if q.m.is_multiple_of(2) {
        let one_n = QuotientLabel { m: q.m, a: 1, b: q.m / 2 };
        return rep == canonical_rep(&one_n);
    }
    false
}

/// Exponent pairs `(r, s)` of the eigenbasis `x^{r-m} y^{s-1} dy` of
/// regular differentials pulled back to the Fermat curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffBasis {
    pub label: QuotientLabel,
    pub pairs: Vec<(u32, u32)>,
}

impl DiffBasis {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

pub fn differential_basis(q: &QuotientLabel) -> DiffBasis {
    let m = q.m;
    let mut pairs = Vec::new();
    for r in 1..m {
        for s in 1..m - r {
            if (q.b * r) % m == (q.a * s) % m {
                pairs.push((r, s));
            }
        }
    }
    DiffBasis { label: *q, pairs }
}

/// Canonical representatives of all classes at level `m`, ascending.
pub fn enumerate_classes(m: u32) -> Vec<QuotientLabel> {
    let mut reps: Vec<QuotientLabel> = (1..m)
        .flat_map(|a| (1..m).map(move |b| (a, b)))
        .filter_map(|(a, b)| QuotientLabel::new(m as i64, a as i64, b as i64).ok())
        .filter(|q| q.a <= q.b && q.b <= q.c())
        .map(|q| canonical_rep(&q))
        .collect();
    reps.sort_unstable();
    reps.dedup();
    reps
}

/// The quotient `C^m_{da,db}` written at its true level: with
/// `h = gcd(m, <da>, <db>, <dc>)` this is `(m/h, <da>/h, <db>/h)`.
pub fn subcover(q: &QuotientLabel, d: u32) -> Result<QuotientLabel, LabelError> {
    let m = q.m;
    if d == 0 || !m.is_multiple_of(d) {
        return Err(LabelError::NotADivisor { label: *q, d });
    }
    let [da, db, dc] = q.triple().map(|x| (d as u64 * x as u64 % m as u64) as u32);
    if da == 0 || db == 0 || dc == 0 {
        return Err(LabelError::DegenerateSubcover { label: *q, d });
    }
    let h = gcd_all(&[m as u64, da as u64, db as u64, dc as u64]) as u32;
    QuotientLabel::new((m / h) as i64, (da / h) as i64, (db / h) as i64)
}

/// Every proper subcover `subcover(q, d)` for divisors `1 < d < m` that
/// does not degenerate.
pub fn proper_subcovers(q: &QuotientLabel) -> Vec<(u32, QuotientLabel)> {
    divisors(q.m)
        .into_iter()
        .filter(|&d| d > 1 && d < q.m)
        .filter_map(|d| subcover(q, d).ok().map(|s| (d, s)))
        .collect()
}
