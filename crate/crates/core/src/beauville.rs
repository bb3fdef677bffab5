//! Beauville's torsion test reduced to exponent bookkeeping.
//!
//! An automorphism `sigma_{i,j}: (x, y) -> (zeta^i x, zeta^j y)` of the Fermat
//! curve acts on the eigenbasis `w_{r,s}` by `zeta^{ir+js}`. The tangent space
//! of the intermediate Jacobian is
//!
//! ```text
//! (L^{g-2} V  (x)  L^{g-1} V*)  (+)  (L^{g-3} V  (x)  L^g V*)
//! ```
//!
//! and an automorphism is a *witness* when none of its eigenvalues there is
//! `1`, i.e. residue `0` never occurs among the exponents.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fermat::{canonical_rep, differential_basis, enumerate_classes, genus, is_hyperelliptic, QuotientLabel};
use crate::multiset::{ResidueMultiset, ResidueSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScanError {
    #[error("{label} has genus {genus}; the tangent-space test needs genus at least 3")]
    GenusTooSmall { label: QuotientLabel, genus: u32 },
    #[error("wedge degree {k} exceeds the {n} available exponents")]
    KOutOfRange { k: usize, n: u64 },
    #[error("multiplicity count overflowed u64")]
    CountOverflow,
    #[error("automorphism ({i},{j}) is outside 1..={m}")]
    InvalidAut { i: u32, j: u32, m: u32 },
    #[error("level {0} exceeds the supported maximum {max}", max = ResidueSet::MAX_LEVEL)]
    LevelTooLarge(u32),
    #[error("the induced-action collapse does not hold for {0}")]
    CollapseInvariantViolated(QuotientLabel),
}

/// The automorphism `sigma_{i,j}`, with `1 <= i, j <= m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AutLabel {
    pub i: u32,
    pub j: u32,
}

impl AutLabel {
    pub fn new(i: u32, j: u32, m: u32) -> Result<Self, ScanError> {
        if i == 0 || j == 0 || i > m || j > m {
            return Err(ScanError::InvalidAut { i, j, m });
        }
        Ok(Self { i, j })
    }

    /// The identity `sigma_{m,m}`.
    pub fn identity(m: u32) -> Self {
        Self { i: m, j: m }
    }

    /// All automorphism labels at level `m` in lexicographic order.
    pub fn all(m: u32) -> impl Iterator<Item = AutLabel> {
        (1..=m).flat_map(move |i| (1..=m).map(move |j| AutLabel { i, j }))
    }

    /// Exponent `ia + jb` of the induced scaling `y -> zeta^{ia+jb} y` on
    /// the quotient model.
    pub fn induced_exponent(&self, q: &QuotientLabel) -> u32 {
        let m = q.m() as u64;
        ((self.i as u64 * q.a() as u64 + self.j as u64 * q.b() as u64) % m) as u32
    }
}

/// Exponents of `sigma_{i,j}` acting on the tangent space of the
/// intermediate Jacobian.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentSpectrum {
    pub quotient: QuotientLabel,
    pub aut: AutLabel,
    pub first: ResidueMultiset,
    pub second: ResidueMultiset,
    pub exponents: ResidueMultiset,
    pub contains_unit: bool,
}

pub fn v_exponents(q: &QuotientLabel, aut: AutLabel) -> ResidueMultiset {
    let basis = differential_basis(q);
    exponents_on_basis(q.m(), &basis.pairs, aut)
}

fn exponents_on_basis(m: u32, pairs: &[(u32, u32)], aut: AutLabel) -> ResidueMultiset {
    let m64 = m as u64;
    ResidueMultiset::from_residues(
        m,
        pairs.iter().map(|&(r, s)| (aut.i as u64 * r as u64 + aut.j as u64 * s as u64) % m64),
    )
}

pub fn dual_exponents(v: &ResidueMultiset) -> ResidueMultiset {
    v.negated()
}

/// Sums over all `k`-element sub-multisets (by position) of `v`.
pub fn wedge_exponents(v: &ResidueMultiset, k: usize) -> Result<ResidueMultiset, ScanError> {
    let n = v.cardinality();
    if k as u64 > n {
        return Err(ScanError::KOutOfRange { k, n });
    }
    // a k-subset sum is the total minus the sum of its complement
    if 2 * k as u64 > n {
        let complement = wedge_by_recursion(v, (n - k as u64) as usize)?;
        return Ok(complement.negated().shifted(v.total()));
    }
    wedge_by_recursion(v, k)
}

fn wedge_by_recursion(v: &ResidueMultiset, k: usize) -> Result<ResidueMultiset, ScanError> {
    let m = v.level() as usize;
    // layers[j][r] = number of j-subsets of the processed prefix summing to r
    let mut layers = vec![vec![0u64; m]; k + 1];
    layers[0][0] = 1;
    let mut seen = 0usize;
    for e in v.elements() {
        seen += 1;
        for j in (1..=k.min(seen)).rev() {
            let (lower, upper) = layers.split_at_mut(j);
            let (src, dst) = (&lower[j - 1], &mut upper[0]);
            for (r, &c) in src.iter().enumerate().filter(|(_, &c)| c > 0) {
                let slot = &mut dst[(r + e as usize) % m];
                *slot = slot.checked_add(c).ok_or(ScanError::CountOverflow)?;
            }
        }
    }
    Ok(ResidueMultiset::from_counts(layers.swap_remove(k)))
}

/// Distinct values of the `k`-subset sums, without multiplicities.
fn wedge_support(elements: &[u32], m: u32, k: usize) -> ResidueSet {
    let n = elements.len();
    if 2 * k > n {
        let total = elements.iter().map(|&e| e as u64).sum::<u64>() % m as u64;
        let complement = wedge_support(elements, m, n - k);
        let mut out = ResidueSet::default();
        for r in complement.iter() {
            out.insert(((total + m as u64 - r as u64) % m as u64) as u32);
        }
        return out;
    }
    let mut layers = vec![ResidueSet::default(); k + 1];
    layers[0] = ResidueSet::singleton(0);
    for (seen, &e) in elements.iter().enumerate() {
        for j in (1..=k.min(seen + 1)).rev() {
            let moved = layers[j - 1].rotated(e, m);
            layers[j] = layers[j].union(&moved);
        }
    }
    layers.swap_remove(k)
}

fn check_genus(q: &QuotientLabel) -> Result<u32, ScanError> {
    let g = genus(q);
    if g < 3 {
        return Err(ScanError::GenusTooSmall { label: *q, genus: g });
    }
    Ok(g)
}

pub fn tangent_exponents(q: &QuotientLabel, aut: AutLabel) -> Result<TangentSpectrum, ScanError> {
    let g = check_genus(q)? as usize;
    let v = v_exponents(q, aut);
    let dual = dual_exponents(&v);
    let first = wedge_exponents(&v, g - 2)?
        .minkowski_sum(&wedge_exponents(&dual, g - 1)?)
        .ok_or(ScanError::CountOverflow)?;
    let second = wedge_exponents(&v, g - 3)?
        .minkowski_sum(&wedge_exponents(&dual, g)?)
        .ok_or(ScanError::CountOverflow)?;
    let exponents = first.disjoint_union(&second).ok_or(ScanError::CountOverflow)?;
    let contains_unit = exponents.contains(0);
    Ok(TangentSpectrum { quotient: *q, aut, first, second, exponents, contains_unit })
}

pub fn is_beauville_witness(q: &QuotientLabel, aut: AutLabel) -> Result<bool, ScanError> {
    Ok(QuotientScanner::new(q)?.is_witness(aut))
}

pub fn first_witness(q: &QuotientLabel) -> Result<Option<AutLabel>, ScanError> {
    Ok(QuotientScanner::new(q)?.first_witness())
}

/// Precomputed eigenbasis for repeated witness tests on one quotient.
#[derive(Debug, Clone)]
pub struct QuotientScanner {
    label: QuotientLabel,
    genus: usize,
    pairs: Vec<(u32, u32)>,
}

impl QuotientScanner {
    pub fn new(q: &QuotientLabel) -> Result<Self, ScanError> {
        if q.m() > ResidueSet::MAX_LEVEL {
            return Err(ScanError::LevelTooLarge(q.m()));
        }
        let genus = check_genus(q)? as usize;
        let pairs = differential_basis(q).pairs;
        debug_assert_eq!(pairs.len(), genus);
        Ok(Self { label: *q, genus, pairs })
    }

    pub fn label(&self) -> QuotientLabel {
        self.label
    }

    fn v_elements(&self, aut: AutLabel) -> Vec<u32> {
        let m = self.label.m() as u64;
        self.pairs
            .iter()
            .map(|&(r, s)| ((aut.i as u64 * r as u64 + aut.j as u64 * s as u64) % m) as u32)
            .collect()
    }

    /// Whether residue 0 is absent from the tangent exponents. Works on
    /// supports only: `0 in A + B` iff some `x in A` has `-x in B`.
    pub fn is_witness(&self, aut: AutLabel) -> bool {
        let m = self.label.m();
        let g = self.genus;
        let v = self.v_elements(aut);
        let dual: Vec<u32> = v.iter().map(|&e| (m - e) % m).collect();
        let hits_zero = |a: &ResidueSet, b: &ResidueSet| a.iter().any(|x| b.contains((m - x) % m));
        let first = hits_zero(&wedge_support(&v, m, g - 2), &wedge_support(&dual, m, g - 1));
        if first {
            return false;
        }
        !hits_zero(&wedge_support(&v, m, g - 3), &wedge_support(&dual, m, g))
    }

    /// First witness in lexicographic `(i, j)` order.
    pub fn first_witness(&self) -> Option<AutLabel> {
        AutLabel::all(self.label.m()).find(|&aut| self.is_witness(aut))
    }

    /// Checks that the eigenvalues on `V` depend only on the induced
    /// exponent `ia + jb`.
    pub fn collapse_holds(&self) -> bool {
        let m = self.label.m();
        let mut by_class: Vec<Option<ResidueMultiset>> = vec![None; m as usize];
        for aut in AutLabel::all(m) {
            let v = exponents_on_basis(m, &self.pairs, aut);
            let slot = &mut by_class[aut.induced_exponent(&self.label) as usize];
            match slot {
                Some(seen) if *seen != v => return false,
                Some(_) => {}
                None => *slot = Some(v),
            }
        }
        true
    }

    /// Same answer as [`Self::first_witness`], testing one representative
    /// automorphism per induced exponent instead of all `m^2`. Only valid
    /// when [`Self::collapse_holds`].
    pub fn first_witness_collapsed(&self) -> Option<AutLabel> {
        let m = self.label.m();
        let mut representative: Vec<Option<AutLabel>> = vec![None; m as usize];
        for aut in AutLabel::all(m) {
            representative[aut.induced_exponent(&self.label) as usize].get_or_insert(aut);
        }
        let witness_class: Vec<bool> = representative
            .iter()
            .map(|rep| rep.is_some_and(|aut| self.is_witness(aut)))
            .collect();
        AutLabel::all(m).find(|aut| witness_class[aut.induced_exponent(&self.label) as usize])
    }
}

/// One row of a scan: a class representative and, when the genus allows
/// the test, its first witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub m: u32,
    pub a: u32,
    pub b: u32,
    pub genus: u32,
    pub hyperelliptic: bool,
    pub witness: Option<(u32, u32)>,
    /// `(0,0)` is a smooth point of the affine model, fixed by every `sigma_{i,j}`.
    pub smooth_fixed_point: bool,
}

impl ScanRecord {
    pub fn label(&self) -> QuotientLabel {
        QuotientLabel::new(self.m as i64, self.a as i64, self.b as i64)
            .expect("scan records hold valid labels")
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ScanOptions {
    pub use_collapse: bool,
}

pub fn scan_class(q: &QuotientLabel, opts: ScanOptions) -> Result<ScanRecord, ScanError> {
    let rep = canonical_rep(q);
    let g = genus(&rep);
    let witness = if g >= 3 {
        let scanner = QuotientScanner::new(&rep)?;
        let found = if opts.use_collapse {
            if !scanner.collapse_holds() {
                return Err(ScanError::CollapseInvariantViolated(rep));
            }
            scanner.first_witness_collapsed()
        } else {
            scanner.first_witness()
        };
        found.map(|aut| (aut.i, aut.j))
    } else {
        None
    };
    Ok(ScanRecord {
        m: rep.m(),
        a: rep.a(),
        b: rep.b(),
        genus: g,
        hyperelliptic: is_hyperelliptic(&rep),
        witness,
        smooth_fixed_point: rep.a() == 1 || rep.b() == 1,
    })
}

/// Every `(m, class)` pair for `m_lo..=m_hi`, in `(m, a, b)` order.
pub fn scan_tasks(m_lo: u32, m_hi: u32) -> Vec<QuotientLabel> {
    (m_lo.max(3)..=m_hi).flat_map(enumerate_classes).collect()
}

/// Sequential scan; see the CLI driver for the parallel version.
pub fn scan_range(m_lo: u32, m_hi: u32, opts: ScanOptions) -> Result<Vec<ScanRecord>, ScanError> {
    scan_tasks(m_lo, m_hi).iter().map(|q| scan_class(q, opts)).collect()
}
