//! CM types of new parts, their stabilizers, isogeny at a fixed level,
//! minimality under subcovers and infinity types of Jacobi-sum characters.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{euler_phi, units};
use crate::fermat::{
    enumerate_classes, genus, is_hyperelliptic, proper_subcovers, CharacterPair, QuotientLabel,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CmError {
    #[error("objects live at different levels {0} and {1}")]
    MismatchedLevel(u32, u32),
    #[error("{0} is hyperelliptic; minimality is defined for non-hyperelliptic quotients")]
    HyperellipticInput(QuotientLabel),
    #[error("empty product of infinity types")]
    EmptyProduct,
}

/// `H = { h in (Z/m)^x : <ha> + <hb> < m }`, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CmType {
    level: u32,
    members: Vec<u32>,
}

impl CmType {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn contains(&self, h: u32) -> bool {
        self.members.binary_search(&(h % self.level)).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `t * H` for a unit `t`.
    pub fn scaled(&self, t: u32) -> CmType {
        let m = self.level as u64;
        let mut members: Vec<u32> =
            self.members.iter().map(|&h| (t as u64 * h as u64 % m) as u32).collect();
        members.sort_unstable();
        CmType { level: self.level, members }
    }
}

impl fmt::Display for CmType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.members.iter().map(u32::to_string).collect();
        write!(f, "{{{}}} mod {}", parts.join(","), self.level)
    }
}

/// Units `h` with `hH = H`; a subgroup of `(Z/m)^x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stabilizer {
    level: u32,
    members: Vec<u32>,
}

impl Stabilizer {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }
}

pub fn cm_type_of(pair: &CharacterPair) -> CmType {
    let m = pair.m() as u64;
    let members = units(pair.m())
        .into_iter()
        .filter(|&h| {
            let ha = h as u64 * pair.a() as u64 % m;
            let hb = h as u64 * pair.b() as u64 % m;
            ha + hb < m
        })
        .collect();
    CmType { level: pair.m(), members }
}

pub fn cm_type(q: &QuotientLabel) -> CmType {
    cm_type_of(&q.pair())
}

pub fn stabilizer_of(h: &CmType) -> Stabilizer {
    let members = units(h.level).into_iter().filter(|&t| h.scaled(t) == *h).collect();
    Stabilizer { level: h.level, members }
}

pub fn stabilizer(q: &QuotientLabel) -> Stabilizer {
    stabilizer_of(&cm_type(q))
}

/// Whether the new part is simple (trivial stabilizer).
pub fn is_simple(q: &QuotientLabel) -> bool {
    stabilizer(q).members == [1]
}

/// Smallest unit `t` with `t * H(q) = H(q2)`.
pub fn isogenous(q: &QuotientLabel, q2: &QuotientLabel) -> Result<Option<u32>, CmError> {
    if q.m() != q2.m() {
        return Err(CmError::MismatchedLevel(q.m(), q2.m()));
    }
    let (h1, h2) = (cm_type(q), cm_type(q2));
    Ok(units(q.m()).into_iter().find(|&t| h1.scaled(t) == h2))
}

fn hyperelliptic_base(m: u32) -> QuotientLabel {
    QuotientLabel::new(m as i64, 1, 1).expect("(m,1,1) is valid for m >= 3")
}

pub fn is_isogenous_to_hyperelliptic(q: &QuotientLabel) -> bool {
    isogenous(q, &hyperelliptic_base(q.m()))
        .expect("same level")
        .is_some()
}

/// Canonical representatives of the non-hyperelliptic classes at level `m`
/// whose new part is isogenous to that of `(m,1,1)`.
pub fn hyperelliptic_isogeny_classes(m: u32) -> Vec<QuotientLabel> {
    enumerate_classes(m)
        .into_iter()
        .filter(|q| !is_hyperelliptic(q) && is_isogenous_to_hyperelliptic(q))
        .collect()
}

/// A non-hyperelliptic quotient is minimal when none of its subcovers is a
/// non-hyperelliptic quotient of strictly lower genus. Subcovers of genus
/// at most 2 never obstruct.
pub fn is_minimal(q: &QuotientLabel) -> Result<bool, CmError> {
    if is_hyperelliptic(q) {
        return Err(CmError::HyperellipticInput(*q));
    }
    Ok(obstructing_subcover(q).is_none())
}

/// The first subcover witnessing non-minimality, with its divisor.
pub fn obstructing_subcover(q: &QuotientLabel) -> Option<(u32, QuotientLabel)> {
    let g = genus(q);
    proper_subcovers(q).into_iter().find(|(_, sub)| {
        let gs = genus(sub);
        gs >= 3 && gs < g && !is_hyperelliptic(sub)
    })
}

/// One `[p, q]` pair per conjugate pair of embeddings `{h, m-h}`, ordered
/// by the smaller representative `h < m/2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InfinityType {
    level: u32,
    pairs: Vec<[u32; 2]>,
}

impl InfinityType {
    pub fn new(level: u32, pairs: Vec<[u32; 2]>) -> Self {
        Self { level, pairs }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn pairs(&self) -> &[[u32; 2]] {
        &self.pairs
    }

    /// The smaller representatives `h` labelling each slot.
    pub fn embedding_order(level: u32) -> Vec<u32> {
        units(level).into_iter().filter(|&h| 2 * h < level).collect()
    }
}

impl fmt::Display for InfinityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs.iter().map(|[p, q]| format!("[{p},{q}]")).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

pub fn infinity_type(pair: &CharacterPair) -> InfinityType {
    let h = cm_type_of(pair);
    let m = pair.m();
    let pairs = InfinityType::embedding_order(m)
        .into_iter()
        .map(|u| if h.contains(u) { [1, 0] } else { [0, 1] })
        .collect();
    InfinityType { level: m, pairs }
}

/// Infinity type of a product of characters: componentwise sum.
pub fn product_infinity_type(types: &[InfinityType]) -> Result<InfinityType, CmError> {
    let (first, rest) = types.split_first().ok_or(CmError::EmptyProduct)?;
    let mut acc = first.clone();
    for t in rest {
        if t.level != acc.level {
            return Err(CmError::MismatchedLevel(acc.level, t.level));
        }
        for (slot, add) in acc.pairs.iter_mut().zip(&t.pairs) {
            slot[0] += add[0];
            slot[1] += add[1];
        }
    }
    Ok(acc)
}

/// Aggregated CM and isogeny data for one class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyRecord {
    pub m: u32,
    pub a: u32,
    pub b: u32,
    pub genus: u32,
    pub hyperelliptic: bool,
    pub cm_type: Vec<u32>,
    pub stabilizer_order: u32,
    pub simple: bool,
    pub isogenous_to_hyperelliptic: bool,
    /// `None` for hyperelliptic classes, where minimality is undefined.
    pub minimal: Option<bool>,
}

impl ClassifyRecord {
    pub fn label(&self) -> QuotientLabel {
        QuotientLabel::new(self.m as i64, self.a as i64, self.b as i64)
            .expect("classify records hold valid labels")
    }
}

pub fn classify(q: &QuotientLabel) -> ClassifyRecord {
    let h = cm_type(q);
    let stab = stabilizer_of(&h);
    let hyperelliptic = is_hyperelliptic(q);
    debug_assert_eq!(euler_phi(q.m()) as usize % stab.order(), 0);
    ClassifyRecord {
        m: q.m(),
        a: q.a(),
        b: q.b(),
        genus: genus(q),
        hyperelliptic,
        stabilizer_order: stab.order() as u32,
        simple: stab.order() == 1,
        isogenous_to_hyperelliptic: is_isogenous_to_hyperelliptic(q),
        minimal: (!hyperelliptic).then(|| obstructing_subcover(q).is_none()),
        cm_type: h.members,
    }
}

pub fn classify_level(m: u32) -> Vec<ClassifyRecord> {
    enumerate_classes(m).iter().map(classify).collect()
}
