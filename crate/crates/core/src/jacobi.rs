//! Jacobi sums `tau_{a,b}(P) = -sum chi^a(z) chi^b(1-z)`, their Weil and
//! Galois checks, and local Euler factors of products of them.

use num_bigint::BigInt;
use thiserror::Error;

use crate::arith::is_unit;
use crate::cyclo::CycloInt;
use crate::fermat::{CharacterPair, LabelError};
use crate::finite_field::{residue_fields, CharacterTable, ResidueFieldSpec};

/// Largest residue field over which sums are computed.
pub const MAX_NORM: u64 = 1_000_000;

/// Relative tolerance of the Weil check.
pub const WEIL_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JacobiError {
    #[error("prime {p} divides the level {m}")]
    RamifiedPrime { m: u32, p: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("the character is undefined at zero")]
    ZeroArgument,
    #[error("{k} is not a unit modulo {m}")]
    NonUnit { k: u32, m: u32 },
    #[error("residue field of size {p}^{f} exceeds the limit {limit}")]
    NormTooLarge { p: u64, f: u32, limit: u64 },
    #[error("local factor at p={p} has a non-rational coefficient at T^{degree}")]
    NonIntegralCoefficients { p: u64, degree: usize },
    #[error("character at level {0} used at level {1}")]
    MismatchedLevel(u32, u32),
    #[error("empty character list")]
    EmptyCharacterList,
    #[error(transparent)]
    InvalidPair(#[from] LabelError),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(&'static str),
}

/// Joint distribution of `(chi(z), chi(1-z))` over `z` in `F_P \ {0,1}`,
/// from which every `tau_{a,b}(P)` follows.
#[derive(Debug, Clone)]
pub struct JacobiTable {
    spec: ResidueFieldSpec,
    joint: Vec<i64>,
}

impl JacobiTable {
    pub fn new(spec: &ResidueFieldSpec) -> Result<Self, JacobiError> {
        let limit_error = JacobiError::NormTooLarge { p: spec.p, f: spec.f, limit: MAX_NORM };
        let n = spec.norm_u64().ok_or(limit_error.clone())?;
        if n > MAX_NORM {
            return Err(limit_error);
        }
        let chars = CharacterTable::new(spec)?;
        let m = spec.m as usize;
        let mut joint = vec![0i64; m * m];
        // encodings 0 and 1 are the field elements 0 and 1
        for idx in 2..n {
            let u = chars.chi_index(idx).ok_or(JacobiError::ZeroArgument)? as usize;
            let w = chars.chi_index(chars.one_minus_index(idx)).ok_or(JacobiError::ZeroArgument)?;
            joint[u * m + w as usize] += 1;
        }
        Ok(Self { spec: spec.clone(), joint })
    }

    pub fn spec(&self) -> &ResidueFieldSpec {
        &self.spec
    }

    /// `tau_{a,b}` for any exponents; validity is the caller's concern.
    pub fn tau_raw(&self, a: u32, b: u32) -> CycloInt {
        let m = self.spec.m as usize;
        let mut counts = vec![0i64; m];
        for u in 0..m {
            for w in 0..m {
                let c = self.joint[u * m + w];
                if c != 0 {
                    counts[(a as usize * u + b as usize * w) % m] -= c;
                }
            }
        }
        CycloInt::from_exponent_counts(self.spec.m, &counts)
    }

    pub fn tau(&self, pair: &CharacterPair) -> Result<CycloInt, JacobiError> {
        if pair.m() != self.spec.m {
            return Err(JacobiError::MismatchedLevel(pair.m(), self.spec.m));
        }
        Ok(self.tau_raw(pair.a(), pair.b()))
    }
}

/// `tau_{a,b}(P)` at the prime named by `spec`.
pub fn jacobi_sum(spec: &ResidueFieldSpec, a: u32, b: u32) -> Result<CycloInt, JacobiError> {
    let pair = CharacterPair::new(spec.m as i64, a as i64, b as i64)?;
    JacobiTable::new(spec)?.tau(&pair)
}

/// `|sigma(v)|^2 = n` in every complex embedding, to relative tolerance
/// [`WEIL_TOLERANCE`].
pub fn weil_check(v: &CycloInt, n: u64) -> bool {
    let n = n as f64;
    v.embedding_norms()
        .into_iter()
        .all(|(_, norm)| (norm - n).abs() <= WEIL_TOLERANCE * n.max(f64::MIN_POSITIVE))
}

/// `v` under `zeta -> zeta^k`.
pub fn galois_apply(k: u32, v: &CycloInt) -> Result<CycloInt, JacobiError> {
    v.galois(k).ok_or(JacobiError::NonUnit { k, m: v.level() })
}

/// `prod_P (1 - v(P) T^{f})` with rational integer coefficients, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalFactor {
    pub m: u32,
    pub p: u64,
    pub coeffs: Vec<BigInt>,
}

impl LocalFactor {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// The product character `prod_i tau_{a_i,b_i}` at one prime.
pub fn character_product(
    table: &JacobiTable,
    chars: &[CharacterPair],
) -> Result<CycloInt, JacobiError> {
    let (first, rest) = chars.split_first().ok_or(JacobiError::EmptyCharacterList)?;
    rest.iter().try_fold(table.tau(first)?, |acc, c| Ok(acc.mul(&table.tau(c)?)))
}

/// Local factor at `p` of the Hecke character `prod_i tau_{a_i,b_i}`.
pub fn local_factor(m: u32, chars: &[CharacterPair], p: u64) -> Result<LocalFactor, JacobiError> {
    if chars.is_empty() {
        return Err(JacobiError::EmptyCharacterList);
    }
    if let Some(c) = chars.iter().find(|c| c.m() != m) {
        return Err(JacobiError::MismatchedLevel(c.m(), m));
    }
    let specs = residue_fields(m, p)?;
    let values = specs
        .iter()
        .map(|spec| character_product(&JacobiTable::new(spec)?, chars))
        .collect::<Result<Vec<_>, _>>()?;
    local_factor_from_values(m, p, specs.first().map_or(1, |s| s.f) as usize, &values)
}

/// `prod_v (1 - v T^f)`, checked to have rational integer coefficients.
pub fn local_factor_from_values(
    m: u32,
    p: u64,
    f: usize,
    values: &[CycloInt],
) -> Result<LocalFactor, JacobiError> {
    let mut poly = vec![CycloInt::one(m)];
    for v in values {
        let mut next = vec![CycloInt::zero(m); poly.len() + f];
        for (k, c) in poly.iter().enumerate() {
            next[k] = next[k].add(c);
            next[k + f] = next[k + f].sub(&c.mul(v));
        }
        poly = next;
    }
    let coeffs = poly
        .iter()
        .enumerate()
        .map(|(degree, c)| {
            c.as_integer().cloned().ok_or(JacobiError::NonIntegralCoefficients { p, degree })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LocalFactor { m, p, coeffs })
}

/// Every pair `(a, b)` with `a, b, a + b` nonzero modulo `m`.
pub fn character_pairs(m: u32) -> Vec<CharacterPair> {
    (1..m)
        .flat_map(|a| (1..m).map(move |b| (a, b)))
        .filter(|&(a, b)| (a + b) % m != 0)
        .map(|(a, b)| CharacterPair::new(m as i64, a as i64, b as i64).expect("nonzero residues"))
        .collect()
}

/// Whether `(ka, kb)` is again a character pair for the unit `k`.
pub fn conjugate_pair(pair: &CharacterPair, k: u32) -> Option<CharacterPair> {
    if !is_unit(k, pair.m()) {
        return None;
    }
    pair.scaled(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{primes_up_to, units};
    use crate::finite_field::power_residue_char;

    fn pair(m: u32, a: u32, b: u32) -> CharacterPair {
        CharacterPair::new(m as i64, a as i64, b as i64).unwrap()
    }

    /// Direct summation with characters evaluated by exponentiation.
    fn naive_tau(spec: &ResidueFieldSpec, a: u32, b: u32) -> CycloInt {
        assert_eq!(spec.f, 1);
        let m = spec.m as usize;
        let mut counts = vec![0i64; m];
        for z in 2..spec.p {
            let u = power_residue_char(spec, &[z]).unwrap() as usize;
            let w = power_residue_char(spec, &[spec.p + 1 - z]).unwrap() as usize;
            counts[(a as usize * u + b as usize * w) % m] -= 1;
        }
        CycloInt::from_exponent_counts(spec.m, &counts)
    }

    #[test]
    fn table_sum_matches_naive_sum() {
        for (m, p) in [(9u32, 19u64), (7, 29), (12, 13), (15, 31)] {
            for spec in residue_fields(m, p).unwrap() {
                let table = JacobiTable::new(&spec).unwrap();
                for c in character_pairs(m).into_iter().take(12) {
                    assert_eq!(table.tau(&c).unwrap(), naive_tau(&spec, c.a(), c.b()));
                }
            }
        }
    }

    #[test]
    fn symmetric_in_a_and_b() {
        for spec in residue_fields(9, 19).unwrap().iter().chain(&residue_fields(9, 2).unwrap()) {
            let table = JacobiTable::new(spec).unwrap();
            for c in character_pairs(9) {
                assert_eq!(table.tau_raw(c.a(), c.b()), table.tau_raw(c.b(), c.a()));
            }
        }
    }

    #[test]
    fn weil_bound_m9_p19() {
        for spec in residue_fields(9, 19).unwrap() {
            let v = jacobi_sum(&spec, 1, 2).unwrap();
            assert!(weil_check(&v, 19));
            assert!(v.embedding_norms().iter().all(|&(_, n)| (n - 19.0).abs() < 1e-9));
        }
    }

    #[test]
    fn weil_check_on_rationals() {
        assert!(weil_check(&CycloInt::one(9), 1));
        assert!(weil_check(&CycloInt::from_integer(9, 2), 4));
        assert!(!weil_check(&CycloInt::from_integer(9, 2), 5));
        assert!(weil_check(&CycloInt::from_integer(9, -3), 9));
    }

    #[test]
    fn galois_equivariance_m9_p19() {
        for spec in residue_fields(9, 19).unwrap() {
            let table = JacobiTable::new(&spec).unwrap();
            for c in character_pairs(9) {
                let v = table.tau(&c).unwrap();
                assert_eq!(galois_apply(1, &v).unwrap(), v);
                for k in units(9) {
                    let conj = conjugate_pair(&c, k).unwrap();
                    assert_eq!(galois_apply(k, &v).unwrap(), table.tau(&conj).unwrap());
                }
                assert!(matches!(galois_apply(3, &v), Err(JacobiError::NonUnit { k: 3, m: 9 })));
            }
        }
    }

    /// GF(64) = F_2[x]/(x^6 + x + 1) with generator x; an element of
    /// order 9 is x^7 and chi(z) = log(z) mod 9.
    fn gf64_oracle_product() -> (f64, f64) {
        let mul = |mut a: u8, mut b: u8| {
            let mut r = 0u8;
            while b != 0 {
                if b & 1 == 1 {
                    r ^= a;
                }
                b >>= 1;
                a <<= 1;
                if a & 0x40 != 0 {
                    a ^= 0x43;
                }
            }
            r
        };
        let mut log = [0usize; 64];
        let mut e = 1u8;
        for l in 0..63 {
            log[e as usize] = l;
            e = mul(e, 2);
        }
        let tau = |a: usize, b: usize| {
            let (mut re, mut im) = (0.0, 0.0);
            for z in 2u8..64 {
                let k = (a * log[z as usize] + b * log[(z ^ 1) as usize]) % 9;
                let t = 2.0 * std::f64::consts::PI * k as f64 / 9.0;
                re -= t.cos();
                im -= t.sin();
            }
            (re, im)
        };
        let cmul = |(a, b): (f64, f64), (c, d): (f64, f64)| (a * c - b * d, a * d + b * c);
        cmul(cmul(tau(1, 2), tau(2, 4)), tau(5, 1))
    }

    #[test]
    fn m9_p2_product_and_local_factor() {
        let (re, im) = gf64_oracle_product();
        assert!((re + 512.0).abs() < 1e-6 && im.abs() < 1e-6);

        let chars = [pair(9, 1, 2), pair(9, 2, 4), pair(9, 5, 1)];
        let spec = &residue_fields(9, 2).unwrap()[0];
        let prod = character_product(&JacobiTable::new(spec).unwrap(), &chars).unwrap();
        assert_eq!(prod.as_integer(), Some(&BigInt::from(-512)));

        let lf = local_factor(9, &chars, 2).unwrap();
        let expect: Vec<BigInt> = [1, 0, 0, 0, 0, 0, 512].into_iter().map(BigInt::from).collect();
        assert_eq!(lf.coeffs, expect);
    }

    #[test]
    fn local_factor_shapes() {
        let chars = [pair(9, 1, 2), pair(9, 2, 4), pair(9, 5, 1)];
        // p = 1 mod 9: six linear factors; p = 8 mod 9: three in T^2
        for p in [19u64, 37, 17, 53] {
            let lf = local_factor(9, &chars, p).unwrap();
            assert_eq!(lf.degree(), 6);
            assert_eq!(lf.coeffs[0], BigInt::from(1));
            if p % 9 == 8 {
                assert!(lf.coeffs.iter().skip(1).step_by(2).all(|c| *c == BigInt::from(0)));
            }
        }
        assert!(matches!(local_factor(9, &chars, 3), Err(JacobiError::RamifiedPrime { .. })));
        assert!(matches!(local_factor(9, &[], 2), Err(JacobiError::EmptyCharacterList)));
        assert!(matches!(
            local_factor(12, &chars, 5),
            Err(JacobiError::MismatchedLevel(9, 12))
        ));
    }

    #[test]
    fn norm_compatibility_m12_m6() {
        for p in primes_up_to(200).into_iter().filter(|p| p % 12 == 1) {
            let specs6 = residue_fields(6, p).unwrap();
            for spec in residue_fields(12, p).unwrap() {
                let r = (p - spec.g[0]) % p;
                let r2 = r * r % p;
                let spec6 = specs6.iter().find(|s| (p - s.g[0]) % p == r2).unwrap();
                let lhs = jacobi_sum(&spec, 2, 6).unwrap();
                let rhs = jacobi_sum(spec6, 1, 3).unwrap().embed(12);
                assert_eq!(lhs, rhs, "p={p}");
            }
        }
    }

    #[test]
    fn norm_cap_is_enforced() {
        let spec = &residue_fields(9, 11).unwrap()[0];
        assert_eq!(spec.f, 6);
        assert!(matches!(JacobiTable::new(spec), Err(JacobiError::NormTooLarge { .. })));
    }
}
