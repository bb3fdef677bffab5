//! Residue fields `Z[zeta_m]/P = F_p[x]/(g)` and the `m`-th power residue
//! character on them.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, mod_inverse, multiplicative_order, prime_factors};
use crate::jacobi::JacobiError;
use crate::poly::{cyclotomic_mod_p, equal_degree_factorization, FpPoly};

/// Largest residue field for which a full discrete-log table is built.
pub const TABLE_LIMIT: u64 = 1 << 20;

/// A prime of `Z[zeta_m]` above `p`, named by its defining polynomial.
///
/// `zeta_m` reduces to the class of `x` in `F_p[x]/(g)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ResidueFieldSpec {
    pub m: u32,
    pub p: u64,
    pub f: u32,
    /// Monic, ascending coefficients, length `f + 1`.
    pub g: Vec<u64>,
    /// Position of `g` among the sorted factors.
    pub index: usize,
}

impl ResidueFieldSpec {
    /// `N = p^f`.
    pub fn norm(&self) -> BigUint {
        BigUint::from(self.p).pow(self.f)
    }

    /// `N` when it fits in a `u64`.
    pub fn norm_u64(&self) -> Option<u64> {
        self.p.checked_pow(self.f)
    }
}

/// Every prime above `p`, ordered by the coefficient list of `g`.
pub fn residue_fields(m: u32, p: u64) -> Result<Vec<ResidueFieldSpec>, JacobiError> {
    if !is_prime(p) {
        return Err(JacobiError::NotPrime(p));
    }
    if (m as u64).is_multiple_of(p) {
        return Err(JacobiError::RamifiedPrime { m, p });
    }
    let f = multiplicative_order(p % m as u64, m as u64) as u32;
    let factors = equal_degree_factorization(&cyclotomic_mod_p(m, p), f as usize);
    Ok(factors
        .into_iter()
        .enumerate()
        .map(|(index, g)| ResidueFieldSpec { m, p, f, g: g.coeffs().to_vec(), index })
        .collect())
}

/// Arithmetic in `F_p[x]/(g)` on coefficient vectors of length `f`.
#[derive(Debug, Clone)]
pub(crate) struct Field {
    p: u64,
    f: usize,
    g: Vec<u64>,
}

impl Field {
    pub(crate) fn new(spec: &ResidueFieldSpec) -> Self {
        Self { p: spec.p, f: spec.f as usize, g: spec.g.clone() }
    }

    pub(crate) fn one(&self) -> Vec<u64> {
        let mut e = vec![0; self.f];
        e[0] = 1;
        e
    }

    /// The class of `x`, i.e. the reduction of `zeta_m`.
    pub(crate) fn root(&self) -> Vec<u64> {
        let mut e = vec![0; self.f];
        if self.f == 1 {
            e[0] = (self.p - self.g[0]) % self.p;
        } else {
            e[1] = 1;
        }
        e
    }

    pub(crate) fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let (p, f) = (self.p as u128, self.f);
        let mut prod = vec![0u128; 2 * f - 1];
        for (i, &x) in a.iter().enumerate().filter(|(_, &x)| x != 0) {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u128 * y as u128) % p;
            }
        }
        // g is monic: x^f = -(g_0 + ... + g_{f-1} x^{f-1})
        for top in (f..2 * f - 1).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            for k in 0..f {
                let sub = c * self.g[k] as u128 % p;
                let slot = &mut prod[top - f + k];
                *slot = (*slot + p - sub) % p;
            }
        }
        prod[..f].iter().map(|&c| c as u64).collect()
    }

    pub(crate) fn pow(&self, base: &[u64], exp: &BigUint) -> Vec<u64> {
        let mut acc = self.one();
        for bit in (0..exp.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if exp.bit(bit) {
                acc = self.mul(&acc, base);
            }
        }
        acc
    }

    pub(crate) fn encode(&self, e: &[u64]) -> u64 {
        e.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub(crate) fn decode(&self, mut idx: u64) -> Vec<u64> {
        (0..self.f)
            .map(|_| {
                let c = idx % self.p;
                idx /= self.p;
                c
            })
            .collect()
    }

    /// `1 - e`.
    pub(crate) fn one_minus(&self, e: &[u64]) -> Vec<u64> {
        let mut out: Vec<u64> = e.iter().map(|&c| (self.p - c) % self.p).collect();
        out[0] = (out[0] + 1) % self.p;
        out
    }
}

/// `chi(z)`: the `k` with `z^{(N-1)/m} = zeta^k` in the residue field,
/// by exponentiation and matching against the powers of `zeta`.
///
/// `z` is given by its coefficients in `F_p[x]/(g)`, ascending.
pub fn power_residue_char(spec: &ResidueFieldSpec, z: &[u64]) -> Result<u32, JacobiError> {
    let field = Field::new(spec);
    let reduced = FpPoly::new(spec.p, z.to_vec()).rem(&FpPoly::new(spec.p, spec.g.clone()));
    let mut z = reduced.coeffs().to_vec();
    z.resize(field.f, 0);
    if z.iter().all(|&c| c == 0) {
        return Err(JacobiError::ZeroArgument);
    }
    let exp = (spec.norm() - 1u32) / spec.m;
    let value = field.pow(&z, &exp);
    let root = field.root();
    let mut power = field.one();
    for k in 0..spec.m {
        if power == value {
            return Ok(k);
        }
        power = field.mul(&power, &root);
    }
    Err(JacobiError::InvariantViolation("power residue value is not an m-th root of unity"))
}

/// `chi` on every element of a residue field with `N <= TABLE_LIMIT`,
/// indexed by the encoding `sum c_i p^i`.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    spec: ResidueFieldSpec,
    field: Field,
    values: Vec<u16>,
}

const ZERO_SLOT: u16 = u16::MAX;

impl CharacterTable {
    pub fn new(spec: &ResidueFieldSpec) -> Result<Self, JacobiError> {
        let n = spec
            .norm_u64()
            .filter(|&n| n <= TABLE_LIMIT)
            .ok_or(JacobiError::NormTooLarge { p: spec.p, f: spec.f, limit: TABLE_LIMIT })?;
        let field = Field::new(spec);
        let order = n - 1;
        let gen = primitive_element(&field, n);
        let mut logs = vec![u32::MAX; n as usize];
        let mut e = field.one();
        for l in 0..order {
            logs[field.encode(&e) as usize] = l as u32;
            e = field.mul(&e, &gen);
        }
        let m = spec.m as u64;
        let cofactor = order / m;
        let log_root = logs[field.encode(&field.root()) as usize] as u64;
        let u = log_root / cofactor;
        let u_inv = mod_inverse(u % m, m).ok_or(JacobiError::InvariantViolation(
            "zeta does not have exact order m in the residue field",
        ))?;
        let values = logs
            .into_iter()
            .map(|l| if l == u32::MAX { ZERO_SLOT } else { (l as u64 % m * u_inv % m) as u16 })
            .collect();
        Ok(Self { spec: spec.clone(), field, values })
    }

    pub fn spec(&self) -> &ResidueFieldSpec {
        &self.spec
    }

    /// Number of field elements.
    pub fn size(&self) -> u64 {
        self.values.len() as u64
    }

    /// `chi` of the element with the given encoding; `None` at zero.
    pub fn chi_index(&self, idx: u64) -> Option<u32> {
        let v = self.values[idx as usize];
        (v != ZERO_SLOT).then_some(v as u32)
    }

    pub fn chi(&self, z: &[u64]) -> Result<u32, JacobiError> {
        if z.len() > self.field.f {
            return power_residue_char(&self.spec, z);
        }
        let mut coeffs: Vec<u64> = z.iter().map(|&c| c % self.spec.p).collect();
        coeffs.resize(self.field.f, 0);
        self.chi_index(self.field.encode(&coeffs)).ok_or(JacobiError::ZeroArgument)
    }

    /// Encoding of `1 - z` given the encoding of `z`.
    pub(crate) fn one_minus_index(&self, idx: u64) -> u64 {
        let z = self.field.decode(idx);
        self.field.encode(&self.field.one_minus(&z))
    }
}

/// Smallest element (by encoding) generating the multiplicative group.
fn primitive_element(field: &Field, n: u64) -> Vec<u64> {
    let order = n - 1;
    let primes = prime_factors(order);
    (1..n)
        .map(|idx| field.decode(idx))
        .find(|cand| {
            primes.iter().all(|&q| {
                let e = BigUint::from(order / q);
                field.pow(cand, &e) != field.one()
            })
        })
        .unwrap_or_else(|| field.one())
}
