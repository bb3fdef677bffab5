//! Dense polynomials over `F_p` and over `Z`, enough to factor cyclotomic
//! polynomials modulo unramified primes.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{divisors, mod_inverse};

/// Polynomial over `F_p`, coefficients ascending, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut out = Self { p, coeffs: coeffs.into_iter().map(|c| c % p).collect() };
        out.trim();
        out
    }

    pub fn zero(p: u64) -> Self {
        Self { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn lead(&self) -> u64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                (a + b) % self.p
            })
            .collect();
        Self::new(self.p, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                (a + self.p - b) % self.p
            })
            .collect();
        Self::new(self.p, coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p as u128;
        let mut acc = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u128 * b as u128) % p;
            }
        }
        Self::new(self.p, acc.into_iter().map(|c| c as u64).collect())
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let inv = mod_inverse(divisor.lead(), self.p).expect("p is prime");
        let p = self.p as u128;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let c = (*rem.last().unwrap() as u128 * inv as u128 % p) as u64;
            if c != 0 {
                let shift = top - dd;
                quot[shift] = c;
                for (k, &dc) in divisor.coeffs.iter().enumerate() {
                    let sub = (c as u128 * dc as u128 % p) as u64;
                    rem[shift + k] = (rem[shift + k] + self.p - sub) % self.p;
                }
            }
            rem.pop();
            while rem.len() > dd && rem.last() == Some(&0) {
                rem.pop();
            }
        }
        (Self::new(self.p, quot), Self::new(self.p, rem))
    }

    pub fn rem(&self, modulus: &Self) -> Self {
        self.div_rem(modulus).1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = mod_inverse(self.lead(), self.p).expect("p is prime") as u128;
        let p = self.p as u128;
        Self::new(self.p, self.coeffs.iter().map(|&c| (c as u128 * inv % p) as u64).collect())
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn mul_mod(&self, other: &Self, modulus: &Self) -> Self {
        self.mul(other).rem(modulus)
    }

    pub fn pow_mod(&self, mut exp: u64, modulus: &Self) -> Self {
        let mut base = self.rem(modulus);
        let mut acc = Self::one(self.p).rem(modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_mod(&base, modulus);
            }
            base = base.mul_mod(&base, modulus);
            exp >>= 1;
        }
        acc
    }
}

/// Integer polynomial division `num / den` when `den` is monic and the
/// division is exact.
fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], 1);
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dd];
    for shift in (0..quot.len()).rev() {
        let c = rem[shift + dd];
        quot[shift] = c;
        for (k, &dc) in den.iter().enumerate() {
            rem[shift + k] -= c * dc;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
    quot
}

/// Integer coefficients (ascending) of the `m`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(m: u32) -> Vec<i64> {
    let mut xm_minus_one = vec![0i64; m as usize + 1];
    xm_minus_one[0] = -1;
    xm_minus_one[m as usize] = 1;
    divisors(m)
        .into_iter()
        .filter(|&d| d < m)
        .fold(xm_minus_one, |acc, d| exact_div_monic(&acc, &cyclotomic_polynomial(d)))
}

/// Cyclotomic polynomial reduced modulo `p`.
pub fn cyclotomic_mod_p(m: u32, p: u64) -> FpPoly {
    let coeffs = cyclotomic_polynomial(m)
        .into_iter()
        .map(|c| c.rem_euclid(p as i64) as u64)
        .collect();
    FpPoly::new(p, coeffs)
}

/// `a^{(q-1)/(p-1)}` in `F_p[x]/(g)` with `q = p^f`, computed through
/// Frobenius powers so `q` itself never has to fit a machine word.
fn norm_power(a: &FpPoly, f: usize, g: &FpPoly) -> FpPoly {
    let p = a.prime();
    let mut frob = a.rem(g);
    let mut acc = frob.clone();
    for _ in 1..f {
        frob = frob.pow_mod(p, g);
        acc = acc.mul_mod(&frob, g);
    }
    acc
}

/// Absolute trace `a + a^2 + a^4 + ... + a^{2^{f-1}}` in characteristic 2.
fn trace_char2(a: &FpPoly, f: usize, g: &FpPoly) -> FpPoly {
    let mut frob = a.rem(g);
    let mut acc = frob.clone();
    for _ in 1..f {
        frob = frob.mul_mod(&frob, g);
        acc = acc.add(&frob);
    }
    acc
}

/// Splits a squarefree `g` whose irreducible factors all have degree `f`.
/// Returns monic factors sorted by [`factor_order`].
pub fn equal_degree_factorization(g: &FpPoly, f: usize) -> Vec<FpPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ g.prime());
    let mut pending = vec![g.monic()];
    let mut done = Vec::new();
    while let Some(h) = pending.pop() {
        let deg = h.degree().expect("nonzero factor");
        if deg == f {
            done.push(h);
            continue;
        }
        debug_assert!(deg % f == 0 && deg > f);
        loop {
            let p = h.prime();
            let candidate = FpPoly::new(p, (0..deg).map(|_| rng.gen_range(0..p)).collect());
            if candidate.degree().unwrap_or(0) == 0 {
                continue;
            }
            let probe = if p == 2 {
                trace_char2(&candidate, f, &h)
            } else {
                let n = norm_power(&candidate, f, &h);
                n.pow_mod((p - 1) / 2, &h).sub(&FpPoly::one(p))
            };
            let split = probe.gcd(&h);
            let sd = split.degree().unwrap_or(0);
            if split.is_zero() || sd == 0 || sd == deg {
                continue;
            }
            let (other, r) = h.div_rem(&split);
            debug_assert!(r.is_zero());
            pending.push(split);
            pending.push(other.monic());
            break;
        }
    }
    done.sort_by(factor_order);
    done
}

/// Ordering of factors by coefficient list, constant term first.
pub fn factor_order(a: &FpPoly, b: &FpPoly) -> Ordering {
    a.coeffs.cmp(&b.coeffs)
}
