//! Elements of `Z[zeta_m]` in the power basis `1, zeta, ..., zeta^{phi(m)-1}`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{euler_phi, gcd, units};
use crate::poly::cyclotomic_polynomial;

/// Power-basis coordinates of `zeta^e` for every `e` in `0..m`.
#[derive(Debug)]
struct PowerTable {
    phi: usize,
    rows: Vec<Vec<i64>>,
}

impl PowerTable {
    fn build(m: u32) -> Self {
        let phi = euler_phi(m) as usize;
        let cyc = cyclotomic_polynomial(m);
        let mut rows = Vec::with_capacity(m as usize);
        let mut current = vec![0i64; phi];
        current[0] = 1;
        for _ in 0..m {
            rows.push(current.clone());
            // multiply by zeta: shift, then fold zeta^phi = -sum c_k zeta^k
            let top = current[phi - 1];
            for k in (1..phi).rev() {
                current[k] = current[k - 1];
            }
            current[0] = 0;
            if top != 0 {
                for k in 0..phi {
                    current[k] -= top * cyc[k];
                }
            }
        }
        Self { phi, rows }
    }
}

fn power_table(m: u32) -> Arc<PowerTable> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<PowerTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("power table cache poisoned");
    guard.entry(m).or_insert_with(|| Arc::new(PowerTable::build(m))).clone()
}

/// An element of `Z[zeta_m]`, stored reduced modulo the `m`-th cyclotomic
/// polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycloInt {
    level: u32,
    coeffs: Vec<BigInt>,
}

impl CycloInt {
    pub fn zero(level: u32) -> Self {
        Self { level, coeffs: vec![BigInt::zero(); euler_phi(level) as usize] }
    }

    pub fn from_integer(level: u32, n: impl Into<BigInt>) -> Self {
        let mut out = Self::zero(level);
        out.coeffs[0] = n.into();
        out
    }

    pub fn one(level: u32) -> Self {
        Self::from_integer(level, 1)
    }

    /// `zeta^e`.
    pub fn root_of_unity(level: u32, e: u64) -> Self {
        let mut counts = vec![0i64; level as usize];
        counts[(e % level as u64) as usize] = 1;
        Self::from_exponent_counts(level, &counts)
    }

    /// `sum_e counts[e] * zeta^e`, reduced.
    pub fn from_exponent_counts(level: u32, counts: &[i64]) -> Self {
        assert_eq!(counts.len(), level as usize, "one count per residue");
        let table = power_table(level);
        let mut acc = vec![0i128; table.phi];
        for (e, &c) in counts.iter().enumerate().filter(|(_, &c)| c != 0) {
            for (slot, &t) in acc.iter_mut().zip(&table.rows[e]) {
                *slot += c as i128 * t as i128;
            }
        }
        Self { level, coeffs: acc.into_iter().map(BigInt::from).collect() }
    }

    /// Coordinates in the power basis.
    pub fn from_coeffs(level: u32, coeffs: Vec<BigInt>) -> Self {
        assert_eq!(coeffs.len(), euler_phi(level) as usize, "phi(m) coordinates expected");
        Self { level, coeffs }
    }

    /// Reduce `sum_k terms[k] * zeta^k` for arbitrary exponents `k`.
    fn from_exponent_terms(level: u32, terms: impl IntoIterator<Item = (u64, BigInt)>) -> Self {
        let table = power_table(level);
        let mut acc = vec![BigInt::zero(); table.phi];
        for (e, c) in terms {
            if c.is_zero() {
                continue;
            }
            for (slot, &t) in acc.iter_mut().zip(&table.rows[(e % level as u64) as usize]) {
                if t != 0 {
                    *slot += &c * t;
                }
            }
        }
        Self { level, coeffs: acc }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational integer this element equals, if every non-constant
    /// coordinate vanishes.
    pub fn as_integer(&self) -> Option<&BigInt> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| &self.coeffs[0])
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.level, other.level, "levels differ");
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Self { level: self.level, coeffs }
    }

    pub fn neg(&self) -> Self {
        Self { level: self.level, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.level, other.level, "levels differ");
        let mut prod = vec![BigInt::zero(); 2 * self.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                prod[i + j] += a * b;
            }
        }
        Self::from_exponent_terms(
            self.level,
            prod.into_iter().enumerate().map(|(k, c)| (k as u64, c)),
        )
    }

    /// Image under `zeta -> zeta^k`; `None` when `k` is not a unit.
    pub fn galois(&self, k: u32) -> Option<Self> {
        if gcd(k as u64, self.level as u64) != 1 {
            return None;
        }
        let m = self.level as u64;
        Some(Self::from_exponent_terms(
            self.level,
            self.coeffs.iter().enumerate().map(|(i, c)| (i as u64 * k as u64 % m, c.clone())),
        ))
    }

    /// The same element seen in `Z[zeta_M]` for a multiple `M` of the level,
    /// via `zeta_m -> zeta_M^{M/m}`.
    pub fn embed(&self, new_level: u32) -> Self {
        assert_eq!(new_level % self.level, 0, "target level must be a multiple");
        let step = (new_level / self.level) as u64;
        Self::from_exponent_terms(
            new_level,
            self.coeffs.iter().enumerate().map(|(i, c)| (i as u64 * step, c.clone())),
        )
    }

    /// Value under the complex embedding `zeta -> exp(2 pi i k / m)`.
    pub fn embedding(&self, k: u32) -> (f64, f64) {
        let m = self.level as f64;
        self.coeffs.iter().enumerate().fold((0.0, 0.0), |(re, im), (i, c)| {
            let angle = 2.0 * std::f64::consts::PI * ((i as u64 * k as u64) % self.level as u64) as f64 / m;
            let c = c.to_f64().unwrap_or(f64::NAN);
            (re + c * angle.cos(), im + c * angle.sin())
        })
    }

    /// `|sigma(v)|^2` for every unit `k`, in ascending order of `k`.
    pub fn embedding_norms(&self) -> Vec<(u32, f64)> {
        units(self.level)
            .into_iter()
            .map(|k| {
                let (re, im) = self.embedding(k);
                (k, re * re + im * im)
            })
            .collect()
    }
}

impl fmt::Display for CycloInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                _ => write!(f, "{c}*z^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
