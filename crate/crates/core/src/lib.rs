//! Exact computations on cyclic quotients of Fermat curves.
//!
//! * [`fermat`]: labels, equivalence classes, genus, hyperelliptic test,
//!   differential eigenbasis, subcovers.
//! * [`beauville`]: eigenvalue exponents of `sigma_{i,j}` on the tangent space
//!   of the intermediate Jacobian and the witness search.
//! * [`cm`]: CM types, stabilizers, isogeny and minimality classification,
//!   infinity types.
//! * [`jacobi`]: residue fields of `Z[zeta_m]`, power residue symbols,
//!   Jacobi sums and local Euler factors.

pub mod arith;
pub mod beauville;
pub mod cm;
pub mod cyclo;
pub mod fermat;
pub mod finite_field;
pub mod jacobi;
pub mod multiset;
pub mod poly;

pub use beauville::{AutLabel, ScanError, ScanOptions, ScanRecord, TangentSpectrum};
pub use cm::{ClassifyRecord, CmError, CmType, InfinityType, Stabilizer};
pub use cyclo::CycloInt;
pub use fermat::{CharacterPair, DiffBasis, LabelError, QuotientLabel};
pub use finite_field::ResidueFieldSpec;
pub use jacobi::{JacobiError, JacobiTable, LocalFactor};
pub use multiset::ResidueMultiset;
