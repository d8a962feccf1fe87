//! Exact algebra of qudit stabilizer codes over Z_d.
//!
//! Modular linear algebra, the symplectic group `Sp(2n, Z_d)`, the subgroup
//! `T(n,k,d)` and its factorisation, closed-form code counts, and a
//! brute-force oracle for checking all of it at small sizes.

pub mod counting;
pub mod error;
pub mod json;
pub mod linalg;
pub mod oracle;
pub mod pauli;
pub mod ring;
pub mod symplectic;
pub mod tnkd;

pub use error::{Error, Result};
pub use ring::{Modulus, Residue};
