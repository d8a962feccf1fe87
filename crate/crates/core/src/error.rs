use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be at least 2 and below 2^32, got {0}")]
    InvalidModulus(u64),
    #[error("{value} is not a unit modulo {modulus}")]
    NotAUnit { value: u64, modulus: u64 },
    #[error("bezout is undefined for (0, 0)")]
    BothZero,
    #[error("moduli are not pairwise coprime")]
    ModuliNotCoprime,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("linear system has no solution over Z_{0}")]
    NoSolution(u64),
    #[error("matrix is not invertible over Z_{0}")]
    NotInvertible(u64),
    #[error("NotIndependent: columns are linearly dependent over Z_{0}")]
    NotIndependent(u64),
    #[error("NotIsotropic: columns {0} and {1} have non-zero symplectic product")]
    NotIsotropic(usize, usize),
    #[error("NotSymplectic: matrix does not satisfy M^T Λ M = Λ")]
    NotSymplectic,
    #[error("NotInSubgroup: matrix is not an element of T({n},{k},{d})")]
    NotInSubgroup { n: usize, k: usize, d: u64 },
    #[error("invalid partner vector {0}: H^T Λ w must equal the unit vector e_{0}")]
    InvalidPartner(usize),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
}

pub type Result<T> = std::result::Result<T, Error>;
