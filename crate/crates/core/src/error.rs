use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("database size {0} is not a power of two >= 2")]
    NotPowerOfTwo(u64),
    #[error("marked count must be at least 1")]
    NoMarkedItems,
    #[error("marked count {marked} exceeds half of the database size {n_items}")]
    TooManyMarked { n_items: u64, marked: u64 },
    #[error("phase damping strength eta = {0} outside (0, 1]")]
    EtaOutOfRange(f64),
    #[error("phase flip probability alpha = {0} outside (1/2, 1]")]
    AlphaOutOfRange(f64),
    #[error("eta_min is only defined for cos(2 theta) > 0 (got {cos_2theta})")]
    UnsupportedRegime { cos_2theta: f64 },
    #[error("degenerate spectrum (eta = A+^2 within {tol:e}); closed form not representable")]
    Degenerate { tol: f64 },
    #[error("invalid marked set: {0}")]
    InvalidMarkedSet(String),
    #[error("state leaks out of span{{|w>, |m>}}: residual weight {0:e}")]
    SubspaceLeakage(f64),
    #[error("invalid probability distribution: {0}")]
    InvalidDistribution(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),
}
