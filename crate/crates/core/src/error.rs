use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p must be an odd prime, got {0}")]
    NotOddPrime(u64),
    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: u64, modulus: u64 },
    #[error("{value} is not a primitive root modulo {modulus}")]
    NotPrimitive { value: u64, modulus: u64 },
    #[error("exponent m must be at least 1")]
    ZeroExponent,
    #[error("expected a vector of length {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {left_rows}x{left_cols} times {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("order {0} is not even")]
    OddOrder(usize),
    #[error("matrix is not centrosymmetric at ({row}, {col})")]
    NotCentrosymmetric { row: usize, col: usize },
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("no kernel block vectors exist for p = {0}")]
    NoKernelVectors(u64),
    #[error("matrix has no rows or columns")]
    Empty,
}

pub type Result<T> = std::result::Result<T, Error>;
