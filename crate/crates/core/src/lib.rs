//! Exact construction and analysis of generalized Maillet matrices.
//!
//! For an odd prime `p`, `A_{p,m}` is the `(p-1) x (p-1)` integer matrix with
//! entry `(i^{-1} j mod p)^m`, and `A_p[c]` replaces `k^m` by an arbitrary
//! entry vector `c`. This crate builds these matrices, computes their
//! determinants by three independent exact routes (Bareiss elimination,
//! multi-modular CRT, and a resultant against `x^{p-1} - 1`), evaluates their
//! closed-form spectra, and checks the structural identities they satisfy.

pub mod error;
pub mod exact_linalg;
pub mod matrices;
pub mod matrix;
pub mod spectral;
pub mod verify;
pub mod wavelet;
pub mod zmod;

pub use error::{Error, Result};
pub use matrix::{ComplexMatrix, EntryVector, ExactMatrix, Permutation};
pub use spectral::{IntPolynomial, Spectrum, Symmetry};
pub use verify::VerificationReport;
pub use zmod::{OddPrime, PrimitiveRoot, Residue};

pub use num_bigint::BigInt;
pub use num_complex::Complex64;
