//! Dense exact matrices, permutations and entry vectors.
//!
//! Storage is row-major and zero-based, as usual in Rust. The values that
//! carry mathematical meaning (residues `1..p-1`, permutation
//! images, eigen-indices) stay one-based.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::zmod::OddPrime;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { BigInt::one() } else { BigInt::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    /// Builds from nested rows; all rows must have the same length.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::LengthMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Self::from_fn(rows.len(), cols, |i, j| rows[i][j].clone().into()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub(crate) fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[BigInt]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Contiguous block starting at `(row, col)`.
    pub fn submatrix(&self, row: usize, col: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self[(row + i, col + j)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn map(&self, f: impl Fn(&BigInt) -> BigInt) -> Self {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        self.map(|a| a * k)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    /// Lossy conversion for the floating-point spectral path.
    pub fn to_complex(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.rows, self.cols, |i, j| {
            Complex64::new(self[(i, j)].to_f64().unwrap_or(f64::NAN), 0.0)
        })
    }

    /// One row per line, entries separated by single spaces.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for row in self.iter_rows() {
            let line: Vec<String> = row.iter().map(ToString::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Rows as decimal strings, for JSON output without precision loss.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        self.iter_rows()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect()
    }
}

impl Index<(usize, usize)> for ExactMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{}", self.rows, self.cols)?;
        f.write_str(&self.to_text())
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Dense complex matrix, used only on the floating-point path.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ComplexMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

/// A permutation `sigma` of `{1, ..., n}`.
///
/// Materializes to the matrix with a one at `(i, sigma(i))` in every row `i`,
/// so the matrix product of `P_sigma` and `P_tau` is `P_{tau . sigma}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            map: (1..=n).collect(),
        }
    }

    /// `images[i - 1] = sigma(i)`, one-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n {
                return Err(Error::IndexOutOfRange { index: v, max: n });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::IndexOutOfRange { index: v, max: n });
            }
        }
        Ok(Permutation { map: images })
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// `sigma(i)` for one-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.map[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.map.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { map: inv }
    }

    /// Permutation whose matrix is `self.to_matrix() * other.to_matrix()`.
    pub fn then(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "permutation sizes differ");
        Permutation {
            map: self.map.iter().map(|&v| other.apply(v)).collect(),
        }
    }

    /// Matrix power `P^k`.
    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Permutation::identity(self.len());
        for _ in 0..k {
            acc = acc.then(self);
        }
        acc
    }

    pub fn to_matrix(&self) -> ExactMatrix {
        let n = self.len();
        ExactMatrix::from_fn(n, n, |i, j| {
            if self.map[i] == j + 1 {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        })
    }

    /// `P A P^T` without forming any product: entry `(i, j)` is `A(sigma(i), sigma(j))`.
    pub fn conjugate(&self, a: &ExactMatrix) -> Result<ExactMatrix> {
        let n = a.require_square()?;
        if n != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: n,
            });
        }
        Ok(ExactMatrix::from_fn(n, n, |i, j| {
            a[(self.map[i] - 1, self.map[j] - 1)].clone()
        }))
    }

    /// `P x` for a vector: `(P x)_i = x_{sigma(i)}`.
    pub fn permute<T: Clone>(&self, x: &[T]) -> Vec<T> {
        self.map.iter().map(|&v| x[v - 1].clone()).collect()
    }
}

/// A vector of length `p - 1` indexed by the residues `1..p-1`.
#[derive(Debug, Clone, PartialEq)]
pub struct EntryVector<T = BigInt> {
    values: Vec<T>,
}

impl<T> EntryVector<T> {
    pub fn new(p: OddPrime, values: Vec<T>) -> Result<Self> {
        if values.len() != p.order() {
            return Err(Error::LengthMismatch {
                expected: p.order(),
                found: values.len(),
            });
        }
        Ok(EntryVector { values })
    }

    /// `c(k)` for `k` in `1..=p-1`.
    pub fn at(&self, k: usize) -> &T {
        &self.values[k - 1]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.values
    }

    pub fn into_vec(self) -> Vec<T> {
        self.values
    }

    pub fn modulus_order(&self) -> usize {
        self.values.len()
    }
}

impl EntryVector<BigInt> {
    /// `[k^m]_{k=1}^{p-1}`, the entry vector of `A_{p,m}`.
    pub fn powers(p: OddPrime, m: u32) -> Self {
        EntryVector {
            values: (1..=p.order() as u64).map(|k| BigInt::from(k).pow(m)).collect(),
        }
    }

    pub fn from_i64(p: OddPrime, values: &[i64]) -> Result<Self> {
        Self::new(p, values.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn to_complex(&self) -> EntryVector<Complex64> {
        EntryVector {
            values: self
                .values
                .iter()
                .map(|v| Complex64::new(v.to_f64().unwrap_or(f64::NAN), 0.0))
                .collect(),
        }
    }

    /// All entries pairwise distinct.
    pub fn is_distinct(&self) -> bool {
        let mut sorted = self.values.clone();
        sorted.sort();
        sorted.windows(2).all(|w| w[0] != w[1])
    }
}
