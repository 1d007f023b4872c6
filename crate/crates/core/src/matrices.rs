//! Constructions: `A_{p,m}`, `A_p[c]`, the reversal `J`, the centrosymmetric
//! blocks, and the permutations `P` and `Q` built from a primitive root.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exact_linalg;
use crate::matrix::{ComplexMatrix, EntryVector, ExactMatrix, Permutation};
use crate::zmod::{power_table, OddPrime, PrimitiveRoot};

/// Table of the residue `i^{-1} j mod p` for zero-based `(i, j)`, i.e. the
/// value sitting at one-based position `(i + 1, j + 1)`.
pub fn index_table(p: OddPrime) -> Vec<Vec<usize>> {
    let n = p.order();
    (1..=n as u64)
        .map(|i| {
            let inv = p.inv(i).expect("nonzero");
            (1..=n as u64).map(|j| p.mul(inv, j) as usize).collect()
        })
        .collect()
}

/// `A_{p,m}`: entry `(i, j)` is `(i^{-1} j mod p)^m` over the integers.
pub fn build_a(p: OddPrime, m: u32) -> Result<ExactMatrix> {
    if m == 0 {
        return Err(Error::ZeroExponent);
    }
    build_a_c(p, &EntryVector::powers(p, m))
}

/// `A_p[c]`: entry `(i, j)` is `c(i^{-1} j mod p)`.
pub fn build_a_c(p: OddPrime, c: &EntryVector) -> Result<ExactMatrix> {
    check_len(p, c.len())?;
    let table = index_table(p);
    let n = p.order();
    Ok(ExactMatrix::from_fn(n, n, |i, j| c.at(table[i][j]).clone()))
}

/// Floating-point `A_p[c]` for complex `c`.
pub fn build_a_c_complex(p: OddPrime, c: &EntryVector<Complex64>) -> Result<ComplexMatrix> {
    check_len(p, c.len())?;
    let table = index_table(p);
    let n = p.order();
    Ok(ComplexMatrix::from_fn(n, n, |i, j| *c.at(table[i][j])))
}

/// The classical Maillet matrix: leading `(p-1)/2` block of `A_{p,1}`.
pub fn maillet_matrix(p: OddPrime) -> ExactMatrix {
    let half = p.half();
    let table = index_table(p);
    ExactMatrix::from_fn(half, half, |i, j| BigInt::from(table[i][j]))
}

fn check_len(p: OddPrime, len: usize) -> Result<()> {
    if len == p.order() {
        Ok(())
    } else {
        Err(Error::LengthMismatch {
            expected: p.order(),
            found: len,
        })
    }
}

/// The reversal `J` of even order `n`: `sigma(i) = n - i + 1`.
pub fn reversal(n: usize) -> Result<Permutation> {
    if n == 0 || n % 2 != 0 {
        return Err(Error::OddOrder(n));
    }
    Permutation::from_images((1..=n).rev().collect())
}

fn flip_rows(m: &ExactMatrix) -> ExactMatrix {
    let r = m.rows();
    ExactMatrix::from_fn(r, m.cols(), |i, j| m[(r - 1 - i, j)].clone())
}

fn centro_order(a: &ExactMatrix) -> Result<usize> {
    let n = a.require_square()?;
    if n == 0 || n % 2 != 0 {
        return Err(Error::OddOrder(n));
    }
    if let Some((row, col)) = exact_linalg::centrosymmetry_violation(a) {
        return Err(Error::NotCentrosymmetric { row, col });
    }
    Ok(n)
}

/// Splits a centrosymmetric `A = [[B, JCJ], [C, JBJ]]` into `(B, C)`.
pub fn centro_blocks(a: &ExactMatrix) -> Result<(ExactMatrix, ExactMatrix)> {
    let half = centro_order(a)? / 2;
    Ok((a.submatrix(0, 0, half, half), a.submatrix(half, 0, half, half)))
}

/// Reassembles `[[B, JCJ], [C, JBJ]]`.
pub fn centro_assemble(b: &ExactMatrix, c: &ExactMatrix) -> ExactMatrix {
    let half = b.rows();
    let n = 2 * half;
    ExactMatrix::from_fn(n, n, |i, j| match (i < half, j < half) {
        (true, true) => b[(i, j)].clone(),
        (false, true) => c[(i - half, j)].clone(),
        (true, false) => c[(half - 1 - i, n - 1 - j)].clone(),
        (false, false) => b[(n - 1 - i, n - 1 - j)].clone(),
    })
}

/// `(B - JC, B + JC)`, whose determinants multiply to `det A`.
pub fn centro_similar_form(a: &ExactMatrix) -> Result<(ExactMatrix, ExactMatrix)> {
    let (b, c) = centro_blocks(a)?;
    let jc = flip_rows(&c);
    Ok((b.checked_sub(&jc)?, b.checked_add(&jc)?))
}

/// `P` with `P(i, j) = 1` iff `j = h^i mod p`, so `P e_{h^j} = e_j`.
pub fn similarity_permutation(h: PrimitiveRoot) -> Permutation {
    let images = power_table(h).into_iter().map(|v| v as usize).collect();
    Permutation::from_images(images).expect("powers of a primitive root are a permutation")
}

/// First row of the circulant `P A_p[c] P^T`: entry `k` is `c(h^{k-1} mod p)`.
pub fn circulant_row<T: Clone>(c: &EntryVector<T>, h: PrimitiveRoot) -> Result<EntryVector<T>> {
    let p = h.modulus();
    check_len(p, c.len())?;
    let row = (0..p.order())
        .map(|k| c.at(h.pow(k as i64) as usize).clone())
        .collect();
    EntryVector::new(p, row)
}

/// First row of the circulant similar to `A_{p,m}`: `[1, h^m, h^{2m}, ...]`
/// with each power reduced mod `p` before raising to `m`.
pub fn to_circulant(m: u32, h: PrimitiveRoot) -> EntryVector {
    circulant_row(&EntryVector::powers(h.modulus(), m), h).expect("length matches")
}

/// `Circ(v)`: entry `(i, j)` is `v[(j - i) mod n]`.
pub fn circulant(row: &[BigInt]) -> ExactMatrix {
    let n = row.len();
    ExactMatrix::from_fn(n, n, |i, j| row[(j + n - i) % n].clone())
}

/// `Q` with `Q(i, j) = delta(j, i h mod p)`.
pub fn shift_generator_q(h: PrimitiveRoot) -> Permutation {
    let p = h.modulus();
    let images = (1..=p.order() as u64)
        .map(|i| p.mul(i, h.value()) as usize)
        .collect();
    Permutation::from_images(images).expect("multiplication by a unit is a permutation")
}

/// `sum_{k=1}^{p-1} c(h^k mod p) Q^k`, materialized.
pub fn q_polynomial(c: &EntryVector, h: PrimitiveRoot) -> Result<ExactMatrix> {
    let p = h.modulus();
    check_len(p, c.len())?;
    let n = p.order();
    let q = shift_generator_q(h);
    let mut acc = ExactMatrix::zeros(n, n);
    let mut power = Permutation::identity(n);
    for k in 1..=n {
        power = power.then(&q);
        let coeff = c.at(h.pow(k as i64) as usize);
        for (i, &j) in power.images().iter().enumerate() {
            acc[(i, j - 1)] += coeff;
        }
    }
    Ok(acc)
}

/// Columns `e_1 + e_{p-1} - e_k - e_{p-k}` for `k = 2..(p-1)/2`, spanning part
/// of the kernel of `A_{p,1}`.
pub fn kernel_block_vectors(p: OddPrime) -> Result<ExactMatrix> {
    if p.get() < 5 {
        return Err(Error::NoKernelVectors(p.get()));
    }
    let n = p.order();
    let half = p.half();
    let mut out = ExactMatrix::zeros(n, half - 1);
    for k in 2..=half {
        let col = k - 2;
        out[(0, col)] = BigInt::one();
        out[(n - 1, col)] = BigInt::one();
        out[(k - 1, col)] = -BigInt::one();
        out[(n - k, col)] = -BigInt::one();
    }
    Ok(out)
}

/// `M(i, j)` depends only on `(j - i) mod n`.
pub fn is_circulant(m: &ExactMatrix) -> bool {
    let n = m.rows();
    m.is_square()
        && (0..n).all(|i| (0..n).all(|j| m[(i, j)] == m[(0, (j + n - i) % n)]))
}

/// Entries of the first row, for convenience when comparing circulants.
pub fn first_row(m: &ExactMatrix) -> Vec<BigInt> {
    if m.rows() == 0 {
        Vec::new()
    } else {
        m.row(0).to_vec()
    }
}
