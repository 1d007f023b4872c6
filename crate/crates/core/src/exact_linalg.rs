//! Exact dense linear algebra over arbitrary-precision integers.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::zmod::{is_prime, mul_mod, pow_mod};

/// Determinant by Bareiss fraction-free elimination.
///
/// Pivots on the first nonzero entry of each column; every division is exact.
pub fn det_bareiss(m: &ExactMatrix) -> Result<BigInt> {
    let n = m.require_square()?;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a: Vec<Vec<BigInt>> = m.iter_rows().map(<[BigInt]>::to_vec).collect();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        for row in bottom.iter_mut() {
            let lead = std::mem::take(&mut row[k]);
            for j in k + 1..n {
                let v = &row[j] * pivot - &lead * &pivot_row[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = pivot.clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// Rank over the rationals, by fraction-free elimination.
pub fn rank_over_rationals(m: &ExactMatrix) -> usize {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<BigInt>> = m.iter_rows().map(<[BigInt]>::to_vec).collect();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(r) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, r);
        let (top, bottom) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = &pivot_row[col];
        for row in bottom.iter_mut() {
            let lead = std::mem::take(&mut row[col]);
            for j in col + 1..cols {
                let v = &row[j] * pivot - &lead * &pivot_row[j];
                row[j] = v / &prev;
            }
        }
        prev = pivot.clone();
        rank += 1;
    }
    rank
}

/// Exact product.
pub fn matmul(a: &ExactMatrix, b: &ExactMatrix) -> Result<ExactMatrix> {
    if a.cols() != b.rows() {
        return Err(Error::DimensionMismatch {
            left_rows: a.rows(),
            left_cols: a.cols(),
            right_rows: b.rows(),
            right_cols: b.cols(),
        });
    }
    let bt = b.transpose();
    Ok(ExactMatrix::from_fn(a.rows(), b.cols(), |i, j| {
        a.row(i).iter().zip(bt.row(j)).map(|(x, y)| x * y).sum()
    }))
}

/// `A A^T = A^T A`. For integer matrices the conjugate transpose is the transpose.
pub fn is_normal(a: &ExactMatrix) -> bool {
    if !a.is_square() {
        return false;
    }
    let at = a.transpose();
    matmul(a, &at).ok() == matmul(&at, a).ok()
}

/// First zero-based `(i, j)` with `A(i, j) != A(n-1-i, n-1-j)`, if any.
pub fn centrosymmetry_violation(a: &ExactMatrix) -> Option<(usize, usize)> {
    let n = a.rows();
    if !a.is_square() {
        return Some((0, 0));
    }
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| a[(i, j)] != a[(n - 1 - i, n - 1 - j)])
}

pub fn is_centrosymmetric(a: &ExactMatrix) -> bool {
    centrosymmetry_violation(a).is_none()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Line {
    Row(usize),
    Column(usize),
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Line::Row(i) => write!(f, "row {}", i + 1),
            Line::Column(j) => write!(f, "column {}", j + 1),
        }
    }
}

/// First row or column that is not a rearrangement of the first row, or that
/// repeats an entry.
pub fn latin_square_violation(a: &ExactMatrix) -> Option<Line> {
    let n = a.rows();
    if !a.is_square() {
        return Some(Line::Row(0));
    }
    if n == 0 {
        return None;
    }
    let mut symbols = a.row(0).to_vec();
    symbols.sort();
    let is_rearrangement = |mut line: Vec<BigInt>| {
        line.sort();
        line == symbols
    };
    if symbols.windows(2).any(|w| w[0] == w[1]) {
        return Some(Line::Row(0));
    }
    if let Some(i) = (0..n).find(|&i| !is_rearrangement(a.row(i).to_vec())) {
        return Some(Line::Row(i));
    }
    (0..n)
        .find(|&j| !is_rearrangement(a.column(j)))
        .map(Line::Column)
}

pub fn is_latin_square(a: &ExactMatrix) -> bool {
    latin_square_violation(a).is_none()
}

/// First zero-based row `i` where `|A(i,i)| <= sum_{j != i} |A(i,j)|`.
pub fn dominance_violation(a: &ExactMatrix) -> Option<usize> {
    if !a.is_square() {
        return Some(0);
    }
    (0..a.rows()).find(|&i| {
        let off: BigInt = a
            .row(i)
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, v)| v.abs())
            .sum();
        a[(i, i)].abs() <= off
    })
}

pub fn is_strictly_diagonally_dominant(a: &ExactMatrix) -> bool {
    dominance_violation(a).is_none()
}

fn ceil_sqrt(x: &BigUint) -> BigUint {
    let r = x.sqrt();
    if &(&r * &r) < x {
        r + 1u32
    } else {
        r
    }
}

/// Hadamard bound `prod_i ceil(||row_i||_2)`, computed with integer square roots.
pub fn hadamard_bound(m: &ExactMatrix) -> BigUint {
    m.iter_rows()
        .map(|row| {
            let sq: BigUint = row.iter().map(|v| v.magnitude() * v.magnitude()).sum();
            ceil_sqrt(&sq)
        })
        .product()
}

const CRT_PRIME_CACHE: usize = 1024;

/// Primes just below `2^32`, descending, so products of residues fit in a `u64`.
pub fn crt_primes(count: usize) -> Vec<u64> {
    static CACHE: OnceLock<Vec<u64>> = OnceLock::new();
    let cached = CACHE.get_or_init(|| descending_primes(u32::MAX as u64, CRT_PRIME_CACHE));
    if count <= cached.len() {
        cached[..count].to_vec()
    } else {
        descending_primes(u32::MAX as u64, count)
    }
}

fn descending_primes(mut below: u64, count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count && below > 2 {
        below -= 1;
        if is_prime(below) {
            out.push(below);
        }
    }
    out
}

/// Determinant modulo a prime `q < 2^32` by Gaussian elimination in `Z_q`.
pub fn det_mod_prime(m: &ExactMatrix, q: u64) -> Result<u64> {
    let n = m.require_square()?;
    let qb = BigInt::from(q);
    let mut a: Vec<Vec<u64>> = m
        .iter_rows()
        .map(|row| {
            row.iter()
                .map(|v| v.mod_floor(&qb).to_u64().expect("reduced below q"))
                .collect()
        })
        .collect();
    let mut det = 1u64;
    for k in 0..n {
        let Some(r) = (k..n).find(|&r| a[r][k] != 0) else {
            return Ok(0);
        };
        if r != k {
            a.swap(k, r);
            det = (q - det) % q;
        }
        let pivot = a[k][k];
        det = mul_mod(det, pivot, q);
        let inv = pow_mod(pivot, q - 2, q);
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in bottom.iter_mut() {
            let factor = mul_mod(row[k], inv, q);
            if factor == 0 {
                continue;
            }
            for j in k..n {
                let sub = mul_mod(factor, pivot_row[j], q);
                row[j] = (row[j] + q - sub) % q;
            }
        }
    }
    Ok(det)
}

/// Determinant from residues modulo enough word-size primes, recombined by
/// CRT. The modulus product always exceeds twice the Hadamard bound.
pub fn det_modular_crt(m: &ExactMatrix) -> Result<BigInt> {
    m.require_square()?;
    let target = hadamard_bound(m) * 2u32;
    // Each prime contributes a bit under 32 bits.
    let mut count = (target.bits() / 31 + 1) as usize;
    let primes = loop {
        let primes = crt_primes(count);
        let product: BigUint = primes.iter().map(|&q| BigUint::from(q)).product();
        if product > target {
            break primes;
        }
        count += 1;
    };

    let mut value = BigUint::zero();
    let mut modulus = BigUint::one();
    for &q in &primes {
        let r = det_mod_prime(m, q)?;
        let current = (&value % q).to_u64().expect("below q");
        let diff = (r + q - current) % q;
        let m_mod_q = (&modulus % q).to_u64().expect("below q");
        let t = mul_mod(diff, pow_mod(m_mod_q, q - 2, q), q);
        value += &modulus * t;
        modulus *= q;
    }
    let half = &modulus >> 1u32;
    Ok(if value > half {
        BigInt::from_biguint(Sign::Minus, modulus - value)
    } else {
        BigInt::from_biguint(Sign::Plus, value)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrices::{build_a, reversal};
    use crate::zmod::OddPrime;
    use proptest::prelude::*;

    fn mat(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    /// Laplace expansion along the first row; the independent oracle.
    fn det_cofactor(m: &ExactMatrix) -> BigInt {
        let n = m.rows();
        if n == 0 {
            return BigInt::one();
        }
        if n == 1 {
            return m[(0, 0)].clone();
        }
        let mut acc = BigInt::zero();
        for j in 0..n {
            if m[(0, j)].is_zero() {
                continue;
            }
            let minor = ExactMatrix::from_fn(n - 1, n - 1, |r, c| {
                m[(r + 1, if c < j { c } else { c + 1 })].clone()
            });
            let term = &m[(0, j)] * det_cofactor(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    fn p(v: u64) -> OddPrime {
        OddPrime::new(v).unwrap()
    }

    #[test]
    fn det_examples() {
        for n in 0..6 {
            assert_eq!(det_bareiss(&ExactMatrix::identity(n)).unwrap(), BigInt::one());
            assert_eq!(det_modular_crt(&ExactMatrix::identity(n)).unwrap(), BigInt::one());
        }
        assert_eq!(det_bareiss(&build_a(p(3), 2).unwrap()).unwrap(), BigInt::from(-15));
        assert_eq!(det_bareiss(&build_a(p(5), 1).unwrap()).unwrap(), BigInt::zero());
        assert_eq!(det_modular_crt(&ExactMatrix::zeros(4, 4)).unwrap(), BigInt::zero());
        assert!(matches!(
            det_bareiss(&ExactMatrix::zeros(2, 3)),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        ));
        assert!(det_modular_crt(&ExactMatrix::zeros(3, 2)).is_err());
    }

    #[test]
    fn det_a52_against_cofactor_oracle() {
        let a = build_a(p(5), 2).unwrap();
        assert_eq!(det_cofactor(&a), BigInt::from(30000));
        assert_eq!(det_bareiss(&a).unwrap(), BigInt::from(30000));
        assert_eq!(det_modular_crt(&a).unwrap(), BigInt::from(30000));
    }

    #[test]
    fn pivoting_needs_row_swap() {
        let m = mat(&[&[0, 2, 1], &[3, 0, 0], &[1, 1, 0]]);
        assert_eq!(det_cofactor(&m), BigInt::from(3));
        assert_eq!(det_bareiss(&m).unwrap(), BigInt::from(3));
        assert_eq!(det_modular_crt(&m).unwrap(), BigInt::from(3));
    }

    #[test]
    fn two_determinants_agree_on_family() {
        for q in OddPrime::up_to(31) {
            for m in 1..=6 {
                let a = build_a(q, m).unwrap();
                let d = det_bareiss(&a).unwrap();
                assert_eq!(det_modular_crt(&a).unwrap(), d, "p = {q}, m = {m}");
                if q.get() >= 5 {
                    assert!((&d % 4u32).is_zero());
                }
                assert!((&d % q.get()).is_zero());
            }
        }
    }

    #[test]
    fn crt_handles_huge_negative_determinant() {
        // det = -(10^40)^2 via a 2x2 with large entries.
        let big = BigInt::from(10u32).pow(40);
        let m = ExactMatrix::from_rows(&[
            vec![BigInt::zero(), big.clone()],
            vec![big.clone(), BigInt::zero()],
        ])
        .unwrap();
        assert_eq!(det_modular_crt(&m).unwrap(), -(&big * &big));
    }

    #[test]
    fn crt_primes_are_descending_word_primes() {
        let ps = crt_primes(8);
        assert_eq!(ps[0], 4_294_967_291);
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
        assert!(ps.iter().all(|&q| is_prime(q) && q < 1 << 32));
    }

    #[test]
    fn hadamard_bound_is_integer_ceiling() {
        let m = mat(&[&[3, 4], &[1, 1]]);
        // ceil(5) * ceil(sqrt 2) = 5 * 2
        assert_eq!(hadamard_bound(&m), BigUint::from(10u32));
    }

    #[test]
    fn matmul_examples() {
        let a = build_a(p(7), 2).unwrap();
        assert_eq!(matmul(&a, &ExactMatrix::identity(6)).unwrap(), a);
        let j = reversal(6).unwrap().to_matrix();
        assert_eq!(matmul(&matmul(&j, &a).unwrap(), &j).unwrap(), a);
        assert!(matches!(
            matmul(&ExactMatrix::zeros(2, 3), &ExactMatrix::zeros(2, 3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn predicates() {
        for q in OddPrime::up_to(31) {
            for m in 1..=4 {
                assert!(is_normal(&build_a(q, m).unwrap()));
            }
        }
        assert!(!is_normal(&mat(&[&[1, 1], &[0, 1]])));
        let a73 = build_a(p(7), 3).unwrap();
        assert!(is_latin_square(&a73));
        assert!(is_centrosymmetric(&a73));
        assert_eq!(latin_square_violation(&mat(&[&[1, 2], &[1, 2]])), Some(Line::Column(0)));
        assert_eq!(latin_square_violation(&mat(&[&[1, 1], &[1, 1]])), Some(Line::Row(0)));
        assert!(!is_centrosymmetric(&mat(&[&[1, 2], &[3, 4]])));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_over_rationals(&build_a(p(5), 1).unwrap()), 3);
        for n in 0..6 {
            assert_eq!(rank_over_rationals(&ExactMatrix::identity(n)), n);
        }
        for q in [5, 7, 11, 13] {
            let a = build_a(p(q), 1).unwrap();
            let kernel = a.cols() - rank_over_rationals(&a);
            assert!(kernel >= p(q).half() - 1);
        }
        assert_eq!(rank_over_rationals(&mat(&[&[0, 1, 2], &[0, 2, 4]])), 1);
        assert_eq!(rank_over_rationals(&mat(&[&[0, 0], &[0, 0], &[1, 3]])), 1);
        assert_eq!(rank_over_rationals(&ExactMatrix::zeros(0, 3)), 0);
    }

    #[test]
    fn dominance() {
        assert!(is_strictly_diagonally_dominant(&mat(&[&[3, -1], &[1, -2]])));
        assert_eq!(dominance_violation(&mat(&[&[3, -1], &[2, -2]])), Some(1));
    }

    fn small_matrix() -> impl Strategy<Value = ExactMatrix> {
        (0usize..6).prop_flat_map(|n| {
            proptest::collection::vec(-50i64..50, n * n).prop_map(move |v| {
                ExactMatrix::from_fn(n, n, |i, j| BigInt::from(v[i * n + j]))
            })
        })
    }

    proptest! {
        #[test]
        fn bareiss_crt_cofactor_agree(m in small_matrix()) {
            let d = det_cofactor(&m);
            prop_assert_eq!(det_bareiss(&m).unwrap(), d.clone());
            prop_assert_eq!(det_modular_crt(&m).unwrap(), d.clone());
            let full = m.rows() == rank_over_rationals(&m);
            prop_assert_eq!(full, !d.is_zero());
        }

        #[test]
        fn det_is_multiplicative(a in small_matrix(), seed in any::<u64>()) {
            let n = a.rows();
            let b = ExactMatrix::from_fn(n, n, |i, j| {
                BigInt::from(((seed >> ((i * n + j) % 60)) & 7) as i64 - 3)
            });
            let ab = matmul(&a, &b).unwrap();
            prop_assert_eq!(
                det_bareiss(&ab).unwrap(),
                det_bareiss(&a).unwrap() * det_bareiss(&b).unwrap()
            );
        }
    }
}
