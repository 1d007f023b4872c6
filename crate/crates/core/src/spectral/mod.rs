//! Closed-form spectra of `A_p[c]` and exact spectral determinants.
//!
//! With `h` a primitive root and `z_l = exp(2 pi i l / (p-1))`, the vectors
//! `nu_l = sum_j z_l^j e_{h^j}` are eigenvectors of every `A_p[c]`, with
//! eigenvalue `f_c(z_l)` where `f_c(z) = sum_k c(h^k) z^k`. Whether an
//! eigenvalue is zero is decided exactly: `f_c(z_l) = 0` iff the cyclotomic
//! polynomial of the order of `z_l` divides `f_c`.

mod poly;

use std::collections::BTreeSet;
use std::f64::consts::TAU;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;

pub use poly::{cyclotomic, cyclotomic_family, divisors, root_order, IntPolynomial};

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, EntryVector};
use crate::zmod::{power_table, OddPrime, PrimitiveRoot};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    /// `J nu = nu`
    Symmetric,
    /// `J nu = -nu`
    Skew,
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Symmetry::Symmetric => "symmetric",
            Symmetry::Skew => "skew",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Eigenpair {
    /// One-based index `l` in `1..=p-1`.
    pub ell: usize,
    pub lambda: Complex64,
    pub nu: Vec<Complex64>,
    pub symmetry: Symmetry,
    pub exactly_zero: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub p: OddPrime,
    pub h: PrimitiveRoot,
    pub eigenpairs: Vec<Eigenpair>,
}

impl Spectrum {
    pub fn get(&self, ell: usize) -> Result<&Eigenpair> {
        check_ell(self.p, ell)?;
        Ok(&self.eigenpairs[ell - 1])
    }

    pub fn symmetry_class(&self, ell: usize) -> Result<Symmetry> {
        self.get(ell).map(|e| e.symmetry)
    }

    pub fn zero_indices(&self) -> BTreeSet<usize> {
        self.eigenpairs
            .iter()
            .filter(|e| e.exactly_zero)
            .map(|e| e.ell)
            .collect()
    }
}

fn check_ell(p: OddPrime, ell: usize) -> Result<()> {
    if (1..=p.order()).contains(&ell) {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange {
            index: ell,
            max: p.order(),
        })
    }
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

/// `exp(2 pi i k / n)`, with `k` reduced first to keep the angle small.
pub fn root_of_unity(k: usize, n: usize) -> Complex64 {
    Complex64::from_polar(1.0, TAU * (k % n) as f64 / n as f64)
}

/// Class predicted by parity: even `l` symmetric, odd `l` skew.
pub fn symmetry_class(ell: usize) -> Symmetry {
    if ell % 2 == 0 {
        Symmetry::Symmetric
    } else {
        Symmetry::Skew
    }
}

/// `max_i |(J nu)_i - s nu_i|` with `s = +1` for symmetric, `-1` for skew.
pub fn symmetry_residual(nu: &[Complex64], class: Symmetry) -> f64 {
    let n = nu.len();
    let s = match class {
        Symmetry::Symmetric => 1.0,
        Symmetry::Skew => -1.0,
    };
    (0..n)
        .map(|i| (nu[n - 1 - i] - nu[i] * s).norm())
        .fold(0.0, f64::max)
}

/// `||A nu - lambda nu||_inf`.
pub fn eigen_residual(a: &ComplexMatrix, lambda: Complex64, nu: &[Complex64]) -> Result<f64> {
    let av = a.mul_vec(nu)?;
    Ok(av
        .iter()
        .zip(nu)
        .map(|(x, v)| (x - lambda * v).norm())
        .fold(0.0, f64::max))
}

/// `f_c(z) = sum_{k=1}^{p-1} c(h^k mod p) z^k`.
pub fn associated_polynomial(c: &EntryVector, h: PrimitiveRoot) -> Result<IntPolynomial> {
    let p = h.modulus();
    check_len(p, c.len())?;
    let mut coeffs = vec![BigInt::zero(); p.order() + 1];
    for (k, hk) in power_table(h).into_iter().enumerate() {
        coeffs[k + 1] = c.at(hk as usize).clone();
    }
    Ok(IntPolynomial::new(coeffs))
}

/// The eigenvector `nu_l`: entry `h^j` holds `z_l^j`.
pub fn eigenvector(h: PrimitiveRoot, ell: usize) -> Result<Vec<Complex64>> {
    let p = h.modulus();
    check_ell(p, ell)?;
    let n = p.order();
    let mut nu = vec![Complex64::zero(); n];
    for (j, hj) in power_table(h).into_iter().enumerate() {
        nu[hj as usize - 1] = root_of_unity(ell * (j + 1), n);
    }
    Ok(nu)
}

/// `(lambda_l, nu_l)` for complex `c`; `lambda_l = sum_j z_l^j c(h^j)`.
pub fn eigenpair(
    c: &EntryVector<Complex64>,
    h: PrimitiveRoot,
    ell: usize,
) -> Result<(Complex64, Vec<Complex64>)> {
    let p = h.modulus();
    check_len(p, c.len())?;
    let nu = eigenvector(h, ell)?;
    let n = p.order();
    let lambda = power_table(h)
        .into_iter()
        .enumerate()
        .map(|(j, hj)| root_of_unity(ell * (j + 1), n) * c.at(hj as usize))
        .sum();
    Ok((lambda, nu))
}

/// Indices `l` with `f_c(z_l) = 0`, decided by cyclotomic divisibility.
pub fn exact_zero_eigenvalues(c: &EntryVector, h: PrimitiveRoot) -> Result<BTreeSet<usize>> {
    let f = associated_polynomial(c, h)?;
    let n = h.modulus().order();
    if f.is_zero() {
        return Ok((1..=n).collect());
    }
    let family = cyclotomic_family(n);
    let vanishes: std::collections::HashMap<usize, bool> = family
        .iter()
        .map(|(&d, phi)| (d, f.is_divisible_by_monic(phi)))
        .collect();
    Ok((1..=n).filter(|&ell| vanishes[&root_order(ell, n)]).collect())
}

/// All `p - 1` eigenpairs of integer `A_p[c]`, with exact zero flags.
pub fn spectrum(c: &EntryVector, h: PrimitiveRoot) -> Result<Spectrum> {
    let zeros = exact_zero_eigenvalues(c, h)?;
    let cf = c.to_complex();
    let p = h.modulus();
    let eigenpairs = (1..=p.order())
        .map(|ell| {
            let (lambda, nu) = eigenpair(&cf, h, ell)?;
            Ok(Eigenpair {
                ell,
                lambda,
                nu,
                symmetry: symmetry_class(ell),
                exactly_zero: zeros.contains(&ell),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Spectrum { p, h, eigenpairs })
}

/// `prod_l f_c(z_l)` computed exactly as `Res(x^{p-1} - 1, f_c)`.
///
/// `f_c` is first reduced modulo `x^{p-1} - 1`, which leaves its values at
/// the roots of unity unchanged and shrinks the Sylvester matrix by one.
pub fn det_spectral_exact(c: &EntryVector, h: PrimitiveRoot) -> Result<BigInt> {
    let f = associated_polynomial(c, h)?;
    let modulus = IntPolynomial::x_pow_minus_one(h.modulus().order());
    let reduced = f.rem_monic(&modulus);
    Ok(IntPolynomial::resultant(&modulus, &reduced))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FloatDeterminant {
    pub value: Complex64,
    /// Rough forward-error bound on `value`.
    pub error_bound: f64,
}

/// `prod_l f_c(z_l)` in double precision. A cross-check only.
pub fn det_spectral_float(c: &EntryVector<Complex64>, h: PrimitiveRoot) -> Result<FloatDeterminant> {
    let p = h.modulus();
    check_len(p, c.len())?;
    let n = p.order();
    let scale: f64 = c.as_slice().iter().map(|v| v.norm()).sum();
    let per_factor = 8.0 * n as f64 * f64::EPSILON * scale.max(f64::MIN_POSITIVE);
    let mut value = Complex64::new(1.0, 0.0);
    let mut magnitude = 1.0;
    let mut inflated = 1.0;
    for ell in 1..=n {
        let (lambda, _) = eigenpair(c, h, ell)?;
        value *= lambda;
        magnitude *= lambda.norm();
        inflated *= lambda.norm() + per_factor;
    }
    Ok(FloatDeterminant {
        value,
        error_bound: inflated - magnitude,
    })
}
