//! Numeric check of the zero-order criterion for the reduced `tau` built
//! from a mask `R` vanishing to order `m` at `2 pi k / p`.
//!
//! This is the only floating-point module; its verdicts are numeric.

use std::f64::consts::TAU;

use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;

use crate::error::Result;
use crate::matrices::build_a;
use crate::matrix::EntryVector;
use crate::spectral::det_spectral_exact;
use crate::zmod::{OddPrime, PrimitiveRoot};

/// `R(xi) = sum_k r(k) e^{-i k xi}` with `r` supported on `0..=K`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPolynomial {
    coeffs: Vec<Complex64>,
}

impl TrigPolynomial {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        TrigPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Largest frequency with a stored coefficient.
    pub fn support_max(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, xi: f64) -> Complex64 {
        self.derivative(0, xi)
    }

    /// `D^order R(xi) = sum_k r(k) (-i k)^order e^{-i k xi}`.
    pub fn derivative(&self, order: u32, xi: f64) -> Complex64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, r)| {
                let k = k as f64;
                r * Complex64::new(0.0, -k).powu(order) * Complex64::from_polar(1.0, -k * xi)
            })
            .sum()
    }

    pub fn convolve(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return TrigPolynomial::new(Vec::new());
        }
        let mut out = vec![Complex64::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        TrigPolynomial::new(out)
    }

    pub fn powu(&self, m: u32) -> Self {
        (0..m).fold(TrigPolynomial::new(vec![Complex64::new(1.0, 0.0)]), |acc, _| {
            acc.convolve(self)
        })
    }

    /// `xi -> R(k xi)`.
    pub fn dilate(&self, k: usize) -> Self {
        if k == 0 {
            let total = self.coeffs.iter().sum();
            return TrigPolynomial::new(vec![total]);
        }
        let mut out = vec![Complex64::zero(); self.support_max() * k + 1];
        for (j, r) in self.coeffs.iter().enumerate() {
            out[j * k] = *r;
        }
        TrigPolynomial::new(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[Complex64], i: usize| v.get(i).copied().unwrap_or_default();
        TrigPolynomial::new(
            (0..len)
                .map(|i| get(&self.coeffs, i) + get(&other.coeffs, i))
                .collect(),
        )
    }

    pub fn scale(&self, s: f64) -> Self {
        TrigPolynomial::new(self.coeffs.iter().map(|c| c * s).collect())
    }
}

/// The length-`p` averaging mask `p^{-1} sum_{j<p} e^{-i j xi}`.
pub fn averaging_mask(p: OddPrime) -> TrigPolynomial {
    let w = 1.0 / p.get() as f64;
    TrigPolynomial::new(vec![Complex64::new(w, 0.0); p.get() as usize])
}

/// `R = (averaging mask)^m`: `R(0) = 1` and a zero of exact order `m` at
/// every `2 pi k / p`, `k = 1..p-1`.
pub fn build_r(p: OddPrime, m: u32) -> TrigPolynomial {
    averaging_mask(p).powu(m)
}

pub fn zero_points(p: OddPrime) -> Vec<f64> {
    (1..p.get()).map(|k| TAU * k as f64 / p.get() as f64).collect()
}

/// Scale-aware check of the mask hypotheses: `R(0) = 1`, derivatives of
/// order `< m` vanish at the zero points and `D^m R` does not.
pub fn mask_hypotheses_hold(r: &TrigPolynomial, p: OddPrime, m: u32, tol: f64) -> bool {
    let k_max = r.support_max().max(1) as f64;
    let unit = (r.eval(0.0) - 1.0).norm() <= tol;
    let zeros = zero_points(p).into_iter().all(|x| {
        (0..m).all(|o| r.derivative(o, x).norm() <= tol * k_max.powi(o as i32))
            && r.derivative(m, x).norm() > tol * k_max.powi(m as i32)
    });
    unit && zeros
}

/// `(1/(p-1)) sum_{k=1}^{p-1} R(k xi)`, which is `tau(xi, 0, ..., 0)` when `R(0) = 1`.
pub fn tau_restricted_with(r: &TrigPolynomial, p: OddPrime, xi: f64) -> Complex64 {
    let n = p.order() as f64;
    (1..=p.order()).map(|k| r.eval(k as f64 * xi)).sum::<Complex64>() / n
}

pub fn tau_restricted(p: OddPrime, m: u32, xi: f64) -> Complex64 {
    tau_restricted_with(&build_r(p, m), p, xi)
}

/// Full `tau` in two variables:
/// `(1/((p-1) p)) (1 - p + sum_{nu in {0..p-1}^2 \ 0} R(omega . nu))`.
pub fn tau_full_2d(r: &TrigPolynomial, p: OddPrime, omega: [f64; 2]) -> Complex64 {
    let q = p.get();
    let mut sum = Complex64::new(1.0 - q as f64, 0.0);
    for a in 0..q {
        for b in 0..q {
            if a == 0 && b == 0 {
                continue;
            }
            sum += r.eval(omega[0] * a as f64 + omega[1] * b as f64);
        }
    }
    sum / ((q - 1) * q) as f64
}

/// Restricted `tau` as a trigonometric polynomial in `xi`.
pub fn tau_restricted_polynomial(r: &TrigPolynomial, p: OddPrime) -> TrigPolynomial {
    let sum = (1..=p.order()).fold(TrigPolynomial::new(Vec::new()), |acc, k| acc.add(&r.dilate(k)));
    sum.scale(1.0 / p.order() as f64)
}

/// `v = [D^m R(2 pi k / p)]_{k=1}^{p-1}`.
pub fn derivative_vector(r: &TrigPolynomial, p: OddPrime, m: u32) -> Vec<Complex64> {
    zero_points(p).into_iter().map(|x| r.derivative(m, x)).collect()
}

/// `u = (1/(p-1)) A_{p,m} v`; entry `l` equals `D^{(m,0)} tau(2 pi l / p, 0)`.
pub fn tau_derivative_via_matrix(r: &TrigPolynomial, p: OddPrime, m: u32) -> Result<Vec<Complex64>> {
    let a = build_a(p, m)?.to_complex();
    let v = derivative_vector(r, p, m);
    Ok(a.mul_vec(&v)?
        .into_iter()
        .map(|x| x / p.order() as f64)
        .collect())
}

/// `D^m` of the restricted `tau`, differentiated directly at `2 pi l / p`.
pub fn tau_derivative_direct(r: &TrigPolynomial, p: OddPrime, m: u32) -> Vec<Complex64> {
    let tau = tau_restricted_polynomial(r, p);
    zero_points(p).into_iter().map(|x| tau.derivative(m, x)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TauVerdict {
    /// Some `m`-th derivative of `tau` at a zero point is nonzero.
    Holds,
    /// `A_{p,m}` is invertible yet every entry fell below tolerance.
    Fails,
    /// `A_{p,m}` is singular; the criterion says nothing.
    Indeterminate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TauOrderCheck {
    pub verdict: TauVerdict,
    /// `||u||_inf`.
    pub max_entry: f64,
    /// `min_k |v_k|`; positive whenever the mask hypotheses hold.
    pub min_mask_derivative: f64,
    pub matrix_invertible: bool,
}

impl TauOrderCheck {
    pub fn criterion_holds(&self) -> bool {
        self.verdict == TauVerdict::Holds
    }
}

pub fn check_tau_order(p: OddPrime, m: u32, tol: f64) -> Result<TauOrderCheck> {
    let r = build_r(p, m);
    let v = derivative_vector(&r, p, m);
    let u = tau_derivative_via_matrix(&r, p, m)?;
    let max_entry = u.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let min_mask_derivative = v.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
    let det = det_spectral_exact(&EntryVector::powers(p, m), PrimitiveRoot::smallest(p))?;
    let matrix_invertible = !num_traits::Zero::is_zero(&det);
    let verdict = if !matrix_invertible {
        TauVerdict::Indeterminate
    } else if max_entry > tol {
        TauVerdict::Holds
    } else {
        TauVerdict::Fails
    };
    Ok(TauOrderCheck {
        verdict,
        max_entry,
        min_mask_derivative,
        matrix_invertible,
    })
}
