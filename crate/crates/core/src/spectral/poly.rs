//! Dense integer polynomials: just enough for cyclotomic divisibility tests
//! and resultants against `x^n - 1`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exact_linalg::det_bareiss;
use crate::matrix::ExactMatrix;

/// Coefficients indexed by degree, trimmed so the leading one is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial::default()
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = -BigInt::one();
        coeffs[n] += BigInt::one();
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| {
            acc * z + c.to_f64().unwrap_or(f64::NAN)
        })
    }

    /// Quotient and remainder by a monic divisor.
    pub fn div_rem_monic(&self, divisor: &IntPolynomial) -> (IntPolynomial, IntPolynomial) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        assert!(divisor.leading().is_some_and(One::is_one), "divisor must be monic");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (IntPolynomial::zero(), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let lead = std::mem::take(&mut rem[k]);
            if lead.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs[..dd].iter().enumerate() {
                rem[k - dd + i] -= &lead * d;
            }
            quot[k - dd] = lead;
        }
        rem.truncate(dd);
        (IntPolynomial::new(quot), IntPolynomial::new(rem))
    }

    pub fn rem_monic(&self, divisor: &IntPolynomial) -> IntPolynomial {
        self.div_rem_monic(divisor).1
    }

    pub fn is_divisible_by_monic(&self, divisor: &IntPolynomial) -> bool {
        self.rem_monic(divisor).is_zero()
    }

    /// Sylvester matrix: `deg g` shifted rows of `f` followed by `deg f`
    /// shifted rows of `g`, highest coefficients first.
    pub fn sylvester(f: &IntPolynomial, g: &IntPolynomial) -> ExactMatrix {
        let m = f.degree().unwrap_or(0);
        let n = g.degree().unwrap_or(0);
        let size = m + n;
        ExactMatrix::from_fn(size, size, |i, j| {
            let (poly, deg, shift) = if i < n { (f, m, i) } else { (g, n, i - n) };
            if j >= shift && j - shift <= deg {
                poly.coeff(deg - (j - shift))
            } else {
                BigInt::zero()
            }
        })
    }

    /// `Res(f, g) = lc(f)^{deg g} prod_{f(a)=0} g(a)`, as the Bareiss
    /// determinant of the Sylvester matrix.
    pub fn resultant(f: &IntPolynomial, g: &IntPolynomial) -> BigInt {
        if f.is_zero() || g.is_zero() {
            return BigInt::zero();
        }
        det_bareiss(&Self::sylvester(f, g)).expect("Sylvester matrix is square")
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if k == 1 {
                        f.write_str("z")?;
                    } else {
                        write!(f, "z^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Positive divisors of `n`, increasing.
pub fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// `Phi_d`, built as `x^d - 1` divided by every `Phi_e` with `e | d`, `e < d`.
pub fn cyclotomic(d: usize) -> IntPolynomial {
    cyclotomic_family(d).remove(&d).expect("computed")
}

/// `Phi_e` for every divisor `e` of `n`.
pub fn cyclotomic_family(n: usize) -> HashMap<usize, IntPolynomial> {
    assert!(n >= 1, "cyclotomic index must be positive");
    let mut out: HashMap<usize, IntPolynomial> = HashMap::new();
    for d in divisors(n) {
        let mut acc = IntPolynomial::x_pow_minus_one(d);
        for e in divisors(d).into_iter().filter(|&e| e < d) {
            let (q, r) = acc.div_rem_monic(&out[&e]);
            debug_assert!(r.is_zero());
            acc = q;
        }
        out.insert(d, acc);
    }
    out
}

/// Order of `exp(2 pi i l / n)` in the circle group: `n / gcd(l, n)`.
pub fn root_order(ell: usize, n: usize) -> usize {
    n / ell.gcd(&n)
}
