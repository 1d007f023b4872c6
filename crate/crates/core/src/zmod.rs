//! Arithmetic in `Z_p` for odd primes `p`.
//!
//! Residues are plain `u64` values in `[0, p)`. Products go through `u128`,
//! so every supported modulus fits comfortably in a machine word.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Witnesses making Miller-Rabin deterministic for every `n < 2^64`.
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

pub(crate) fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, n: u64) -> u64 {
    let mut acc = 1 % n;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality test for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &MR_WITNESSES {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &MR_WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Distinct prime factors of `n` in increasing order, by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut factors = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            factors.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if n > 1 {
        factors.push(n);
    }
    factors
}

/// Euler's totient. `euler_phi(0)` is defined as 0.
pub fn euler_phi(n: u64) -> u64 {
    prime_factors(n)
        .into_iter()
        .fold(n, |acc, q| acc / q * (q - 1))
}

/// An odd prime modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct OddPrime(u64);

impl OddPrime {
    pub fn new(value: u64) -> Result<Self> {
        if value >= 3 && is_prime(value) {
            Ok(OddPrime(value))
        } else {
            Err(Error::NotOddPrime(value))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// Matrix order `p - 1`.
    pub fn order(self) -> usize {
        (self.0 - 1) as usize
    }

    /// Half order `(p - 1) / 2`.
    pub fn half(self) -> usize {
        self.order() / 2
    }

    pub fn residue(self, a: i64) -> Residue {
        mod_reduce(a, self)
    }

    /// `(a * b) mod p` for values already in range.
    pub fn mul(self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.0)
    }

    pub fn pow(self, a: u64, e: u64) -> u64 {
        pow_mod(a, e, self.0)
    }

    /// Inverse of a nonzero residue value.
    pub fn inv(self, a: u64) -> Result<u64> {
        let a = a % self.0;
        if a == 0 {
            return Err(Error::NotInvertible {
                value: 0,
                modulus: self.0,
            });
        }
        Ok(pow_mod(a, self.0 - 2, self.0))
    }

    /// All odd primes in `[3, max]`.
    pub fn up_to(max: u64) -> Vec<OddPrime> {
        (3..=max).filter_map(|v| OddPrime::new(v).ok()).collect()
    }
}

impl fmt::Display for OddPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl TryFrom<u64> for OddPrime {
    type Error = Error;

    fn try_from(value: u64) -> Result<Self> {
        OddPrime::new(value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: OddPrime,
}

impl Residue {
    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> OddPrime {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

/// The representative `r` of `a` with `a = qp + r` and `0 <= r < p`.
pub fn mod_reduce(a: i64, p: OddPrime) -> Residue {
    let value = (a as i128).rem_euclid(p.get() as i128) as u64;
    Residue { value, modulus: p }
}

pub fn mod_inverse(a: Residue) -> Result<Residue> {
    let value = a.modulus.inv(a.value)?;
    Ok(Residue {
        value,
        modulus: a.modulus,
    })
}

/// A generator of the multiplicative group of `Z_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimitiveRoot {
    h: u64,
    modulus: OddPrime,
}

impl PrimitiveRoot {
    /// Validates that `h` generates `(Z_p)^*`.
    pub fn new(h: u64, p: OddPrime) -> Result<Self> {
        let order = p.get() - 1;
        let ok = h % p.get() != 0
            && prime_factors(order)
                .into_iter()
                .all(|q| p.pow(h, order / q) != 1);
        if ok {
            Ok(PrimitiveRoot {
                h: h % p.get(),
                modulus: p,
            })
        } else {
            Err(Error::NotPrimitive {
                value: h,
                modulus: p.get(),
            })
        }
    }

    /// The smallest primitive root, used wherever no root is specified.
    pub fn smallest(p: OddPrime) -> Self {
        find_primitive_roots(p)[0]
    }

    pub fn value(self) -> u64 {
        self.h
    }

    pub fn modulus(self) -> OddPrime {
        self.modulus
    }

    /// `h^k mod p`; negative exponents use the inverse.
    pub fn pow(self, k: i64) -> u64 {
        let order = self.modulus.get() as i64 - 1;
        self.modulus.pow(self.h, k.rem_euclid(order) as u64)
    }

    /// `h^{-1}`, itself a primitive root.
    pub fn inverse(self) -> Self {
        PrimitiveRoot {
            h: self.pow(-1),
            modulus: self.modulus,
        }
    }

    /// Discrete logarithm table: entry `a` holds the `j` in `1..=p-1` with
    /// `h^j = a`. Entry 0 is unused.
    pub fn log_table(self) -> Vec<usize> {
        let n = self.modulus.order();
        let mut log = vec![0; n + 1];
        for (j, &a) in power_table(self).iter().enumerate() {
            log[a as usize] = j + 1;
        }
        log
    }
}

impl fmt::Display for PrimitiveRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.h.fmt(f)
    }
}

/// Every primitive root of `Z_p`, increasing.
pub fn find_primitive_roots(p: OddPrime) -> Vec<PrimitiveRoot> {
    let order = p.get() - 1;
    let cofactors: Vec<u64> = prime_factors(order).into_iter().map(|q| order / q).collect();
    (1..p.get())
        .filter(|&h| cofactors.iter().all(|&e| p.pow(h, e) != 1))
        .map(|h| PrimitiveRoot { h, modulus: p })
        .collect()
}

/// `[h^1, h^2, ..., h^{p-1}] mod p`; position `j - 1` holds `h^j`.
pub fn power_table(h: PrimitiveRoot) -> Vec<u64> {
    let p = h.modulus;
    let mut out = Vec::with_capacity(p.order());
    let mut acc = 1;
    for _ in 0..p.order() {
        acc = p.mul(acc, h.h);
        out.push(acc);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(v: u64) -> OddPrime {
        OddPrime::new(v).unwrap()
    }

    #[test]
    fn rejects_non_odd_primes() {
        for v in [0, 1, 2, 4, 9, 15, 21, 561, 1105] {
            assert_eq!(OddPrime::new(v), Err(Error::NotOddPrime(v)));
        }
        assert!(OddPrime::new(3).is_ok());
        assert!(OddPrime::new(1_000_003).is_ok());
    }

    #[test]
    fn miller_rabin_matches_sieve() {
        let limit = 10_000usize;
        let mut sieve = vec![true; limit];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..limit {
            if sieve[i] {
                for j in (i * i..limit).step_by(i) {
                    sieve[j] = false;
                }
            }
        }
        for (n, &expect) in sieve.iter().enumerate() {
            assert_eq!(is_prime(n as u64), expect, "n = {n}");
        }
        // Largest 64-bit prime, and a strong pseudoprime to bases 2, 3, 5 and 7.
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(mod_reduce(7, p(5)).value(), 2);
        assert_eq!(mod_reduce(-1, p(5)).value(), 4);
        assert_eq!(mod_reduce(10, p(5)).value(), 0);
        assert_eq!(mod_reduce(i64::MIN, p(3)).value(), (i64::MIN as i128).rem_euclid(3) as u64);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(mod_inverse(p(5).residue(2)).unwrap().value(), 3);
        for q in [3, 5, 7, 101] {
            let q = p(q);
            assert_eq!(mod_inverse(q.residue(1)).unwrap().value(), 1);
            let last = q.get() - 1;
            assert_eq!(mod_inverse(q.residue(last as i64)).unwrap().value(), last);
        }
        assert_eq!(
            mod_inverse(p(7).residue(0)),
            Err(Error::NotInvertible { value: 0, modulus: 7 })
        );
    }

    #[test]
    fn primitive_root_examples() {
        let vals = |q| find_primitive_roots(p(q)).iter().map(|h| h.value()).collect::<Vec<_>>();
        assert_eq!(vals(5), vec![2, 3]);
        assert_eq!(vals(3), vec![2]);
        assert_eq!(vals(7), vec![3, 5]);
    }

    #[test]
    fn primitive_roots_match_exhaustive_orders() {
        for q in OddPrime::up_to(101) {
            let expected: Vec<u64> = (1..q.get())
                .filter(|&h| {
                    let mut seen = vec![false; q.get() as usize];
                    let mut acc = 1;
                    for _ in 0..q.order() {
                        acc = q.mul(acc, h);
                        seen[acc as usize] = true;
                    }
                    seen[1..].iter().all(|&s| s)
                })
                .collect();
            let found: Vec<u64> = find_primitive_roots(q).iter().map(|h| h.value()).collect();
            assert_eq!(found, expected, "p = {q}");
            assert_eq!(found.len() as u64, euler_phi(q.get() - 1));
        }
    }

    #[test]
    fn totient_examples() {
        assert_eq!(euler_phi(4), 2);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(6), 2);
        for n in 1..200u64 {
            let brute = (1..=n).filter(|&k| num_integer::gcd(k, n) == 1).count() as u64;
            assert_eq!(euler_phi(n), brute, "n = {n}");
        }
    }

    #[test]
    fn power_table_examples() {
        let h = PrimitiveRoot::new(2, p(5)).unwrap();
        let table = power_table(h);
        assert_eq!(table, vec![2, 4, 3, 1]);
        assert_eq!(table[0] + table[2], 5);
    }

    #[test]
    fn power_table_is_permutation_with_half_turn_relation() {
        for q in OddPrime::up_to(101) {
            for h in find_primitive_roots(q) {
                let table = power_table(h);
                assert_eq!(*table.last().unwrap(), 1);
                let mut sorted = table.clone();
                sorted.sort_unstable();
                assert_eq!(sorted, (1..q.get()).collect::<Vec<_>>());
                let half = q.half();
                for j in 0..half {
                    assert_eq!(table[j] + table[j + half], q.get());
                }
            }
        }
    }

    #[test]
    fn inverse_of_primitive_is_primitive_and_distinct() {
        for q in OddPrime::up_to(101) {
            for h in find_primitive_roots(q) {
                let inv = h.inverse();
                assert!(PrimitiveRoot::new(inv.value(), q).is_ok());
                if q.get() >= 5 {
                    assert_ne!(inv.value(), h.value());
                }
            }
        }
    }

    #[test]
    fn rejects_non_primitive() {
        assert!(PrimitiveRoot::new(4, p(5)).is_err());
        assert!(PrimitiveRoot::new(0, p(5)).is_err());
        assert!(PrimitiveRoot::new(1, p(3)).is_err());
    }

    proptest! {
        #[test]
        fn inverse_is_involution(idx in 0usize..25, a in 1u64..1000) {
            let q = OddPrime::up_to(101)[idx];
            let r = q.residue(a as i64);
            prop_assume!(!r.is_zero());
            let inv = mod_inverse(r).unwrap();
            prop_assert_eq!(q.mul(inv.value(), r.value()), 1);
            prop_assert_eq!(mod_inverse(inv).unwrap(), r);
            // (p - a)^{-1} = p - a^{-1}
            let neg = q.residue(q.get() as i64 - r.value() as i64);
            prop_assert_eq!(mod_inverse(neg).unwrap().value(), q.get() - inv.value());
        }

        #[test]
        fn reduce_is_euclidean(a in any::<i64>(), idx in 0usize..25) {
            let q = OddPrime::up_to(101)[idx];
            let r = mod_reduce(a, q).value();
            prop_assert!(r < q.get());
            prop_assert_eq!((a as i128 - r as i128).rem_euclid(q.get() as i128), 0);
        }
    }
}
