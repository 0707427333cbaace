//! Modular arithmetic over Z and F_p: powers, Legendre symbols, square roots,
//! deterministic primality below 3.3·10^24, and root counting.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::field::{poly, GaloisField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModArithError {
    #[error("{0} is not an odd prime")]
    NotPrime(BigInt),
    #[error("{0} exceeds the deterministic primality bound")]
    TooLarge(BigInt),
    #[error("{0} is not a square modulo {1}")]
    NotASquare(BigInt, BigUint),
}

/// Miller–Rabin with the first 13 prime bases is exact below this value.
pub const PRIMALITY_BOUND: u128 = 3_317_044_064_679_887_385_961_981;

const WITNESSES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

pub fn is_prime(n: &BigUint) -> Result<bool, ModArithError> {
    if *n >= BigUint::from(PRIMALITY_BOUND) {
        return Err(ModArithError::TooLarge(BigInt::from(n.clone())));
    }
    Ok(miller_rabin(n))
}

/// Miller–Rabin with fixed bases; a proof below `PRIMALITY_BOUND`, a strong
/// probable-prime test above it.
pub(crate) fn miller_rabin(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for &w in &WITNESSES {
        let w = BigUint::from(w);
        if *n == w {
            return true;
        }
        if (n % &w).is_zero() {
            return false;
        }
    }
    let n1 = n - 1u32;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'witness: for &w in &WITNESSES {
        let mut x = BigUint::from(w).modpow(&d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// An odd prime certified by deterministic Miller–Rabin.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OddPrime(BigUint);

impl OddPrime {
    pub fn new(n: &BigInt) -> Result<Self, ModArithError> {
        let Some(u) = n.to_biguint() else {
            return Err(ModArithError::NotPrime(n.clone()));
        };
        if u.is_even() || !is_prime(&u)? {
            return Err(ModArithError::NotPrime(n.clone()));
        }
        Ok(OddPrime(u))
    }

    pub fn from_u64(n: u64) -> Result<Self, ModArithError> {
        Self::new(&BigInt::from(n))
    }

    pub fn get(&self) -> &BigUint {
        &self.0
    }

    pub fn to_bigint(&self) -> BigInt {
        BigInt::from(self.0.clone())
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn field(&self) -> GaloisField {
        GaloisField::prime(self.0.clone())
    }
}

impl fmt::Display for OddPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Least non-negative residue of `a` modulo `m` (m ≥ 1).
pub fn reduce(a: &BigInt, m: &BigUint) -> BigUint {
    crate::field::reduce_int(a, m)
}

/// base^exp mod m, for m ≥ 1. Negative bases are reduced first.
pub fn mod_pow(base: &BigInt, exp: &BigUint, m: &BigUint) -> BigUint {
    assert!(!m.is_zero(), "modulus must be positive");
    reduce(base, m).modpow(exp, m)
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inv(a: &BigInt, m: &BigUint) -> Option<BigUint> {
    let m_int = BigInt::from(m.clone());
    let e = a.mod_floor(&m_int).extended_gcd(&m_int);
    if e.gcd.is_one() {
        Some(reduce(&e.x, m))
    } else {
        None
    }
}

/// (a/p) ∈ {-1, 0, 1} by Euler's criterion.
pub fn legendre(a: &BigInt, p: &OddPrime) -> i8 {
    let p = p.get();
    let t = mod_pow(a, &((p - 1u32) >> 1), p);
    if t.is_zero() {
        0
    } else if t.is_one() {
        1
    } else {
        -1
    }
}

/// The smaller of the two square roots of `a` modulo `p` (Tonelli–Shanks).
pub fn sqrt_mod(a: &BigInt, p: &OddPrime) -> Result<BigUint, ModArithError> {
    let pu = p.get();
    let a_red = reduce(a, pu);
    if a_red.is_zero() {
        return Ok(BigUint::zero());
    }
    if legendre(a, p) != 1 {
        return Err(ModArithError::NotASquare(a.clone(), pu.clone()));
    }
    let p1 = pu - 1u32;
    let s = p1.trailing_zeros().unwrap_or(0);
    let q = &p1 >> s;
    let mut z = BigUint::from(2u32);
    while legendre(&BigInt::from(z.clone()), p) != -1 {
        z += 1u32;
    }
    let mut m = s;
    let mut c = z.modpow(&q, pu);
    let mut t = a_red.modpow(&q, pu);
    let mut r = a_red.modpow(&((&q + 1u32) >> 1), pu);
    while !t.is_one() {
        let mut i = 0;
        let mut t2 = t.clone();
        while !t2.is_one() {
            t2 = (&t2 * &t2) % pu;
            i += 1;
        }
        let b = c.modpow(&(BigUint::one() << (m - i - 1)), pu);
        m = i;
        c = (&b * &b) % pu;
        t = (t * &c) % pu;
        r = (r * b) % pu;
    }
    let other = pu - &r;
    Ok(if other < r { other } else { r })
}

/// A polynomial over F_p, stored as reduced coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyModP {
    coeffs: Vec<BigUint>,
    modulus: OddPrime,
}

impl PolyModP {
    pub fn new(coeffs: &[BigInt], modulus: OddPrime) -> Self {
        let mut coeffs: Vec<BigUint> = coeffs.iter().map(|c| reduce(c, modulus.get())).collect();
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolyModP { coeffs, modulus }
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn modulus(&self) -> &OddPrime {
        &self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub(crate) fn to_field_poly(&self) -> (GaloisField, crate::field::Poly) {
        let k = self.modulus.field();
        let f = self.coeffs.iter().map(|c| k.from_int(&BigInt::from(c.clone()))).collect();
        (k, f)
    }

    pub fn is_separable(&self) -> bool {
        let (k, f) = self.to_field_poly();
        poly::is_separable(&k, &f)
    }
}

/// Number of distinct roots of f in F_p, computed as deg gcd(X^p - X, f).
///
/// # Panics
/// If f is the zero polynomial.
pub fn count_roots_mod(f: &PolyModP) -> usize {
    let (k, g) = f.to_field_poly();
    poly::count_distinct_roots(&k, &g)
}

/// Primes below `n`, by sieve.
pub fn primes_below(n: u64) -> Vec<u64> {
    if n < 3 {
        return Vec::new();
    }
    let n = n as usize;
    let mut sieve = vec![true; n];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i < n {
        if sieve[i] {
            let mut j = i * i;
            while j < n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i as u64).collect()
}

/// Exact integer square root, if `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Exact integer cube root, if `n` is a perfect cube.
pub fn exact_cbrt(n: &BigInt) -> Option<BigInt> {
    let r = n.cbrt();
    (&r * &r * &r == *n).then_some(r)
}

fn abs_diff(a: &BigUint, b: &BigUint) -> BigUint {
    if a > b {
        a - b
    } else {
        b - a
    }
}

fn pollard_brent(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        let mut ys = x.clone();
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut r = 1u64;
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..(r - k).min(128) {
                    y = f(&y);
                    q = (q * abs_diff(&x, &y)) % n;
                }
                g = q.gcd(n);
                k += 128;
            }
            r *= 2;
        }
        if g == *n {
            loop {
                ys = f(&ys);
                g = abs_diff(&x, &ys).gcd(n);
                if g != one {
                    break;
                }
            }
        }
        if g != *n {
            return g;
        }
        c += 1u32;
    }
}

/// Prime factorization of |n| (n ≠ 0), sorted by prime.
pub fn factor(n: &BigInt) -> Vec<(BigUint, u32)> {
    assert!(!n.is_zero(), "cannot factor zero");
    let mut rest = n.magnitude().clone();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    let push = |p: BigUint, out: &mut Vec<(BigUint, u32)>| match out.iter_mut().find(|(q, _)| *q == p) {
        Some(entry) => entry.1 += 1,
        None => out.push((p, 1)),
    };
    for p in primes_below(10_000) {
        let pb = BigUint::from(p);
        while (&rest % &pb).is_zero() {
            rest /= &pb;
            push(pb.clone(), &mut out);
        }
    }
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if miller_rabin(&m) {
            push(m, &mut out);
            continue;
        }
        if let Some(r) = exact_sqrt(&BigInt::from(m.clone())) {
            let r = r.magnitude().clone();
            stack.push(r.clone());
            stack.push(r);
            continue;
        }
        let d = pollard_brent(&m);
        stack.push(&m / &d);
        stack.push(d);
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> OddPrime {
        OddPrime::from_u64(n).unwrap()
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(&BigInt::from(5), &p(29)), 1);
        assert_eq!(legendre(&BigInt::from(5), &p(13)), -1);
        assert_eq!(legendre(&BigInt::from(0), &p(13)), 0);
    }

    #[test]
    fn sqrt_mod_examples() {
        assert_eq!(sqrt_mod(&BigInt::from(5), &p(29)).unwrap(), BigUint::from(11u32));
        assert_eq!(sqrt_mod(&BigInt::from(2), &p(7)).unwrap(), BigUint::from(3u32));
        assert!(matches!(sqrt_mod(&BigInt::from(3), &p(7)), Err(ModArithError::NotASquare(..))));
    }

    #[test]
    fn mod_pow_edge_cases() {
        assert!(mod_pow(&BigInt::from(7), &BigUint::zero(), &BigUint::one()).is_zero());
        assert!(mod_pow(&BigInt::from(7), &BigUint::zero(), &BigUint::from(5u32)).is_one());
        assert_eq!(mod_pow(&BigInt::from(-2), &BigUint::from(3u32), &BigUint::from(7u32)), BigUint::from(6u32));
    }

    #[test]
    fn primality_bound_is_enforced() {
        let big = BigUint::from(PRIMALITY_BOUND);
        assert!(matches!(is_prime(&big), Err(ModArithError::TooLarge(_))));
        // 2^61 - 1 is prime; 3215031751 is a strong pseudoprime to bases 2,3,5,7.
        assert!(is_prime(&BigUint::from((1u64 << 61) - 1)).unwrap());
        assert!(!is_prime(&BigUint::from(3_215_031_751u64)).unwrap());
        assert!(OddPrime::from_u64(2).is_err());
    }

    #[test]
    fn quartic_root_count() {
        let f = PolyModP::new(&[29, 0, -14, 0, 1].map(BigInt::from), p(109));
        assert_eq!(count_roots_mod(&f), 4);
    }

    #[test]
    fn factor_mixed() {
        let n = BigInt::from(2u64 * 2 * 3 * 1_000_003 * 1_000_033);
        let f = factor(&n);
        let expect: Vec<(BigUint, u32)> =
            vec![(2u32.into(), 2), (3u32.into(), 1), (1_000_003u32.into(), 1), (1_000_033u32.into(), 1)];
        assert_eq!(f, expect);
    }
}
