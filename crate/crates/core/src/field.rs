//! Finite fields F_p and F_p[ω]/(ω²+ω+1), with dense polynomials over them.
//!
//! Every residue field that shows up in this crate has one of these two
//! shapes: F_p for a split Eisenstein prime or a rational prime, and F_{q²}
//! for an inert rational prime q ≡ 2 (mod 3).

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisField {
    p: BigUint,
    degree: u8,
}

/// Element c0 + c1·ω. For prime fields c1 is always zero.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fq {
    pub c0: BigUint,
    pub c1: BigUint,
}

impl Fq {
    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }
}

pub(crate) fn reduce_int(a: &BigInt, p: &BigUint) -> BigUint {
    let m = BigInt::from_biguint(Sign::Plus, p.clone());
    a.mod_floor(&m).to_biguint().expect("mod_floor is non-negative")
}

impl GaloisField {
    /// The prime field F_p. `p` is assumed prime.
    pub fn prime(p: BigUint) -> Self {
        GaloisField { p, degree: 1 }
    }

    /// F_p[ω] with ω² + ω + 1 = 0. Only a field when p ≡ 2 (mod 3).
    pub fn quadratic(p: BigUint) -> Self {
        debug_assert!((&p % 3u32) == BigUint::from(2u32));
        GaloisField { p, degree: 2 }
    }

    pub fn characteristic(&self) -> &BigUint {
        &self.p
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn order(&self) -> BigUint {
        if self.degree == 1 {
            self.p.clone()
        } else {
            &self.p * &self.p
        }
    }

    pub fn zero(&self) -> Fq {
        Fq { c0: BigUint::zero(), c1: BigUint::zero() }
    }

    pub fn one(&self) -> Fq {
        Fq { c0: BigUint::one(), c1: BigUint::zero() }
    }

    /// The class of ω. Panics on a prime field.
    pub fn omega(&self) -> Fq {
        assert_eq!(self.degree, 2, "omega only exists in the quadratic field");
        Fq { c0: BigUint::zero(), c1: BigUint::one() }
    }

    pub fn from_int(&self, a: &BigInt) -> Fq {
        Fq { c0: reduce_int(a, &self.p), c1: BigUint::zero() }
    }

    pub fn from_u64(&self, a: u64) -> Fq {
        Fq { c0: BigUint::from(a) % &self.p, c1: BigUint::zero() }
    }

    pub fn from_pair(&self, c0: &BigInt, c1: &BigInt) -> Fq {
        if self.degree == 1 {
            assert!(c1.is_zero(), "prime field element with an ω part");
        }
        Fq { c0: reduce_int(c0, &self.p), c1: reduce_int(c1, &self.p) }
    }

    pub fn add(&self, x: &Fq, y: &Fq) -> Fq {
        Fq { c0: (&x.c0 + &y.c0) % &self.p, c1: (&x.c1 + &y.c1) % &self.p }
    }

    pub fn neg(&self, x: &Fq) -> Fq {
        let n = |c: &BigUint| if c.is_zero() { BigUint::zero() } else { &self.p - c };
        Fq { c0: n(&x.c0), c1: n(&x.c1) }
    }

    pub fn sub(&self, x: &Fq, y: &Fq) -> Fq {
        self.add(x, &self.neg(y))
    }

    pub fn mul(&self, x: &Fq, y: &Fq) -> Fq {
        let p = &self.p;
        if self.degree == 1 {
            return Fq { c0: (&x.c0 * &y.c0) % p, c1: BigUint::zero() };
        }
        // (a + bω)(c + dω) = ac - bd + (ad + bc - bd)ω
        let ac = &x.c0 * &y.c0;
        let bd = (&x.c1 * &y.c1) % p;
        let ad_bc = &x.c0 * &y.c1 + &x.c1 * &y.c0;
        let c0 = (ac + p - &bd) % p;
        let c1 = (ad_bc + p - &bd) % p;
        Fq { c0, c1 }
    }

    pub fn pow(&self, x: &Fq, e: &BigUint) -> Fq {
        if self.degree == 1 {
            return Fq { c0: x.c0.modpow(e, &self.p), c1: BigUint::zero() };
        }
        let mut result = self.one();
        let mut base = x.clone();
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                result = self.mul(&result, &base);
            }
            if i + 1 < bits {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    pub fn inv(&self, x: &Fq) -> Option<Fq> {
        if x.is_zero() {
            return None;
        }
        let p = &self.p;
        let two = BigUint::from(2u32);
        if self.degree == 1 {
            return Some(Fq { c0: x.c0.modpow(&(p - &two), p), c1: BigUint::zero() });
        }
        // conj(a + bω) = a - b - bω, and the norm is a² - ab + b².
        let a = &x.c0;
        let b = &x.c1;
        let norm = (a * a + b * b + p * p - (a * b) % p) % p;
        let ninv = norm.modpow(&(p - &two), p);
        let conj = Fq { c0: (a + p - b) % p, c1: (p - b) % p };
        Some(self.mul(&conj, &Fq { c0: ninv, c1: BigUint::zero() }))
    }

    /// A fixed, deterministic sequence of elements used to split polynomials.
    fn probe(&self, i: u64) -> Fq {
        let c0 = BigUint::from(i) % &self.p;
        let c1 = if self.degree == 2 { BigUint::from(1u32 + (i % 7) as u32) % &self.p } else { BigUint::zero() };
        Fq { c0, c1 }
    }

    /// The exponent k ∈ {0,1,2} with x^((|k|-1)/3) = w^k, where w is a fixed
    /// primitive cube root of unity. None if x = 0 or the power is not a
    /// cube root of unity relative to w (which cannot happen when 3 | |k|-1).
    pub fn cubic_character(&self, x: &Fq, w: &Fq) -> Option<u32> {
        if x.is_zero() {
            return None;
        }
        let e = (self.order() - 1u32) / 3u32;
        let t = self.pow(x, &e);
        let mut acc = self.one();
        for k in 0..3 {
            if acc == t {
                return Some(k);
            }
            acc = self.mul(&acc, w);
        }
        None
    }
}

/// Dense polynomial, lowest degree first, never with a zero leading term.
pub type Poly = Vec<Fq>;

pub mod poly {
    use super::*;

    pub fn trim(mut f: Poly) -> Poly {
        while f.last().is_some_and(Fq::is_zero) {
            f.pop();
        }
        f
    }

    pub fn degree(f: &Poly) -> Option<usize> {
        if f.is_empty() {
            None
        } else {
            Some(f.len() - 1)
        }
    }

    pub fn sub(k: &GaloisField, f: &Poly, g: &Poly) -> Poly {
        let n = f.len().max(g.len());
        let z = k.zero();
        let out = (0..n)
            .map(|i| k.sub(f.get(i).unwrap_or(&z), g.get(i).unwrap_or(&z)))
            .collect();
        trim(out)
    }

    pub fn mul(k: &GaloisField, f: &Poly, g: &Poly) -> Poly {
        if f.is_empty() || g.is_empty() {
            return Vec::new();
        }
        let mut out = vec![k.zero(); f.len() + g.len() - 1];
        for (i, a) in f.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in g.iter().enumerate() {
                out[i + j] = k.add(&out[i + j], &k.mul(a, b));
            }
        }
        trim(out)
    }

    pub fn divrem(k: &GaloisField, f: &Poly, g: &Poly) -> (Poly, Poly) {
        assert!(!g.is_empty(), "polynomial division by zero");
        let mut r = f.clone();
        if r.len() < g.len() {
            return (Vec::new(), r);
        }
        let lead_inv = k.inv(g.last().unwrap()).unwrap();
        let mut q = vec![k.zero(); r.len() - g.len() + 1];
        while r.len() >= g.len() {
            let shift = r.len() - g.len();
            let c = k.mul(r.last().unwrap(), &lead_inv);
            for (j, b) in g.iter().enumerate() {
                r[shift + j] = k.sub(&r[shift + j], &k.mul(&c, b));
            }
            q[shift] = c;
            r = trim(r);
        }
        (trim(q), r)
    }

    pub fn monic(k: &GaloisField, f: Poly) -> Poly {
        match f.last() {
            None => f,
            Some(lead) => {
                let inv = k.inv(lead).unwrap();
                f.iter().map(|c| k.mul(c, &inv)).collect()
            }
        }
    }

    pub fn gcd(k: &GaloisField, f: &Poly, g: &Poly) -> Poly {
        let mut a = f.clone();
        let mut b = g.clone();
        while !b.is_empty() {
            let (_, r) = divrem(k, &a, &b);
            a = b;
            b = r;
        }
        monic(k, a)
    }

    pub fn derivative(k: &GaloisField, f: &Poly) -> Poly {
        let out = f
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| k.mul(c, &k.from_u64(i as u64)))
            .collect();
        trim(out)
    }

    /// base^e mod m.
    pub fn powmod(k: &GaloisField, base: &Poly, e: &BigUint, m: &Poly) -> Poly {
        let mut result = divrem(k, &vec![k.one()], m).1;
        let mut b = divrem(k, base, m).1;
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                result = divrem(k, &mul(k, &result, &b), m).1;
            }
            if i + 1 < bits {
                b = divrem(k, &mul(k, &b, &b), m).1;
            }
        }
        result
    }

    pub fn eval(k: &GaloisField, f: &Poly, x: &Fq) -> Fq {
        f.iter().rev().fold(k.zero(), |acc, c| k.add(&k.mul(&acc, x), c))
    }

    /// Product of (X - r) over the distinct roots r of f in k.
    fn split_part(k: &GaloisField, f: &Poly) -> Poly {
        let x = vec![k.zero(), k.one()];
        let xq = powmod(k, &x, &k.order(), f);
        gcd(k, f, &sub(k, &xq, &x))
    }

    /// Number of distinct roots of f in k.
    ///
    /// # Panics
    /// If f is the zero polynomial.
    pub fn count_distinct_roots(k: &GaloisField, f: &Poly) -> usize {
        assert!(!f.is_empty(), "the zero polynomial has no finite root count");
        degree(&split_part(k, f)).unwrap_or(0)
    }

    /// Distinct roots of f in k, sorted.
    pub fn roots(k: &GaloisField, f: &Poly) -> Vec<Fq> {
        assert!(!f.is_empty(), "the zero polynomial has no finite root set");
        let mut out = Vec::new();
        let mut stack = vec![split_part(k, f)];
        let half = (k.order() - 1u32) >> 1;
        let mut probe = 0u64;
        while let Some(g) = stack.pop() {
            match degree(&g) {
                None | Some(0) => {}
                Some(1) => {
                    let inv = k.inv(&g[1]).unwrap();
                    out.push(k.neg(&k.mul(&g[0], &inv)));
                }
                Some(d) => {
                    // Cantor–Zassenhaus with deterministic shifts.
                    loop {
                        let shifted = vec![k.probe(probe), k.one()];
                        probe += 1;
                        let mut h = powmod(k, &shifted, &half, &g);
                        h = sub(k, &h, &vec![k.one()]);
                        let h = gcd(k, &g, &h);
                        let dh = degree(&h).unwrap_or(0);
                        if dh > 0 && dh < d {
                            let (other, _) = divrem(k, &g, &h);
                            stack.push(h);
                            stack.push(monic(k, other));
                            break;
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// True when f has no repeated factor.
    pub fn is_separable(k: &GaloisField, f: &Poly) -> bool {
        let d = derivative(k, f);
        if d.is_empty() {
            return false;
        }
        degree(&gcd(k, f, &d)) == Some(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> GaloisField {
        GaloisField::prime(BigUint::from(p))
    }

    #[test]
    fn roots_of_split_quadratic() {
        let k = fp(13);
        // (X - 2)(X - 5) = X² - 7X + 10
        let f = vec![k.from_u64(10), k.neg(&k.from_u64(7)), k.one()];
        let r = poly::roots(&k, &f);
        assert_eq!(r, vec![k.from_u64(2), k.from_u64(5)]);
    }

    #[test]
    fn quadratic_field_inverse_and_cube_roots() {
        let k = GaloisField::quadratic(BigUint::from(5u32));
        let w = k.omega();
        let w3 = k.pow(&w, &BigUint::from(3u32));
        assert_eq!(w3, k.one());
        for a in 0..5u64 {
            for b in 0..5u64 {
                let x = k.from_pair(&BigInt::from(a), &BigInt::from(b));
                if let Some(y) = k.inv(&x) {
                    assert_eq!(k.mul(&x, &y), k.one());
                }
            }
        }
        // X³ - 1 splits completely in F_25.
        let f = vec![k.neg(&k.one()), k.zero(), k.zero(), k.one()];
        assert_eq!(poly::roots(&k, &f).len(), 3);
    }

    #[test]
    fn roots_over_f_q2_include_base_field_roots() {
        let k = GaloisField::quadratic(BigUint::from(11u32));
        // (X - 3)(X - 4)(X - ω)
        let lin = |c: Fq| vec![k.neg(&c), k.one()];
        let f = poly::mul(&k, &poly::mul(&k, &lin(k.from_u64(3)), &lin(k.from_u64(4))), &lin(k.omega()));
        let r = poly::roots(&k, &f);
        assert_eq!(r.len(), 3);
        assert!(r.contains(&k.omega()));
    }
}
