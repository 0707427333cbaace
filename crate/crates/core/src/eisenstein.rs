//! The Eisenstein integers Z[ζ], ζ² + ζ + 1 = 0.
//!
//! Elements are pairs (a, b) meaning a + bζ. The conventions are
//! λ = 1 - ζ, √-3 = 1 + 2ζ and 3√-3 = 3 + 6ζ; a prime is primary when it is
//! congruent to 1 modulo 3 + 6ζ.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::field::{Fq, GaloisField};
use crate::modarith::{self, ModArithError, OddPrime};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EisensteinError {
    #[error("norm of {0} is not 1 mod 9")]
    NotOneModNine(EisensteinInteger),
    #[error("{0} is not prime in Z[ζ3]")]
    NotPrime(EisensteinInteger),
    #[error("3 ramifies in Z[ζ3]")]
    RamifiedPrime,
    #[error("{0} and {1} are not coprime")]
    NotCoprime(EisensteinInteger, EisensteinInteger),
    #[error(transparent)]
    Arith(#[from] ModArithError),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct EisensteinInteger {
    pub a: BigInt,
    pub b: BigInt,
}

impl fmt::Display for EisensteinInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

impl EisensteinInteger {
    pub fn new(a: BigInt, b: BigInt) -> Self {
        EisensteinInteger { a, b }
    }

    pub fn from_i64(a: i64, b: i64) -> Self {
        EisensteinInteger { a: a.into(), b: b.into() }
    }

    pub fn from_int(a: BigInt) -> Self {
        EisensteinInteger { a, b: BigInt::zero() }
    }

    pub fn zero() -> Self {
        Self::from_i64(0, 0)
    }

    pub fn one() -> Self {
        Self::from_i64(1, 0)
    }

    pub fn zeta() -> Self {
        Self::from_i64(0, 1)
    }

    /// λ = 1 - ζ, the prime above 3.
    pub fn lambda() -> Self {
        Self::from_i64(1, -1)
    }

    /// √-3 = 1 + 2ζ.
    pub fn sqrt_minus_three() -> Self {
        Self::from_i64(1, 2)
    }

    /// The six units in the order 1, -1, ζ, -ζ, ζ², -ζ².
    pub fn units() -> [Self; 6] {
        [
            Self::from_i64(1, 0),
            Self::from_i64(-1, 0),
            Self::from_i64(0, 1),
            Self::from_i64(0, -1),
            Self::from_i64(-1, -1),
            Self::from_i64(1, 1),
        ]
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// a² - ab + b².
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    /// Complex conjugate: ζ ↦ ζ², so a + bζ ↦ (a - b) - bζ.
    pub fn conj(&self) -> Self {
        EisensteinInteger { a: &self.a - &self.b, b: -&self.b }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        EisensteinInteger { a: &self.a * k, b: &self.b * k }
    }

    /// Quotient and remainder, with the quotient rounded to the nearest
    /// lattice point; N(r) < N(d) always.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero in Z[ζ3]");
        let n = d.norm();
        let num = self * &d.conj();
        let (x0, _) = num.a.div_mod_floor(&n);
        let (y0, _) = num.b.div_mod_floor(&n);
        let mut best: Option<(BigInt, Self, Self)> = None;
        for dx in 0..2 {
            for dy in 0..2 {
                let q = EisensteinInteger { a: &x0 + dx, b: &y0 + dy };
                let r = self - &(&q * d);
                let rn = r.norm();
                if best.as_ref().is_none_or(|(bn, _, _)| rn < *bn) {
                    best = Some((rn, q, r));
                }
            }
        }
        let (_, q, r) = best.unwrap();
        (q, r)
    }

    /// self / d when d divides self exactly.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let n = d.norm();
        let num = self * &d.conj();
        if (&num.a % &n).is_zero() && (&num.b % &n).is_zero() {
            Some(EisensteinInteger { a: num.a / &n, b: num.b / n })
        } else {
            None
        }
    }

    pub fn is_divisible_by(&self, d: &Self) -> bool {
        self.exact_div(d).is_some()
    }

    /// Exponent of the prime ρ in self (self ≠ 0).
    pub fn valuation(&self, rho: &Self) -> u32 {
        assert!(!self.is_zero(), "valuation of zero");
        let mut x = self.clone();
        let mut v = 0;
        while let Some(q) = x.exact_div(rho) {
            x = q;
            v += 1;
        }
        v
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut x = self.clone();
        let mut y = other.clone();
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y);
            x = y;
            y = r;
        }
        x
    }

    pub fn is_associate(&self, other: &Self) -> bool {
        Self::units().iter().any(|u| &(u * self) == other)
    }

    /// Parses "a,b" or a bare integer a.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once(',') {
            Some((a, b)) => Some(Self::new(a.trim().parse().ok()?, b.trim().parse().ok()?)),
            None => Some(Self::from_int(s.parse().ok()?)),
        }
    }
}

impl Add for &EisensteinInteger {
    type Output = EisensteinInteger;
    fn add(self, o: &EisensteinInteger) -> EisensteinInteger {
        EisensteinInteger { a: &self.a + &o.a, b: &self.b + &o.b }
    }
}

impl Sub for &EisensteinInteger {
    type Output = EisensteinInteger;
    fn sub(self, o: &EisensteinInteger) -> EisensteinInteger {
        EisensteinInteger { a: &self.a - &o.a, b: &self.b - &o.b }
    }
}

impl Mul for &EisensteinInteger {
    type Output = EisensteinInteger;
    // (a + bζ)(c + dζ) = ac - bd + (ad + bc - bd)ζ
    fn mul(self, o: &EisensteinInteger) -> EisensteinInteger {
        let bd = &self.b * &o.b;
        EisensteinInteger { a: &self.a * &o.a - &bd, b: &self.a * &o.b + &self.b * &o.a - bd }
    }
}

impl Neg for &EisensteinInteger {
    type Output = EisensteinInteger;
    fn neg(self) -> EisensteinInteger {
        EisensteinInteger { a: -&self.a, b: -&self.b }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for EisensteinInteger {
            type Output = EisensteinInteger;
            fn $m(self, o: EisensteinInteger) -> EisensteinInteger {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for EisensteinInteger {
    type Output = EisensteinInteger;
    fn neg(self) -> EisensteinInteger {
        -&self
    }
}

/// Whether x is a prime element of Z[ζ3].
pub fn is_eisenstein_prime(x: &EisensteinInteger) -> Result<bool, ModArithError> {
    if x.is_zero() {
        return Ok(false);
    }
    let n = x.norm().to_biguint().expect("norms are non-negative");
    if modarith::is_prime(&n)? {
        return Ok(true);
    }
    // Otherwise x must be a unit times a rational prime q ≡ 2 (mod 3).
    for u in EisensteinInteger::units() {
        let y = &u * x;
        if y.b.is_zero() && y.a.is_positive() {
            let q = y.a.magnitude();
            return Ok((q % 3u32) == BigUint::from(2u32) && modarith::is_prime(q)?);
        }
    }
    Ok(false)
}

/// A prime π ≡ 1 (mod 3 + 6ζ).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimaryPrime(EisensteinInteger);

impl PrimaryPrime {
    pub fn get(&self) -> &EisensteinInteger {
        &self.0
    }

    pub fn norm(&self) -> BigInt {
        self.0.norm()
    }

    pub fn is_rational(&self) -> bool {
        self.0.is_rational()
    }

    /// The rational prime q with π = -q, for rational primary primes.
    pub fn rational_prime(&self) -> Option<BigInt> {
        self.is_rational().then(|| -&self.0.a)
    }

    pub fn residue_field(&self) -> ResidueField {
        ResidueField::of_prime(&self.0)
    }
}

impl fmt::Display for PrimaryPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn is_primary(x: &EisensteinInteger) -> bool {
    let three_sqrt = EisensteinInteger::from_i64(3, 6);
    (x - &EisensteinInteger::one()).is_divisible_by(&three_sqrt)
}

/// The unique associate of `pi` congruent to 1 mod 3 + 6ζ.
pub fn primary_associate(pi: &EisensteinInteger) -> Result<PrimaryPrime, EisensteinError> {
    let n = pi.norm();
    if !(&n % 9u32).is_one() {
        return Err(EisensteinError::NotOneModNine(pi.clone()));
    }
    if !is_eisenstein_prime(pi)? {
        return Err(EisensteinError::NotPrime(pi.clone()));
    }
    let found = EisensteinInteger::units().iter().map(|u| u * pi).find(is_primary);
    Ok(PrimaryPrime(found.expect("N ≡ 1 mod 9 forces a primary associate")))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SplitPrime {
    Split(EisensteinInteger),
    Inert(EisensteinInteger),
}

impl SplitPrime {
    pub fn element(&self) -> &EisensteinInteger {
        match self {
            SplitPrime::Split(x) | SplitPrime::Inert(x) => x,
        }
    }
}

/// One prime of Z[ζ3] above the rational prime q.
///
/// For q ≡ 1 (mod 3) the result is the representative (a, b) with
/// 0 < 2b < a; there is exactly one among the twelve elements of norm q.
pub fn split_rational_prime(q: &OddPrime) -> Result<SplitPrime, EisensteinError> {
    let qi = q.to_bigint();
    let r = (q.get() % 3u32).to_u32().unwrap();
    match r {
        0 => Err(EisensteinError::RamifiedPrime),
        2 => Ok(SplitPrime::Inert(EisensteinInteger::from_int(qi))),
        _ => {
            let s = modarith::sqrt_mod(&BigInt::from(-3), q)?;
            let inv2 = (q.get() + 1u32) >> 1;
            let z = ((q.get() - 1u32 + s) * inv2) % q.get();
            let g = EisensteinInteger::from_int(qi.clone())
                .gcd(&EisensteinInteger::new(-BigInt::from(z), BigInt::one()));
            debug_assert_eq!(g.norm(), qi);
            let candidates = [g.clone(), g.conj()];
            let pick = candidates
                .iter()
                .flat_map(|c| EisensteinInteger::units().map(|u| &u * c))
                .find(|x| x.b.is_positive() && (&x.b * 2) < x.a)
                .expect("a reduced representative exists");
            Ok(SplitPrime::Split(pick))
        }
    }
}

/// The primes of Z[ζ3] above the rational prime ℓ, up to units. Fails for
/// ℓ beyond the certified primality bound.
pub fn primes_above(ell: &BigUint) -> Result<Vec<EisensteinInteger>, ModArithError> {
    if *ell == BigUint::from(3u32) {
        return Ok(vec![EisensteinInteger::lambda()]);
    }
    let q = OddPrime::new(&BigInt::from(ell.clone()))?;
    Ok(match split_rational_prime(&q).expect("ℓ ≠ 3") {
        SplitPrime::Inert(x) => vec![x],
        SplitPrime::Split(x) => {
            let y = x.conj();
            vec![x, y]
        }
    })
}

/// Factorization of a nonzero x into primes (as returned by `primes_above`)
/// and a unit: x = unit · ∏ ρ^e.
pub fn factor(x: &EisensteinInteger) -> Result<(EisensteinInteger, Vec<(EisensteinInteger, u32)>), ModArithError> {
    assert!(!x.is_zero(), "cannot factor zero");
    let mut rest = x.clone();
    let mut out = Vec::new();
    let n = x.norm();
    if n.is_one() {
        return Ok((rest, out));
    }
    for (ell, _) in modarith::factor(&n) {
        if ell == BigUint::from(2u32) {
            // 2 is inert: x = 2^k · y.
            let two = EisensteinInteger::from_i64(2, 0);
            let v = rest.valuation(&two);
            rest = rest.exact_div(&two.pow(v)).unwrap();
            out.push((two, v));
            continue;
        }
        for rho in primes_above(&ell)? {
            let v = rest.valuation(&rho);
            if v > 0 {
                rest = rest.exact_div(&rho.pow(v)).unwrap();
                out.push((rho, v));
            }
        }
    }
    debug_assert!(rest.is_unit());
    Ok((rest, out))
}

/// A cube root of x in Z[ζ3], if x is a cube. The other two differ by ζ, ζ².
pub fn cube_root(x: &EisensteinInteger) -> Result<Option<EisensteinInteger>, ModArithError> {
    if x.is_zero() {
        return Ok(Some(EisensteinInteger::zero()));
    }
    let (unit, fs) = factor(x)?;
    let mut c = EisensteinInteger::one();
    let mut u = unit;
    for (rho, e) in fs {
        if e % 3 != 0 {
            return Ok(None);
        }
        c = &c * &rho.pow(e / 3);
    }
    // The unit cubes are ±1.
    if u == EisensteinInteger::from_i64(-1, 0) {
        c = -c;
        u = EisensteinInteger::one();
    }
    Ok((u == EisensteinInteger::one()).then_some(c))
}

/// The residue field Z[ζ3]/(π) together with the image of ζ.
#[derive(Debug, Clone)]
pub struct ResidueField {
    pub field: GaloisField,
    pub zeta: Fq,
}

impl ResidueField {
    /// For a prime π. Split and ramified primes give F_p with ζ ↦ -a/b;
    /// inert primes give F_q[ω] with ζ ↦ ω.
    pub fn of_prime(pi: &EisensteinInteger) -> Self {
        let n = pi.norm().to_biguint().unwrap();
        if modarith::miller_rabin(&n) {
            let field = GaloisField::prime(n.clone());
            let binv = modarith::mod_inv(&pi.b, &n).expect("b is a unit modulo N(π)");
            let zeta = field.from_int(&(-&pi.a * BigInt::from(binv)));
            ResidueField { field, zeta }
        } else {
            let q = num_integer::Roots::sqrt(&n);
            let field = GaloisField::quadratic(q);
            let zeta = field.omega();
            ResidueField { field, zeta }
        }
    }

    pub fn reduce(&self, x: &EisensteinInteger) -> Fq {
        let a = self.field.from_int(&x.a);
        let b = self.field.from_int(&x.b);
        self.field.add(&a, &self.field.mul(&b, &self.zeta))
    }

    /// k with x^((|k|-1)/3) = ζ^k, or None when x̄ = 0.
    pub fn cubic_exponent(&self, x: &Fq) -> Option<u32> {
        self.field.cubic_character(x, &self.zeta)
    }
}

/// The k ∈ Z/3 with α^((Nπ-1)/3) ≡ ζ^k (mod π).
pub fn cubic_residue_symbol(alpha: &EisensteinInteger, pi: &PrimaryPrime) -> Result<u32, EisensteinError> {
    let k = pi.residue_field();
    let x = k.reduce(alpha);
    k.cubic_exponent(&x).ok_or_else(|| EisensteinError::NotCoprime(alpha.clone(), pi.get().clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(a: i64, b: i64) -> EisensteinInteger {
        EisensteinInteger::from_i64(a, b)
    }

    #[test]
    fn zeta_is_a_cube_root_of_unity() {
        let z = EisensteinInteger::zeta();
        assert_eq!(z.pow(3), EisensteinInteger::one());
        assert_eq!(&(&z * &z) + &z, e(-1, 0));
        assert_eq!(EisensteinInteger::lambda().pow(2), e(0, -3));
        assert_eq!(EisensteinInteger::sqrt_minus_three().pow(2), e(-3, 0));
    }

    #[test]
    fn primary_associate_examples() {
        assert_eq!(primary_associate(&e(5, 2)).unwrap().get(), &e(-2, 3));
        assert_eq!(primary_associate(&e(17, 0)).unwrap().get(), &e(-17, 0));
        assert!(matches!(primary_associate(&e(3, 1)), Err(EisensteinError::NotOneModNine(_))));
        assert!(matches!(primary_associate(&e(7, 0)), Err(EisensteinError::NotOneModNine(_))));
    }

    #[test]
    fn split_examples() {
        let p = |n| OddPrime::from_u64(n).unwrap();
        assert_eq!(split_rational_prime(&p(19)).unwrap(), SplitPrime::Split(e(5, 2)));
        assert_eq!(split_rational_prime(&p(17)).unwrap(), SplitPrime::Inert(e(17, 0)));
        assert_eq!(split_rational_prime(&p(3)), Err(EisensteinError::RamifiedPrime));
        for q in modarith::primes_below(2000).into_iter().filter(|q| q % 3 == 1) {
            let SplitPrime::Split(pi) = split_rational_prime(&p(q)).unwrap() else { panic!() };
            assert_eq!(pi.norm(), BigInt::from(q));
        }
    }

    #[test]
    fn residue_symbol_examples() {
        let pi = primary_associate(&e(5, 2)).unwrap();
        assert_eq!(pi.residue_field().zeta, GaloisField::prime(19u32.into()).from_u64(7));
        assert_eq!(cubic_residue_symbol(&e(2, 0), &pi).unwrap(), 1);
        assert_eq!(cubic_residue_symbol(&e(1, 0), &pi).unwrap(), 0);
        assert_eq!(cubic_residue_symbol(&e(5, 0).pow(3), &pi).unwrap(), 0);
        assert!(cubic_residue_symbol(&e(-2, 3), &pi).is_err());
        // Inert prime: 2 is a cube in F_289 since every element of F_17 is.
        let q = primary_associate(&e(17, 0)).unwrap();
        assert_eq!(cubic_residue_symbol(&e(2, 0), &q).unwrap(), 0);
    }

    #[test]
    fn factor_and_cube_root() {
        let x = &(&e(5, 2).pow(2) * &e(2, 0)) * &EisensteinInteger::lambda().pow(3);
        let (u, fs) = factor(&x).unwrap();
        let rebuilt = fs.iter().fold(u, |acc, (r, k)| &acc * &r.pow(*k));
        assert_eq!(rebuilt, x);
        let c = &e(3, 7) * &e(-4, 1);
        assert_eq!(cube_root(&c.pow(3)).unwrap().unwrap().pow(3), c.pow(3));
        assert_eq!(cube_root(&(-&c.pow(3))).unwrap().unwrap().pow(3), -c.pow(3));
        assert_eq!(cube_root(&(&c.pow(3) * &EisensteinInteger::zeta())), Ok(None));
        assert_eq!(cube_root(&e(-17, 0)), Ok(None));
    }

    #[test]
    fn divmod_is_euclidean_on_small_norms() {
        let mut elems = Vec::new();
        for a in -16i64..=16 {
            for b in -16i64..=16 {
                let x = e(a, b);
                if x.norm() <= BigInt::from(200) {
                    elems.push(x);
                }
            }
        }
        for x in &elems {
            for d in elems.iter().filter(|d| !d.is_zero()) {
                let (q, r) = x.div_rem(d);
                assert_eq!(&(&q * d) + &r, *x);
                assert!(r.norm() < d.norm());
            }
        }
    }
}
