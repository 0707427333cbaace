//! Solutions of x² - p1·y² - p2·z² = 0 and their normalization into the β
//! that defines the Rédei extension: y even, x - y ≡ 1 (mod 4), gcd 1.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::modarith::{self, legendre, OddPrime};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConicError {
    #[error("x² - {0}y² - {1}z² = 0 has no admissible solution")]
    NoSolution(OddPrime, OddPrime),
    #[error("no normalized representative found for ({0}, {1}) within the search bound")]
    NormalizationExhausted(OddPrime, OddPrime),
}

/// β = x + y√p1 with x² - p1·y² = p2·z².
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RedeiBeta {
    pub x: BigInt,
    pub y: BigInt,
    pub z: BigInt,
    pub p1: OddPrime,
    pub p2: OddPrime,
}

pub type Triple = (BigInt, BigInt, BigInt);

/// Largest unit-orbit exponent tried by `normalize_redei`.
pub const UNIT_EXPONENT_BOUND: u32 = 16;
/// Largest height of γ = a + b√p1 tried in the β·γ² fallback.
pub const GAMMA_HEIGHT_BOUND: i64 = 8;
/// Below this product of primes the least-x solution is found by search.
pub const BRUTE_FORCE_LIMIT: u64 = 1_000_000;

fn is_one_mod_four(p: &OddPrime) -> bool {
    (p.get() % 4u32).is_one()
}

fn gcd3(x: &BigInt, y: &BigInt, z: &BigInt) -> BigInt {
    x.gcd(y).gcd(z)
}

/// A primitive solution of x² = p1·y² + p2·z².
///
/// For p1·p2 below `BRUTE_FORCE_LIMIT` this is the solution with the least
/// x ≥ 0 (then least y ≥ 0); above it, the output of Legendre descent.
pub fn solve_legendre(p1: &OddPrime, p2: &OddPrime) -> Result<Triple, ConicError> {
    let admissible =
        p1 != p2 && is_one_mod_four(p1) && is_one_mod_four(p2) && legendre(&p1.to_bigint(), p2) == 1;
    if !admissible {
        return Err(ConicError::NoSolution(p1.clone(), p2.clone()));
    }
    let product = p1.get() * p2.get();
    let found = if product < BigUint::from(BRUTE_FORCE_LIMIT) {
        solve_by_search(p1, p2)
    } else {
        solve_by_descent(p1, p2)
    };
    found.ok_or_else(|| ConicError::NoSolution(p1.clone(), p2.clone()))
}

/// The primitive solution with least x, then least y, all coordinates ≥ 0.
pub fn solve_by_search(p1: &OddPrime, p2: &OddPrime) -> Option<Triple> {
    let a = p1.to_bigint();
    let b = p2.to_bigint();
    let limit = BigInt::from(p1.get() * p2.get());
    let mut x = BigInt::one();
    while x <= limit {
        let mut y = BigInt::zero();
        loop {
            let r = &x * &x - &a * &y * &y;
            if r.is_negative() {
                break;
            }
            if (&r % &b).is_zero() {
                if let Some(z) = modarith::exact_sqrt(&(&r / &b)) {
                    if gcd3(&x, &y, &z).is_one() {
                        return Some((x, y, z));
                    }
                }
            }
            y += 1;
        }
        x += 1;
    }
    None
}

/// Legendre descent for x² = p1·y² + p2·z².
pub fn solve_by_descent(p1: &OddPrime, p2: &OddPrime) -> Option<Triple> {
    // a·X² + b·Y² = Z² with (a, b) = (p1, p2) gives x = Z, y = X, z = Y.
    let (xx, yy, zz) = descent(&p1.to_bigint(), &p2.to_bigint())?;
    Some(primitive_abs(zz, xx, yy))
}

fn primitive_abs(x: BigInt, y: BigInt, z: BigInt) -> Triple {
    let g = gcd3(&x, &y, &z);
    (x.abs() / &g, y.abs() / &g, z.abs() / g)
}

fn squarefree_split(c: &BigInt) -> (BigInt, BigInt) {
    let mut k = if c.is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut m = BigInt::one();
    for (p, e) in modarith::factor(c) {
        let p = BigInt::from(p);
        if e % 2 == 1 {
            k *= &p;
        }
        m *= p.pow(e / 2);
    }
    (k, m)
}

/// A root of t² ≡ b modulo the squarefree |a|, with |t| ≤ |a|/2.
fn sqrt_mod_squarefree(b: &BigInt, a: &BigInt) -> Option<BigInt> {
    let modulus = a.abs();
    let mut t = BigInt::zero();
    let mut m = BigInt::one();
    for (p, _) in modarith::factor(a) {
        let root = if p == BigUint::from(2u32) {
            b.mod_floor(&BigInt::from(2))
        } else {
            let op = OddPrime::new(&BigInt::from(p.clone())).ok()?;
            BigInt::from(modarith::sqrt_mod(b, &op).ok()?)
        };
        let p = BigInt::from(p);
        // CRT: t ≡ t (mod m), t ≡ root (mod p)
        let minv = BigInt::from(modarith::mod_inv(&m, p.magnitude())?);
        let k = ((&root - &t) * minv).mod_floor(&p);
        t += &m * k;
        m *= p;
    }
    let t = t.mod_floor(&modulus);
    Some(if &t * 2 > modulus { t - modulus } else { t })
}

/// Solves a·x² + b·y² = z² for squarefree nonzero a, b.
fn descent(a: &BigInt, b: &BigInt) -> Option<Triple> {
    let one = BigInt::one();
    if a.is_one() {
        return Some((one.clone(), BigInt::zero(), one));
    }
    if b.is_one() {
        return Some((BigInt::zero(), one.clone(), one));
    }
    if *a == -b {
        return Some((one.clone(), one, BigInt::zero()));
    }
    if a.is_negative() && b.is_negative() {
        return None;
    }
    if a.abs() < b.abs() {
        let (y, x, z) = descent(b, a)?;
        return Some((x, y, z));
    }
    if a == b {
        // a(x² + y²) = z²: put z = a·w, then a·w² + (-1)·y² = x².
        let (w, y, x) = descent(a, &-BigInt::one())?;
        return Some((x, y, a * w));
    }
    let t = sqrt_mod_squarefree(b, a)?;
    let c = (&t * &t - b) / a;
    let (k, m) = squarefree_split(&c);
    let (xx, yy, zz) = descent(&k, b)?;
    // (t + √b)(Z + Y√b) has norm a·(k·m·X)².
    let z = &t * &zz + b * &yy;
    let y = &t * &yy + &zz;
    let x = &k * &m * &xx;
    let g = gcd3(&x, &y, &z);
    Some((x / &g, y / &g, z / g))
}

/// The fundamental unit (t + u√p)/2 of the maximal order of Q(√p), p ≡ 1 (mod 4),
/// read off the continued fraction of (1 + √p)/2.
pub fn fundamental_unit(p: &OddPrime) -> (BigInt, BigInt) {
    let d = p.to_bigint();
    let root = d.sqrt();
    let four = BigInt::from(4);
    let (mut pp, mut qq) = (BigInt::one(), BigInt::from(2));
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    loop {
        let a = (&pp + &root).div_floor(&qq);
        let h = &a * &h1 + &h0;
        let k = &a * &k1 + &k0;
        h0 = std::mem::replace(&mut h1, h);
        k0 = std::mem::replace(&mut k1, k);
        // h - k·ω' with ω' = (1 - √p)/2 equals ((2h - k) + k√p)/2.
        let t = &h1 * 2 - &k1;
        let n = &t * &t - &d * &k1 * &k1;
        if n == four || n == -&four {
            return (t, k1.clone());
        }
        pp = &a * &qq - &pp;
        qq = (&d - &pp * &pp) / &qq;
    }
}

/// Whether (x, y, z) meets every normalization condition for (p1, p2).
fn is_normalized(x: &BigInt, y: &BigInt, z: &BigInt, p1: &BigInt, p2: &BigInt) -> bool {
    x * x - p1 * y * y - p2 * z * z == BigInt::zero()
        && !(x.is_zero() && y.is_zero() && z.is_zero())
        && gcd3(x, y, z).is_one()
        && y.is_even()
        && (x - y).mod_floor(&BigInt::from(4)).is_one()
}

pub fn verify_beta(b: &RedeiBeta) -> bool {
    is_normalized(&b.x, &b.y, &b.z, &b.p1.to_bigint(), &b.p2.to_bigint())
}

/// From β' = X + Y√p1 with N(β') a positive p2·square up to a rational
/// square, the normalized sign patterns (x,y), (-x,-y), (x,-y), (-x,y).
fn sign_patterns(x: BigInt, y: BigInt, p1: &OddPrime, p2: &OddPrime) -> Vec<RedeiBeta> {
    let (a, b) = (p1.to_bigint(), p2.to_bigint());
    let g = x.gcd(&y);
    if g.is_zero() {
        return Vec::new();
    }
    let (x, y) = (x / &g, y / &g);
    let n = &x * &x - &a * &y * &y;
    if !n.is_positive() || !(&n % &b).is_zero() {
        return Vec::new();
    }
    let Some(z) = modarith::exact_sqrt(&(&n / &b)) else {
        return Vec::new();
    };
    [(1, 1), (-1, -1), (1, -1), (-1, 1)]
        .into_iter()
        .map(|(sx, sy)| (&x * sx, &y * sy))
        .filter(|(x, y)| is_normalized(x, y, &z, &a, &b))
        .map(|(x, y)| RedeiBeta { x, y, z: z.clone(), p1: p1.clone(), p2: p2.clone() })
        .collect()
}

/// Every normalized representative reachable from `sol`, in search order:
/// first the unit orbit (exponents 0, 1, -1, ..., ±16), then β·γ² for γ of
/// height ≤ 8.
pub fn normalized_representatives(sol: &Triple, p1: &OddPrime, p2: &OddPrime) -> Vec<RedeiBeta> {
    let mut out = unit_orbit_representatives(sol, p1, p2);
    out.extend(gamma_representatives(sol, p1, p2));
    let mut seen = std::collections::HashSet::new();
    out.retain(|b| seen.insert((b.x.clone(), b.y.clone(), b.z.clone())));
    out
}

fn unit_orbit_representatives(sol: &Triple, p1: &OddPrime, p2: &OddPrime) -> Vec<RedeiBeta> {
    let a = p1.to_bigint();
    let (t, u) = fundamental_unit(p1);
    let mut exponents = vec![0i64];
    for k in 1..=UNIT_EXPONENT_BOUND as i64 {
        exponents.push(k);
        exponents.push(-k);
    }
    let mut out = Vec::new();
    for k in exponents {
        let ub = if k > 0 { u.clone() } else { -&u };
        let (mut x, mut y) = (sol.0.clone(), sol.1.clone());
        for _ in 0..k.unsigned_abs() {
            // Numerators over 2; the common factor is removed in `sign_patterns`.
            let nx = &x * &t + &a * &y * &ub;
            let ny = &x * &ub + &y * &t;
            x = nx;
            y = ny;
        }
        out.extend(sign_patterns(x, y, p1, p2));
    }
    out
}

fn gamma_representatives(sol: &Triple, p1: &OddPrime, p2: &OddPrime) -> Vec<RedeiBeta> {
    let a = p1.to_bigint();
    let mut out = Vec::new();
    for h in 1..=GAMMA_HEIGHT_BOUND {
        for ga in -h..=h {
            for gb in -h..=h {
                if ga.abs().max(gb.abs()) != h {
                    continue;
                }
                let (ga, gb) = (BigInt::from(ga), BigInt::from(gb));
                // γ² = (ga² + p1·gb²) + 2·ga·gb·√p1
                let sa = &ga * &ga + &a * &gb * &gb;
                let sb = &ga * &gb * 2;
                let x = &sol.0 * &sa + &a * &sol.1 * &sb;
                let y = &sol.0 * &sb + &sol.1 * &sa;
                out.extend(sign_patterns(x, y, p1, p2));
            }
        }
    }
    out
}

/// The first normalized representative of `sol`.
pub fn normalize_redei(sol: &Triple, p1: &OddPrime, p2: &OddPrime) -> Result<RedeiBeta, ConicError> {
    unit_orbit_representatives(sol, p1, p2)
        .into_iter()
        .next()
        .or_else(|| gamma_representatives(sol, p1, p2).into_iter().next())
        .ok_or_else(|| ConicError::NormalizationExhausted(p1.clone(), p2.clone()))
}

/// solve_legendre followed by normalize_redei.
pub fn normalized_beta(p1: &OddPrime, p2: &OddPrime) -> Result<RedeiBeta, ConicError> {
    normalize_redei(&solve_legendre(p1, p2)?, p1, p2)
}
