//! Finding and checking θ.
//!
//! A norm witness α ∈ Q(∛q1) with N(α) = π2·c³ gives θ0 = σ(α)·σ²(α)², whose
//! σ-1 power is π2^{-1} times a cube. θ0 may still ramify above primes of c
//! and above λ; twisting by ρ^k, λ^k and a root of unity clears both.

use num_bigint::BigInt;
use num_traits::Zero;

use super::local::{lambda_data, valuations_above};
use super::pure::{Elem, PureCubic};
use super::{CubicError, ThetaElement};
use crate::eisenstein::{self, cube_root, cubic_residue_symbol, EisensteinInteger as E, PrimaryPrime, ResidueField};
use crate::field::poly;
use crate::modarith::{self, ModArithError, OddPrime};

/// Degree-one primes of L used by the orientation screen.
const SCREEN_PRIMES: usize = 48;
const SCREEN_LIMIT: u64 = 200_000;
/// Height of the Eisenstein-coordinate sweep after the rational one.
const EISENSTEIN_HEIGHT: u64 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThetaCheck {
    /// j with θ^{σ-1} ≡ π2^j modulo cubes.
    pub orientation: u32,
}

fn reject(why: impl Into<String>) -> CubicError {
    CubicError::ThetaRejected(why.into())
}

fn gate(pi1: &PrimaryPrime, pi2: &PrimaryPrime) -> Result<(), CubicError> {
    for p in [pi1, pi2] {
        if !p.is_rational() {
            return Err(CubicError::UnsupportedPrime(p.get().clone()));
        }
    }
    if pi1 == pi2 {
        return Err(CubicError::NotDistinct);
    }
    if cubic_residue_symbol(pi1.get(), pi2)? != 0 {
        return Err(CubicError::CubicObstruction(1, 2));
    }
    if cubic_residue_symbol(pi2.get(), pi1)? != 0 {
        return Err(CubicError::CubicObstruction(2, 1));
    }
    Ok(())
}

/// Rational triples of max-norm exactly h, lexicographically.
fn shell(h: i64) -> impl Iterator<Item = [i64; 3]> {
    let r = move || -h..=h;
    r().flat_map(move |a| r().flat_map(move |b| r().map(move |c| [a, b, c])))
        .filter(move |v| v.iter().map(|x| x.abs()).max() == Some(h))
}

/// Searches for θ for rational π1, π2, by norm witnesses of increasing height.
pub fn theta_search(pi1: &PrimaryPrime, pi2: &PrimaryPrime, bound: u64) -> Result<ThetaElement, CubicError> {
    gate(pi1, pi2)?;
    let l = PureCubic::new(pi1.get().clone());
    let p = &pi1.get().a;
    let q = &pi2.get().a;
    for h in 1..=bound as i64 {
        for [a, b, c] in shell(h) {
            let (a, b, c) = (BigInt::from(a), BigInt::from(b), BigInt::from(c));
            let n: BigInt = a.pow(3) + p * b.pow(3) + p * p * c.pow(3) - p * &a * &b * &c * 3;
            if n.is_zero() || !(&n % q).is_zero() {
                continue;
            }
            let Some(cof) = modarith::exact_cbrt(&(n / q)) else { continue };
            let alpha = [E::from_int(a), E::from_int(b), E::from_int(c)];
            if let Some(th) = build(&l, pi1, pi2, &alpha, &E::from_int(cof)) {
                return Ok(th);
            }
        }
    }
    let coords = |h: i64| {
        (-h..=h).flat_map(move |x| (-h..=h).map(move |y| E::from_i64(x, y))).collect::<Vec<_>>()
    };
    for h in 1..=bound.min(EISENSTEIN_HEIGHT) as i64 {
        let cs = coords(h);
        let height = |e: &E| e.a.magnitude().max(e.b.magnitude()).clone();
        for a in &cs {
            for b in &cs {
                for c in &cs {
                    let alpha = [a.clone(), b.clone(), c.clone()];
                    if alpha.iter().all(E::is_rational) || alpha.iter().map(height).max() != Some(BigInt::from(h).magnitude().clone()) {
                        continue;
                    }
                    let n = l.norm(&alpha);
                    if n.is_zero() {
                        continue;
                    }
                    let Some(cof) = n.exact_div(pi2.get()).and_then(|m| cube_root(&m).ok().flatten()) else { continue };
                    if let Some(th) = build(&l, pi1, pi2, &alpha, &cof) {
                        return Ok(th);
                    }
                }
            }
        }
    }
    Err(CubicError::ThetaNotFound(bound))
}

fn is_excluded(rho: &E, pi1: &PrimaryPrime, pi2: &PrimaryPrime) -> bool {
    rho.is_associate(&E::lambda()) || rho.is_associate(pi1.get()) || rho.is_associate(pi2.get())
}

fn build(l: &PureCubic, pi1: &PrimaryPrime, pi2: &PrimaryPrime, alpha: &Elem, cof: &E) -> Option<ThetaElement> {
    let s1 = PureCubic::sigma(alpha);
    let s2 = PureCubic::sigma(&s1);
    let mut th = l.mul(&s1, &l.mul(&s2, &s2));
    let n = l.norm(&th);
    let mut twist = E::one();
    for (rho, _) in eisenstein::factor(cof).ok()?.1 {
        if is_excluded(&rho, pi1, pi2) {
            continue;
        }
        let vs = valuations_above(&th, pi1.get(), &rho, n.valuation(&rho));
        if vs.iter().any(|v| v % 3 != vs[0] % 3) {
            return None;
        }
        twist = &twist * &rho.pow((3 - vs[0] % 3) % 3);
    }
    th = PureCubic::scale(&th, &twist);
    let p = &pi1.get().a;
    let lam = lambda_data(&th, p, l.norm(&th).valuation(&E::lambda()));
    if lam.iter().any(|(v, _)| v % 3 != lam[0].0 % 3) {
        return None;
    }
    th = PureCubic::scale(&th, &E::lambda().pow((3 - lam[0].0 % 3) % 3));
    let nv = l.norm(&th).valuation(&E::lambda());
    (0..3)
        .map(|i| PureCubic::scale(&th, &E::zeta().pow(i)))
        .filter(|c| lambda_data(c, p, nv).iter().all(|(v, ok)| v % 3 == 0 && *ok))
        .map(|coords| ThetaElement { pi1: pi1.clone(), pi2: pi2.clone(), coords })
        .find(|t| check_theta(t).is_ok())
}

/// Checks that L(∛θ)/L is a Rédei-type extension for (π1, π2), with π1
/// rational. The norm, valuation and λ-adic conditions are exact; the
/// Galois condition is screened at degree-one primes (see `orientation`).
pub fn check_theta(theta: &ThetaElement) -> Result<ThetaCheck, CubicError> {
    let (pi1, pi2) = (&theta.pi1, &theta.pi2);
    if !pi1.is_rational() {
        return Err(CubicError::UnsupportedPrime(pi1.get().clone()));
    }
    let l = PureCubic::new(pi1.get().clone());
    let th = &theta.coords;
    if th.iter().all(E::is_zero) {
        return Err(reject("θ = 0"));
    }
    let n = l.norm(th);
    let v1 = n.valuation(pi1.get());
    let rest = n.exact_div(&pi1.get().pow(v1 % 3)).unwrap();
    let uncertified = |e: ModArithError| reject(format!("cannot factor N(θ): {e}"));
    if cube_root(&rest).map_err(uncertified)?.is_none() {
        return Err(reject("N(θ) is not ±π1^k times a cube"));
    }
    for (rho, _) in eisenstein::factor(&n).map_err(uncertified)?.1 {
        if is_excluded(&rho, pi1, pi2) {
            continue;
        }
        let vs = valuations_above(th, pi1.get(), &rho, n.valuation(&rho));
        if let Some(v) = vs.iter().find(|v| *v % 3 != 0) {
            return Err(reject(format!("valuation {v} at a prime above {rho}")));
        }
    }
    let lam = lambda_data(th, &pi1.get().a, n.valuation(&E::lambda()));
    if !lam.iter().all(|(v, ok)| v % 3 == 0 && *ok) {
        return Err(reject("ramified above λ"));
    }
    let j = orientation(theta).ok_or_else(|| reject("σ(θ)/θ is not π2^j times a cube, j ≠ 0"))?;
    Ok(ThetaCheck { orientation: j })
}

pub fn verify_theta(theta: &ThetaElement) -> bool {
    check_theta(theta).is_ok()
}

/// The j ∈ {1, 2} with σ(θ)/θ ≡ π2^j modulo cubes, screened through cubic
/// characters at the first degree-one primes of L. None if the characters
/// are inconsistent with any such j, including j = 0.
///
/// At a prime u ≡ r of L, σ(θ) takes the value θ(ζr), so the character
/// differences χ(θ(ζr)) - χ(θ(r)) and χ(θ(ζ²r)) - χ(θ(ζr)) must both equal
/// j·χ(π2).
pub fn orientation(theta: &ThetaElement) -> Option<u32> {
    let (pi1, pi2) = (theta.pi1.get(), theta.pi2.get());
    let mut j = None;
    let mut usable = 0;
    for p in modarith::primes_below(SCREEN_LIMIT) {
        if usable == SCREEN_PRIMES {
            break;
        }
        if p % 3 != 1 {
            continue;
        }
        let q = OddPrime::from_u64(p).unwrap();
        let rho = eisenstein::split_rational_prime(&q).ok()?.element().clone();
        if pi1.is_divisible_by(&rho) || pi2.is_divisible_by(&rho) {
            continue;
        }
        let k = ResidueField::of_prime(&rho);
        let f = &k.field;
        let u = k.reduce(pi1);
        if k.cubic_exponent(&u) != Some(0) {
            continue;
        }
        let roots = poly::roots(f, &vec![f.neg(&u), f.zero(), f.zero(), f.one()]);
        let r0 = &roots[0];
        let r1 = f.mul(r0, &k.zeta);
        let r2 = f.mul(&r1, &k.zeta);
        let chi: Option<Vec<u32>> =
            [r0, &r1, &r2].iter().map(|r| k.cubic_exponent(&PureCubic::eval(f, &theta.coords, |x| k.reduce(x), r))).collect();
        let Some(chi) = chi else { continue };
        usable += 1;
        let d1 = (chi[1] + 3 - chi[0]) % 3;
        let d2 = (chi[2] + 3 - chi[1]) % 3;
        if d1 != d2 {
            return None;
        }
        let c2 = k.cubic_exponent(&k.reduce(pi2)).expect("ρ ∤ π2");
        if c2 == 0 {
            if d1 != 0 {
                return None;
            }
            continue;
        }
        // c2 is its own inverse mod 3.
        let jj = d1 * c2 % 3;
        if *j.get_or_insert(jj) != jj {
            return None;
        }
    }
    j.filter(|j| *j != 0)
}
