//! The triple cubic residue symbol [𝔭1, 𝔭2, 𝔭3]_3 over F = Q(ζ3).
//!
//! Given θ ∈ L = F(∛π1) generating the Rédei-type extension L(∛θ) of
//! (π1, π2), the symbol is the Artin symbol of a prime 𝔓3 | 𝔭3 of L acting
//! on ∛θ. Since π1 is a cube mod 𝔭3, 𝔓3 has degree one and the Artin symbol
//! is the cubic character of θ(r) for a cube root r of π1 mod 𝔭3.

mod local;
pub mod pure;
mod theta;

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::eisenstein::{self, cubic_residue_symbol, EisensteinError, EisensteinInteger as E, PrimaryPrime};
use crate::field::poly;
use crate::redei::SymbolValue;

pub use pure::{Elem, PureCubic};
pub use theta::{check_theta, orientation, theta_search, verify_theta, ThetaCheck};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CubicError {
    #[error(transparent)]
    Eisenstein(#[from] EisensteinError),
    #[error("primes are not pairwise non-associate")]
    NotDistinct,
    #[error("cubic residue symbol (π{0}/π{1})_3 is nontrivial")]
    CubicObstruction(usize, usize),
    #[error("{0} is not a rational prime; θ can only be searched for rational π1, π2")]
    UnsupportedPrime(E),
    #[error("no θ found with coordinate height ≤ {0}")]
    ThetaNotFound(u64),
    #[error("θ rejected: {0}")]
    ThetaRejected(String),
    #[error("θ was built for ({0}, {1})")]
    ThetaMismatch(PrimaryPrime, PrimaryPrime),
    #[error("θ vanishes at every prime above {0}")]
    DegenerateEvaluation(PrimaryPrime),
    #[error("nonic oracle is inseparable mod {0}")]
    OracleDegenerate(PrimaryPrime),
    #[error("nonic oracle found {0} roots, expected 0 or 9")]
    OracleRootCount(usize),
    #[error("malformed θ file: {0}")]
    Fixture(String),
}

/// Three pairwise non-associate primary primes, each a cube modulo the others.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AdmissibleTriple3 {
    pi: [PrimaryPrime; 3],
}

impl AdmissibleTriple3 {
    pub fn pi1(&self) -> &PrimaryPrime {
        &self.pi[0]
    }

    pub fn pi2(&self) -> &PrimaryPrime {
        &self.pi[1]
    }

    pub fn pi3(&self) -> &PrimaryPrime {
        &self.pi[2]
    }

    pub fn primes(&self) -> &[PrimaryPrime; 3] {
        &self.pi
    }

    pub fn permuted(&self, sigma: [usize; 3]) -> Self {
        AdmissibleTriple3 { pi: sigma.map(|i| self.pi[i].clone()) }
    }
}

impl fmt::Display for AdmissibleTriple3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.pi[0], self.pi[1], self.pi[2])
    }
}

pub fn admissible3(pi1: &PrimaryPrime, pi2: &PrimaryPrime, pi3: &PrimaryPrime) -> Result<AdmissibleTriple3, CubicError> {
    let pi = [pi1.clone(), pi2.clone(), pi3.clone()];
    if pi1 == pi2 || pi1 == pi3 || pi2 == pi3 {
        return Err(CubicError::NotDistinct);
    }
    for (i, j) in [(0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (2, 1)] {
        if cubic_residue_symbol(pi[i].get(), &pi[j])? != 0 {
            return Err(CubicError::CubicObstruction(i + 1, j + 1));
        }
    }
    Ok(AdmissibleTriple3 { pi })
}

/// Primary associates of three Eisenstein integers, then `admissible3`.
pub fn admissible3_from(x: [&E; 3]) -> Result<AdmissibleTriple3, CubicError> {
    let [a, b, c] = x.map(eisenstein::primary_associate);
    admissible3(&a?, &b?, &c?)
}

/// θ = a + b·u + c·u² in L = F(u), u³ = π1, attached to (π1, π2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaElement {
    pub pi1: PrimaryPrime,
    pub pi2: PrimaryPrime,
    pub coords: Elem,
}

#[derive(Serialize, Deserialize)]
struct ThetaFile {
    pi1: [String; 2],
    pi2: [String; 2],
    theta: [[String; 2]; 3],
}

fn pair(x: &E) -> [String; 2] {
    [x.a.to_string(), x.b.to_string()]
}

fn unpair(p: &[String; 2]) -> Result<E, CubicError> {
    let parse = |s: &str| s.trim().parse::<BigInt>().map_err(|e| CubicError::Fixture(format!("{s:?}: {e}")));
    Ok(E::new(parse(&p[0])?, parse(&p[1])?))
}

fn primary(x: E) -> Result<PrimaryPrime, CubicError> {
    let p = eisenstein::primary_associate(&x)?;
    if *p.get() != x {
        return Err(CubicError::Fixture(format!("{x} is not primary")));
    }
    Ok(p)
}

impl ThetaElement {
    pub fn to_json(&self) -> String {
        let f = ThetaFile { pi1: pair(self.pi1.get()), pi2: pair(self.pi2.get()), theta: self.coords.clone().map(|c| pair(&c)) };
        serde_json::to_string_pretty(&f).expect("plain strings serialize")
    }

    pub fn from_json(s: &str) -> Result<Self, CubicError> {
        let f: ThetaFile = serde_json::from_str(s).map_err(|e| CubicError::Fixture(e.to_string()))?;
        let [a, b, c] = &f.theta;
        Ok(ThetaElement {
            pi1: primary(unpair(&f.pi1)?)?,
            pi2: primary(unpair(&f.pi2)?)?,
            coords: [unpair(a)?, unpair(b)?, unpair(c)?],
        })
    }

    /// θ·γ³, which defines the same extension.
    pub fn twisted_by_cube(&self, gamma: &Elem) -> Self {
        let l = PureCubic::new(self.pi1.get().clone());
        let g3 = l.mul(&l.mul(gamma, gamma), gamma);
        ThetaElement { coords: l.mul(&self.coords, &g3), ..self.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicEvaluation {
    /// e with Art(𝔓3)(∛θ) = ζ^e·∛θ.
    pub value: SymbolValue,
    /// The exponent of the cohomological symbol, -e.
    pub cohomological_exponent: u32,
    /// The exponent at each degree-one prime of L above 𝔭3, in the order of
    /// the sorted cube roots of π1; None where θ vanishes.
    pub per_prime: Vec<Option<u32>>,
    pub orientation: u32,
}

fn check_pair(t: &AdmissibleTriple3, theta: &ThetaElement) -> Result<(), CubicError> {
    if theta.pi1 != *t.pi1() || theta.pi2 != *t.pi2() {
        return Err(CubicError::ThetaMismatch(theta.pi1.clone(), theta.pi2.clone()));
    }
    Ok(())
}

/// [𝔭1, 𝔭2, 𝔭3]_3 from θ.
///
/// θ is oriented so that θ^{σ-1} ≡ π2^{-1} modulo cubes; a θ with the other
/// orientation has its exponent doubled.
pub fn cubic_triple_symbol(t: &AdmissibleTriple3, theta: &ThetaElement) -> Result<CubicEvaluation, CubicError> {
    check_pair(t, theta)?;
    let j = orientation(theta).ok_or_else(|| CubicError::ThetaRejected("σ(θ)/θ is not π2^j times a cube".into()))?;
    let k = t.pi3().residue_field();
    let f = &k.field;
    let cube = vec![f.neg(&k.reduce(t.pi1().get())), f.zero(), f.zero(), f.one()];
    let roots = poly::roots(f, &cube);
    debug_assert_eq!(roots.len(), 3);
    let per_prime: Vec<Option<u32>> = roots
        .iter()
        .map(|r| k.cubic_exponent(&PureCubic::eval(f, &theta.coords, |x| k.reduce(x), r)))
        .collect();
    let e = per_prime.iter().flatten().next().copied().ok_or_else(|| CubicError::DegenerateEvaluation(t.pi3().clone()))?;
    let e = if j == 2 { e } else { 2 * e };
    let value = SymbolValue::new(e as i64, 3);
    Ok(CubicEvaluation { value, cohomological_exponent: value.inverse().exponent, per_prime, orientation: j })
}

/// Whether 𝔭3 splits completely in F(∛π1, ∛θ), by counting the roots of the
/// minimal polynomial X⁹ - e1·X⁶ + e2·X³ - N of ∛θ over F modulo 𝔭3.
pub fn oracle_split3(t: &AdmissibleTriple3, theta: &ThetaElement) -> Result<bool, CubicError> {
    check_pair(t, theta)?;
    let l = PureCubic::new(t.pi1().get().clone());
    let th = &theta.coords;
    let e1 = th[0].scale(&BigInt::from(3));
    let e2 = l.e2(th);
    let n = l.norm(th);
    let k = t.pi3().residue_field();
    let f = &k.field;
    let z = f.zero();
    let nonic = vec![
        f.neg(&k.reduce(&n)),
        z.clone(),
        z.clone(),
        k.reduce(&e2),
        z.clone(),
        z.clone(),
        f.neg(&k.reduce(&e1)),
        z.clone(),
        z,
        f.one(),
    ];
    if !poly::is_separable(f, &nonic) {
        return Err(CubicError::OracleDegenerate(t.pi3().clone()));
    }
    match poly::count_distinct_roots(f, &nonic) {
        9 => Ok(true),
        0 => Ok(false),
        c => Err(CubicError::OracleRootCount(c)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rational(q: i64) -> PrimaryPrime {
        eisenstein::primary_associate(&E::from_i64(q, 0)).unwrap()
    }

    #[test]
    fn admissibility_gates() {
        let t = admissible3(&rational(17), &rational(53), &rational(71)).unwrap();
        assert_eq!(t.pi1().get(), &E::from_i64(-17, 0));
        assert_eq!(admissible3(&rational(17), &rational(17), &rational(71)), Err(CubicError::NotDistinct));
        let seven = admissible3_from([&E::from_i64(3, 1), &E::from_i64(17, 0), &E::from_i64(53, 0)]);
        assert!(matches!(seven, Err(CubicError::Eisenstein(EisensteinError::NotOneModNine(_)))));
    }

    #[test]
    fn fixture_json_round_trip() {
        let th = ThetaElement {
            pi1: rational(17),
            pi2: rational(53),
            coords: [E::from_i64(1, -2), E::from_i64(0, 3), E::from_i64(-4, 5)],
        };
        let s = th.to_json();
        assert!(s.contains("\"-17\""));
        assert_eq!(ThetaElement::from_json(&s).unwrap(), th);
        assert!(matches!(ThetaElement::from_json("{}"), Err(CubicError::Fixture(_))));
        let not_primary = s.replace("\"-17\"", "\"17\"");
        assert!(matches!(ThetaElement::from_json(&not_primary), Err(CubicError::Fixture(_))));
    }
}
