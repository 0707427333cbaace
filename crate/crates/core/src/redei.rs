//! The Rédei symbol [p1, p2, p3] ∈ {±1}.
//!
//! The main path evaluates the decomposition of p3 in the Rédei extension
//! K = Q(√p1, √p2, √β) through one Legendre symbol: with s² ≡ p1 (mod p3),
//! p3 splits completely in K iff x + y·s is a square mod p3. The oracle path
//! counts roots of the minimal polynomial T⁴ - 2xT² + p2z² of √β instead.

use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::conic::{self, ConicError, RedeiBeta};
use crate::modarith::{self, count_roots_mod, legendre, OddPrime, PolyModP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RedeiError {
    #[error("{0} is not 1 mod 4")]
    NotOneModFour(OddPrime),
    #[error("primes are not pairwise distinct")]
    NotDistinct,
    #[error("legendre(p{0}, p{1}) = -1")]
    LegendreObstruction(usize, usize),
    #[error("quartic oracle stays inseparable mod {0} after perturbation")]
    OracleDegenerate(OddPrime),
    #[error("quartic oracle found {0} roots, expected 0 or 4")]
    OracleRootCount(usize),
    #[error("β = ({0}, {1}, {2}) fails the normalization conditions")]
    InvalidBeta(BigInt, BigInt, BigInt),
    #[error(transparent)]
    Conic(#[from] ConicError),
}

/// ζ_n^exponent, with ζ_2 = -1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SymbolValue {
    pub exponent: u32,
    pub n: u32,
}

impl SymbolValue {
    pub fn new(exponent: i64, n: u32) -> Self {
        SymbolValue { exponent: exponent.rem_euclid(n as i64) as u32, n }
    }

    pub fn inverse(self) -> Self {
        SymbolValue::new(-(self.exponent as i64), self.n)
    }

    /// "+1" / "-1" for n = 2, "ζ^k" otherwise.
    pub fn render(&self) -> String {
        match (self.n, self.exponent) {
            (2, 0) => "+1".to_string(),
            (2, _) => "-1".to_string(),
            (_, k) => format!("ζ^{k}"),
        }
    }
}

impl fmt::Display for SymbolValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Three primes ≡ 1 (mod 4), pairwise distinct and pairwise quadratic residues.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AdmissibleTriple2 {
    p: [OddPrime; 3],
}

impl AdmissibleTriple2 {
    pub fn p1(&self) -> &OddPrime {
        &self.p[0]
    }

    pub fn p2(&self) -> &OddPrime {
        &self.p[1]
    }

    pub fn p3(&self) -> &OddPrime {
        &self.p[2]
    }

    pub fn primes(&self) -> &[OddPrime; 3] {
        &self.p
    }

    /// The triple (p[σ0], p[σ1], p[σ2]); admissibility is symmetric.
    pub fn permuted(&self, sigma: [usize; 3]) -> Self {
        AdmissibleTriple2 { p: sigma.map(|i| self.p[i].clone()) }
    }
}

pub const PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

impl fmt::Display for AdmissibleTriple2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.p[0], self.p[1], self.p[2])
    }
}

pub fn admissible2(p1: &OddPrime, p2: &OddPrime, p3: &OddPrime) -> Result<AdmissibleTriple2, RedeiError> {
    let p = [p1.clone(), p2.clone(), p3.clone()];
    if let Some(bad) = p.iter().find(|q| !(q.get() % 4u32).is_one()) {
        return Err(RedeiError::NotOneModFour(bad.clone()));
    }
    if p1 == p2 || p1 == p3 || p2 == p3 {
        return Err(RedeiError::NotDistinct);
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        if legendre(&p[i].to_bigint(), &p[j]) != 1 {
            return Err(RedeiError::LegendreObstruction(i + 1, j + 1));
        }
    }
    Ok(AdmissibleTriple2 { p })
}

/// Which square root of p1 mod p3 is used for the residue evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Smaller,
    Larger,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RedeiEvaluation {
    pub value: SymbolValue,
    pub beta: RedeiBeta,
    pub fallbacks: Vec<String>,
}

/// Evaluates [p1, p2, p3] with a freshly computed normalized β.
pub fn redei_symbol(t: &AdmissibleTriple2) -> Result<RedeiEvaluation, RedeiError> {
    let beta = conic::normalized_beta(t.p1(), t.p2())?;
    redei_symbol_with(t, &beta, Branch::Smaller)
}

/// Evaluates [p1, p2, p3] with a given normalized β for (p1, p2).
pub fn redei_symbol_with(t: &AdmissibleTriple2, beta: &RedeiBeta, branch: Branch) -> Result<RedeiEvaluation, RedeiError> {
    check_beta(t, beta)?;
    let p3 = t.p3();
    let mut s = BigInt::from(modarith::sqrt_mod(&t.p1().to_bigint(), p3).expect("admissible"));
    if branch == Branch::Larger {
        s = p3.to_bigint() - s;
    }
    let tau = &beta.x + &beta.y * s;
    let value = match legendre(&tau, p3) {
        1 => SymbolValue::new(0, 2),
        -1 => SymbolValue::new(1, 2),
        _ => {
            let (value, note) = oracle_with(t, beta)?;
            let mut fallbacks = vec![format!("DegenerateEvaluation: x + y·s ≡ 0 mod {p3}, quartic oracle used")];
            fallbacks.extend(note);
            return Ok(RedeiEvaluation { value, beta: beta.clone(), fallbacks });
        }
    };
    Ok(RedeiEvaluation { value, beta: beta.clone(), fallbacks: Vec::new() })
}

fn check_beta(t: &AdmissibleTriple2, beta: &RedeiBeta) -> Result<(), RedeiError> {
    if !conic::verify_beta(beta) || &beta.p1 != t.p1() || &beta.p2 != t.p2() {
        return Err(RedeiError::InvalidBeta(beta.x.clone(), beta.y.clone(), beta.z.clone()));
    }
    Ok(())
}

/// The quartic-oracle evaluation of [p1, p2, p3].
pub fn oracle_symbol2(t: &AdmissibleTriple2) -> Result<SymbolValue, RedeiError> {
    let beta = conic::normalized_beta(t.p1(), t.p2())?;
    Ok(oracle_with(t, &beta)?.0)
}

/// Oracle evaluation with a given β; the second component describes the
/// perturbation, if one was needed.
pub fn oracle_with(t: &AdmissibleTriple2, beta: &RedeiBeta) -> Result<(SymbolValue, Option<String>), RedeiError> {
    check_beta(t, beta)?;
    let p3 = t.p3();
    let a = t.p1().to_bigint();
    if let Some(v) = quartic_verdict(&beta.x, &beta.y, &a, p3)? {
        return Ok((v, None));
    }
    let pi = p3.to_bigint();
    let mut notes = Vec::new();
    let (mut x, mut y) = (beta.x.clone(), beta.y.clone());
    if (&beta.z % &pi).is_zero() {
        (x, y) = balance_at(beta, &a, &pi).ok_or_else(|| RedeiError::OracleDegenerate(p3.clone()))?;
        notes.push("β·(c+√p1)^2a/p3^2a".to_string());
        if let Some(v) = quartic_verdict(&x, &y, &a, p3)? {
            return Ok((v, Some(format!("OraclePerturbation: {} at p3 = {p3}", notes.join(", ")))));
        }
    }
    let k = (1..=16)
        .map(BigInt::from)
        .find(|k| !((BigInt::one() - &a * k * k) % &pi).is_zero())
        .expect("some small k avoids p3");
    // β·(1 + k√p1)²
    let (ga, gb) = (BigInt::one() + &a * &k * &k, &k * 2);
    (x, y) = (&x * &ga + &a * &y * &gb, &x * &gb + &y * &ga);
    notes.push(format!("β·(1+{k}√p1)²"));
    match quartic_verdict(&x, &y, &a, p3)? {
        Some(v) => Ok((v, Some(format!("OraclePerturbation: {} at p3 = {p3}", notes.join(", "))))),
        None => Err(RedeiError::OracleDegenerate(p3.clone())),
    }
}

/// Root count of T⁴ - 2xT² + (x² - a·y²) mod p: Some(verdict) if separable.
fn quartic_verdict(x: &BigInt, y: &BigInt, a: &BigInt, p: &OddPrime) -> Result<Option<SymbolValue>, RedeiError> {
    let n = x * x - a * y * y;
    let g = PolyModP::new(&[n, BigInt::zero(), -(x * BigInt::from(2)), BigInt::zero(), BigInt::one()], p.clone());
    if !g.is_separable() {
        return Ok(None);
    }
    match count_roots_mod(&g) {
        4 => Ok(Some(SymbolValue::new(0, 2))),
        0 => Ok(Some(SymbolValue::new(1, 2))),
        other => Err(RedeiError::OracleRootCount(other)),
    }
}

/// β·(c + √a)^{2e} / p^{2e} where e = v_p(z), chosen so that the result is
/// integral with norm prime to p. Same class modulo squares of Q(√a)^×.
fn balance_at(beta: &RedeiBeta, a: &BigInt, p: &BigInt) -> Option<(BigInt, BigInt)> {
    let mut e = 0u32;
    let mut z = beta.z.clone();
    while (&z % p).is_zero() {
        z /= p;
        e += 1;
    }
    let op = OddPrime::new(p).ok()?;
    let s = BigInt::from(modarith::sqrt_mod(a, &op).ok()?);
    let scale = p.pow(2 * e);
    for root in [s.clone(), p - &s] {
        for j in 0..4 {
            let c = &root + p * j;
            let (mut ua, mut ub) = (BigInt::one(), BigInt::zero());
            for _ in 0..2 * e {
                let na = &ua * &c + a * &ub;
                let nb = &ua + &ub * &c;
                ua = na;
                ub = nb;
            }
            let x = &beta.x * &ua + a * &beta.y * &ub;
            let y = &beta.x * &ub + &beta.y * &ua;
            if !(&x % &scale).is_zero() || !(&y % &scale).is_zero() {
                continue;
            }
            let (x, y) = (x / &scale, y / &scale);
            let n = &x * &x - a * &y * &y;
            if !(&n % p).is_zero() {
                return Some((x, y));
            }
        }
    }
    None
}

/// Normalized β per ordered pair, shared between threads. The first value
/// stored for a key wins.
#[derive(Debug, Default)]
pub struct BetaCache {
    map: RwLock<HashMap<(OddPrime, OddPrime), RedeiBeta>>,
}

impl BetaCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, p1: &OddPrime, p2: &OddPrime) -> Option<RedeiBeta> {
        self.map.read().unwrap().get(&(p1.clone(), p2.clone())).cloned()
    }

    pub fn get_or_compute(&self, p1: &OddPrime, p2: &OddPrime) -> Result<RedeiBeta, RedeiError> {
        if let Some(b) = self.get(p1, p2) {
            return Ok(b);
        }
        let beta = conic::normalized_beta(p1, p2)?;
        let mut map = self.map.write().unwrap();
        Ok(map.entry((p1.clone(), p2.clone())).or_insert(beta).clone())
    }

    /// Inserts a β after checking it; an existing entry is kept.
    pub fn insert(&self, beta: RedeiBeta) -> Result<(), RedeiError> {
        if !conic::verify_beta(&beta) {
            return Err(RedeiError::InvalidBeta(beta.x, beta.y, beta.z));
        }
        let key = (beta.p1.clone(), beta.p2.clone());
        self.map.write().unwrap().entry(key).or_insert(beta);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.map.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All entries, sorted by key.
    pub fn entries(&self) -> Vec<RedeiBeta> {
        let mut v: Vec<RedeiBeta> = self.map.read().unwrap().values().cloned().collect();
        v.sort_by(|a, b| (&a.p1, &a.p2).cmp(&(&b.p1, &b.p2)));
        v
    }

    pub fn symbol(&self, t: &AdmissibleTriple2) -> Result<RedeiEvaluation, RedeiError> {
        let beta = self.get_or_compute(t.p1(), t.p2())?;
        redei_symbol_with(t, &beta, Branch::Smaller)
    }
}

/// All admissible ordered triples of primes below `bound`, ascending.
pub fn admissible_triples(bound: u64) -> Vec<AdmissibleTriple2> {
    let ps: Vec<OddPrime> = modarith::primes_below(bound)
        .into_iter()
        .filter(|p| p % 4 == 1)
        .map(|p| OddPrime::from_u64(p).unwrap())
        .collect();
    let mut out = Vec::new();
    for p1 in &ps {
        for p2 in &ps {
            for p3 in &ps {
                if let Ok(t) = admissible2(p1, p2, p3) {
                    out.push(t);
                }
            }
        }
    }
    out
}

pub fn scan2(bound: u64) -> Result<Vec<(AdmissibleTriple2, SymbolValue)>, RedeiError> {
    let cache = BetaCache::new();
    Ok(scan2_with(bound, &cache)?.into_iter().map(|(t, e)| (t, e.value)).collect())
}

/// scan2 with full evaluations and a caller-supplied β cache. Runs on the
/// current rayon pool; output order does not depend on the thread count.
pub fn scan2_with(bound: u64, cache: &BetaCache) -> Result<Vec<(AdmissibleTriple2, RedeiEvaluation)>, RedeiError> {
    let triples = admissible_triples(bound);
    triples
        .into_par_iter()
        .map(|t| {
            let e = cache.symbol(&t)?;
            Ok((t, e))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> OddPrime {
        OddPrime::from_u64(n).unwrap()
    }

    fn triple(a: u64, b: u64, c: u64) -> AdmissibleTriple2 {
        admissible2(&p(a), &p(b), &p(c)).unwrap()
    }

    #[test]
    fn admissibility_examples() {
        assert!(admissible2(&p(5), &p(29), &p(109)).is_ok());
        assert_eq!(admissible2(&p(5), &p(13), &p(17)), Err(RedeiError::LegendreObstruction(1, 2)));
        assert_eq!(admissible2(&p(3), &p(5), &p(13)), Err(RedeiError::NotOneModFour(p(3))));
        assert_eq!(admissible2(&p(5), &p(5), &p(29)), Err(RedeiError::NotDistinct));
    }

    #[test]
    fn five_twenty_nine_one_hundred_nine() {
        let t = triple(5, 29, 109);
        let e = redei_symbol(&t).unwrap();
        assert_eq!(e.value, SymbolValue::new(0, 2));
        assert_eq!(e.value.render(), "+1");
        assert_eq!(redei_symbol_with(&t, &e.beta, Branch::Larger).unwrap().value, e.value);
        assert_eq!(oracle_symbol2(&t).unwrap(), e.value);
        assert_eq!(redei_symbol(&triple(29, 5, 109)).unwrap().value, e.value);
    }

    #[test]
    fn scan_small_bounds() {
        assert!(scan2(5).unwrap().is_empty());
        assert!(scan2(30).unwrap().is_empty());
        let s = scan2(110).unwrap();
        assert!(s.contains(&(triple(5, 29, 109), SymbolValue::new(0, 2))));
        assert!(s.windows(2).all(|w| w[0].0 < w[1].0));
    }

    #[test]
    fn symbol_rendering() {
        assert_eq!(SymbolValue::new(1, 2).render(), "-1");
        assert_eq!(SymbolValue::new(-1, 3).render(), "ζ^2");
        assert_eq!(SymbolValue::new(2, 3).inverse(), SymbolValue::new(1, 3));
    }
}
