//! Sweeps shared by `triplesym verify` and the acceptance target.

use std::collections::HashMap;
use std::fmt;
use std::time::{Duration, Instant};

use std::sync::Arc;

use rayon::prelude::*;

use crate::cochain::{characters, delta_phi, find_lift, small_groups, CoboundarySolver, FiniteCochain, FiniteGroup, HeisenbergGroup};
use crate::conic;
use crate::cubic::{self, Elem, PureCubic, ThetaElement};
use crate::eisenstein::{self, EisensteinInteger as E, PrimaryPrime};
use crate::modarith::{self, OddPrime};
use crate::redei::{self, AdmissibleTriple2, BetaCache, Branch, SymbolValue, PERMUTATIONS};

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: String,
    pub checks: usize,
    pub failures: Vec<String>,
    pub elapsed: Duration,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport { name: name.to_string(), checks: 0, failures: Vec::new(), elapsed: Duration::ZERO }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    /// A suite with zero checks is vacuous and does not pass.
    pub fn passed(&self) -> bool {
        self.checks > 0 && self.failures.is_empty()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {} ({} checks, {:.2?})", self.name, self.checks, self.elapsed)?;
        if self.checks == 0 {
            write!(f, " vacuous")?;
        }
        if let Some(first) = self.failures.first() {
            write!(f, "; first counterexample: {first}")?;
        }
        Ok(())
    }
}

fn timed(name: &str, body: impl FnOnce(&mut SuiteReport)) -> SuiteReport {
    let start = Instant::now();
    let mut r = SuiteReport::new(name);
    body(&mut r);
    r.elapsed = start.elapsed();
    r
}

fn scan_values(bound: u64, cache: &BetaCache, r: &mut SuiteReport) -> Vec<(AdmissibleTriple2, SymbolValue)> {
    match redei::scan2_with(bound, cache) {
        Ok(v) => v.into_iter().map(|(t, e)| (t, e.value)).collect(),
        Err(e) => {
            r.check(false, || format!("scan failed: {e}"));
            Vec::new()
        }
    }
}

/// All six orderings of every admissible triple below `bound` agree.
pub fn redei_reciprocity(bound: u64) -> SuiteReport {
    timed(&format!("reciprocity (bound {bound})"), |r| {
        let cache = BetaCache::new();
        let values = scan_values(bound, &cache, r);
        let table: HashMap<&AdmissibleTriple2, SymbolValue> = values.iter().map(|(t, v)| (t, *v)).collect();
        for (t, v) in &values {
            for sigma in PERMUTATIONS {
                let u = t.permuted(sigma);
                let w = table.get(&u).copied();
                r.check(w == Some(*v), || format!("{t} = {v} but {u} = {w:?}"));
            }
        }
    })
}

/// Legendre evaluation and quartic root count agree on every triple.
pub fn redei_oracle(bound: u64) -> SuiteReport {
    timed(&format!("oracle equivalence (bound {bound})"), |r| {
        let cache = BetaCache::new();
        for (t, v) in scan_values(bound, &cache, r) {
            let beta = cache.get(t.p1(), t.p2()).expect("cached by the scan");
            let o = redei::oracle_with(&t, &beta).map(|(o, _)| o);
            r.check(o.as_ref() == Ok(&v), || format!("{t}: residue {v}, oracle {o:?}"));
        }
    })
}

/// Both square roots of p1 mod p3, and every normalized β found for
/// (p1, p2), give the same symbol.
pub fn redei_well_defined(bound: u64) -> SuiteReport {
    timed(&format!("branch and β independence (bound {bound})"), |r| {
        let cache = BetaCache::new();
        let values = scan_values(bound, &cache, r);
        let mut alternatives: HashMap<(u64, u64), Vec<conic::RedeiBeta>> = HashMap::new();
        for (t, v) in &values {
            let beta = cache.get(t.p1(), t.p2()).unwrap();
            let other = redei::redei_symbol_with(t, &beta, Branch::Larger).map(|e| e.value);
            r.check(other.as_ref() == Ok(v), || format!("{t}: other root gives {other:?}"));
            let key = (t.p1().to_u64().unwrap(), t.p2().to_u64().unwrap());
            let alts = alternatives.entry(key).or_insert_with(|| {
                let sol = conic::solve_legendre(t.p1(), t.p2()).unwrap();
                let mut reps = conic::normalized_representatives(&sol, t.p1(), t.p2());
                reps.retain(|b| *b != beta);
                reps.truncate(5);
                reps
            });
            r.check(!alts.is_empty(), || format!("{t}: no second normalized β found"));
            for b in alts.iter() {
                let w = redei::redei_symbol_with(t, b, Branch::Smaller).map(|e| e.value);
                r.check(w.as_ref() == Ok(v), || format!("{t}: β = ({}, {}, {}) gives {w:?}", b.x, b.y, b.z));
            }
        }
    })
}

/// φ = (χ1, χ2): G → (Z/n)² lifts to D_n iff its obstruction class
/// vanishes, for G ∈ {Z/n, Z/n², (Z/n)²} and n ∈ {2, 3}.
pub fn lemma1() -> SuiteReport {
    timed("lifting criterion", |r| {
        for n in [2u32, 3] {
            let d = HeisenbergGroup::new(n);
            let nu = n as usize;
            for g in [FiniteGroup::cyclic(nu), FiniteGroup::cyclic(nu * nu), FiniteGroup::abelian(&[nu, nu])] {
                let g = Arc::new(g);
                let solver = CoboundarySolver::new(&g, 1).expect("small group");
                let chars = characters(&g, n);
                for x1 in &chars {
                    for x2 in &chars {
                        let phi: Vec<(u32, u32)> = (0..g.order()).map(|i| (x1.get(&[i]), x2.get(&[i]))).collect();
                        let obstruction = delta_phi(&g, &d, &phi, |_, _| 0).and_then(|c| solver.solve(&c));
                        let lift = find_lift(&g, &d, &phi);
                        let ok = matches!((&obstruction, &lift), (Ok(a), Ok(b)) if a.is_some() == b.is_some());
                        r.check(ok, || format!("{g:?}, n = {n}: class {obstruction:?} but lift {lift:?}"));
                    }
                }
            }
        }
    })
}

/// δφ - χ1∪χ2 is a coboundary for every φ: (Z/n)² → (Z/n)² and every
/// section in a generating family, n ∈ {2, 3}.
pub fn lemma2() -> SuiteReport {
    timed("obstruction equals cup product", |r| {
        for n in [2u32, 3] {
            let nu = n as usize;
            let g = Arc::new(FiniteGroup::abelian(&[nu, nu]));
            let quotient = FiniteGroup::abelian(&[nu, nu]);
            let d = HeisenbergGroup::new(n);
            let solver = CoboundarySolver::new(&g, 1).expect("small group");
            let homs = g.homs(&quotient);
            r.check(homs.len() == nu.pow(4), || format!("n = {n}: {} homomorphisms", homs.len()));
            // All n^(n²) sections for n = 2; the zero section and the point
            // deltas otherwise, which generate the rest.
            let mut sections: Vec<Vec<u32>> = Vec::new();
            if n == 2 {
                sections.extend((0..16u32).map(|m| (0..4).map(|i| (m >> i) & 1).collect()));
            } else {
                sections.push(vec![0; nu * nu]);
                for i in 0..nu * nu {
                    for v in 1..n {
                        let mut s = vec![0; nu * nu];
                        s[i] = v;
                        sections.push(s);
                    }
                }
            }
            for h in &homs {
                let phi: Vec<(u32, u32)> = h.iter().map(|&y| (y as u32 / n, y as u32 % n)).collect();
                let x1 = FiniteCochain::from_fn(&g, 1, n, |t| phi[t[0]].0 as i64);
                let x2 = FiniteCochain::from_fn(&g, 1, n, |t| phi[t[0]].1 as i64);
                let cup = x1.cup(&x2).unwrap();
                for s in &sections {
                    let sec = |a: u32, c: u32| s[(a * n + c) as usize];
                    let delta = delta_phi(&g, &d, &phi, sec).unwrap();
                    let diff = delta.sub(&cup).unwrap();
                    let solved = solver.solve(&diff);
                    r.check(matches!(solved, Ok(Some(_))), || format!("n = {n}, φ = {phi:?}: {solved:?}"));
                    // The explicit witness: the section read along φ.
                    let witness = FiniteCochain::from_fn(&g, 1, n, |t| sec(phi[t[0]].0, phi[t[0]].1) as i64);
                    r.check(witness.coboundary().as_ref() == Ok(&diff), || format!("n = {n}, φ = {phi:?}: d(s∘φ) ≠ δφ - χ1∪χ2"));
                }
            }
        }
    })
}

/// u∪v + v∪u + d(u·v) = 0 for all characters u, v of every catalogued
/// group of order ≤ 27, with values in Z/n for n ∈ {2, 3, 4}.
pub fn alternating() -> SuiteReport {
    timed("alternating identity", |r| {
        for g in small_groups() {
            let g = Arc::new(g);
            for n in [2u32, 3, 4] {
                let chars = characters(&g, n);
                for u in &chars {
                    for v in &chars {
                        let lhs = u.cup(v).and_then(|a| a.add(&v.cup(u)?)).and_then(|a| a.add(&u.pointwise(v)?.coboundary()?));
                        r.check(matches!(&lhs, Ok(c) if c.is_zero()), || format!("{g:?}, n = {n}: {lhs:?}"));
                    }
                }
            }
        }
    })
}

/// D_2 is dihedral of order 8, |D_n| = n³ for n ≤ 5, and d(b) = -χa∪χc.
pub fn heisenberg() -> SuiteReport {
    timed("Heisenberg structure", |r| {
        let d2 = HeisenbergGroup::new(2);
        let target = FiniteGroup::dihedral(4);
        let iso = d2.group().find_isomorphism(&target);
        r.check(iso.as_ref().is_some_and(|h| d2.group().is_hom(h, &target)), || "no isomorphism D_2 → dihedral of order 8".into());
        for n in 2..=5u32 {
            let d = HeisenbergGroup::new(n);
            r.check(d.group().order() == (n * n * n) as usize, || format!("|D_{n}| = {}", d.group().order()));
            let db = d.b().coboundary().unwrap();
            r.check(db == d.chi_a().cup(&d.chi_c()).unwrap().neg(), || format!("n = {n}: d(b) ≠ -χa∪χc"));
        }
        let d3 = HeisenbergGroup::new(3);
        let g = d3.group();
        r.check((0..27).filter(|&x| x != g.identity()).all(|x| g.element_order(x) == 3), || "D_3 has an element of order 9".into());
    })
}

/// χσ1∪χσ2∪χσ3 ≡ sign(σ)·χ1∪χ2∪χ3 modulo coboundaries, on (Z/2)³ and (Z/3)².
pub fn triple_sign() -> SuiteReport {
    timed("triple cup product sign", |r| {
        for (ns, n) in [(&[2usize, 2, 2][..], 2u32), (&[3, 3][..], 3)] {
            let g = Arc::new(FiniteGroup::abelian(ns));
            let solver = CoboundarySolver::new(&g, 2).expect("small group");
            let chars = characters(&g, n);
            let triple = |x: [&FiniteCochain; 3]| x[0].cup(&x[1].cup(x[2]).unwrap()).unwrap();
            for a in &chars {
                for b in &chars {
                    for c in &chars {
                        let xs = [a, b, c];
                        let base = triple(xs);
                        for sigma in PERMUTATIONS {
                            let sign = if matches!(sigma, [0, 1, 2] | [1, 2, 0] | [2, 0, 1]) { 1 } else { -1 };
                            let diff = triple(sigma.map(|i| xs[i])).sub(&base.scale(sign)).unwrap();
                            let ok = matches!(solver.solve(&diff), Ok(Some(_)));
                            r.check(ok, || format!("{g:?}: σ = {sigma:?} changes the class by more than its sign"));
                        }
                    }
                }
            }
        }
    })
}

/// primary_associate(5 + 2ζ) = -2 + 3ζ and (2/(-2 + 3ζ))_3 = 1, against
/// plain integer re-derivations.
pub fn eisenstein_fixtures() -> SuiteReport {
    timed("Eisenstein fixtures", |r| {
        let pi = E::from_i64(5, 2);
        // x ≡ 1 mod 3 + 6ζ iff (x - 1)·conj(3 + 6ζ) has both coordinates ≡ 0 mod 27.
        let primary_by_hand = |a: i64, b: i64| {
            let (x, y) = (a - 1, b);
            let (c, d) = (3 - 6, -6);
            let re = x * c - y * d;
            let im = x * d + y * c - y * d;
            re % 27 == 0 && im % 27 == 0
        };
        let units = [(1, 0), (-1, 0), (0, 1), (0, -1), (-1, -1), (1, 1)];
        let assoc: Vec<(i64, i64)> = units
            .iter()
            .map(|&(u, v)| (5 * u - 2 * v, 5 * v + 2 * u - 2 * v))
            .filter(|&(a, b)| primary_by_hand(a, b))
            .collect();
        r.check(assoc == vec![(-2, 3)], || format!("hand enumeration gives {assoc:?}"));
        let lib = eisenstein::primary_associate(&pi);
        r.check(lib.as_ref().map(|p| p.get().clone()) == Ok(E::from_i64(-2, 3)), || format!("primary_associate gives {lib:?}"));
        // F_19 with ζ ↦ r where -2 + 3r ≡ 0, then Euler's criterion.
        let zeta = (0..19u64).find(|z| (3 * z + 19 - 2) % 19 == 0).unwrap();
        let power = (0..6).fold(1u64, |acc, _| acc * 2 % 19);
        let k = (0..3u32).find(|&k| (0..k).fold(1u64, |acc, _| acc * zeta % 19) == power);
        r.check(zeta == 7 && k == Some(1), || format!("ζ ↦ {zeta}, 2^6 = {power}"));
        if let Ok(p) = lib {
            let s = eisenstein::cubic_residue_symbol(&E::from_i64(2, 0), &p);
            r.check(s == Ok(1), || format!("cubic_residue_symbol(2, -2+3ζ) = {s:?}"));
        }
    })
}

/// Primes q ≡ 8 (mod 9), i.e. the rational primary primes -q, used by the
/// cubic suite.
pub const CUBIC_RATIONAL_PRIMES: [i64; 4] = [17, 53, 71, 89];

fn rational_primary(q: i64) -> PrimaryPrime {
    eisenstein::primary_associate(&E::from_i64(q, 0)).expect("q ≡ 8 mod 9")
}

/// Primary primes above the split p < `bound` with p ≡ 1 (mod 9).
fn split_primary_primes(bound: u64) -> Vec<PrimaryPrime> {
    let mut out = Vec::new();
    for p in modarith::primes_below(bound) {
        if p % 9 != 1 {
            continue;
        }
        let q = OddPrime::from_u64(p).unwrap();
        for x in eisenstein::primes_above(q.get()).expect("small prime") {
            out.push(eisenstein::primary_associate(&x).expect("N ≡ 1 mod 9"));
        }
    }
    out
}

/// θ for every ordered pair of `CUBIC_RATIONAL_PRIMES`, by search.
pub fn cubic_thetas(bound: u64) -> Vec<ThetaElement> {
    let qs = CUBIC_RATIONAL_PRIMES;
    let pairs: Vec<(i64, i64)> = qs.iter().flat_map(|&a| qs.iter().map(move |&b| (a, b))).filter(|(a, b)| a != b).collect();
    pairs.par_iter().filter_map(|&(a, b)| cubic::theta_search(&rational_primary(a), &rational_primary(b), bound).ok()).collect()
}

/// On every triple (π1, π2, π3) with θ found at `bound`, π3 rational or
/// split of norm < 400: the same exponent at all primes above π3, invariance
/// under θ ↦ θ·γ³ and θ ↦ θ², inversion under π1 ↔ π2, invariance under
/// 3-cycles (rational triples), and agreement with the nonic oracle.
pub fn cubic_suite(bound: u64) -> SuiteReport {
    timed(&format!("cubic symbol (search bound {bound})"), |r| {
        let thetas = cubic_thetas(bound);
        let find = |a: &PrimaryPrime, b: &PrimaryPrime| thetas.iter().find(|t| t.pi1 == *a && t.pi2 == *b);
        for th in &thetas {
            r.check(cubic::verify_theta(th), || format!("searched θ for ({}, {}) fails verification", th.pi1, th.pi2));
        }
        let mut thirds: Vec<PrimaryPrime> = CUBIC_RATIONAL_PRIMES.iter().map(|&q| rational_primary(q)).collect();
        thirds.extend(split_primary_primes(400));
        let gammas: [Elem; 2] = [
            [E::one(), E::one(), E::zero()],
            [E::from_i64(2, 1), E::zero(), E::from_i64(-1, 1)],
        ];
        for th in &thetas {
            let squared = {
                let l = PureCubic::new(th.pi1.get().clone());
                ThetaElement { coords: l.mul(&th.coords, &th.coords), ..th.clone() }
            };
            for p3 in &thirds {
                let Ok(t) = cubic::admissible3(&th.pi1, &th.pi2, p3) else { continue };
                let v = match cubic::cubic_triple_symbol(&t, th) {
                    Ok(v) => v,
                    Err(e) => {
                        r.check(false, || format!("{t}: {e}"));
                        continue;
                    }
                };
                let first = v.per_prime[0];
                r.check(first.is_some() && v.per_prime.iter().all(|e| *e == first), || format!("{t}: per-prime exponents {:?}", v.per_prime));
                for g in &gammas {
                    let w = cubic::cubic_triple_symbol(&t, &th.twisted_by_cube(g)).map(|e| e.value);
                    r.check(w == Ok(v.value), || format!("{t}: θ·γ³ gives {w:?}, θ gives {}", v.value));
                }
                let w = cubic::cubic_triple_symbol(&t, &squared).map(|e| e.value);
                r.check(w == Ok(v.value), || format!("{t}: θ² gives {w:?}, θ gives {}", v.value));
                let o = cubic::oracle_split3(&t, th);
                r.check(o == Ok(v.value.exponent == 0), || format!("{t}: exponent {} but oracle {o:?}", v.value.exponent));
                if let Some(th21) = find(&th.pi2, &th.pi1) {
                    let w = cubic::cubic_triple_symbol(&t.permuted([1, 0, 2]), th21).map(|e| e.value);
                    r.check(w == Ok(v.value.inverse()), || format!("{t}: transposed gives {w:?}, expected {}", v.value.inverse()));
                }
                if let Some(th23) = find(&th.pi2, p3) {
                    let w = cubic::cubic_triple_symbol(&t.permuted([1, 2, 0]), th23).map(|e| e.value);
                    r.check(w == Ok(v.value), || format!("{t}: 3-cycle gives {w:?}, expected {}", v.value));
                }
            }
        }
    })
}
