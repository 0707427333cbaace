use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;
use triplesym::cli::ResultRecord;
use triplesym::cochain::{FiniteCochain, FiniteGroup};
use triplesym::conic;
use triplesym::eisenstein::{self, EisensteinInteger as E};
use triplesym::modarith::{self, count_roots_mod, legendre, OddPrime, PolyModP};
use triplesym::SymbolValue;

fn primes(lo: u64, hi: u64) -> Vec<u64> {
    modarith::primes_below(hi).into_iter().filter(|&p| p >= lo).collect()
}

fn one_mod_nine() -> Vec<u64> {
    primes(5, 2_000).into_iter().filter(|p| p % 9 == 1).collect()
}

/// Ordered pairs p1 ≠ p2 < 300, both 1 mod 4, with p1 a square mod p2.
fn redei_pairs() -> Vec<(u64, u64)> {
    let ps: Vec<u64> = primes(5, 300).into_iter().filter(|p| p % 4 == 1).collect();
    let square = |a: u64, p: u64| legendre(&BigInt::from(a), &OddPrime::from_u64(p).unwrap()) == 1;
    ps.iter().flat_map(|&a| ps.iter().map(move |&b| (a, b))).filter(|&(a, b)| a != b && square(a, b)).collect()
}

fn odd_prime() -> impl Strategy<Value = u64> {
    proptest::sample::select(primes(3, 10_000))
}

fn eis() -> impl Strategy<Value = E> {
    (-10_000i64..10_000, -10_000i64..10_000).prop_map(|(a, b)| E::from_i64(a, b))
}

proptest! {
    #[test]
    fn sqrt_mod_squares_back(p in odd_prime(), a in 0u64..10_000) {
        let q = OddPrime::from_u64(p).unwrap();
        if let Ok(s) = modarith::sqrt_mod(&BigInt::from(a), &q) {
            prop_assert_eq!((&s * &s) % p, num_bigint::BigUint::from(a % p));
            prop_assert!(&s + &s <= num_bigint::BigUint::from(p));
        }
    }

    #[test]
    fn legendre_is_multiplicative(p in odd_prime(), a in 1i64..100_000, b in 1i64..100_000) {
        let q = OddPrime::from_u64(p).unwrap();
        let (a, b) = (BigInt::from(a), BigInt::from(b));
        prop_assert_eq!(legendre(&(&a * &b), &q), legendre(&a, &q) * legendre(&b, &q));
    }

    #[test]
    fn root_count_matches_brute_force(p in proptest::sample::select(primes(3, 2_000)), cs in prop::collection::vec(-50i64..50, 2..6)) {
        let q = OddPrime::from_u64(p).unwrap();
        let mut cs = cs;
        *cs.last_mut().unwrap() = 1;
        let f = PolyModP::new(&cs.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>(), q);
        let p = p as i64;
        let brute = (0..p).filter(|x| cs.iter().rev().fold(0i64, |acc, c| (acc * x + c).rem_euclid(p)) == 0).count();
        prop_assert_eq!(count_roots_mod(&f), brute);
    }

    #[test]
    fn eisenstein_norm_is_multiplicative(x in eis(), y in eis()) {
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
    }

    #[test]
    fn division_is_euclidean(x in eis(), y in eis()) {
        prop_assume!(!y.is_zero());
        let (q, r) = x.div_rem(&y);
        prop_assert_eq!(&(&q * &y) + &r, x);
        prop_assert!(r.norm() < y.norm());
    }

    #[test]
    fn exactly_one_primary_associate(p in proptest::sample::select(primes(5, 5_000))) {
        prop_assume!(p % 3 == 1);
        let q = OddPrime::from_u64(p).unwrap();
        for x in eisenstein::primes_above(q.get()).unwrap() {
            let primary: Vec<E> = E::units().iter().map(|u| u * &x).filter(|y| eisenstein::primary_associate(y).is_ok_and(|pp| pp.get() == y)).collect();
            prop_assert_eq!(primary.len(), if p % 9 == 1 { 1 } else { 0 });
            if let Ok(pp) = eisenstein::primary_associate(&x) {
                prop_assert_eq!(eisenstein::primary_associate(pp.get()).unwrap(), pp);
            }
        }
    }

    #[test]
    fn cubic_character_is_multiplicative(p in proptest::sample::select(one_mod_nine()), x in eis(), y in eis(), k in -20i64..20) {
        let q = OddPrime::from_u64(p).unwrap();
        let pi = eisenstein::primary_associate(&eisenstein::primes_above(q.get()).unwrap()[0]).unwrap();
        let chi = |a: &E| eisenstein::cubic_residue_symbol(a, &pi).ok();
        if let (Some(a), Some(b)) = (chi(&x), chi(&y)) {
            prop_assert_eq!(chi(&(&x * &y)).unwrap(), (a + b) % 3);
            let shifted = &x + &(pi.get() * &E::from_i64(k, 1 - k));
            prop_assert_eq!(chi(&shifted).unwrap(), a);
        }
    }

    #[test]
    fn normalized_beta_verifies((p1, p2) in proptest::sample::select(redei_pairs())) {
        let (a, b) = (OddPrime::from_u64(p1).unwrap(), OddPrime::from_u64(p2).unwrap());
        let beta = conic::normalized_beta(&a, &b).unwrap();
        prop_assert!(conic::verify_beta(&beta));
        prop_assert_eq!(&beta.x * &beta.x - a.to_bigint() * &beta.y * &beta.y, b.to_bigint() * &beta.z * &beta.z);
    }

    #[test]
    fn leibniz_rule(which in 0usize..4, n in 2u32..6, seed in prop::collection::vec(0i64..1000, 128)) {
        let g = Arc::new([FiniteGroup::cyclic(6), FiniteGroup::dihedral(4), FiniteGroup::quaternion(), FiniteGroup::abelian(&[2, 4])][which].clone());
        let k = g.order();
        let f = FiniteCochain::from_fn(&g, 1, n, |t| seed[t[0]]);
        let h = FiniteCochain::from_fn(&g, 1, n, |t| seed[k + t[0]] * 7 + 3);
        // d(f∪h) = df∪h - f∪dh.
        let lhs = f.cup(&h).unwrap().coboundary().unwrap();
        let rhs = f.coboundary().unwrap().cup(&h).unwrap().sub(&f.cup(&h.coboundary().unwrap()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn records_round_trip(e in 0i64..3, n in 2u32..4, ps in prop::collection::vec(1u64..1_000_000, 3), verified: bool, notes in prop::collection::vec("[a-z ≡]{0,12}", 0..3)) {
        let mut r = ResultRecord::new(SymbolValue::new(e, n), ps.iter().map(u64::to_string).collect(), verified, notes);
        if n == 3 {
            r.cohomological_exponent = Some(r.value().inverse().exponent);
        }
        let text = r.to_json();
        let back: ResultRecord = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.to_json(), text);
        prop_assert_eq!(back.rendered, SymbolValue::new(e, n).render());
    }
}
