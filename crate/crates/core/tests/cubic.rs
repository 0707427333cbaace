use std::fs;
use std::path::PathBuf;

use triplesym::cubic::{self, CubicError, ThetaElement};
use triplesym::eisenstein::{primary_associate, EisensteinInteger as E, PrimaryPrime};
use triplesym::verify::CUBIC_RATIONAL_PRIMES;

fn pp(q: i64) -> PrimaryPrime {
    primary_associate(&E::from_i64(q, 0)).unwrap()
}

fn fixture(a: i64, b: i64) -> ThetaElement {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", &format!("theta_{a}_{b}.json")].iter().collect();
    ThetaElement::from_json(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn fixtures_match_the_search() {
    for a in CUBIC_RATIONAL_PRIMES {
        for b in CUBIC_RATIONAL_PRIMES {
            if a == b {
                continue;
            }
            let th = fixture(a, b);
            assert_eq!(cubic::check_theta(&th).map(|c| c.orientation), Ok(2), "({a}, {b})");
            let found = cubic::theta_search(&pp(a), &pp(b), 50).unwrap();
            assert_eq!(found, th, "({a}, {b})");
            assert_eq!(ThetaElement::from_json(&th.to_json()).unwrap(), th);
        }
    }
}

#[test]
fn theta_17_53() {
    let e = |a, b| E::from_i64(a, b);
    assert_eq!(fixture(17, 53).coords, [e(39797, 36061), e(-4516, 436), e(5324, 2566)]);
}

fn exponent(q: [i64; 3]) -> u32 {
    let t = cubic::admissible3(&pp(q[0]), &pp(q[1]), &pp(q[2])).unwrap();
    let v = cubic::cubic_triple_symbol(&t, &fixture(q[0], q[1])).unwrap();
    assert_eq!(v.cohomological_exponent, (3 - v.value.exponent) % 3);
    assert_eq!(cubic::oracle_split3(&t, &fixture(q[0], q[1])), Ok(v.value.exponent == 0));
    v.value.exponent
}

#[test]
fn rational_triples() {
    let table = [
        ([17, 53, 71], 1),
        ([17, 71, 53], 2),
        ([53, 17, 71], 2),
        ([53, 71, 17], 1),
        ([71, 17, 53], 1),
        ([71, 53, 17], 2),
        ([17, 53, 89], 2),
        ([17, 89, 53], 1),
        ([17, 71, 89], 2),
        ([53, 71, 89], 0),
        ([89, 71, 53], 0),
    ];
    for (q, want) in table {
        assert_eq!(exponent(q), want, "{q:?}");
    }
}

#[test]
fn split_third_prime() {
    let t = cubic::admissible3(&pp(17), &pp(53), &primary_associate(&E::from_i64(-14, -3)).unwrap()).unwrap();
    let v = cubic::cubic_triple_symbol(&t, &fixture(17, 53)).unwrap();
    assert_eq!(v.value.exponent, 2);
    assert!(v.per_prime.iter().all(|e| *e == Some(2)));
}

#[test]
fn rejections() {
    let th = fixture(17, 53);
    let mut bad = th.clone();
    bad.coords[0] = &bad.coords[0] + &E::one();
    assert!(matches!(cubic::check_theta(&bad), Err(CubicError::ThetaRejected(_))));
    // θ for the wrong pair.
    let t = cubic::admissible3(&pp(17), &pp(71), &pp(53)).unwrap();
    assert!(matches!(cubic::cubic_triple_symbol(&t, &th), Err(CubicError::ThetaMismatch(..))));
    let split = primary_associate(&E::from_i64(-14, -3)).unwrap();
    assert!(matches!(cubic::theta_search(&split, &pp(17), 5), Err(CubicError::UnsupportedPrime(_))));
    assert_eq!(cubic::theta_search(&pp(17), &pp(53), 1), Err(CubicError::ThetaNotFound(1)));
    let non_primary = r#"{"pi1":["17","0"],"pi2":["-53","0"],"theta":[["1","0"],["0","0"],["0","0"]]}"#;
    assert!(ThetaElement::from_json(non_primary).is_err());
}
