use std::process::ExitCode;
use std::time::Instant;

use triplesym::modarith::OddPrime;
use triplesym::redei;
use triplesym::verify::{self, SuiteReport};

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// [5, 29, 109] against a residue evaluation and a root count done with
/// machine integers.
fn fixture_5_29_109() -> SuiteReport {
    let start = Instant::now();
    let mut failures = Vec::new();
    let euler = pow_mod(7 + 2 * 21, 54, 109);
    if euler != 1 {
        failures.push(format!("49^54 mod 109 = {euler}"));
    }
    let roots = (0..109u64).filter(|t| (t.pow(4) + 109 * 109 - 14 * t * t % 109 + 29) % 109 == 0).count();
    if roots != 4 {
        failures.push(format!("T^4 - 14T^2 + 29 has {roots} roots mod 109"));
    }
    let p = |n| OddPrime::from_u64(n).unwrap();
    let value = redei::admissible2(&p(5), &p(29), &p(109)).and_then(|t| redei::redei_symbol(&t)).map(|e| e.value.exponent);
    if value != Ok(0) {
        failures.push(format!("redei_symbol gives {value:?}"));
    }
    SuiteReport { name: "fixture [5, 29, 109]".into(), checks: 3, failures, elapsed: start.elapsed() }
}

fn main() -> ExitCode {
    let runs: Vec<fn() -> SuiteReport> = vec![
        || verify::redei_reciprocity(300),
        || verify::redei_oracle(300),
        fixture_5_29_109,
        || verify::redei_well_defined(300),
        verify::lemma2,
        verify::lemma1,
        verify::alternating,
        verify::heisenberg,
        verify::eisenstein_fixtures,
        || verify::cubic_suite(50),
    ];
    let mut ok = true;
    for run in runs {
        let r = run();
        println!("{r}");
        ok &= r.passed();
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
