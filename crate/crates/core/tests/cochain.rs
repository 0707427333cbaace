use std::sync::Arc;

use triplesym::cochain::{characters, is_coboundary, massey, CochainError, CoboundarySolver, FiniteCochain, FiniteGroup, HeisenbergGroup};
use triplesym::verify;

#[test]
fn triple_sign_and_lemmas() {
    for r in [verify::triple_sign(), verify::lemma1(), verify::lemma2()] {
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn carry_cocycle_over_composite_modulus() {
    // H²(Z/4, Z/4) = Z/4, generated by the carry of addition mod 4.
    let g = Arc::new(FiniteGroup::cyclic(4));
    let carry = FiniteCochain::from_fn(&g, 2, 4, |t| (t[0] + t[1] >= 4) as i64);
    assert!(carry.is_cocycle().unwrap());
    for k in 1..4 {
        assert!(is_coboundary(&carry.scale(k)).unwrap().is_none(), "{k}·carry");
    }
    let x = FiniteCochain::from_fn(&g, 1, 4, |t| (t[0] * t[0]) as i64);
    let witness = is_coboundary(&x.coboundary().unwrap()).unwrap().unwrap();
    assert_eq!(witness.coboundary().unwrap(), x.coboundary().unwrap());
}

#[test]
fn solver_limits() {
    let big = Arc::new(FiniteGroup::abelian(&[5, 5, 3]));
    assert_eq!(CoboundarySolver::new(&big, 1).unwrap_err(), CochainError::TooLarge(75));
    assert!(FiniteGroup::from_table("too big", 126, vec![0; 126 * 126]).is_err());
}

#[test]
fn massey_products_on_heisenberg_quotients() {
    // χa ∪ χc vanishes on D_n, so ⟨χa, χc, χa⟩ is defined whenever χc ∪ χa does too.
    for n in [2, 3] {
        let d = HeisenbergGroup::new(n);
        let (a, c) = (d.chi_a(), d.chi_c());
        let m = massey(&a, &c, &a).unwrap();
        assert!(m.representative.is_cocycle().unwrap());
        assert!(m.contains(&m.representative).unwrap());
        let shifted = m.representative.add(&a.cup(&c).unwrap()).unwrap();
        assert!(m.contains(&shifted).unwrap());
        assert_eq!(characters(d.group(), n).len(), (n * n) as usize);
    }
}
