//! Triple Massey products ⟨χ1, χ2, χ3⟩ of characters.

use std::sync::Arc;

use super::{characters, coboundary_matrix, CoboundarySolver, CochainError, Diagonalized, FiniteCochain};

/// c12 ∪ χ3 + χ1 ∪ c23 with dc12 = χ1 ∪ χ2 and dc23 = χ2 ∪ χ3.
///
/// Other choices of c12, c23 change it by χ1 ∪ h + h' ∪ χ3 for characters
/// h, h'; `indeterminacy` spans these over a basis of characters.
#[derive(Debug, Clone)]
pub struct MasseyProduct {
    pub representative: FiniteCochain,
    pub c12: FiniteCochain,
    pub c23: FiniteCochain,
    pub indeterminacy: Vec<FiniteCochain>,
}

/// A subset of `chars` generating the same subgroup of C¹.
fn character_basis(chars: &[FiniteCochain]) -> Vec<FiniteCochain> {
    let mut basis: Vec<FiniteCochain> = Vec::new();
    let mut span: Vec<FiniteCochain> = chars.iter().filter(|c| c.is_zero()).cloned().collect();
    for c in chars {
        if span.contains(c) {
            continue;
        }
        basis.push(c.clone());
        // Close the span under adding multiples of c.
        let mut next = span.clone();
        for s in &span {
            let mut t = s.clone();
            for _ in 1..c.modulus() {
                t = t.add(c).expect("same group");
                if !next.contains(&t) {
                    next.push(t.clone());
                }
            }
        }
        span = next;
    }
    basis
}

pub fn massey(x1: &FiniteCochain, x2: &FiniteCochain, x3: &FiniteCochain) -> Result<MasseyProduct, CochainError> {
    if ![x1, x2, x3].iter().all(|x| x.is_character()) {
        return Err(CochainError::NotACocycle);
    }
    let g = x1.group().clone();
    let solver = CoboundarySolver::new(&g, 1)?;
    let c12 = solver.solve(&x1.cup(x2)?)?.ok_or(CochainError::CupNotTrivial(1, 2))?;
    let c23 = solver.solve(&x2.cup(x3)?)?.ok_or(CochainError::CupNotTrivial(2, 3))?;
    let representative = c12.cup(x3)?.add(&x1.cup(&c23)?)?;
    debug_assert!(representative.is_cocycle()?);
    let mut indeterminacy = Vec::new();
    for h in character_basis(&characters(&g, x1.modulus())) {
        indeterminacy.push(x1.cup(&h)?);
        indeterminacy.push(h.cup(x3)?);
    }
    Ok(MasseyProduct { representative, c12, c23, indeterminacy })
}

impl MasseyProduct {
    /// Whether `c` lies in representative + span(indeterminacy) + coboundaries.
    pub fn contains(&self, c: &FiniteCochain) -> Result<bool, CochainError> {
        let diff = c.sub(&self.representative)?;
        let g: &Arc<_> = diff.group();
        let mut a = coboundary_matrix(g, 1)?;
        let cols = g.order() + self.indeterminacy.len();
        for (i, row) in a.iter_mut().enumerate() {
            row.extend(self.indeterminacy.iter().map(|h| h.values()[i] as i64));
        }
        let b: Vec<i64> = diff.values().iter().map(|&v| v as i64).collect();
        Ok(Diagonalized::new(a, cols).solve_mod(&b, diff.modulus() as i64).is_some())
    }
}

#[cfg(test)]
mod tests {
    use super::super::{FiniteGroup, HeisenbergGroup};
    use super::*;

    #[test]
    fn z2_square_is_obstructed() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let chi = FiniteCochain::from_fn(&g, 1, 2, |t| t[0] as i64);
        assert_eq!(massey(&chi, &chi, &chi).unwrap_err(), CochainError::CupNotTrivial(1, 2));
    }

    #[test]
    fn heisenberg_product_is_defined() {
        let d = HeisenbergGroup::new(2);
        let (a, c) = (d.chi_a(), d.chi_c());
        let m = massey(&a, &c, &a).unwrap();
        assert!(m.representative.is_cocycle().unwrap());
        // -b is another valid c12; the class does not move.
        let minus_b = d.b().neg();
        assert_eq!(minus_b.coboundary().unwrap(), a.cup(&c).unwrap());
        let other = minus_b.cup(&a).unwrap().add(&a.cup(&m.c23).unwrap()).unwrap();
        assert!(m.contains(&other).unwrap());
    }

    #[test]
    fn trivial_characters_give_zero() {
        let g = Arc::new(FiniteGroup::abelian(&[3, 3]));
        let z = FiniteCochain::zero(&g, 1, 3);
        let m = massey(&z, &z, &z).unwrap();
        assert!(m.representative.is_zero());
        assert!(m.contains(&FiniteCochain::zero(&g, 2, 3)).unwrap());
    }
}
