//! The Heisenberg group D_n of upper unitriangular 3×3 matrices over Z/n,
//! written as triples (a, b, c) with
//! (a1, b1, c1)·(a2, b2, c2) = (a1 + a2, b1 + b2 + a1·c2, c1 + c2).
//!
//! The center Z is {a = c = 0} and D/Z ≅ (Z/n)² via (a, c).

use std::sync::Arc;

use super::{CochainError, FiniteCochain, FiniteGroup};

#[derive(Debug, Clone)]
pub struct HeisenbergGroup {
    n: u32,
    group: Arc<FiniteGroup>,
    elements: Vec<[u32; 3]>,
}

impl HeisenbergGroup {
    pub fn new(n: u32) -> Self {
        assert!(n >= 2, "D_n needs n ≥ 2");
        let r = 0..n;
        let elements: Vec<[u32; 3]> =
            r.clone().flat_map(|a| r.clone().flat_map(move |b| (0..n).map(move |c| [a, b, c]))).collect();
        let group = FiniteGroup::from_law(&format!("D_{n}"), &elements, |x, y| {
            [(x[0] + y[0]) % n, (x[1] + y[1] + x[0] * y[2]) % n, (x[2] + y[2]) % n]
        })
        .expect("the Heisenberg law is a group law");
        HeisenbergGroup { n, group: Arc::new(group), elements }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn element(&self, i: usize) -> [u32; 3] {
        self.elements[i]
    }

    pub fn index(&self, a: u32, b: u32, c: u32) -> usize {
        let n = self.n as usize;
        ((a as usize % n) * n + b as usize % n) * n + c as usize % n
    }

    fn coordinate(&self, k: usize) -> FiniteCochain {
        FiniteCochain::from_fn(&self.group, 1, self.n, |t| self.elements[t[0]][k] as i64)
    }

    /// χ_a: D_n → Z/n.
    pub fn chi_a(&self) -> FiniteCochain {
        self.coordinate(0)
    }

    /// The b coordinate, a 1-cochain but not a character.
    pub fn b(&self) -> FiniteCochain {
        self.coordinate(1)
    }

    /// χ_c: D_n → Z/n.
    pub fn chi_c(&self) -> FiniteCochain {
        self.coordinate(2)
    }
}

fn check_hom(g: &FiniteGroup, phi: &[(u32, u32)], n: u32) -> Result<(), CochainError> {
    let ok = phi.len() == g.order()
        && (0..g.order()).all(|x| {
            (0..g.order()).all(|y| {
                let (a1, c1) = phi[x];
                let (a2, c2) = phi[y];
                phi[g.mul(x, y)] == ((a1 + a2) % n, (c1 + c2) % n)
            })
        });
    if ok {
        Ok(())
    } else {
        Err(CochainError::NotAHomomorphism)
    }
}

/// The lifting obstruction of φ: G → D/Z = (Z/n)² for the section
/// (a, c) ↦ (a, s(a, c), c): the 2-cocycle
/// (g1, g2) ↦ φ̃(g1)·φ̃(g2)·φ̃(g1g2)⁻¹ ∈ Z ≅ Z/n.
pub fn delta_phi(
    g: &Arc<FiniteGroup>,
    d: &HeisenbergGroup,
    phi: &[(u32, u32)],
    section: impl Fn(u32, u32) -> u32,
) -> Result<FiniteCochain, CochainError> {
    let n = d.n;
    check_hom(g, phi, n)?;
    let lift = |x: usize| {
        let (a, c) = phi[x];
        d.index(a, section(a, c), c)
    };
    let h = &d.group;
    Ok(FiniteCochain::from_fn(g, 2, n, |t| {
        let z = h.mul(h.mul(lift(t[0]), lift(t[1])), h.inv(lift(g.mul(t[0], t[1]))));
        let [a, b, c] = d.elements[z];
        debug_assert!(a == 0 && c == 0);
        b as i64
    }))
}

/// A homomorphism G → D_n over φ, found by trying every b-coordinate on a
/// generating set.
pub fn find_lift(g: &FiniteGroup, d: &HeisenbergGroup, phi: &[(u32, u32)]) -> Result<Option<Vec<usize>>, CochainError> {
    let n = d.n;
    check_hom(g, phi, n)?;
    let gens = g.generators();
    let mut bs = vec![0u32; gens.len()];
    loop {
        let images: Vec<usize> = gens.iter().zip(&bs).map(|(&x, &b)| d.index(phi[x].0, b, phi[x].1)).collect();
        if let Some(h) = g.extend_hom(&gens, &images, &d.group) {
            let over = h.iter().enumerate().all(|(x, &y)| {
                let [a, _, c] = d.elements[y];
                (a, c) == phi[x]
            });
            if over {
                return Ok(Some(h));
            }
        }
        let mut i = 0;
        loop {
            if i == bs.len() {
                return Ok(None);
            }
            bs[i] += 1;
            if bs[i] < n {
                break;
            }
            bs[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_and_exponent() {
        for n in 2..=5 {
            assert_eq!(HeisenbergGroup::new(n).group().order(), (n * n * n) as usize);
        }
        let d3 = HeisenbergGroup::new(3);
        let g = d3.group();
        assert!((0..27).filter(|&x| x != g.identity()).all(|x| g.element_order(x) == 3));
        assert!(!g.is_abelian());
    }

    #[test]
    fn d2_is_dihedral_of_order_8() {
        let d2 = HeisenbergGroup::new(2);
        let iso = d2.group().find_isomorphism(&FiniteGroup::dihedral(4)).unwrap();
        assert!(d2.group().is_hom(&iso, &FiniteGroup::dihedral(4)));
    }

    #[test]
    fn b_trivializes_the_cup_product() {
        for n in 2..=4 {
            let d = HeisenbergGroup::new(n);
            let (a, c) = (d.chi_a(), d.chi_c());
            assert!(a.is_character() && c.is_character() && !d.b().is_character());
            // d(b) = -χa ∪ χc.
            let db = d.b().coboundary().unwrap();
            assert_eq!(db, a.cup(&c).unwrap().neg());
            assert!(a.cup(&c).unwrap().add(&db).unwrap().is_zero());
        }
    }

    #[test]
    fn trivial_phi_and_non_homomorphisms() {
        let g = Arc::new(FiniteGroup::cyclic(3));
        let d = HeisenbergGroup::new(3);
        let trivial = vec![(0, 0); 3];
        assert!(delta_phi(&g, &d, &trivial, |_, _| 0).unwrap().is_zero());
        let bad = vec![(0, 0), (1, 0), (1, 0)];
        assert_eq!(delta_phi(&g, &d, &bad, |_, _| 0), Err(CochainError::NotAHomomorphism));
        assert!(find_lift(&g, &d, &trivial).unwrap().is_some());
    }
}
