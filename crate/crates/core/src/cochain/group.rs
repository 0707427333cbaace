//! Finite groups given by multiplication tables.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use super::CochainError;

/// Largest group accepted by the table constructors.
pub const MAX_ORDER: usize = 125;

/// A group on {0, ..., order-1} with an explicit multiplication table.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order)
    }
}

impl FiniteGroup {
    /// Validates the group axioms on a row-major table.
    pub fn from_table(name: &str, order: usize, table: Vec<usize>) -> Result<Self, CochainError> {
        let bad = |why: &str| CochainError::NotAGroup(format!("{name}: {why}"));
        if order == 0 || order > MAX_ORDER {
            return Err(CochainError::TooLarge(order));
        }
        if table.len() != order * order || table.iter().any(|&x| x >= order) {
            return Err(bad("table has the wrong shape"));
        }
        let mul = |x: usize, y: usize| table[x * order + y];
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| mul(e, x) == x && mul(x, e) == x))
            .ok_or_else(|| bad("no identity"))?;
        let mut inverse = Vec::with_capacity(order);
        for x in 0..order {
            let y = (0..order).find(|&y| mul(x, y) == identity && mul(y, x) == identity);
            inverse.push(y.ok_or_else(|| bad("missing inverse"))?);
        }
        for x in 0..order {
            for y in 0..order {
                let xy = mul(x, y);
                for z in 0..order {
                    if mul(xy, z) != mul(x, mul(y, z)) {
                        return Err(bad("not associative"));
                    }
                }
            }
        }
        Ok(FiniteGroup { name: name.to_string(), order, table, identity, inverse })
    }

    /// The group on `elements` with the law `mul`, which must be closed.
    pub fn from_law<T: Ord + Clone>(name: &str, elements: &[T], mul: impl Fn(&T, &T) -> T) -> Result<Self, CochainError> {
        let index: BTreeMap<&T, usize> = elements.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let mut table = Vec::with_capacity(elements.len() * elements.len());
        for x in elements {
            for y in elements {
                let i = index.get(&mul(x, y)).ok_or_else(|| CochainError::NotAGroup(format!("{name}: not closed")))?;
                table.push(*i);
            }
        }
        Self::from_table(name, elements.len(), table)
    }

    /// The subgroup of Sym(k) generated by `gens`, given in image notation.
    pub fn from_permutations(name: &str, gens: &[Vec<usize>]) -> Result<Self, CochainError> {
        let k = gens.first().map_or(0, Vec::len);
        let id: Vec<usize> = (0..k).collect();
        let compose = |p: &Vec<usize>, q: &Vec<usize>| q.iter().map(|&i| p[i]).collect::<Vec<_>>();
        let mut seen = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(p) = queue.pop_front() {
            for g in gens {
                let r = compose(&p, g);
                if !seen.contains(&r) {
                    if seen.len() == MAX_ORDER {
                        return Err(CochainError::TooLarge(MAX_ORDER + 1));
                    }
                    seen.push(r.clone());
                    queue.push_back(r);
                }
            }
        }
        seen.sort();
        Self::from_law(name, &seen, compose)
    }

    pub fn cyclic(n: usize) -> Self {
        let els: Vec<usize> = (0..n).collect();
        Self::from_law(&format!("Z/{n}"), &els, |x, y| (x + y) % n).expect("Z/n is a group")
    }

    /// Z/n1 × ... × Z/nk.
    pub fn abelian(ns: &[usize]) -> Self {
        let mut els: Vec<Vec<usize>> = vec![vec![]];
        for &n in ns {
            els = els.into_iter().flat_map(|v| (0..n).map(move |x| [v.clone(), vec![x]].concat())).collect();
        }
        let name = ns.iter().map(|n| format!("Z/{n}")).collect::<Vec<_>>().join(" x ");
        Self::from_law(&name, &els, |x, y| x.iter().zip(y).zip(ns).map(|((a, b), n)| (a + b) % n).collect())
            .expect("products of cyclic groups are groups")
    }

    /// The dihedral group of order 2m, as pairs (r, s) meaning ρ^r σ^s.
    pub fn dihedral(m: usize) -> Self {
        let els: Vec<(usize, usize)> = (0..m).flat_map(|r| (0..2).map(move |s| (r, s))).collect();
        Self::from_law(&format!("dihedral of order {}", 2 * m), &els, |&(r1, s1), &(r2, s2)| {
            let r2 = if s1 == 1 { (m - r2) % m } else { r2 };
            ((r1 + r2) % m, (s1 + s2) % 2)
        })
        .expect("dihedral groups are groups")
    }

    /// The quaternion group {±1, ±i, ±j, ±k}.
    pub fn quaternion() -> Self {
        // (sign, unit) with unit 0..4 = 1, i, j, k.
        let els: Vec<(u8, u8)> = (0..2).flat_map(|s| (0..4).map(move |u| (s, u))).collect();
        let unit = |a: u8, b: u8| -> (u8, u8) {
            match (a, b) {
                (0, x) | (x, 0) => (0, x),
                (x, y) if x == y => (1, 0),
                (1, 2) => (0, 3),
                (2, 3) => (0, 1),
                (3, 1) => (0, 2),
                (2, 1) => (1, 3),
                (3, 2) => (1, 1),
                _ => (1, 2),
            }
        };
        Self::from_law("quaternion", &els, |&(s1, a), &(s2, b)| {
            let (s, u) = unit(a, b);
            ((s1 + s2 + s) % 2, u)
        })
        .expect("Q8 is a group")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order + y]
    }

    pub fn inv(&self, x: usize) -> usize {
        self.inverse[x]
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut y = x;
        let mut k = 1;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|x| (0..self.order).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// The subgroup generated by `gens`, as a membership mask.
    fn span(&self, gens: &[usize]) -> Vec<bool> {
        let mut mask = vec![false; self.order];
        mask[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !mask[y] {
                    mask[y] = true;
                    queue.push_back(y);
                }
            }
        }
        mask
    }

    /// A generating set, chosen greedily by element index.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut mask = self.span(&gens);
        while let Some(x) = (0..self.order).find(|&x| !mask[x]) {
            gens.push(x);
            mask = self.span(&gens);
        }
        gens
    }

    /// Extends an assignment on generators to a homomorphism into `target`,
    /// if it extends.
    pub fn extend_hom(&self, gens: &[usize], images: &[usize], target: &FiniteGroup) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; self.order];
        map[self.identity] = target.identity;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for (g, img) in gens.iter().zip(images) {
                let y = self.mul(x, *g);
                let fy = target.mul(map[x], *img);
                if map[y] == usize::MAX {
                    map[y] = fy;
                    queue.push_back(y);
                } else if map[y] != fy {
                    return None;
                }
            }
        }
        self.is_hom(&map, target).then_some(map)
    }

    pub fn is_hom(&self, map: &[usize], target: &FiniteGroup) -> bool {
        map.len() == self.order
            && (0..self.order).all(|x| (0..self.order).all(|y| map[self.mul(x, y)] == target.mul(map[x], map[y])))
    }

    /// All homomorphisms into `target`.
    pub fn homs(&self, target: &FiniteGroup) -> Vec<Vec<usize>> {
        let gens = self.generators();
        let mut out = Vec::new();
        let mut images = vec![0; gens.len()];
        loop {
            if let Some(h) = self.extend_hom(&gens, &images, target) {
                out.push(h);
            }
            let mut i = 0;
            loop {
                if i == images.len() {
                    return out;
                }
                images[i] += 1;
                if images[i] < target.order {
                    break;
                }
                images[i] = 0;
                i += 1;
            }
        }
    }

    /// An isomorphism onto `other`, found by trying generator images of
    /// matching element orders.
    pub fn find_isomorphism(&self, other: &FiniteGroup) -> Option<Vec<usize>> {
        if self.order != other.order {
            return None;
        }
        let gens = self.generators();
        let candidates: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| (0..other.order).filter(|&y| other.element_order(y) == self.element_order(g)).collect())
            .collect();
        let mut pick = vec![0; gens.len()];
        if candidates.iter().any(Vec::is_empty) {
            return None;
        }
        loop {
            let images: Vec<usize> = pick.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
            if let Some(h) = self.extend_hom(&gens, &images, other) {
                let mut hit = vec![false; other.order];
                h.iter().for_each(|&y| hit[y] = true);
                if hit.iter().all(|&b| b) {
                    return Some(h);
                }
            }
            let mut i = 0;
            loop {
                if i == pick.len() {
                    return None;
                }
                pick[i] += 1;
                if pick[i] < candidates[i].len() {
                    break;
                }
                pick[i] = 0;
                i += 1;
            }
        }
    }
}

/// A fixed list of groups of order ≤ 27, abelian and not.
pub fn small_groups() -> Vec<FiniteGroup> {
    let mut out: Vec<FiniteGroup> = (1..=27).map(FiniteGroup::cyclic).collect();
    for ns in [&[2, 2][..], &[2, 2, 2], &[2, 2, 2, 2], &[2, 4], &[4, 4], &[2, 2, 4], &[3, 3], &[3, 3, 3], &[3, 9], &[2, 6], &[2, 10], &[2, 2, 6], &[2, 12], &[5, 5], &[2, 2, 3]] {
        out.push(FiniteGroup::abelian(ns));
    }
    out.extend((3..=13).map(FiniteGroup::dihedral));
    out.push(FiniteGroup::quaternion());
    let perms = |name: &str, gens: &[&[usize]]| {
        FiniteGroup::from_permutations(name, &gens.iter().map(|g| g.to_vec()).collect::<Vec<_>>()).unwrap()
    };
    out.push(perms("A4", &[&[1, 2, 0, 3], &[0, 2, 3, 1]]));
    out.push(perms("S4", &[&[1, 0, 2, 3], &[1, 2, 3, 0]]));
    out.push(perms("S3 x Z/3", &[&[1, 0, 2, 3, 4, 5], &[1, 2, 0, 3, 4, 5], &[0, 1, 2, 4, 5, 3]]));
    out.push(super::heisenberg::HeisenbergGroup::new(2).group().as_ref().clone());
    out.push(super::heisenberg::HeisenbergGroup::new(3).group().as_ref().clone());
    out
}
