//! Inhomogeneous cochains of finite groups with trivial Z/n coefficients.
//!
//! Cochains are not normalized: a degree-k cochain has a value on every
//! k-tuple of group elements, including tuples containing the identity.

mod group;
mod heisenberg;
mod massey;
mod snf;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use group::{small_groups, FiniteGroup, MAX_ORDER};
pub use heisenberg::{delta_phi, find_lift, HeisenbergGroup};
pub use massey::{massey, MasseyProduct};
pub use snf::Diagonalized;

/// Largest group whose coboundary equations are solved.
pub const MAX_SOLVER_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CochainError {
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("group of order {0} is too large")]
    TooLarge(usize),
    #[error("cochains live on different groups or moduli")]
    Mismatch,
    #[error("degree {0} is not supported here")]
    Degree(usize),
    #[error("map is not a homomorphism")]
    NotAHomomorphism,
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("χ{0} ∪ χ{1} is not a coboundary")]
    CupNotTrivial(usize, usize),
}

/// A map G^degree → Z/n, values stored row-major by tuple index.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteCochain {
    group: Arc<FiniteGroup>,
    degree: usize,
    modulus: u32,
    values: Vec<u32>,
}

impl fmt::Debug for FiniteCochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C^{}({:?}, Z/{}) {:?}", self.degree, self.group, self.modulus, self.values)
    }
}

impl FiniteCochain {
    pub fn zero(group: &Arc<FiniteGroup>, degree: usize, modulus: u32) -> Self {
        let len = group.order().pow(degree as u32);
        FiniteCochain { group: group.clone(), degree, modulus, values: vec![0; len] }
    }

    pub fn from_fn(group: &Arc<FiniteGroup>, degree: usize, modulus: u32, f: impl Fn(&[usize]) -> i64) -> Self {
        let mut c = Self::zero(group, degree, modulus);
        let mut tuple = vec![0; degree];
        for i in 0..c.values.len() {
            c.unindex(i, &mut tuple);
            c.values[i] = f(&tuple).rem_euclid(modulus as i64) as u32;
        }
        c
    }

    pub fn from_values(group: &Arc<FiniteGroup>, degree: usize, modulus: u32, values: Vec<i64>) -> Self {
        assert_eq!(values.len(), group.order().pow(degree as u32));
        let values = values.iter().map(|v| v.rem_euclid(modulus as i64) as u32).collect();
        FiniteCochain { group: group.clone(), degree, modulus, values }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    fn index(&self, tuple: &[usize]) -> usize {
        tuple.iter().fold(0, |acc, &g| acc * self.group.order() + g)
    }

    fn unindex(&self, mut i: usize, tuple: &mut [usize]) {
        let m = self.group.order();
        for slot in tuple.iter_mut().rev() {
            *slot = i % m;
            i /= m;
        }
    }

    pub fn get(&self, tuple: &[usize]) -> u32 {
        assert_eq!(tuple.len(), self.degree);
        self.values[self.index(tuple)]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    fn compatible(&self, other: &Self) -> Result<(), CochainError> {
        if (Arc::ptr_eq(&self.group, &other.group) || self.group == other.group) && self.modulus == other.modulus {
            return Ok(());
        }
        Err(CochainError::Mismatch)
    }

    fn zip(&self, other: &Self, f: impl Fn(u32, u32) -> u64) -> Result<Self, CochainError> {
        self.compatible(other)?;
        if self.degree != other.degree {
            return Err(CochainError::Mismatch);
        }
        let n = self.modulus as u64;
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| (f(a, b) % n) as u32).collect();
        Ok(FiniteCochain { values, ..self.clone() })
    }

    pub fn add(&self, other: &Self) -> Result<Self, CochainError> {
        self.zip(other, |a, b| a as u64 + b as u64)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, CochainError> {
        let n = self.modulus as u64;
        self.zip(other, |a, b| a as u64 + n - b as u64)
    }

    /// Pointwise product.
    pub fn pointwise(&self, other: &Self) -> Result<Self, CochainError> {
        self.zip(other, |a, b| a as u64 * b as u64)
    }

    pub fn scale(&self, k: i64) -> Self {
        let n = self.modulus as i64;
        let k = k.rem_euclid(n);
        let values = self.values.iter().map(|&v| ((v as i64 * k) % n) as u32).collect();
        FiniteCochain { values, ..self.clone() }
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    /// dx for trivial coefficients, degrees 0 to 2.
    pub fn coboundary(&self) -> Result<Self, CochainError> {
        let g = &self.group;
        let x = |t: &[usize]| self.get(t) as i64;
        let d = match self.degree {
            0 => Self::zero(g, 1, self.modulus),
            1 => Self::from_fn(g, 2, self.modulus, |t| x(&[t[1]]) - x(&[g.mul(t[0], t[1])]) + x(&[t[0]])),
            2 => Self::from_fn(g, 3, self.modulus, |t| {
                let (a, b, c) = (t[0], t[1], t[2]);
                x(&[b, c]) - x(&[g.mul(a, b), c]) + x(&[a, g.mul(b, c)]) - x(&[a, b])
            }),
            k => return Err(CochainError::Degree(k)),
        };
        Ok(d)
    }

    pub fn is_cocycle(&self) -> Result<bool, CochainError> {
        Ok(self.coboundary()?.is_zero())
    }

    /// (f ∪ g)(g1, ..., g_{p+q}) = f(g1, ..., gp)·g(g_{p+1}, ..., g_{p+q}).
    pub fn cup(&self, other: &Self) -> Result<Self, CochainError> {
        self.compatible(other)?;
        let (p, q) = (self.degree, other.degree);
        if p + q > 3 {
            return Err(CochainError::Degree(p + q));
        }
        Ok(Self::from_fn(&self.group, p + q, self.modulus, |t| self.get(&t[..p]) as i64 * other.get(&t[p..]) as i64))
    }

    /// Whether this degree-1 cochain is a homomorphism G → Z/n.
    pub fn is_character(&self) -> bool {
        self.degree == 1 && self.is_cocycle().unwrap_or(false)
    }
}

/// All characters G → Z/n.
pub fn characters(group: &Arc<FiniteGroup>, n: u32) -> Vec<FiniteCochain> {
    let target = FiniteGroup::cyclic(n as usize);
    group
        .homs(&target)
        .into_iter()
        .map(|h| FiniteCochain::from_fn(group, 1, n, |t| h[t[0]] as i64))
        .collect()
}

/// The integer matrix of d: C^degree → C^(degree+1), one row per
/// (degree+1)-tuple.
pub(crate) fn coboundary_matrix(group: &Arc<FiniteGroup>, degree: usize) -> Result<Vec<Vec<i64>>, CochainError> {
    let m = group.order();
    let cols = m.pow(degree as u32);
    let rows = m * cols;
    if rows * cols > 1 << 22 {
        return Err(CochainError::TooLarge(m));
    }
    // Column j is d(e_j) over Z; the modulus is large enough that nothing wraps.
    let big = 1u32 << 20;
    let mut a = vec![vec![0i64; cols]; rows];
    for j in 0..cols {
        let mut e = vec![0i64; cols];
        e[j] = 1;
        let dj = FiniteCochain::from_values(group, degree, big, e).coboundary()?;
        for (i, &v) in dj.values.iter().enumerate() {
            let v = v as i64;
            a[i][j] = if v > (big / 2) as i64 { v - big as i64 } else { v };
        }
    }
    Ok(a)
}

/// Solves dx = c for cochains of degree `degree + 1` on a fixed group.
///
/// The integer coboundary matrix is reduced once and reused for every
/// right-hand side and every modulus.
#[derive(Debug)]
pub struct CoboundarySolver {
    group: Arc<FiniteGroup>,
    degree: usize,
    reduced: Diagonalized,
}

impl CoboundarySolver {
    /// For targets of degree `degree + 1`, `degree` ∈ {1, 2}.
    pub fn new(group: &Arc<FiniteGroup>, degree: usize) -> Result<Self, CochainError> {
        let m = group.order();
        if m > MAX_SOLVER_ORDER {
            return Err(CochainError::TooLarge(m));
        }
        if !(1..=2).contains(&degree) {
            return Err(CochainError::Degree(degree));
        }
        let a = coboundary_matrix(group, degree)?;
        let cols = m.pow(degree as u32);
        Ok(CoboundarySolver { group: group.clone(), degree, reduced: Diagonalized::new(a, cols) })
    }

    /// Some x with dx = c, or None if c is not a coboundary.
    pub fn solve(&self, c: &FiniteCochain) -> Result<Option<FiniteCochain>, CochainError> {
        if c.degree != self.degree + 1 || !(Arc::ptr_eq(&c.group, &self.group) || *c.group == *self.group) {
            return Err(CochainError::Mismatch);
        }
        if c.degree < 3 && !c.is_cocycle()? {
            return Err(CochainError::NotACocycle);
        }
        let n = c.modulus as i64;
        let b: Vec<i64> = c.values.iter().map(|&v| v as i64).collect();
        Ok(self.reduced.solve_mod(&b, n).map(|x| {
            let x = FiniteCochain::from_values(&self.group, self.degree, c.modulus, x);
            debug_assert_eq!(x.coboundary().as_ref(), Ok(c));
            x
        }))
    }
}

/// One-shot `CoboundarySolver` for a degree-2 cocycle.
pub fn is_coboundary(c: &FiniteCochain) -> Result<Option<FiniteCochain>, CochainError> {
    if c.degree != 2 {
        return Err(CochainError::Degree(c.degree));
    }
    CoboundarySolver::new(&c.group, 1)?.solve(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_cochain_and_d_squared() {
        let g = Arc::new(FiniteGroup::dihedral(3));
        let c = FiniteCochain::from_fn(&g, 1, 5, |_| 1);
        assert_eq!(c.coboundary().unwrap(), FiniteCochain::from_fn(&g, 2, 5, |_| 1));
        let x = FiniteCochain::from_fn(&g, 1, 5, |t| (t[0] * t[0] + 3) as i64);
        assert!(x.coboundary().unwrap().coboundary().unwrap().is_zero());
        let y = FiniteCochain::from_fn(&g, 2, 5, |t| (t[0] * 7 + t[1] * t[1]) as i64);
        assert_eq!(y.coboundary().unwrap().coboundary(), Err(CochainError::Degree(3)));
    }

    #[test]
    fn cup_square_on_z2_is_not_a_coboundary() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let chi = FiniteCochain::from_fn(&g, 1, 2, |t| t[0] as i64);
        let c = chi.cup(&chi).unwrap();
        assert_eq!(is_coboundary(&c).unwrap(), None);
        // All four 1-cochains, by hand.
        for v in 0..4i64 {
            let x = FiniteCochain::from_values(&g, 1, 2, vec![v & 1, v >> 1]);
            assert_ne!(x.coboundary().unwrap(), c);
        }
        let zero = FiniteCochain::zero(&g, 2, 2);
        assert!(is_coboundary(&zero).unwrap().unwrap().is_zero());
        assert_eq!(chi.cup(&FiniteCochain::zero(&g, 1, 2)).unwrap(), zero);
    }

    #[test]
    fn coboundaries_are_solved_with_a_witness() {
        let g = Arc::new(FiniteGroup::abelian(&[2, 4]));
        let a = FiniteCochain::from_fn(&g, 1, 4, |t| (t[0] * 5 + 1) as i64);
        let da = a.coboundary().unwrap();
        let x = is_coboundary(&da).unwrap().unwrap();
        assert_eq!(x.coboundary().unwrap(), da);
        let bad = FiniteCochain::from_fn(&g, 2, 4, |t| (t[0] * t[0] * t[1]) as i64);
        assert!(!bad.is_cocycle().unwrap());
        assert_eq!(is_coboundary(&bad), Err(CochainError::NotACocycle));
    }

    #[test]
    fn characters_of_small_groups() {
        let g = Arc::new(FiniteGroup::abelian(&[3, 3]));
        assert_eq!(characters(&g, 3).len(), 9);
        let q = Arc::new(FiniteGroup::quaternion());
        assert_eq!(characters(&q, 2).len(), 4);
        assert!(characters(&q, 2).iter().all(FiniteCochain::is_character));
    }
}
