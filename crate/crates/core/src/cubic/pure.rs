//! Arithmetic in L = F(u), u³ = π1, with elements a + b·u + c·u², a, b, c ∈ Z[ζ3].

use crate::eisenstein::EisensteinInteger as E;
use crate::field::{Fq, GaloisField};

pub type Elem = [E; 3];

#[derive(Debug, Clone)]
pub struct PureCubic {
    pub pi: E,
}

impl PureCubic {
    pub fn new(pi: E) -> Self {
        PureCubic { pi }
    }

    pub fn one() -> Elem {
        [E::one(), E::zero(), E::zero()]
    }

    pub fn from_base(x: E) -> Elem {
        [x, E::zero(), E::zero()]
    }

    pub fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        let p = &self.pi;
        let [a0, a1, a2] = x;
        let [b0, b1, b2] = y;
        let c0 = &(a0 * b0) + &(p * &(&(a1 * b2) + &(a2 * b1)));
        let c1 = &(&(a0 * b1) + &(a1 * b0)) + &(p * &(a2 * b2));
        let c2 = &(&(a0 * b2) + &(a1 * b1)) + &(a2 * b0);
        [c0, c1, c2]
    }

    pub fn scale(x: &Elem, f: &E) -> Elem {
        [&x[0] * f, &x[1] * f, &x[2] * f]
    }

    /// The generator σ of Gal(L/F): u ↦ ζu.
    pub fn sigma(x: &Elem) -> Elem {
        let z = E::zeta();
        let z2 = &z * &z;
        [x[0].clone(), &x[1] * &z, &x[2] * &z2]
    }

    /// N_{L/F}(a + bu + cu²) = a³ + π·b³ + π²·c³ - 3π·abc.
    pub fn norm(&self, x: &Elem) -> E {
        let p = &self.pi;
        let [a, b, c] = x;
        let three_abc = (&(a * b) * c).scale(&3.into());
        &(&(&a.pow(3) + &(p * &b.pow(3))) + &(&(p * p) * &c.pow(3))) - &(p * &three_abc)
    }

    /// The second elementary symmetric function of x, σx, σ²x.
    pub fn e2(&self, x: &Elem) -> E {
        let s1 = Self::sigma(x);
        let s2 = Self::sigma(&s1);
        let sum = add(&add(&self.mul(x, &s1), &self.mul(x, &s2)), &self.mul(&s1, &s2));
        debug_assert!(sum[1].is_zero() && sum[2].is_zero());
        sum[0].clone()
    }

    /// x evaluated at u = r in a residue field.
    pub fn eval(k: &GaloisField, x: &Elem, reduce: impl Fn(&E) -> Fq, r: &Fq) -> Fq {
        let r2 = k.mul(r, r);
        let t = k.add(&reduce(&x[0]), &k.mul(&reduce(&x[1]), r));
        k.add(&t, &k.mul(&reduce(&x[2]), &r2))
    }
}

pub fn add(x: &Elem, y: &Elem) -> Elem {
    [&x[0] + &y[0], &x[1] + &y[1], &x[2] + &y[2]]
}
