//! Valuations of elements of L = F(∛π1) at the primes above a prime ρ of
//! Z[ζ3], and the unit test at the three primes above λ = 1 - ζ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::pure::Elem;
use crate::eisenstein::{EisensteinInteger as E, ResidueField};
use crate::field::{poly, Fq};
use crate::modarith;

type Pair = (BigInt, BigInt);

/// Z[ζ3]/ρ^m, as Z/ℓ^m for split ρ of norm ℓ, or (Z/ℓ^m)[ζ] for inert ρ = ℓ.
struct LocalRing {
    ell: BigInt,
    m: u32,
    modulus: BigInt,
    /// Image of ζ for split ρ.
    zeta: Option<BigInt>,
}

impl LocalRing {
    fn at(rho: &E, m: u32) -> Self {
        let n = rho.norm();
        if modarith::miller_rabin(n.magnitude()) {
            let modulus = n.pow(m);
            let binv = BigInt::from(modarith::mod_inv(&rho.b, n.magnitude()).unwrap());
            let mut z = (-&rho.a * binv).mod_floor(&n);
            // Newton on z² + z + 1; 2z + 1 is a unit since ℓ ≠ 3.
            for _ in 0..=m.ilog2() + 1 {
                let f = (&z * &z + &z + BigInt::one()).mod_floor(&modulus);
                let d = BigInt::from(modarith::mod_inv(&(&z * BigInt::from(2) + BigInt::one()), modulus.magnitude()).unwrap());
                z = (&z - f * d).mod_floor(&modulus);
            }
            LocalRing { ell: n, m, modulus, zeta: Some(z) }
        } else {
            let ell = n.sqrt();
            let modulus = ell.pow(m);
            LocalRing { ell, m, modulus, zeta: None }
        }
    }

    fn red(&self, x: &BigInt) -> BigInt {
        x.mod_floor(&self.modulus)
    }

    fn embed(&self, x: &E) -> Pair {
        match &self.zeta {
            Some(z) => (self.red(&(&x.a + &x.b * z)), BigInt::zero()),
            None => (self.red(&x.a), self.red(&x.b)),
        }
    }

    fn lift_residue(&self, r: &Fq) -> Pair {
        (BigInt::from(r.c0.clone()), BigInt::from(r.c1.clone()))
    }

    fn add(&self, x: &Pair, y: &Pair) -> Pair {
        (self.red(&(&x.0 + &y.0)), self.red(&(&x.1 + &y.1)))
    }

    fn sub(&self, x: &Pair, y: &Pair) -> Pair {
        (self.red(&(&x.0 - &y.0)), self.red(&(&x.1 - &y.1)))
    }

    fn mul(&self, x: &Pair, y: &Pair) -> Pair {
        if self.zeta.is_some() {
            return (self.red(&(&x.0 * &y.0)), BigInt::zero());
        }
        let bd = &x.1 * &y.1;
        (self.red(&(&x.0 * &y.0 - &bd)), self.red(&(&x.0 * &y.1 + &x.1 * &y.0 - bd)))
    }

    fn inv(&self, x: &Pair) -> Pair {
        if self.zeta.is_some() {
            return (BigInt::from(modarith::mod_inv(&x.0, self.modulus.magnitude()).unwrap()), BigInt::zero());
        }
        let (a, b) = x;
        let n = a * a - a * b + b * b;
        let ninv = BigInt::from(modarith::mod_inv(&n, self.modulus.magnitude()).unwrap());
        self.mul(&(a - b, -b), &(ninv, BigInt::zero()))
    }

    fn val(&self, x: &Pair) -> u32 {
        let v = |c: &BigInt| {
            if c.is_zero() {
                return self.m;
            }
            let mut c = c.clone();
            let mut k = 0;
            while (&c % &self.ell).is_zero() && k < self.m {
                c /= &self.ell;
                k += 1;
            }
            k
        };
        v(&x.0).min(v(&x.1))
    }

    fn eval(&self, theta: &Elem, r: &Pair) -> Pair {
        let r2 = self.mul(r, r);
        let t = self.add(&self.embed(&theta[0]), &self.mul(&self.embed(&theta[1]), r));
        self.add(&t, &self.mul(&self.embed(&theta[2]), &r2))
    }
}

/// v_Q(θ) for every prime Q of L above ρ, where ρ ∤ 3π1.
///
/// If X³ - π1 has three roots mod ρ there are three primes, found by lifting
/// each root to ρ^m; otherwise ρ stays prime in L and v = min of the
/// coordinate valuations.
pub fn valuations_above(theta: &Elem, pi1: &E, rho: &E, norm_valuation: u32) -> Vec<u32> {
    let k = ResidueField::of_prime(rho);
    let cube = vec![k.field.neg(&k.reduce(pi1)), k.field.zero(), k.field.zero(), k.field.one()];
    let roots = poly::roots(&k.field, &cube);
    if roots.is_empty() {
        let v = theta.iter().filter(|c| !c.is_zero()).map(|c| c.valuation(rho)).min();
        return vec![v.expect("θ ≠ 0")];
    }
    let m = norm_valuation + 2;
    let ring = LocalRing::at(rho, m);
    let target = ring.embed(pi1);
    let three = (BigInt::from(3), BigInt::zero());
    roots
        .iter()
        .map(|r| {
            let mut x = ring.lift_residue(r);
            for _ in 0..=m.ilog2() + 1 {
                let f = ring.sub(&ring.mul(&ring.mul(&x, &x), &x), &target);
                let d = ring.inv(&ring.mul(&three, &ring.mul(&x, &x)));
                x = ring.sub(&x, &ring.mul(&f, &d));
            }
            ring.val(&ring.eval(theta, &x))
        })
        .collect()
}

/// A cube root of the rational integer p ≡ 1 (mod 9) modulo 3^k.
fn cube_root_3adic(p: &BigInt, k: u32) -> BigInt {
    let mut t = BigInt::one();
    let mut pow = BigInt::from(3);
    for j in 1..k {
        let next_mod = BigInt::from(3).pow(j + 2);
        let digit = (0..3)
            .map(|d| &t + &pow * BigInt::from(d))
            .find(|c: &BigInt| (c * c * c - p).mod_floor(&next_mod).is_zero())
            .expect("p ≡ 1 mod 9 has a 3-adic cube root");
        t = digit;
        pow *= 3;
    }
    t
}

/// (v, unit ≡ ±1 mod λ³) for θ at each of the three primes of L above λ.
/// Requires π1 a rational integer ≡ 1 (mod 9), so that λ splits in L.
/// None if `k` digits of precision do not suffice.
fn lambda_data_at(theta: &Elem, pi1: &BigInt, k: u32) -> Option<Vec<(u32, bool)>> {
    let t0 = cube_root_3adic(pi1, k + 1);
    let modulus = BigInt::from(3).pow(k);
    let mut out = Vec::new();
    let mut r = E::from_int(t0);
    for _ in 0..3 {
        let r2 = &r * &r;
        let w = &(&theta[0] + &(&theta[1] * &r)) + &(&theta[2] * &r2);
        let mut w = E::new(w.a.mod_floor(&modulus), w.b.mod_floor(&modulus));
        let mut precision = 2 * k as i64;
        let mut v = 0u32;
        while divisible_by_lambda(&w) {
            if precision <= 4 {
                return None;
            }
            w = div_lambda(&w);
            precision -= 1;
            v += 1;
        }
        if precision <= 4 {
            return None;
        }
        let ok = [1, -1].iter().any(|s| {
            let mut d = &w - &E::from_i64(*s, 0);
            (0..3).all(|_| {
                let yes = divisible_by_lambda(&d);
                if yes {
                    d = div_lambda(&d);
                }
                yes
            })
        });
        out.push((v, ok));
        r = &r * &E::zeta();
    }
    Some(out)
}

pub fn lambda_data(theta: &Elem, pi1: &BigInt, norm_valuation: u32) -> Vec<(u32, bool)> {
    let mut k = norm_valuation / 2 + 6;
    loop {
        if let Some(d) = lambda_data_at(theta, pi1, k) {
            return d;
        }
        k *= 2;
    }
}

fn divisible_by_lambda(x: &E) -> bool {
    (&x.a + &x.b).mod_floor(&BigInt::from(3)).is_zero()
}

// (x + yζ)/(1 - ζ) = ((2x - y) + (x + y)ζ)/3
fn div_lambda(x: &E) -> E {
    E::new((&x.a * 2 - &x.b) / 3, (&x.a + &x.b) / 3)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_adic_cube_root() {
        let p = BigInt::from(-17);
        let t = cube_root_3adic(&p, 12);
        let m = BigInt::from(3).pow(12);
        assert!((&t * &t * &t - p).mod_floor(&m).is_zero());
    }

    #[test]
    fn valuations_sum_to_the_norm_valuation() {
        // Σ f_Q·v_Q(θ) = v_ρ(N θ), with f_Q = 1 at split ρ and 3 at inert ρ.
        let pi1 = E::from_i64(-17, 0);
        let l = super::super::pure::PureCubic::new(pi1.clone());
        let thetas: [Elem; 3] = [
            [E::from_i64(-5, 0), E::one(), E::zero()],
            [E::from_i64(2, 1), E::from_i64(-1, 3), E::from_i64(4, 0)],
            [E::from_i64(49, 0), E::from_i64(7, 0), E::zero()],
        ];
        let mut split = 0;
        for th in &thetas {
            let n = l.norm(th);
            for (rho, e) in crate::eisenstein::factor(&n).unwrap().1 {
                if rho.is_associate(&E::lambda()) || rho.is_associate(&pi1) {
                    continue;
                }
                let vs = valuations_above(th, &pi1, &rho, e);
                let f = if vs.len() == 3 { 1 } else { 3 };
                split += (vs.len() == 3) as usize;
                assert_eq!(vs.iter().sum::<u32>() * f, e, "{rho}");
            }
        }
        assert!(split > 0);
    }

    #[test]
    fn units_above_lambda() {
        let data = lambda_data(&[E::from_i64(-1, 0), E::zero(), E::zero()], &BigInt::from(-17), 0);
        assert_eq!(data, vec![(0, true); 3]);
        let data = lambda_data(&[E::from_i64(2, 0), E::zero(), E::zero()], &BigInt::from(-17), 0);
        assert!(data.iter().all(|(v, ok)| *v == 0 && !ok));
        // 9 = ζ·λ⁴ and 27 = -λ⁶.
        let data = lambda_data(&[E::from_i64(9, 0), E::zero(), E::zero()], &BigInt::from(-17), 12);
        assert!(data.iter().all(|(v, ok)| *v == 4 && !ok));
        let data = lambda_data(&[E::from_i64(27, 0), E::zero(), E::zero()], &BigInt::from(-17), 18);
        assert!(data.iter().all(|(v, ok)| *v == 6 && *ok));
    }
}
