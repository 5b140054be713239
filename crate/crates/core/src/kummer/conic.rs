use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Roots;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::surface::{delta_poly, KummerError};
use crate::elliptic::weierstrass::Weierstrass;
use crate::numcore::factor::{factor_big, mulmod, powmod};
use crate::numcore::ring::{rat, Rat};

/// z² + 3w² = q with q = 12U³(U³ − T), the t = 0 fiber of y² + 3Uxy + Ty = x³.
#[derive(Clone, Debug, PartialEq)]
pub enum ConicResult {
    Solvable { q: Rat, point: (Rat, Rat), param: ConicParam },
    Unsolvable { q: Rat, reason: String },
}

impl ConicResult {
    pub fn is_solvable(&self) -> bool {
        matches!(self, ConicResult::Solvable { .. })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConicParam {
    pub u_coef: Rat,
    pub t_coef: Rat,
    pub z0: Rat,
    pub w0: Rat,
}

impl ConicParam {
    /// Second intersection of the line of slope m through (z0, w0).
    pub fn point(&self, m: &Rat) -> (Rat, Rat) {
        let lambda = -(rat(2) * &self.z0 + rat(6) * &self.w0 * m) / (rat(1) + rat(3) * m * m);
        (&self.z0 + &lambda, &self.w0 + m * &lambda)
    }

    /// (u, δ) on the t = 0 fiber: u = w + 2U³ − T, δ = 3uz.
    pub fn fiber_point(&self, m: &Rat) -> (Rat, Rat) {
        let (z, w) = self.point(m);
        let u3 = &self.u_coef * &self.u_coef * &self.u_coef;
        let u = w + rat(2) * u3 - &self.t_coef;
        let delta = rat(3) * &u * z;
        (u, delta)
    }
}

pub fn conic_rhs(u: &Rat, t: &Rat) -> Rat {
    let u3 = u * u * u;
    rat(12) * &u3 * (&u3 - t)
}

fn add_valuations(into: &mut BTreeMap<BigUint, i64>, x: &BigInt, sign: i64) {
    for (p, e) in factor_big(x.magnitude()) {
        *into.entry(p).or_insert(0) += sign * e as i64;
    }
}

/// v_p(q) for every prime, from separate factorizations of U and U³ − T.
fn valuations(u: &Rat, t: &Rat) -> BTreeMap<BigUint, i64> {
    let mut v = BTreeMap::new();
    add_valuations(&mut v, &BigInt::from(12), 1);
    add_valuations(&mut v, u.numer(), 3);
    add_valuations(&mut v, u.denom(), -3);
    let w = u * u * u - t;
    add_valuations(&mut v, w.numer(), 1);
    add_valuations(&mut v, w.denom(), -1);
    v.retain(|_, e| *e != 0);
    v
}

fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if powmod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    // Tonelli–Shanks
    let (mut q, mut s) = (p - 1, 0);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while powmod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let (mut m, mut c, mut t, mut r) = (s, powmod(z, q, p), powmod(a, q, p), powmod(a, (q + 1) / 2, p));
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mulmod(tt, tt, p);
            i += 1;
        }
        let b = powmod(c, 1 << (m - i - 1), p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    Some(r)
}

/// a² + 3b² = p for a prime p ≡ 1 (mod 3), by Cornacchia.
pub fn two_squares_3(p: u64) -> Option<(u64, u64)> {
    if p == 3 {
        return Some((0, 1));
    }
    let mut r0 = sqrt_mod(p - 3, p)?;
    if r0 < p / 2 {
        r0 = p - r0;
    }
    let (mut a, mut b) = (p, r0);
    let limit = p.sqrt();
    while b > limit {
        let r = a % b;
        a = b;
        b = r;
    }
    let rest = p - b * b;
    if rest % 3 != 0 {
        return None;
    }
    let s = (rest / 3).sqrt();
    if s * s == rest / 3 {
        return Some((b, s));
    }
    (1..).take_while(|&y| 3 * y * y < p).find_map(|y| {
        let x = (p - 3 * y * y).sqrt();
        (x * x + 3 * y * y == p).then_some((x, y))
    })
}

type Gauss = (BigInt, BigInt);

fn gmul(x: &Gauss, y: &Gauss) -> Gauss {
    (&x.0 * &y.0 - BigInt::from(3) * &x.1 * &y.1, &x.0 * &y.1 + &x.1 * &y.0)
}

/// α ∈ Z[√−3] with N(α) = ∏ p^e, or None if some prime is out of reach.
fn norm_element(primes: &BTreeMap<BigUint, i64>) -> Option<Gauss> {
    let mut acc: Gauss = (BigInt::one(), BigInt::zero());
    for (p, &e) in primes {
        let e = e.unsigned_abs();
        let pi = p.to_u64()?;
        let base: Gauss = if pi % 3 == 2 {
            if e % 2 == 1 {
                return None;
            }
            let f = BigInt::from(pi).pow((e / 2) as u32);
            acc = gmul(&acc, &(f, BigInt::zero()));
            continue;
        } else {
            let (a, b) = two_squares_3(pi)?;
            (BigInt::from(a), BigInt::from(b))
        };
        for _ in 0..e {
            acc = gmul(&acc, &base);
        }
    }
    Some(acc)
}

pub fn conic_norm_test(u: &Rat, t: &Rat) -> Result<ConicResult, KummerError> {
    let w = Weierstrass::new([rat(3) * u, Rat::zero(), t.clone(), Rat::zero(), Rat::zero()]);
    if w.is_singular() {
        return Err(KummerError::Singular);
    }
    let q = conic_rhs(u, t);
    if q.is_zero() {
        return Ok(ConicResult::Unsolvable { q, reason: "degenerate conic (q = 0)".into() });
    }
    if q.is_negative() {
        return Ok(ConicResult::Unsolvable { q, reason: "q < 0".into() });
    }
    let v = valuations(u, t);
    for (p, e) in &v {
        if (p % 3u32) == BigUint::from(2u32) && e % 2 != 0 {
            return Ok(ConicResult::Unsolvable { q, reason: format!("v_{p}(q) = {e} is odd") });
        }
    }
    // q = n/d; N(α) = n·d, then (z, w) = α/d
    let mut nd = BTreeMap::new();
    add_valuations(&mut nd, q.numer(), 1);
    add_valuations(&mut nd, q.denom(), 1);
    let alpha = norm_element(&nd).expect("criterion holds");
    let d = Rat::from_integer(q.denom().clone());
    let z0 = Rat::from_integer(alpha.0) / &d;
    let w0 = Rat::from_integer(alpha.1) / &d;
    debug_assert_eq!(&z0 * &z0 + rat(3) * &w0 * &w0, q);
    let param = ConicParam { u_coef: u.clone(), t_coef: t.clone(), z0: z0.clone(), w0: w0.clone() };
    Ok(ConicResult::Solvable { q, point: (z0, w0), param })
}

/// t = 0 fiber of the surface for y² + 3Uxy + Ty = x³, as a polynomial in u.
pub fn three_torsion_fiber(u: &Rat, t: &Rat) -> Result<crate::numcore::poly::PolyQ, KummerError> {
    let s = delta_poly(&[rat(3) * u, Rat::zero(), t.clone(), Rat::zero(), Rat::zero()])?;
    Ok(s.fiber(&Rat::zero()))
}
