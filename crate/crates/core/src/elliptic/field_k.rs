use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::numcore::poly::PolyQ;
use crate::numcore::resultant::discriminant;
use crate::numcore::ring::{rat_sqrt, Field, Rat, Ring};
use crate::numcore::roots::rational_roots;

#[derive(Debug, Error, PartialEq)]
pub enum FieldKError {
    #[error("defining polynomial must be a monic cubic")]
    NotMonicCubic,
    #[error("defining cubic is reducible over Q")]
    Reducible,
}

/// Q[ξ]/(ξ³ + c2 ξ² + c1 ξ + c0).
#[derive(Debug, PartialEq)]
pub struct CubicModulus {
    pub c: [Rat; 3],
    pub disc: Rat,
    /// σ(ξ) in the basis 1, ξ, ξ² when the discriminant is a square.
    sigma: Option<[Rat; 3]>,
}

/// Element of a cubic field; a missing modulus marks an embedded rational.
#[derive(Clone, Debug)]
pub struct KElem {
    m: Option<Arc<CubicModulus>>,
    pub v: [Rat; 3],
}

pub type FieldK = Arc<CubicModulus>;

impl CubicModulus {
    pub fn new(poly: &PolyQ) -> Result<FieldK, FieldKError> {
        if poly.degree() != Some(3) || !poly.is_monic() {
            return Err(FieldKError::NotMonicCubic);
        }
        if !rational_roots(poly).is_empty() {
            return Err(FieldKError::Reducible);
        }
        let c = [poly.coeff(0), poly.coeff(1), poly.coeff(2)];
        let disc = discriminant(poly);
        let mut m = CubicModulus { c, disc: disc.clone(), sigma: None };
        if let Some(root) = rat_sqrt(&disc) {
            let tmp = Arc::new(CubicModulus { c: m.c.clone(), disc: disc.clone(), sigma: None });
            let xi = KElem::generator(&tmp);
            let fprime = poly.derivative();
            let fp_xi = KElem::eval_poly(&tmp, &fprime, &xi);
            let s = (-(xi.clone() + KElem::rational(m.c[2].clone())) + KElem::rational(root) * fp_xi.inv().unwrap())
                * KElem::rational(Rat::new(1.into(), 2.into()));
            m.sigma = Some(s.v);
        }
        Ok(Arc::new(m))
    }

    pub fn poly(&self) -> PolyQ {
        PolyQ::new(vec![self.c[0].clone(), self.c[1].clone(), self.c[2].clone(), Rat::one()])
    }

    pub fn is_cyclic(&self) -> bool {
        self.sigma.is_some()
    }
}

impl KElem {
    pub fn rational(x: Rat) -> Self {
        KElem { m: None, v: [x, Rat::zero(), Rat::zero()] }
    }

    pub fn new(m: &FieldK, v: [Rat; 3]) -> Self {
        KElem { m: Some(m.clone()), v }
    }

    pub fn generator(m: &FieldK) -> Self {
        KElem::new(m, [Rat::zero(), Rat::one(), Rat::zero()])
    }

    pub fn modulus(&self) -> Option<&FieldK> {
        self.m.as_ref()
    }

    pub fn eval_poly(m: &FieldK, p: &PolyQ, x: &KElem) -> KElem {
        let mut acc = KElem::new(m, [Rat::zero(), Rat::zero(), Rat::zero()]);
        for c in p.coeffs().iter().rev() {
            acc = acc * x.clone() + KElem::rational(c.clone());
        }
        acc
    }

    pub fn as_rational(&self) -> Option<Rat> {
        (self.v[1].is_zero() && self.v[2].is_zero()).then(|| self.v[0].clone())
    }

    fn as_poly(&self) -> PolyQ {
        PolyQ::new(self.v.to_vec())
    }

    fn join(&self, other: &Self) -> Option<Arc<CubicModulus>> {
        match (&self.m, &other.m) {
            (Some(a), Some(b)) => {
                debug_assert!(Arc::ptr_eq(a, b) || a == b, "elements of different fields");
                Some(a.clone())
            }
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        }
    }

    /// Image under the fixed generator σ of Gal(K/Q); None for non-cyclic fields.
    pub fn galois(&self) -> Option<KElem> {
        let m = match &self.m {
            None => return Some(self.clone()),
            Some(m) => m.clone(),
        };
        let s = KElem::new(&m, m.sigma.clone()?);
        let out = KElem::rational(self.v[0].clone())
            + KElem::rational(self.v[1].clone()) * s.clone()
            + KElem::rational(self.v[2].clone()) * s.clone() * s;
        Some(KElem { m: Some(m), v: out.v })
    }
}

impl PartialEq for KElem {
    fn eq(&self, other: &Self) -> bool {
        self.v == other.v
    }
}

impl Zero for KElem {
    fn zero() -> Self {
        KElem::rational(Rat::zero())
    }
    fn is_zero(&self) -> bool {
        self.v.iter().all(|c| c.is_zero())
    }
}

impl One for KElem {
    fn one() -> Self {
        KElem::rational(Rat::one())
    }
}

impl Add for KElem {
    type Output = Self;
    fn add(self, r: Self) -> Self {
        let m = self.join(&r);
        let [a0, a1, a2] = self.v;
        let [b0, b1, b2] = r.v;
        KElem { m, v: [a0 + b0, a1 + b1, a2 + b2] }
    }
}

impl Sub for KElem {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        self + (-r)
    }
}

impl Neg for KElem {
    type Output = Self;
    fn neg(self) -> Self {
        let [a0, a1, a2] = self.v;
        KElem { m: self.m, v: [-a0, -a1, -a2] }
    }
}

impl Mul for KElem {
    type Output = Self;
    fn mul(self, r: Self) -> Self {
        let m = self.join(&r);
        let a = &self.v;
        let b = &r.v;
        let mut t = vec![Rat::zero(); 5];
        for i in 0..3 {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..3 {
                t[i + j] += &a[i] * &b[j];
            }
        }
        if let Some(md) = &m {
            // ξ³ = −(c2 ξ² + c1 ξ + c0)
            for k in (3..5).rev() {
                let top = std::mem::replace(&mut t[k], Rat::zero());
                if top.is_zero() {
                    continue;
                }
                t[k - 1] -= &top * &md.c[2];
                t[k - 2] -= &top * &md.c[1];
                t[k - 3] -= &top * &md.c[0];
            }
        }
        let [t0, t1, t2, ..] = <[Rat; 5]>::try_from(t).unwrap();
        KElem { m, v: [t0, t1, t2] }
    }
}

impl Ring for KElem {
    fn from_i64(n: i64) -> Self {
        KElem::rational(Rat::from_i64(n))
    }
}

impl Field for KElem {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        match &self.m {
            None => Some(KElem::rational(self.v[0].recip())),
            Some(m) => {
                let (g, s, _) = self.as_poly().xgcd(&m.poly());
                if g.degree() != Some(0) {
                    return None;
                }
                Some(KElem::new(m, [s.coeff(0), s.coeff(1), s.coeff(2)]))
            }
        }
    }
}
