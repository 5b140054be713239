use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::ring::{Field, Rat, Ring};

/// a + b√D over Q, D a fixed non-square.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadExt<const D: i64> {
    pub a: Rat,
    pub b: Rat,
}

pub type QSqrtM3 = QuadExt<-3>;

impl<const D: i64> QuadExt<D> {
    pub fn new(a: Rat, b: Rat) -> Self {
        QuadExt { a, b }
    }

    pub fn from_rat(a: Rat) -> Self {
        QuadExt { a, b: Rat::zero() }
    }

    /// √D
    pub fn root() -> Self {
        QuadExt { a: Rat::zero(), b: Rat::one() }
    }

    pub fn conj(&self) -> Self {
        QuadExt { a: self.a.clone(), b: -self.b.clone() }
    }

    pub fn norm(&self) -> Rat {
        &self.a * &self.a - Rat::from_i64(D) * &self.b * &self.b
    }
}

impl<const D: i64> Zero for QuadExt<D> {
    fn zero() -> Self {
        Self::from_rat(Rat::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl<const D: i64> One for QuadExt<D> {
    fn one() -> Self {
        Self::from_rat(Rat::one())
    }
}

impl<const D: i64> Add for QuadExt<D> {
    type Output = Self;
    fn add(self, r: Self) -> Self {
        QuadExt { a: self.a + r.a, b: self.b + r.b }
    }
}

impl<const D: i64> Sub for QuadExt<D> {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        QuadExt { a: self.a - r.a, b: self.b - r.b }
    }
}

impl<const D: i64> Neg for QuadExt<D> {
    type Output = Self;
    fn neg(self) -> Self {
        QuadExt { a: -self.a, b: -self.b }
    }
}

impl<const D: i64> Mul for QuadExt<D> {
    type Output = Self;
    fn mul(self, r: Self) -> Self {
        let d = Rat::from_i64(D);
        QuadExt {
            a: &self.a * &r.a + d * &self.b * &r.b,
            b: &self.a * &r.b + &self.b * &r.a,
        }
    }
}

impl<const D: i64> Ring for QuadExt<D> {
    fn from_i64(n: i64) -> Self {
        Self::from_rat(Rat::from_i64(n))
    }
}

impl<const D: i64> Field for QuadExt<D> {
    fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conj();
        Some(QuadExt { a: c.a / &n, b: c.b / n })
    }
}
