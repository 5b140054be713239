use crate::numcore::ring::{Field, Ring};

/// y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6 over a field F.
#[derive(Clone, Debug, PartialEq)]
pub struct Weierstrass<F> {
    pub a1: F,
    pub a2: F,
    pub a3: F,
    pub a4: F,
    pub a6: F,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Point<F> {
    Infinity,
    Affine(F, F),
}

impl<F> Point<F> {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Invariants<F> {
    pub b2: F,
    pub b4: F,
    pub b6: F,
    pub b8: F,
    pub c4: F,
    pub c6: F,
    pub disc: F,
}

impl<F: Ring> Weierstrass<F> {
    pub fn new(a: [F; 5]) -> Self {
        let [a1, a2, a3, a4, a6] = a;
        Weierstrass { a1, a2, a3, a4, a6 }
    }

    pub fn map<G: Ring>(&self, f: impl Fn(&F) -> G) -> Weierstrass<G> {
        Weierstrass { a1: f(&self.a1), a2: f(&self.a2), a3: f(&self.a3), a4: f(&self.a4), a6: f(&self.a6) }
    }

    pub fn invariants(&self) -> Invariants<F> {
        let c = |n: i64| F::from_i64(n);
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let b2 = a1.clone() * a1.clone() + c(4) * a2.clone();
        let b4 = c(2) * a4.clone() + a1.clone() * a3.clone();
        let b6 = a3.clone() * a3.clone() + c(4) * a6.clone();
        let b8 = a1.clone() * a1.clone() * a6.clone() + c(4) * a2.clone() * a6.clone()
            - a1.clone() * a3.clone() * a4.clone()
            + a2.clone() * a3.clone() * a3.clone()
            - a4.clone() * a4.clone();
        let c4 = b2.clone() * b2.clone() - c(24) * b4.clone();
        let c6 = -(b2.clone() * b2.clone() * b2.clone()) + c(36) * b2.clone() * b4.clone() - c(216) * b6.clone();
        let disc = -(b2.clone() * b2.clone() * b8.clone()) - c(8) * b4.clone() * b4.clone() * b4.clone()
            - c(27) * b6.clone() * b6.clone()
            + c(9) * b2.clone() * b4.clone() * b6.clone();
        Invariants { b2, b4, b6, b8, c4, c6, disc }
    }

    pub fn discriminant(&self) -> F {
        self.invariants().disc
    }

    pub fn is_singular(&self) -> bool {
        self.discriminant().is_zero()
    }

    /// Left side minus right side of the curve equation.
    pub fn residual(&self, x: &F, y: &F) -> F {
        let lhs = y.clone() * y.clone() + self.a1.clone() * x.clone() * y.clone() + self.a3.clone() * y.clone();
        let rhs = x.clone() * x.clone() * x.clone()
            + self.a2.clone() * x.clone() * x.clone()
            + self.a4.clone() * x.clone()
            + self.a6.clone();
        lhs - rhs
    }

    pub fn contains(&self, p: &Point<F>) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine(x, y) => self.residual(x, y).is_zero(),
        }
    }

    pub fn neg(&self, p: &Point<F>) -> Point<F> {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                Point::Affine(x.clone(), -y.clone() - self.a1.clone() * x.clone() - self.a3.clone())
            }
        }
    }
}

impl<F: Field> Weierstrass<F> {
    /// Chord-tangent addition.
    pub fn add(&self, p: &Point<F>, q: &Point<F>) -> Point<F> {
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::Infinity, _) => return q.clone(),
            (_, Point::Infinity) => return p.clone(),
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let c = |n: i64| F::from_i64(n);
        let lambda;
        let nu;
        if x1 == x2 {
            let ysum = y1.clone() + y2.clone() + self.a1.clone() * x2.clone() + self.a3.clone();
            if ysum.is_zero() {
                return Point::Infinity;
            }
            let num = c(3) * x1.clone() * x1.clone() + c(2) * self.a2.clone() * x1.clone() + self.a4.clone()
                - self.a1.clone() * y1.clone();
            let den = c(2) * y1.clone() + self.a1.clone() * x1.clone() + self.a3.clone();
            let inv = den.inv().expect("nonzero tangent denominator");
            lambda = num * inv.clone();
            let num2 = -(x1.clone() * x1.clone() * x1.clone()) + self.a4.clone() * x1.clone()
                + c(2) * self.a6.clone()
                - self.a3.clone() * y1.clone();
            nu = num2 * inv;
        } else {
            let inv = (x2.clone() - x1.clone()).inv().expect("distinct x");
            lambda = (y2.clone() - y1.clone()) * inv.clone();
            nu = (y1.clone() * x2.clone() - y2.clone() * x1.clone()) * inv;
        }
        let x3 = lambda.clone() * lambda.clone() + self.a1.clone() * lambda.clone()
            - self.a2.clone()
            - x1.clone()
            - x2.clone();
        let y3 = -(lambda + self.a1.clone()) * x3.clone() - nu - self.a3.clone();
        Point::Affine(x3, y3)
    }

    pub fn mul(&self, n: i64, p: &Point<F>) -> Point<F> {
        let mut base = if n < 0 { self.neg(p) } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = Point::Infinity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.add(&base, &base);
            }
        }
        acc
    }

    /// Smallest n in `orders` with nP = O, computing multiples incrementally.
    pub fn torsion_order_in(&self, p: &Point<F>, orders: &[u32]) -> Option<u32> {
        let max = *orders.iter().max()?;
        let mut q = p.clone();
        for n in 1..=max {
            if q.is_infinity() && orders.contains(&n) {
                return Some(n);
            }
            if q.is_infinity() {
                return orders.iter().copied().filter(|m| m % n == 0).min();
            }
            q = self.add(&q, p);
        }
        None
    }
}

/// Which torsion classification to test against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorsionField {
    Rational,
    Quadratic,
    Cubic,
}

impl TorsionField {
    pub fn orders(self) -> Vec<u32> {
        match self {
            TorsionField::Rational => vec![1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12],
            TorsionField::Quadratic => (1..=18).collect(),
            TorsionField::Cubic => (1..=21).collect(),
        }
    }
}

/// nP ≠ O for every n in the classified torsion orders of the field type.
pub fn is_nontorsion<F: Field>(curve: &Weierstrass<F>, p: &Point<F>, field: TorsionField) -> bool {
    if p.is_infinity() {
        return false;
    }
    curve.torsion_order_in(p, &field.orders()).is_none()
}
