//! Elliptic curves over Q and over cyclic cubic fields.

pub mod curve;
pub mod field_k;
pub mod period;
pub mod weierstrass;

use num_bigint::BigInt;
use thiserror::Error;

pub use curve::{build_an, count_points_naive, curve_invariants, CurveError, CurveQ, POINT_COUNT_BOUND};
pub use field_k::{CubicModulus, FieldK, FieldKError, KElem};
pub use period::{agm, real_period};
pub use weierstrass::{is_nontorsion, Invariants, Point, TorsionField, Weierstrass};

use crate::numcore::ring::{Field, Rat};

pub type PointQ = Point<Rat>;
pub type PointK = Point<KElem>;

pub fn point_add<F: Field>(curve: &Weierstrass<F>, p: &Point<F>, q: &Point<F>) -> Point<F> {
    curve.add(p, q)
}

pub fn point_mul<F: Field>(curve: &Weierstrass<F>, n: i64, p: &Point<F>) -> Point<F> {
    curve.mul(n, p)
}

/// The rational model viewed over a cubic field.
pub fn base_change(curve: &Weierstrass<Rat>) -> Weierstrass<KElem> {
    curve.map(|a| KElem::rational(a.clone()))
}

pub fn embed_point(p: &PointQ) -> PointK {
    match p {
        Point::Infinity => Point::Infinity,
        Point::Affine(x, y) => Point::Affine(KElem::rational(x.clone()), KElem::rational(y.clone())),
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum TraceError {
    #[error("point is not defined over a cyclic cubic field")]
    NotCyclic,
    #[error("trace has non-rational coordinates")]
    NotRational,
}

pub fn galois_point(p: &PointK) -> Option<PointK> {
    match p {
        Point::Infinity => Some(Point::Infinity),
        Point::Affine(x, y) => Some(Point::Affine(x.galois()?, y.galois()?)),
    }
}

/// P + P^σ + P^{σ²}, checked to be rational.
pub fn trace(curve: &Weierstrass<Rat>, p: &PointK) -> Result<PointQ, TraceError> {
    let ck = base_change(curve);
    let s1 = galois_point(p).ok_or(TraceError::NotCyclic)?;
    let s2 = galois_point(&s1).ok_or(TraceError::NotCyclic)?;
    let t = ck.add(&ck.add(p, &s1), &s2);
    match t {
        Point::Infinity => Ok(Point::Infinity),
        Point::Affine(x, y) => match (x.as_rational(), y.as_rational()) {
            (Some(x), Some(y)) => Ok(Point::Affine(x, y)),
            _ => Err(TraceError::NotRational),
        },
    }
}

/// Curves used throughout; conductors and root numbers from the standard tables.
pub mod curves {
    use super::*;

    /// 37B (Cremona 37b3): y² + y = x³ + x² − 3x + 1.
    pub fn e37b() -> CurveQ {
        CurveQ::from_ints("37B", [0, 1, 1, -3, 1], 37, 1).unwrap()
    }

    /// The model y² + 4xy + y = x³ of 37B, with (0,0) of order 3.
    pub fn e37b_shifted() -> CurveQ {
        CurveQ::from_ints("37B", [4, 0, 1, 0, 0], 37, 1).unwrap()
    }

    /// 37A: y² + y = x³ − x, rank 1.
    pub fn e37a() -> CurveQ {
        CurveQ::from_ints("37A", [0, 0, 1, -1, 0], 37, -1).unwrap()
    }

    /// 11a1: y² + y = x³ − x² − 10x − 20.
    pub fn e11a1() -> CurveQ {
        CurveQ::from_ints("11A", [0, -1, 1, -10, -20], 11, 1).unwrap()
    }

    pub fn origin() -> PointQ {
        Point::Affine(Rat::from_integer(BigInt::from(0)), Rat::from_integer(BigInt::from(0)))
    }
}
