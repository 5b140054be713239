use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

use super::real::Real;
use super::ring::Rat;

pub const DEFAULT_TOL: f64 = 1e-4;

#[derive(Debug, Error, PartialEq)]
pub enum RecognitionError {
    #[error("error bound {0:e} is not below 1/4")]
    ErrorTooLarge(f64),
    #[error("value {value} is {residual:e} from the nearest integer (tolerance {tol:e})")]
    NotInteger { value: f64, residual: f64, tol: f64 },
    #[error("no rational with denominator ≤ {max_den} within {tol:e} of {value}")]
    NotRational { value: f64, max_den: u64, tol: f64 },
}

/// Nearest integer m to x, provided |x − m| ≤ tol. Returns (m, residual).
pub fn recognize_integer<R: Real>(x: &R, err: f64, tol: f64) -> Result<(BigInt, f64), RecognitionError> {
    if !(err < 0.25) {
        return Err(RecognitionError::ErrorTooLarge(err));
    }
    let m = x.round_to_bigint();
    let bits = 256;
    let residual = (x.clone() - R::from_bigint(bits, &m)).abs().to_f64();
    if residual <= tol {
        Ok((m, residual))
    } else {
        Err(RecognitionError::NotInteger { value: x.to_f64(), residual, tol })
    }
}

/// Best rational approximation with denominator ≤ max_den, accepted when within tol.
pub fn recognize_rational<R: Real>(x: &R, max_den: u64, tol: f64) -> Result<Rat, RecognitionError> {
    let bits = 256;
    // continued fraction convergents
    let (mut p0, mut q0, mut p1, mut q1) =
        (BigInt::from(0), BigInt::from(1), BigInt::from(1), BigInt::from(0));
    let mut y = x.clone();
    for _ in 0..64 {
        let a = floor_big(&y);
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        if q2 > BigInt::from(max_den) {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let cand = R::from_ratio(bits.max(128), &p1, &q1);
        if (x.clone() - cand).abs().to_f64() <= tol {
            return Ok(Rat::new(p1, q1));
        }
        let frac = y.clone() - R::from_bigint(bits, &a);
        if frac.to_f64().abs() < f64::MIN_POSITIVE {
            break;
        }
        y = R::from_i64(bits, 1) / frac;
    }
    Err(RecognitionError::NotRational { value: x.to_f64(), max_den, tol })
}

fn floor_big<R: Real>(y: &R) -> BigInt {
    let r = y.round_to_bigint();
    if R::from_bigint(64, &r) > *y {
        r - 1
    } else {
        r
    }
}

/// gcd of rationals: gcd of numerators over lcm of denominators.
pub fn rational_gcd(values: &[Rat]) -> Option<Rat> {
    let mut num = BigInt::zero();
    let mut den = BigInt::from(1);
    let mut any = false;
    for v in values.iter().filter(|v| !v.is_zero()) {
        any = true;
        num = num.gcd(v.numer());
        den = den.lcm(v.denom());
    }
    any.then(|| Rat::new(num.abs(), den))
}
