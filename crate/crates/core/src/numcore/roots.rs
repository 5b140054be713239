use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::PolyQ;
use super::ring::{rat_sqrt, Rat};

fn eval3(b: &BigInt, c: &BigInt, d: &BigInt, y: &BigInt) -> BigInt {
    ((y + b) * y + c) * y + d
}

fn deriv3(b: &BigInt, c: &BigInt, y: &BigInt) -> BigInt {
    (BigInt::from(3) * y + BigInt::from(2) * b) * y + c
}

// smallest y in [lo, hi] with sign·p(y) ≥ 0, p monotone in direction sign
fn bisect(lo: BigInt, hi: BigInt, f: &impl Fn(&BigInt) -> BigInt, increasing: bool) -> Option<BigInt> {
    if lo > hi {
        return None;
    }
    let key = |y: &BigInt| {
        let v = f(y);
        if increasing { v } else { -v }
    };
    let (mut a, mut b) = (lo, hi);
    if key(&b).is_negative() {
        return None;
    }
    while a < b {
        let m: BigInt = (&a + &b).div_floor(&BigInt::from(2));
        if key(&m).is_negative() {
            a = m + 1;
        } else {
            b = m;
        }
    }
    f(&a).is_zero().then_some(a)
}

/// Distinct integer roots of y³ + b y² + c y + d, found exactly on monotone ranges.
pub fn integer_roots_monic_cubic(b: &BigInt, c: &BigInt, d: &BigInt) -> Vec<BigInt> {
    let f = |y: &BigInt| eval3(b, c, d, y);
    let bound = BigInt::one() + b.abs().max(c.abs()).max(d.abs());
    let mut out = Vec::new();
    let h = b * b - BigInt::from(3) * c;
    if !h.is_positive() {
        out.extend(bisect(-bound.clone(), bound, &f, true));
        return out;
    }
    let s = h.sqrt();
    let three = BigInt::from(3);
    // e ≤ r− : p'(e) ≥ 0 and 3e ≤ −b
    let left_ok = |e: &BigInt| !deriv3(b, c, e).is_negative() && &three * e <= -b;
    let mut lo = (-b - &s).div_floor(&three);
    while left_ok(&(&lo + 1)) {
        lo += 1;
    }
    while !left_ok(&lo) {
        lo -= 1;
    }
    // e ≥ r+ : p'(e) ≥ 0 and 3e ≥ −b
    let right_ok = |e: &BigInt| !deriv3(b, c, e).is_negative() && &three * e >= -b;
    let mut hi = (-b + &s + BigInt::from(2)).div_floor(&three);
    while right_ok(&(&hi - 1)) {
        hi -= 1;
    }
    while !right_ok(&hi) {
        hi += 1;
    }
    let left_end = (&lo).min(&bound).clone();
    out.extend(bisect(-bound.clone(), left_end, &f, true));
    out.extend(bisect(&lo + 1, &hi - 1, &f, false));
    let right_start = (&hi).max(&(-&bound)).clone();
    out.extend(bisect(right_start, bound, &f, true));
    out.sort();
    out.dedup();
    out
}

/// Distinct rational roots of a rational polynomial of degree ≤ 3.
pub fn rational_roots(p: &PolyQ) -> Vec<Rat> {
    match p.degree() {
        None | Some(0) => Vec::new(),
        Some(1) => vec![-p.coeff(0) / p.coeff(1)],
        Some(2) => {
            let (a, b, c) = (p.coeff(2), p.coeff(1), p.coeff(0));
            let disc = &b * &b - Rat::from_integer(BigInt::from(4)) * &a * &c;
            match rat_sqrt(&disc) {
                Some(s) => {
                    let two_a = Rat::from_integer(BigInt::from(2)) * &a;
                    let mut v = vec![(-&b + &s) / &two_a, (-&b - &s) / &two_a];
                    v.sort();
                    v.dedup();
                    v
                }
                None => Vec::new(),
            }
        }
        Some(3) => {
            let m = p.monic();
            let l = (0..3).fold(BigInt::one(), |acc, i| acc.lcm(m.coeff(i).denom()));
            let lr = Rat::from_integer(l.clone());
            let b = (m.coeff(2) * &lr).to_integer();
            let c = (m.coeff(1) * &lr * &lr).to_integer();
            let d = (m.coeff(0) * &lr * &lr * &lr).to_integer();
            integer_roots_monic_cubic(&b, &c, &d)
                .into_iter()
                .map(|y| Rat::new(y, l.clone()))
                .collect()
        }
        Some(_) => panic!("rational_roots supports degree ≤ 3"),
    }
}
