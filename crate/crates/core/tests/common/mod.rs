//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use cubtwist::numcore::ring::Rat;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

/// A rational point on z² + 3w² = q with denominator ≤ max_den, by direct search:
/// z = A/D, w = C/D with A² + 3C² = q·D².
pub fn brute_conic_point(q: &Rat, max_den: u64) -> Option<(Rat, Rat)> {
    if q.is_negative() {
        return None;
    }
    if q.is_zero() {
        return Some((Rat::zero(), Rat::zero()));
    }
    for d in 1..=max_den {
        let n = q * Rat::from_integer(BigInt::from(d * d));
        if !n.is_integer() {
            continue;
        }
        let n = n.to_integer();
        let mut c = BigInt::zero();
        while BigInt::from(3) * &c * &c <= n {
            let r = &n - BigInt::from(3) * &c * &c;
            let a = r.sqrt();
            if &a * &a == r {
                let den = Rat::from_integer(BigInt::from(d));
                return Some((Rat::from_integer(a) / &den, Rat::from_integer(c) / den));
            }
            c += 1;
        }
    }
    None
}

/// #E(F_p) for an integral model, enumerating y in the outer loop and x in the inner one.
pub fn recount_points(a: [i64; 5], p: u64) -> u64 {
    let p = p as i64;
    let r = |v: i64| v.rem_euclid(p);
    let [a1, a2, a3, a4, a6] = a.map(r);
    let mut n = 1u64;
    for y in 0..p {
        for x in 0..p {
            let lhs = r(y * y + r(a1 * x) * y + a3 * y);
            let rhs = r(r(r(x * x) * x) + r(a2 * r(x * x)) + r(a4 * x) + a6);
            if lhs == rhs {
                n += 1;
            }
        }
    }
    n
}

pub fn int_invariants(a: &[Rat; 5]) -> [i64; 5] {
    std::array::from_fn(|i| a[i].to_integer().to_i64().unwrap())
}

/// Real period by quadrature: x = e + tan²θ turns ∫_e^∞ dx/√f into a smooth integral on (0, π/2),
/// with f monic cubic and e its largest real root. Doubled when E(R) has two components.
pub fn period_quadrature(b2: f64, b4: f64, b6: f64, two_components: bool) -> f64 {
    let f = |x: f64| ((x + b2 / 4.0) * x + b4 / 2.0) * x + b6 / 4.0;
    // largest real root: scan down from the Cauchy bound, then bisect
    let bound = 1.0 + (b2 / 4.0).abs().max((b4 / 2.0).abs()).max((b6 / 4.0).abs());
    let steps = 100_000;
    let (mut lo, mut hi) = (-bound, bound);
    for k in 1..=steps {
        let x = bound - 2.0 * bound * k as f64 / steps as f64;
        if f(x) <= 0.0 {
            lo = x;
            hi = x + 2.0 * bound / steps as f64;
            break;
        }
    }
    for _ in 0..200 {
        let m = 0.5 * (lo + hi);
        if f(m) > 0.0 {
            hi = m;
        } else {
            lo = m;
        }
    }
    let e = 0.5 * (lo + hi);
    // f(x) = (x − e)·q(x)
    let c2 = b2 / 4.0 + e;
    let c1 = b4 / 2.0 + e * c2;
    let q = |x: f64| (x + c2) * x + c1;
    let n = 20_000;
    let h = std::f64::consts::FRAC_PI_2 / n as f64;
    let g = |th: f64| {
        if th >= std::f64::consts::FRAC_PI_2 {
            return 2.0;
        }
        let t = th.tan();
        let s = 1.0 / th.cos();
        2.0 * s * s / q(e + t * t).sqrt()
    };
    let mut acc = g(0.0) + g(std::f64::consts::FRAC_PI_2);
    for k in 1..n {
        acc += g(k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 };
    }
    let comp = acc * h / 3.0;
    if two_components {
        2.0 * comp
    } else {
        comp
    }
}
