use num_traits::{Signed, ToPrimitive};

use super::curve::CurveQ;
use crate::numcore::real::Real;
use crate::numcore::ring::Rat;

const AGM_CAP: usize = 200;

fn to_real<R: Real>(bits: u32, x: &Rat) -> R {
    R::from_ratio(bits, x.numer(), x.denom())
}

pub fn agm<R: Real>(bits: u32, mut a: R, mut b: R) -> R {
    let half = R::from_f64(bits, 0.5);
    let eps = R::epsilon(bits) * 16.0;
    for _ in 0..AGM_CAP {
        let an = (a.clone() + b.clone()) * half.clone();
        let bn = (a.clone() * b.clone()).sqrt();
        let done = (an.clone() - bn.clone()).abs().to_f64() <= eps * an.to_f64().abs();
        a = an;
        b = bn;
        if done {
            break;
        }
    }
    a
}

/// Real roots of 4x³ + b2x² + 2b4x + b6, descending.
pub fn two_torsion_real<R: Real>(curve: &CurveQ, bits: u32) -> Vec<R> {
    let inv = &curve.inv;
    let c = [
        to_real::<R>(bits, &inv.b6),
        to_real::<R>(bits, &inv.b4) * R::from_i64(bits, 2),
        to_real::<R>(bits, &inv.b2),
        R::from_i64(bits, 4),
    ];
    let g = |x: &R| ((c[3].clone() * x.clone() + c[2].clone()) * x.clone() + c[1].clone()) * x.clone() + c[0].clone();
    let dg = |x: &R| {
        (R::from_i64(bits, 12) * x.clone() + R::from_i64(bits, 2) * c[2].clone()) * x.clone() + c[1].clone()
    };
    let seeds = seeds_f64(
        inv.b2.to_f64().unwrap() / 4.0,
        inv.b4.to_f64().unwrap() / 2.0,
        inv.b6.to_f64().unwrap() / 4.0,
        inv.disc.is_positive(),
    );
    let eps = R::epsilon(bits) * 64.0;
    let mut roots: Vec<R> = seeds
        .into_iter()
        .map(|s| {
            let mut x = R::from_f64(bits, s);
            for _ in 0..AGM_CAP {
                let step = g(&x) / dg(&x);
                x -= &step;
                if step.abs().to_f64() <= eps * (1.0 + x.to_f64().abs()) {
                    break;
                }
            }
            x
        })
        .collect();
    roots.sort_by(|a, b| b.partial_cmp(a).unwrap());
    roots
}

// roots of x³ + a x² + b x + c
fn seeds_f64(a: f64, b: f64, c: f64, three_real: bool) -> Vec<f64> {
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    let shift = -a / 3.0;
    if three_real {
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
        let theta = arg.acos() / 3.0;
        (0..3)
            .map(|k| m * (theta - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos() + shift)
            .collect()
    } else {
        let d = (q * q / 4.0 + p * p * p / 27.0).max(0.0).sqrt();
        vec![(-q / 2.0 + d).cbrt() + (-q / 2.0 - d).cbrt() + shift]
    }
}

/// Period of the full real locus of E(R).
pub fn real_period<R: Real>(curve: &CurveQ, bits: u32) -> R {
    let two_pi = R::pi(bits) * R::from_i64(bits, 2);
    let roots = two_torsion_real::<R>(curve, bits);
    if curve.inv.disc.is_positive() {
        let (e1, e2, e3) = (&roots[0], &roots[1], &roots[2]);
        let m = agm(bits, (e1.clone() - e3.clone()).sqrt(), (e1.clone() - e2.clone()).sqrt());
        two_pi / m
    } else {
        let e1 = roots[0].clone();
        let b2 = to_real::<R>(bits, &curve.inv.b2);
        let b4 = to_real::<R>(bits, &curve.inv.b4);
        let four = R::from_i64(bits, 4);
        let two = R::from_i64(bits, 2);
        let a = R::from_i64(bits, 3) * e1.clone() + b2.clone() / four;
        let b = (R::from_i64(bits, 3) * e1.clone() * e1.clone() + b2 / two.clone() * e1 + b4 / two.clone()).sqrt();
        let m = agm(bits, two.clone() * b.clone().sqrt(), (two * b + a).sqrt());
        two_pi / m
    }
}
