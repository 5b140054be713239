use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::cubicfield::CubicField;
use crate::numcore::factor::factor;
use crate::numcore::poly::PolyQ;
use crate::numcore::ring::{rat, Rat};

pub const EXCEPTIONAL_PRIMES: [u64; 3] = [2, 3, 37];

pub fn h1(a: i64, b: i64) -> i64 {
    7 * a * a + 12 * a * b + 9 * b * b
}

pub fn h2(a: i64, b: i64) -> i64 {
    9 * a * a - 12 * a * b + 7 * b * b
}

pub fn g(a: i64, b: i64) -> i64 {
    a * a + b * b
}

pub fn q(a: i64, b: i64) -> i64 {
    3 * a * a + a * b - 3 * b * b
}

#[derive(Clone, Debug, PartialEq)]
pub struct E37bParam {
    pub u: Rat,
    pub delta: Rat,
    pub f_r: PolyQ,
}

/// u, δ on the t = 0 fiber of y² + 4xy + y = x³ and the cubic F_r whose root ξ gives x = ξ/(9r²−12r+7).
pub fn e37b_param(r: &Rat) -> E37bParam {
    let hh1 = rat(7) * r * r + rat(12) * r + rat(9);
    let hh2 = rat(9) * r * r - rat(12) * r + rat(7);
    let qq = rat(3) * r * r + r - rat(3);
    let u = &hh1 / &hh2;
    let delta = rat(32) * &hh1 * qq / (&hh2 * &hh2);
    let p = &hh1 * &hh2;
    let f_r = PolyQ::new(vec![-(rat(16) * (r * r + rat(1)) * &p), -(rat(4) * &p), Rat::zero(), Rat::one()]);
    E37bParam { u, delta, f_r }
}

/// b⁶F_{a/b}(W/b²) = W³ − 4H₁H₂W − 16GH₁H₂.
pub fn census_cubic(a: i64, b: i64) -> PolyQ {
    let p = BigInt::from(h1(a, b)) * BigInt::from(h2(a, b));
    PolyQ::new(vec![
        Rat::from_integer(-(BigInt::from(16) * BigInt::from(g(a, b)) * &p)),
        Rat::from_integer(-(BigInt::from(4) * &p)),
        Rat::zero(),
        Rat::one(),
    ])
}

#[derive(Clone, Debug, PartialEq)]
pub struct CensusRow37b {
    pub a: i64,
    pub b: i64,
    pub h1: i64,
    pub h2: i64,
    pub squarefree: bool,
    pub conductor: Option<u64>,
    pub new_field: bool,
}

impl CensusRow37b {
    pub const HEADER: [&'static str; 7] = ["a", "b", "H1", "H2", "squarefree-flag", "conductor", "new-field-flag"];

    pub fn record(&self) -> [String; 7] {
        [
            self.a.to_string(),
            self.b.to_string(),
            self.h1.to_string(),
            self.h2.to_string(),
            (self.squarefree as u8).to_string(),
            self.conductor.map(|c| c.to_string()).unwrap_or_default(),
            (self.new_field as u8).to_string(),
        ]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Census37b {
    pub x: u64,
    pub height_bound: u64,
    pub rows: Vec<CensusRow37b>,
    /// distinct conductors ≤ X, sorted
    pub conductors: Vec<u64>,
    pub ladder: Vec<(u64, usize)>,
    pub slope: Option<f64>,
}

/// H₁H₂ squarefree away from 2, 3, 37.
pub fn squarefree_away(a: i64, b: i64) -> bool {
    let f1 = factor(h1(a, b).unsigned_abs());
    let f2 = factor(h2(a, b).unsigned_abs());
    f1.merge(&f2).0.iter().all(|&(p, e)| e == 1 || EXCEPTIONAL_PRIMES.contains(&p))
}

/// Primes dividing 2·H₁·H₂·Q, the candidates for ramification in K_{a/b}.
pub fn candidate_primes(a: i64, b: i64) -> Vec<u64> {
    let mut ps: BTreeSet<u64> = [2u64, 3].into_iter().collect();
    for v in [h1(a, b), h2(a, b), q(a, b)] {
        ps.extend(factor(v.unsigned_abs()).primes());
    }
    ps.into_iter().collect()
}

pub fn field_for(a: i64, b: i64) -> Option<CubicField> {
    CubicField::from_cubic_with_primes(&census_cubic(a, b), &candidate_primes(a, b)).ok()
}

/// Coprime (a, b) with |a|, |b| ≤ H, one representative per r = a/b (b > 0, or (1, 0)).
pub fn pairs(height_bound: u64) -> Vec<(i64, i64)> {
    let h = height_bound as i64;
    let mut out = vec![(1, 0)];
    for b in 1..=h {
        for a in -h..=h {
            if a.gcd(&b) == 1 {
                out.push((a, b));
            }
        }
    }
    out
}

/// Geometric ladder X, X/10, X/100, X/1000 (ascending, entries ≥ 10).
pub fn cutoff_ladder(x: u64) -> Vec<u64> {
    let mut v: Vec<u64> = (0..4).map(|k| x / 10u64.pow(k)).filter(|&c| c >= 10).collect();
    v.reverse();
    v
}

pub fn loglog_slope(points: &[(u64, usize)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> =
        points.iter().filter(|p| p.1 > 0).map(|&(x, c)| ((x as f64).ln(), (c as f64).ln())).collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    Some(sxy / sxx)
}

pub fn census_37b(x: u64, height_bound: u64) -> Census37b {
    let mut rows: Vec<CensusRow37b> = pairs(height_bound)
        .into_par_iter()
        .map(|(a, b)| {
            let squarefree = squarefree_away(a, b);
            let conductor = if squarefree { field_for(a, b).and_then(|k| k.conductor.to_u64()) } else { None };
            CensusRow37b { a, b, h1: h1(a, b), h2: h2(a, b), squarefree, conductor, new_field: false }
        })
        .collect();
    // deterministic reduce: first occurrence in (b, a) order marks a new field
    rows.sort_by_key(|r| (r.b, r.a));
    let mut seen = BTreeSet::new();
    for r in rows.iter_mut() {
        if let Some(c) = r.conductor {
            r.new_field = seen.insert(c);
        }
    }
    let conductors: Vec<u64> = seen.into_iter().filter(|&c| c <= x).collect();
    let ladder: Vec<(u64, usize)> =
        cutoff_ladder(x).into_iter().map(|c| (c, conductors.iter().filter(|&&f| f <= c).count())).collect();
    let slope = loglog_slope(&ladder);
    Census37b { x, height_bound, rows, conductors, ladder, slope }
}

