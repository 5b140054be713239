use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use super::weierstrass::{Invariants, Weierstrass};
use crate::numcore::factor::{is_prime, sieve};
use crate::numcore::ring::{parse_rat, Rat};

/// Largest prime for which a_p is computed by point counting.
pub const POINT_COUNT_BOUND: u64 = 1_000_000;

#[derive(Debug, Error, PartialEq)]
pub enum CurveError {
    #[error("singular cubic: discriminant is zero")]
    Singular,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("p = {0} exceeds the point-count bound {POINT_COUNT_BOUND}")]
    PointCountBound(u64),
    #[error("model is not integral at p = {0}")]
    NonIntegral(u64),
    #[error("Hasse bound violated at p = {p}: a_p = {ap}")]
    Hasse { p: u64, ap: i64 },
    #[error("cannot parse a-invariant {0:?}")]
    Parse(String),
}

/// Elliptic curve over Q with its conductor and root number (both supplied, not computed).
pub struct CurveQ {
    pub label: String,
    pub model: Weierstrass<Rat>,
    pub inv: Invariants<Rat>,
    pub conductor: u64,
    pub root_number: i8,
    ap_cache: RwLock<HashMap<u64, i64>>,
    an_cache: RwLock<Arc<Vec<i64>>>,
}

impl Clone for CurveQ {
    fn clone(&self) -> Self {
        CurveQ {
            label: self.label.clone(),
            model: self.model.clone(),
            inv: self.inv.clone(),
            conductor: self.conductor,
            root_number: self.root_number,
            ap_cache: RwLock::new(self.ap_cache.read().unwrap().clone()),
            an_cache: RwLock::new(self.an_cache.read().unwrap().clone()),
        }
    }
}

impl std::fmt::Debug for CurveQ {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CurveQ")
            .field("label", &self.label)
            .field("model", &self.model)
            .field("conductor", &self.conductor)
            .field("root_number", &self.root_number)
            .finish()
    }
}

/// All standard invariants from the a-invariants; conductor and root number left unset.
pub fn curve_invariants(a: [Rat; 5]) -> Result<CurveQ, CurveError> {
    CurveQ::from_ainvariants("", a)
}

impl CurveQ {
    pub fn from_ainvariants(label: &str, a: [Rat; 5]) -> Result<Self, CurveError> {
        let model = Weierstrass::new(a);
        let inv = model.invariants();
        if inv.disc.is_zero() {
            return Err(CurveError::Singular);
        }
        Ok(CurveQ {
            label: label.to_string(),
            model,
            inv,
            conductor: 0,
            root_number: 0,
            ap_cache: RwLock::new(HashMap::new()),
            an_cache: RwLock::new(Arc::new(vec![0, 1])),
        })
    }

    pub fn from_ints(label: &str, a: [i64; 5], conductor: u64, root_number: i8) -> Result<Self, CurveError> {
        let a = a.map(|x| Rat::from_integer(BigInt::from(x)));
        Ok(Self::from_ainvariants(label, a)?.with_arithmetic(conductor, root_number))
    }

    pub fn parse(label: &str, a: &[&str; 5]) -> Result<Self, CurveError> {
        let mut out = Vec::with_capacity(5);
        for s in a {
            out.push(parse_rat(s).ok_or_else(|| CurveError::Parse(s.to_string()))?);
        }
        let a: [Rat; 5] = out.try_into().unwrap();
        Self::from_ainvariants(label, a)
    }

    pub fn with_arithmetic(mut self, conductor: u64, root_number: i8) -> Self {
        self.conductor = conductor;
        self.root_number = root_number;
        self
    }

    pub fn a_invariants(&self) -> [Rat; 5] {
        let m = &self.model;
        [m.a1.clone(), m.a2.clone(), m.a3.clone(), m.a4.clone(), m.a6.clone()]
    }

    /// δ(p) = 1 iff gcd(p, N) = 1.
    pub fn delta(&self, p: u64) -> i64 {
        if self.conductor % p == 0 {
            0
        } else {
            1
        }
    }

    pub fn ap(&self, p: u64) -> Result<i64, CurveError> {
        if let Some(&v) = self.ap_cache.read().unwrap().get(&p) {
            return Ok(v);
        }
        let v = compute_ap(self, p)?;
        self.ap_cache.write().unwrap().insert(p, v);
        Ok(v)
    }

    /// a_1..a_{n_max} (index 0 unused).
    pub fn an_table(&self, n_max: usize) -> Result<Arc<Vec<i64>>, CurveError> {
        {
            let cached = self.an_cache.read().unwrap();
            if cached.len() > n_max {
                return Ok(cached.clone());
            }
        }
        let primes: Vec<u64> = sieve(n_max as u64);
        let missing: Vec<u64> = {
            let cache = self.ap_cache.read().unwrap();
            primes.iter().copied().filter(|p| !cache.contains_key(p)).collect()
        };
        let computed: Result<Vec<(u64, i64)>, CurveError> =
            missing.par_iter().map(|&p| compute_ap(self, p).map(|v| (p, v))).collect();
        {
            let mut cache = self.ap_cache.write().unwrap();
            cache.extend(computed?);
        }
        let cache = self.ap_cache.read().unwrap();
        let table = Arc::new(build_an(n_max, |p| cache[&p], |p| self.conductor % p == 0));
        *self.an_cache.write().unwrap() = table.clone();
        Ok(table)
    }
}

/// Multiplicative extension of a_p to a_n.
pub fn build_an(n_max: usize, ap: impl Fn(u64) -> i64, bad: impl Fn(u64) -> bool) -> Vec<i64> {
    let mut spf = vec![0u32; n_max + 1];
    for i in 2..=n_max {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n_max {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    let mut a = vec![0i64; n_max + 1];
    if n_max >= 1 {
        a[1] = 1;
    }
    for n in 2..=n_max {
        let p = spf[n] as usize;
        let mut pk = p;
        while (n / pk) % p == 0 {
            pk *= p;
        }
        if pk == n {
            let app = ap(p as u64);
            a[n] = if pk == p {
                app
            } else if bad(p as u64) {
                app * a[n / p]
            } else {
                app * a[n / p] - (p as i64) * a[n / p / p]
            };
        } else {
            a[n] = a[pk] * a[n / pk];
        }
    }
    a
}

fn reduce(x: &Rat, p: u64) -> Result<u64, CurveError> {
    let pb = BigInt::from(p);
    let d = x.denom().mod_floor(&pb);
    if d.is_zero() {
        return Err(CurveError::NonIntegral(p));
    }
    let n = x.numer().mod_floor(&pb).to_u64().unwrap();
    let d = d.to_u64().unwrap();
    Ok(n * crate::numcore::factor::powmod(d, p - 2, p) % p)
}

/// #{(x, y) ∈ F_p²: on the reduced model} + 1, singular points included.
pub fn count_points_naive(a: [u64; 5], p: u64) -> u64 {
    let [a1, a2, a3, a4, a6] = a;
    let mut n = 1;
    for x in 0..p {
        let rhs = (((x + a2) % p * x % p + a4) % p * x % p + a6) % p;
        for y in 0..p {
            let lhs = (y * y % p + a1 * x % p * y % p + a3 * y % p) % p;
            if lhs == rhs {
                n += 1;
            }
        }
    }
    n
}

fn legendre_table(p: u64) -> Vec<i8> {
    let mut t = vec![-1i8; p as usize];
    t[0] = 0;
    for y in 1..p {
        t[(y * y % p) as usize] = 1;
    }
    t
}

fn compute_ap(curve: &CurveQ, p: u64) -> Result<i64, CurveError> {
    if !is_prime(p) {
        return Err(CurveError::NotPrime(p));
    }
    if p > POINT_COUNT_BOUND {
        return Err(CurveError::PointCountBound(p));
    }
    let bad = curve.conductor % p == 0 && curve.conductor != 0 || reduce(&curve.inv.disc, p)? == 0;
    let a = curve.a_invariants();
    let red: Vec<u64> = a.iter().map(|x| reduce(x, p)).collect::<Result<_, _>>()?;
    if p <= 3 {
        let n = count_points_naive([red[0], red[1], red[2], red[3], red[4]], p);
        return Ok(p as i64 + 1 - n as i64);
    }
    if bad {
        if reduce(&curve.inv.c4, p)? == 0 {
            return Ok(0);
        }
        let mc6 = (p - reduce(&curve.inv.c6, p)?) % p;
        let t = crate::numcore::factor::powmod(mc6, (p - 1) / 2, p);
        return Ok(if t == 1 { 1 } else { -1 });
    }
    let b2 = reduce(&curve.inv.b2, p)?;
    let b4 = reduce(&curve.inv.b4, p)?;
    let b6 = reduce(&curve.inv.b6, p)?;
    let leg = legendre_table(p);
    let mut s: i64 = 0;
    for x in 0..p {
        let v = (((4 * x + b2) % p * x % p + 2 * b4) % p * x % p + b6) % p;
        s += leg[v as usize] as i64;
    }
    let ap = -s;
    if (ap * ap) as u64 > 4 * p {
        return Err(CurveError::Hasse { p, ap });
    }
    Ok(ap)
}

/// Quick check used by config validation.
pub fn is_integral_model(curve: &CurveQ) -> bool {
    curve.a_invariants().iter().all(|x| x.is_integer())
}

pub fn abs_disc(curve: &CurveQ) -> BigInt {
    curve.inv.disc.numer().abs()
}
