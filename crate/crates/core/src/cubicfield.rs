//! Cyclic cubic fields given by a monic integral cubic: discriminant, conductor,
//! prime decomposition, the Galois action and the matching character pair.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::dirichlet::{characters_of_order, Character};
use crate::elliptic::field_k::{CubicModulus, FieldK, KElem};
use crate::numcore::factor::{factor_big, sieve};
use crate::numcore::poly::PolyQ;
use crate::numcore::resultant::discriminant_monic;
use crate::numcore::ring::Rat;
use crate::numcore::roots::integer_roots_monic_cubic;
use crate::numcore::Poly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CubicFieldError {
    #[error("not a monic integral cubic")]
    NotMonicIntegral,
    #[error("cubic is reducible over Q (split case)")]
    Reducible,
    #[error("discriminant {0} is not a square: field is not cyclic")]
    NotCyclic(BigInt),
    #[error("prime {0}: one root mod p for a cyclic cubic")]
    Inconsistent(u64),
    #[error("no character pair mod {0} matches the splitting data")]
    NoMatch(u64),
    #[error("several character pairs mod {0} match up to p = {1}")]
    Ambiguous(u64, u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CubicField {
    /// Z³ + c[2]Z² + c[1]Z + c[0]
    pub c: [BigInt; 3],
    pub poly_disc: BigInt,
    pub disc_root: BigInt,
    pub conductor: BigUint,
    pub ramified: Vec<u64>,
    /// primes where Z[ξ] is not maximal
    pub index_primes: Vec<u64>,
}

fn cubic_from_poly(p: &PolyQ) -> Result<[BigInt; 3], CubicFieldError> {
    if p.degree() != Some(3) || !p.is_monic() {
        return Err(CubicFieldError::NotMonicIntegral);
    }
    let mut c = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
    for (i, ci) in c.iter_mut().enumerate() {
        let x = p.coeff(i);
        if !x.is_integer() {
            return Err(CubicFieldError::NotMonicIntegral);
        }
        *ci = x.to_integer();
    }
    Ok(c)
}

pub fn int_poly(c: &[BigInt; 3]) -> PolyQ {
    PolyQ::new(vec![
        Rat::from_integer(c[0].clone()),
        Rat::from_integer(c[1].clone()),
        Rat::from_integer(c[2].clone()),
        Rat::one(),
    ])
}

pub fn cubic_discriminant(c: &[BigInt; 3]) -> BigInt {
    let p: Poly<BigInt> = Poly::new(vec![c[0].clone(), c[1].clone(), c[2].clone(), BigInt::one()]);
    discriminant_monic(&p).expect("monic")
}

fn valuation(x: &BigInt, p: u64) -> u32 {
    if x.is_zero() {
        return u32::MAX;
    }
    let p = BigInt::from(p);
    let mut x = x.clone();
    let mut v = 0;
    while x.is_multiple_of(&p) {
        x /= &p;
        v += 1;
    }
    v
}

fn eval_mod(c: &[BigInt; 3], x: u64, p: u64) -> u64 {
    let pb = BigInt::from(p);
    let cm: Vec<u64> = c.iter().map(|v| v.mod_floor(&pb).to_u64().unwrap()).collect();
    let (x, p128) = (x as u128, p as u128);
    let mut acc: u128 = 1;
    for k in (0..3).rev() {
        acc = (acc * x + cm[k] as u128) % p128;
    }
    acc as u64
}

/// Roots of the cubic mod p with multiplicity (p small enough to scan).
fn roots_mod(c: &[BigInt; 3], p: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if p <= 100_000 {
        for r in 0..p {
            if eval_mod(c, r, p) == 0 {
                out.push(r);
            }
        }
    } else {
        out = roots_mod_large(c, p);
    }
    let pb = BigInt::from(p);
    out.into_iter()
        .map(|r| {
            // multiplicity from the derivatives at r
            let r_b = BigInt::from(r);
            let d1 = (BigInt::from(3) * &r_b * &r_b + BigInt::from(2) * &c[2] * &r_b + &c[1]).mod_floor(&pb);
            let d2 = (BigInt::from(3) * &r_b + &c[2]).mod_floor(&pb);
            let m = if !d1.is_zero() {
                1
            } else if !d2.is_zero() {
                2
            } else {
                3
            };
            (r, m)
        })
        .collect()
}

// Cantor–Zassenhaus style split via gcd with x^p − x, then random shifts.
fn roots_mod_large(c: &[BigInt; 3], p: u64) -> Vec<u64> {
    use crate::numcore::factor::{mulmod, powmod};
    let pb = BigInt::from(p);
    let f: Vec<u64> = vec![
        c[0].mod_floor(&pb).to_u64().unwrap(),
        c[1].mod_floor(&pb).to_u64().unwrap(),
        c[2].mod_floor(&pb).to_u64().unwrap(),
        1,
    ];
    let sub = |a: u64, b: u64| (a + p - b) % p;
    let trim = |mut v: Vec<u64>| {
        while v.len() > 1 && *v.last().unwrap() == 0 {
            v.pop();
        }
        v
    };
    let inv = |a: u64| powmod(a, p - 2, p);
    let rem = |a: &[u64], m: &[u64]| -> Vec<u64> {
        let mut a = a.to_vec();
        let dm = m.len() - 1;
        let li = inv(m[dm]);
        while a.len() > dm && !(a.len() == 1 && a[0] == 0) {
            let k = a.len() - 1;
            let q = mulmod(a[k], li, p);
            for i in 0..=dm {
                a[k - dm + i] = sub(a[k - dm + i], mulmod(q, m[i], p));
            }
            a = trim(a);
            if a.len() - 1 < dm {
                break;
            }
        }
        a
    };
    let mulm = |a: &[u64], b: &[u64], m: &[u64]| -> Vec<u64> {
        let mut r = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + mulmod(x, y, p)) % p;
            }
        }
        rem(&trim(r), m)
    };
    let powm = |base: &[u64], mut e: u64, m: &[u64]| -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut b = rem(base, m);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulm(&acc, &b, m);
            }
            b = mulm(&b, &b, m);
            e >>= 1;
        }
        acc
    };
    let gcd = |a: &[u64], b: &[u64]| -> Vec<u64> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !(b.len() == 1 && b[0] == 0) {
            let r = rem(&a, &b);
            a = b;
            b = trim(r);
        }
        let li = inv(*a.last().unwrap());
        a.iter().map(|&x| mulmod(x, li, p)).collect()
    };
    let xp = powm(&[0, 1], p, &f);
    let mut h = xp.clone();
    h.resize(h.len().max(2), 0);
    h[1] = sub(h[1], 1);
    let g = gcd(&f, &trim(h));
    let mut found = Vec::new();
    let mut stack = vec![g];
    let mut shift = 1u64;
    while let Some(g) = stack.pop() {
        match g.len() - 1 {
            0 => {}
            1 => found.push(sub(0, mulmod(g[0], inv(g[1]), p))),
            _ => {
                // gcd(g, (x+s)^((p−1)/2) − 1)
                let mut e = powm(&[shift % p, 1], (p - 1) / 2, &g);
                shift += 1;
                e.resize(e.len().max(1), 0);
                e[0] = sub(e[0], 1);
                let d = gcd(&g, &trim(e));
                let dd = d.len() - 1;
                if dd == 0 || dd == g.len() - 1 {
                    stack.push(g);
                } else {
                    let (q, _) = divide(&g, &d, p);
                    stack.push(d);
                    stack.push(q);
                }
            }
        }
    }
    found.sort_unstable();
    found.dedup();
    found
}

fn divide(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    use crate::numcore::factor::{mulmod, powmod};
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let li = powmod(b[db], p - 2, p);
    let mut q = vec![0u64; r.len().saturating_sub(db)];
    for k in (db..r.len()).rev() {
        let c = mulmod(r[k], li, p);
        q[k - db] = c;
        for i in 0..=db {
            r[k - db + i] = (r[k - db + i] + p - mulmod(c, b[i], p)) % p;
        }
    }
    r.truncate(db.max(1));
    (q, r)
}

/// Decomposition of p in the cyclic cubic field generated by a root of Z³ + c2Z² + c1Z + c0.
pub fn local_type(c: &[BigInt; 3], p: u64) -> Result<Splitting, CubicFieldError> {
    let mut c = c.clone();
    let pb = BigInt::from(p);
    for _ in 0..200 {
        let roots = roots_mod(&c, p);
        let triple = match roots.as_slice() {
            [] => return Ok(Splitting::Inert),
            [(_, 1)] => return Err(CubicFieldError::Inconsistent(p)),
            [(r, 3)] => *r,
            _ => return Ok(Splitting::Split),
        };
        // shift by the triple root, then read the Newton polygon
        let r = BigInt::from(triple);
        let b2 = &c[2] + BigInt::from(3) * &r;
        let b1 = &c[1] + BigInt::from(2) * &c[2] * &r + BigInt::from(3) * &r * &r;
        let b0 = &c[0] + &c[1] * &r + &c[2] * &r * &r + &r * &r * &r;
        let v0 = valuation(&b0, p);
        if v0 == u32::MAX {
            return Err(CubicFieldError::Reducible);
        }
        let (v1, v2) = (valuation(&b1, p), valuation(&b2, p));
        // single segment iff v_i ≥ v0·(3−i)/3
        let single = 3 * v1 as u64 >= 2 * v0 as u64 && 3 * v2 as u64 >= v0 as u64;
        if !single {
            return Ok(Splitting::Split);
        }
        if v0 % 3 != 0 {
            return Ok(Splitting::Ramified);
        }
        let k = v0 / 3;
        let pk = pb.pow(k);
        c = [b0 / pk.pow(3), b1 / pk.pow(2), b2 / pk];
    }
    unreachable!("Newton polygon descent did not terminate")
}

/// Dedekind criterion: Z[ξ] is p-maximal iff p² ∤ f(r) at every repeated root r mod p.
pub fn dedekind_maximal(c: &[BigInt; 3], p: u64) -> bool {
    let p2 = BigInt::from(p) * BigInt::from(p);
    roots_mod(c, p).into_iter().filter(|&(_, m)| m > 1).all(|(r, _)| {
        let r = BigInt::from(r);
        let v = &c[0] + &c[1] * &r + &c[2] * &r * &r + &r * &r * &r;
        !v.is_multiple_of(&p2)
    })
}

impl CubicField {
    pub fn from_cubic(p: &PolyQ) -> Result<CubicField, CubicFieldError> {
        let c = cubic_from_poly(p)?;
        let d = cubic_discriminant(&c);
        let root = square_root(&d).ok_or_else(|| CubicFieldError::NotCyclic(d.clone()))?;
        let primes: Vec<u64> = factor_big(root.magnitude())
            .into_iter()
            .map(|(q, _)| q.to_u64().expect("prime factor beyond u64"))
            .collect();
        Self::build(c, d, root, &primes)
    }

    /// As `from_cubic`, with the primes dividing √disc supplied by the caller.
    pub fn from_cubic_with_primes(p: &PolyQ, primes: &[u64]) -> Result<CubicField, CubicFieldError> {
        let c = cubic_from_poly(p)?;
        let d = cubic_discriminant(&c);
        let root = square_root(&d).ok_or_else(|| CubicFieldError::NotCyclic(d.clone()))?;
        let mut rest = root.magnitude().clone();
        for &q in primes {
            let qb = BigUint::from(q);
            while !rest.is_zero() && rest.is_multiple_of(&qb) {
                rest /= &qb;
            }
        }
        let mut primes = primes.to_vec();
        if !rest.is_one() {
            primes.extend(factor_big(&rest).into_iter().map(|(q, _)| q.to_u64().expect("prime factor beyond u64")));
        }
        Self::build(c, d, root, &primes)
    }

    fn build(c: [BigInt; 3], d: BigInt, root: BigInt, primes: &[u64]) -> Result<CubicField, CubicFieldError> {
        if d.is_zero() {
            return Err(CubicFieldError::Reducible);
        }
        let r = integer_roots_monic_cubic(&c[2], &c[1], &c[0]);
        if !r.is_empty() {
            return Err(CubicFieldError::Reducible);
        }
        let mut primes = primes.to_vec();
        primes.sort_unstable();
        primes.dedup();
        let mut conductor = BigUint::one();
        let mut ramified = Vec::new();
        let mut index_primes = Vec::new();
        for &q in &primes {
            let ram = local_type(&c, q)? == Splitting::Ramified;
            if ram {
                ramified.push(q);
                conductor *= if q == 3 { 9u32 } else { q as u32 };
            }
            let v_poly = valuation(&d, q);
            let v_field = if ram { 2 * if q == 3 { 2 } else { 1 } } else { 0 };
            if v_poly != v_field {
                index_primes.push(q);
            }
        }
        Ok(CubicField { c, poly_disc: d, disc_root: root, conductor, ramified, index_primes })
    }

    pub fn poly(&self) -> PolyQ {
        int_poly(&self.c)
    }

    pub fn field_discriminant(&self) -> BigUint {
        &self.conductor * &self.conductor
    }

    pub fn conductor_u64(&self) -> Option<u64> {
        self.conductor.to_u64()
    }

    /// Index [O_K : Z[ξ]] = √(poly disc / field disc).
    pub fn index(&self) -> BigUint {
        self.disc_root.magnitude() / &self.conductor
    }

    /// v_p(field disc) = v_p(poly disc) at every prime where Dedekind certifies maximality.
    pub fn dedekind_consistent(&self) -> bool {
        let mut primes: Vec<u64> = self.ramified.clone();
        primes.extend(&self.index_primes);
        primes.iter().all(|&q| !dedekind_maximal(&self.c, q) == self.index_primes.contains(&q))
    }

    pub fn splitting(&self, p: u64) -> Result<Splitting, CubicFieldError> {
        if self.ramified.contains(&p) {
            return Ok(Splitting::Ramified);
        }
        let pb = BigUint::from(p);
        if self.conductor.is_multiple_of(&pb) {
            return Ok(Splitting::Ramified);
        }
        local_type(&self.c, p)
    }

    pub fn field_k(&self) -> FieldK {
        CubicModulus::new(&self.poly()).expect("cyclic cubic")
    }

    /// Order-3 character pair mod the conductor with χ(p) = 1 ⇔ p splits.
    pub fn matching_character(&self) -> Result<(Character, Character), CubicFieldError> {
        let f = self.conductor.to_u64().ok_or(CubicFieldError::NoMatch(0))?;
        let reps: Vec<Character> = characters_of_order(f, 3).into_iter().filter(|c| c.comps[0].exp == 1).collect();
        let mut bound = 200;
        loop {
            let mut matches = Vec::new();
            for chi in &reps {
                let mut ok = true;
                for p in sieve(bound) {
                    if f % p == 0 {
                        continue;
                    }
                    let split = self.splitting(p)? == Splitting::Split;
                    if (chi.eval(p as i64) == Some(0)) != split {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    matches.push(chi.clone());
                }
            }
            match matches.len() {
                0 => return Err(CubicFieldError::NoMatch(f)),
                1 => {
                    let chi = matches.pop().unwrap();
                    let bar = chi.pow(2);
                    return Ok((chi, bar));
                }
                _ if bound < 500 => bound = 500,
                _ => return Err(CubicFieldError::Ambiguous(f, bound)),
            }
        }
    }

    /// Split proportion among unramified primes p ≤ bound.
    pub fn split_proportion(&self, bound: u64) -> Result<f64, CubicFieldError> {
        let (mut split, mut total) = (0usize, 0usize);
        for p in sieve(bound) {
            match self.splitting(p)? {
                Splitting::Ramified => continue,
                Splitting::Split => split += 1,
                Splitting::Inert => {}
            }
            total += 1;
        }
        Ok(split as f64 / total.max(1) as f64)
    }

    pub fn serialize(&self) -> String {
        format!("[{} {} {} 1];{}", self.c[0], self.c[1], self.c[2], self.conductor)
    }
}

pub fn galois_action(e: &KElem) -> Option<KElem> {
    e.galois()
}

pub fn square_root(d: &BigInt) -> Option<BigInt> {
    if d.sign() == Sign::Minus {
        return None;
    }
    let r = d.sqrt();
    (&r * &r == *d).then_some(r)
}

pub fn field_discriminant(p: &PolyQ) -> Result<BigUint, CubicFieldError> {
    CubicField::from_cubic(p).map(|k| k.field_discriminant())
}

pub fn conductor(field: &CubicField) -> BigUint {
    field.conductor.clone()
}
