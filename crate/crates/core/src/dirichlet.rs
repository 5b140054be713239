//! Primitive Dirichlet characters of odd prime order ℓ, stored as exponents on
//! generators of the cyclic factors (Z/q)* of (Z/f)*.

use std::fmt;

use num_complex::Complex;
use thiserror::Error;

use crate::numcore::factor::{factor, is_prime, mulmod, powmod};
use crate::numcore::real::Real;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Component {
    /// prime power modulus q (a prime p ≡ 1 mod ℓ, or ℓ²)
    pub q: u64,
    pub p: u64,
    /// generator of (Z/q)*
    pub gen: u64,
    /// χ(gen) = ζ_ℓ^exp
    pub exp: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Character {
    pub conductor: u64,
    pub order: u64,
    pub comps: Vec<Component>,
}

#[derive(Debug, Error, PartialEq)]
pub enum CharacterError {
    #[error("character is not primitive")]
    NotPrimitive,
    #[error("cannot parse character {0:?}")]
    Parse(String),
    #[error("no primitive order-{ell} character mod {f} with those exponents")]
    Inadmissible { f: u64, ell: u64 },
}

pub fn primitive_root(q: u64, p: u64) -> u64 {
    let phi = q / p * (p - 1);
    let fac = factor(phi);
    (2..q)
        .find(|&g| g % p != 0 && fac.primes().all(|r| powmod(g, phi / r, q) != 1))
        .expect("cyclic unit group")
}

/// Discrete log of h in the subgroup of order ℓ generated by γ (baby-step giant-step).
fn dlog_small(h: u64, gamma: u64, ell: u64, q: u64) -> u64 {
    let m = (ell as f64).sqrt().ceil() as u64;
    let mut baby = Vec::with_capacity(m as usize);
    let mut x = 1u64;
    for j in 0..m {
        baby.push((x, j));
        x = mulmod(x, gamma, q);
    }
    baby.sort_unstable();
    // γ^{−m}
    let step = powmod(gamma, ell - (m % ell), q);
    let mut y = h;
    for i in 0..=m {
        if let Ok(k) = baby.binary_search_by_key(&y, |&(v, _)| v) {
            return (i * m + baby[k].1) % ell;
        }
        y = mulmod(y, step, q);
    }
    panic!("element not in the order-ℓ subgroup")
}

impl Component {
    fn phi(&self) -> u64 {
        self.q / self.p * (self.p - 1)
    }

    /// exponent k with χ_q(a) = ζ^k, None when p | a.
    fn eval(&self, a: u64, ell: u64) -> Option<u64> {
        let a = a % self.q;
        if a % self.p == 0 {
            return None;
        }
        let e = self.phi() / ell;
        let h = powmod(a, e, self.q);
        let gamma = powmod(self.gen, e, self.q);
        let k = dlog_small(h, gamma, ell, self.q);
        Some(k * self.exp % ell)
    }
}

/// Admissible prime-power moduli for order ℓ: p ∥ f with p ≡ 1 (mod ℓ), or ℓ² ∥ f.
fn admissible_parts(f: u64, ell: u64) -> Option<Vec<(u64, u64)>> {
    let fac = factor(f);
    let mut parts = Vec::new();
    for &(p, e) in &fac.0 {
        if p == ell {
            if e != 2 {
                return None;
            }
            parts.push((ell * ell, ell));
        } else if e == 1 && p % ell == 1 {
            parts.push((p, p));
        } else {
            return None;
        }
    }
    Some(parts)
}

pub fn is_admissible_conductor(f: u64, ell: u64) -> bool {
    f > 1 && admissible_parts(f, ell).is_some()
}

/// All primitive characters mod f of order exactly ℓ, ordered by exponent vector.
pub fn characters_of_order(f: u64, ell: u64) -> Vec<Character> {
    assert!(ell % 2 == 1 && is_prime(ell), "ℓ must be an odd prime");
    if f <= 1 {
        return Vec::new();
    }
    let parts = match admissible_parts(f, ell) {
        Some(p) => p,
        None => return Vec::new(),
    };
    let gens: Vec<(u64, u64, u64)> = parts.iter().map(|&(q, p)| (q, p, primitive_root(q, p))).collect();
    let mut out = Vec::new();
    let k = gens.len();
    let mut exps = vec![1u64; k];
    loop {
        out.push(Character {
            conductor: f,
            order: ell,
            comps: gens
                .iter()
                .zip(&exps)
                .map(|(&(q, p, gen), &exp)| Component { q, p, gen, exp })
                .collect(),
        });
        // odometer over {1..ℓ−1}^k, last component fastest
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if exps[i] < ell - 1 {
                exps[i] += 1;
                break;
            }
            exps[i] = 1;
        }
    }
}

impl Character {
    pub fn trivial(ell: u64) -> Character {
        Character { conductor: 1, order: ell, comps: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn exponents(&self) -> Vec<u64> {
        self.comps.iter().map(|c| c.exp).collect()
    }

    /// χ(a) = ζ_ℓ^k; None when gcd(a, f) > 1.
    pub fn eval(&self, a: i64) -> Option<u64> {
        let f = self.conductor as i64;
        let a = a.rem_euclid(f.max(1)) as u64;
        let mut k = 0;
        for c in &self.comps {
            k += c.eval(a, self.order)?;
        }
        Some(k % self.order)
    }

    /// Exponent table over residues 0..f.
    pub fn table(&self) -> Vec<Option<u64>> {
        (0..self.conductor.max(1)).map(|a| self.eval(a as i64)).collect()
    }

    /// χ^j
    pub fn pow(&self, j: u64) -> Character {
        let mut c = self.clone();
        for comp in &mut c.comps {
            comp.exp = comp.exp * j % self.order;
        }
        c
    }

    /// Lexicographically smallest exponent vector in the orbit {χ^j}: first exponent 1.
    pub fn canonical(&self) -> Character {
        match self.comps.first() {
            None => self.clone(),
            Some(c) => self.pow(inverse_mod(c.exp, self.order)),
        }
    }

    /// The conjugates χ^j, j = 1..ℓ−1, starting with the canonical representative.
    pub fn orbit(&self) -> Vec<Character> {
        let rep = self.canonical();
        (1..self.order).map(|j| rep.pow(j)).collect()
    }

    /// j with self = canonical^j.
    pub fn orbit_index(&self) -> u64 {
        self.comps.first().map_or(1, |c| c.exp)
    }

    pub fn factor(&self) -> Vec<Character> {
        factor_character(self)
    }

    pub fn mul(&self, other: &Character) -> Result<Character, CharacterError> {
        let mut comps = self.comps.clone();
        for c in &other.comps {
            if comps.iter().any(|d| d.p == c.p) {
                return Err(CharacterError::Inadmissible { f: self.conductor * other.conductor, ell: self.order });
            }
            comps.push(c.clone());
        }
        comps.sort_by_key(|c| c.p);
        Ok(Character { conductor: self.conductor * other.conductor, order: self.order, comps })
    }

    pub fn id(&self) -> String {
        self.to_string()
    }

    pub fn parse(s: &str, ell: u64) -> Result<Character, CharacterError> {
        let err = || CharacterError::Parse(s.to_string());
        let inner = s.trim().strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(err)?;
        let (f, rest) = inner.split_once(';').unwrap_or((inner, ""));
        let f: u64 = f.trim().parse().map_err(|_| err())?;
        let mut wanted = Vec::new();
        for part in rest.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (q, e) = part.split_once(':').ok_or_else(err)?;
            let q: u64 = q.trim().parse().map_err(|_| err())?;
            let e: u64 = e.trim().parse().map_err(|_| err())?;
            wanted.push((q, e));
        }
        if f == 1 && wanted.is_empty() {
            return Ok(Character::trivial(ell));
        }
        characters_of_order(f, ell)
            .into_iter()
            .find(|c| c.comps.iter().map(|k| (k.q, k.exp)).eq(wanted.iter().copied()))
            .ok_or(CharacterError::Inadmissible { f, ell })
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.conductor)?;
        for (i, c) in self.comps.iter().enumerate() {
            write!(f, "{}{}:{}", if i == 0 { " " } else { ", " }, c.q, c.exp)?;
        }
        write!(f, ")")
    }
}

pub fn inverse_mod(a: u64, m: u64) -> u64 {
    (1..m).find(|&x| a * x % m == 1).expect("unit")
}

pub fn eval(chi: &Character, a: i64) -> Option<u64> {
    chi.eval(a)
}

/// Prime-power components as characters of their own conductors.
pub fn factor_character(chi: &Character) -> Vec<Character> {
    chi.comps
        .iter()
        .map(|c| Character { conductor: c.q, order: chi.order, comps: vec![c.clone()] })
        .collect()
}

/// All primitive order-ℓ characters with conductor ≤ X, by (conductor, exponent vector);
/// with dedup, one canonical representative per Galois orbit.
pub fn enumerate(ell: u64, x: u64, dedup: bool) -> Vec<Character> {
    let mut out = Vec::new();
    for f in 2..=x {
        for c in characters_of_order(f, ell) {
            if !dedup || c.comps[0].exp == 1 {
                out.push(c);
            }
        }
    }
    out
}

/// Gauss-sum class sums G_k = Σ_{χ(c)=k} e(c/f) at the given precision.
pub fn gauss_class_sums<R: Real>(table: &[Option<u64>], ell: u64, bits: u32) -> Vec<Complex<R>> {
    let f = table.len() as i64;
    let two_pi_f = R::pi(bits) * R::from_i64(bits, 2) / R::from_i64(bits, f);
    let mut g = vec![Complex::new(R::zero_prec(bits), R::zero_prec(bits)); ell as usize];
    for (c, k) in table.iter().enumerate() {
        if let Some(k) = k {
            let ang = two_pi_f.clone() * R::from_i64(bits, c as i64);
            let slot = &mut g[*k as usize];
            slot.re += &ang.cos();
            slot.im += &ang.sin();
        }
    }
    g
}

/// ζ_ℓ^k as a complex number.
pub fn zeta<R: Real>(ell: u64, k: u64, bits: u32) -> Complex<R> {
    let ang = R::pi(bits) * R::from_i64(bits, 2 * (k % ell) as i64) / R::from_i64(bits, ell as i64);
    Complex::new(ang.cos(), ang.sin())
}

/// τ(χ) with an a-priori rounding bound.
pub fn gauss_sum<R: Real>(chi: &Character, bits: u32) -> Result<(Complex<R>, f64), CharacterError> {
    if chi.is_trivial() {
        return Ok((Complex::new(R::from_i64(bits, 1), R::zero_prec(bits)), 0.0));
    }
    if !is_primitive(chi) {
        return Err(CharacterError::NotPrimitive);
    }
    let g = gauss_class_sums::<R>(&chi.table(), chi.order, bits);
    let mut tau = Complex::new(R::zero_prec(bits), R::zero_prec(bits));
    for (k, gk) in g.into_iter().enumerate() {
        tau = tau + zeta::<R>(chi.order, k as u64, bits) * gk;
    }
    let err = 16.0 * chi.conductor as f64 * R::epsilon(bits);
    Ok((tau, err))
}

/// For each proper divisor d of f, some a ≡ 1 (mod d) coprime to f has χ(a) ≠ 1.
pub fn is_primitive(chi: &Character) -> bool {
    let f = chi.conductor;
    if f == 1 {
        return true;
    }
    let table = chi.table();
    factor(f).primes().all(|p| {
        let d = f / p;
        (0..p).map(|k| 1 + k * d).any(|a| matches!(table[(a % f) as usize], Some(e) if e != 0))
    })
}
