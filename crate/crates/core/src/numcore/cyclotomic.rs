use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use thiserror::Error;

use super::real::Real;
use super::ring::Ring;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("cyclotomic rings differ: ℓ = {0} vs ℓ = {1}")]
pub struct MismatchedEll(pub u64, pub u64);

/// Element Σ c_k ζ^k of Z[ζ_ℓ] (or R[ζ_ℓ]) in the power basis 1, ζ, …, ζ^{ℓ−2}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cyclotomic<T> {
    ell: u64,
    coeffs: Vec<T>,
}

pub type CyclotomicInt = Cyclotomic<BigInt>;

impl<T: Ring> Cyclotomic<T> {
    pub fn zero(ell: u64) -> Self {
        Cyclotomic { ell, coeffs: vec![T::zero(); (ell - 1) as usize] }
    }

    pub fn from_coeffs(ell: u64, coeffs: Vec<T>) -> Self {
        assert_eq!(coeffs.len() as u64, ell - 1, "power basis has ℓ−1 entries");
        Cyclotomic { ell, coeffs }
    }

    /// Reduce Σ_{k} a_k ζ^k for arbitrary k ≥ 0.
    pub fn from_powers(ell: u64, powers: &[(u64, T)]) -> Self {
        let l = ell as usize;
        let mut full = vec![T::zero(); l];
        for (k, c) in powers {
            let i = (*k % ell) as usize;
            full[i] = full[i].clone() + c.clone();
        }
        Self::fold(ell, full)
    }

    // length-ℓ vector indexed mod ℓ → basis of length ℓ−1 using ζ^{ℓ−1} = −Σ_{k<ℓ−1} ζ^k
    fn fold(ell: u64, mut full: Vec<T>) -> Self {
        let top = full.pop().unwrap();
        let coeffs = full.into_iter().map(|c| c - top.clone()).collect();
        Cyclotomic { ell, coeffs }
    }

    pub fn zeta_pow(ell: u64, k: u64) -> Self {
        Self::from_powers(ell, &[(k, T::one())])
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self, MismatchedEll> {
        if self.ell != rhs.ell {
            return Err(MismatchedEll(self.ell, rhs.ell));
        }
        let l = self.ell as usize;
        let mut full = vec![T::zero(); l];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let k = (i + j) % l;
                full[k] = full[k].clone() + a.clone() * b.clone();
            }
        }
        Ok(Self::fold(self.ell, full))
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, MismatchedEll> {
        if self.ell != rhs.ell {
            return Err(MismatchedEll(self.ell, rhs.ell));
        }
        Ok(Cyclotomic {
            ell: self.ell,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.clone() + b.clone()).collect(),
        })
    }

    /// Galois action ζ ↦ ζ^j.
    pub fn conjugate(&self, j: u64) -> Self {
        let powers: Vec<(u64, T)> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| ((k as u64 * j) % self.ell, c.clone()))
            .collect();
        Self::from_powers(self.ell, &powers)
    }
}

impl Cyclotomic<BigInt> {
    /// Image under ζ ↦ 1 in Z/ℓ.
    pub fn reduce_mod_lambda(&self) -> u64 {
        let s: BigInt = self.coeffs.iter().sum();
        s.mod_floor(&BigInt::from(self.ell)).to_u64().unwrap()
    }

    /// Σ_t S_t ζ^{−jt}
    pub fn from_coset_sums(s: &[BigInt], j: u64) -> Self {
        let ell = s.len() as u64;
        let powers: Vec<(u64, BigInt)> = s
            .iter()
            .enumerate()
            .map(|(t, c)| (((ell - (t as u64 * j) % ell) % ell), c.clone()))
            .collect();
        Self::from_powers(ell, &powers)
    }

    pub fn to_complex<R: Real>(&self, bits: u32) -> Complex<R> {
        let two_pi_l = R::pi(bits) * R::from_i64(bits, 2) / R::from_i64(bits, self.ell as i64);
        let mut acc = Complex::new(R::zero_prec(bits), R::zero_prec(bits));
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let ang = two_pi_l.clone() * R::from_i64(bits, k as i64);
            let cr = R::from_bigint(bits, c);
            acc = acc + Complex::new(ang.cos() * cr.clone(), ang.sin() * cr);
        }
        acc
    }
}

impl<T: Ring> Add for Cyclotomic<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.try_add(&rhs).expect("same ℓ")
    }
}

impl<T: Ring> Sub for Cyclotomic<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.try_add(&(-rhs)).expect("same ℓ")
    }
}

impl<T: Ring> Neg for Cyclotomic<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Cyclotomic { ell: self.ell, coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl<T: Ring> Mul for Cyclotomic<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.try_mul(&rhs).expect("same ℓ")
    }
}

pub fn cyclo_mul(a: &CyclotomicInt, b: &CyclotomicInt) -> Result<CyclotomicInt, MismatchedEll> {
    a.try_mul(b)
}

pub fn reduce_mod_lambda(a: &CyclotomicInt) -> u64 {
    a.reduce_mod_lambda()
}
