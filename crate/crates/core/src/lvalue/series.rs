use num_complex::Complex;
use num_integer::Integer;
use thiserror::Error;

use crate::dirichlet::{gauss_class_sums, zeta, Character};
use crate::elliptic::{CurveError, CurveQ};
use crate::numcore::real::Real;

/// Largest truncation length the series engine will use.
pub const TERM_CAP: usize = 1_000_000;

#[derive(Debug, Error, PartialEq)]
pub enum LError {
    #[error("twist conductor {f} is not coprime to N = {n}")]
    UnsupportedTwist { f: u64, n: u64 },
    #[error("target error {target:e} needs {needed} terms (cap {TERM_CAP})")]
    Precision { target: f64, needed: usize },
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("{0}")]
    Recognition(String),
    #[error("calibration failed: {0}")]
    Calibration(String),
    #[error("inverse DFT inconsistent: {0}")]
    Dft(String),
    #[error("character error: {0}")]
    Character(String),
}

/// A computed value with its rigorous-by-construction error bound.
#[derive(Clone, Debug)]
pub struct LValue<R> {
    pub value: Complex<R>,
    pub err: f64,
    pub terms: usize,
}

fn tail(c: f64, m: usize) -> f64 {
    2.0 * (-c * (m as f64 + 1.0)).exp() / (1.0 - (-c).exp())
}

/// Terms needed so that both series tails (decay rates c1, c2) sum below target.
pub fn terms_needed(c1: f64, c2: f64, target: f64) -> usize {
    let c = c1.min(c2);
    let guess = ((8.0 / (target * (1.0 - (-c).exp()))).ln() / c).ceil().max(1.0) as usize;
    let mut m = guess.saturating_sub(guess / 10).max(1);
    while tail(c1, m) + tail(c2, m) > target {
        m += 1 + m / 100;
    }
    m
}

/// P_k = Σ_{n ≤ M, χ(n) = ζ^k} (a_n/n) qⁿ, with q = exp(−decay).
pub fn class_sums<R: Real>(an: &[i64], table: &[Option<u64>], ell: u64, m: usize, decay: &R, bits: u32) -> Vec<R> {
    let f = table.len();
    let q = (-decay.clone()).exp();
    let mut qn = R::from_i64(bits, 1);
    let mut p = vec![R::zero_prec(bits); ell as usize];
    for n in 1..=m {
        qn *= &q;
        let a = an[n];
        if a == 0 {
            continue;
        }
        if let Some(k) = table[n % f] {
            let term = qn.mul_ratio(a, n as u64);
            p[k as usize] += &term;
        }
    }
    p
}

/// Series data shared by the conjugates χ^j of one orbit.
pub struct OrbitSeries<R> {
    pub ell: u64,
    pub f: u64,
    pub p1: Vec<R>,
    pub p2: Vec<R>,
    pub gauss: Vec<Complex<R>>,
    pub chi_n: u64,
    pub err: f64,
    pub terms: usize,
    pub bits: u32,
}

/// Evaluate the class sums for the orbit of χ with splitting parameter t.
pub fn orbit_series<R: Real>(
    curve: &CurveQ,
    chi: &Character,
    target_err: f64,
    bits: u32,
    t: f64,
) -> Result<OrbitSeries<R>, LError> {
    let f = chi.conductor;
    let n = curve.conductor;
    if f.gcd(&n) != 1 {
        return Err(LError::UnsupportedTwist { f, n });
    }
    let ell = chi.order;
    let a = (f as f64) * (n as f64).sqrt();
    let two_pi = 2.0 * std::f64::consts::PI;
    let (c1, c2) = (two_pi * t / a, two_pi / (t * a));
    let m = terms_needed(c1, c2, target_err / 2.0);
    if m > TERM_CAP {
        return Err(LError::Precision { target: target_err, needed: m });
    }
    let an = curve.an_table(m)?;
    let table: Vec<Option<u64>> = if chi.is_trivial() { vec![Some(0)] } else { chi.table() };
    let a_r = R::from_i64(bits, f as i64) * R::from_i64(bits, n as i64).sqrt();
    let two_pi_r = R::pi(bits) * R::from_i64(bits, 2);
    let t_r = R::from_f64(bits, t);
    let d1 = two_pi_r.clone() * t_r.clone() / a_r.clone();
    let p1 = class_sums(&an, &table, ell, m, &d1, bits);
    let p2 = if t == 1.0 {
        p1.clone()
    } else {
        let d2 = two_pi_r / (t_r * a_r);
        class_sums(&an, &table, ell, m, &d2, bits)
    };
    let gauss = if chi.is_trivial() {
        let mut g = vec![Complex::new(R::zero_prec(bits), R::zero_prec(bits)); ell as usize];
        g[0] = Complex::new(R::from_i64(bits, 1), R::zero_prec(bits));
        g
    } else {
        gauss_class_sums(&table, ell, bits)
    };
    let chi_n = if chi.is_trivial() { 0 } else { chi.eval(n as i64).expect("coprime") };
    let rounding = 256.0 * (m as f64 + f as f64) * R::epsilon(bits) * (m as f64).ln().max(1.0);
    Ok(OrbitSeries {
        ell,
        f,
        p1,
        p2,
        gauss,
        chi_n,
        err: tail(c1, m) + tail(c2, m) + rounding,
        terms: m,
        bits,
    })
}

impl<R: Real> OrbitSeries<R> {
    /// τ(χ^j)
    pub fn tau(&self, j: u64) -> Complex<R> {
        let mut tau = Complex::new(R::zero_prec(self.bits), R::zero_prec(self.bits));
        for (k, g) in self.gauss.iter().enumerate() {
            tau = tau + zeta::<R>(self.ell, j * k as u64, self.bits) * g.clone();
        }
        tau
    }

    /// L(E, 1, χ^j) for the orbit representative χ; j = 0 gives the trivial twist only when f = 1.
    pub fn value(&self, j: u64, root_number: i8) -> LValue<R> {
        let bits = self.bits;
        let ell = self.ell;
        let zero = || Complex::new(R::zero_prec(bits), R::zero_prec(bits));
        let mut s1 = zero();
        let mut s2 = zero();
        for (k, (a, b)) in self.p1.iter().zip(&self.p2).enumerate() {
            let k = k as u64;
            s1 = s1 + zeta::<R>(ell, j * k, bits) * a.clone();
            s2 = s2 + zeta::<R>(ell, (ell - (j * k) % ell) % ell, bits) * b.clone();
        }
        let tau = self.tau(j);
        let f_r = R::from_i64(bits, self.f as i64);
        let eps = zeta::<R>(ell, (j * self.chi_n) % ell, bits) * (tau.clone() * tau)
            * Complex::new(R::from_i64(bits, root_number as i64) / f_r, R::zero_prec(bits));
        LValue { value: s1 + eps * s2, err: self.err, terms: self.terms }
    }
}

/// L(E, 1, χ) for a single primitive (or trivial) character.
pub fn central_value<R: Real>(curve: &CurveQ, chi: &Character, target_err: f64, bits: u32) -> Result<LValue<R>, LError> {
    central_value_t(curve, chi, target_err, bits, 1.0)
}

/// The same value from the functional-equation split at parameter t > 0.
pub fn central_value_t<R: Real>(
    curve: &CurveQ,
    chi: &Character,
    target_err: f64,
    bits: u32,
    t: f64,
) -> Result<LValue<R>, LError> {
    let series = orbit_series::<R>(curve, chi, target_err, bits, t)?;
    Ok(series.value(1, curve.root_number))
}
