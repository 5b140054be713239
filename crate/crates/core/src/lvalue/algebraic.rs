use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::series::{central_value, orbit_series, LError, OrbitSeries};
use crate::dirichlet::{enumerate, zeta, Character};
use crate::elliptic::{real_period, CurveQ};
use crate::numcore::cyclotomic::CyclotomicInt;
use crate::numcore::factor::factor;
use crate::numcore::real::{digits_to_bits, Real};
use crate::numcore::recognize::{rational_gcd, recognize_integer, recognize_rational, DEFAULT_TOL};
use crate::numcore::ring::{fmt_rat, Rat};

/// Number of orbits used to fix the period scaling.
pub const CALIBRATION_ORBITS: usize = 10;

/// Real period and the rational scaling c actually used: S-values are in units of c·Ω.
#[derive(Clone, Debug, PartialEq)]
pub struct OmegaNormalization {
    pub omega: f64,
    pub scale: Rat,
}

/// Exact coset sums S_t for one orbit plus the reconstructed algebraic parts.
#[derive(Clone, Debug, PartialEq)]
pub struct CosetSums {
    pub ell: u64,
    pub conductor: u64,
    pub s: Vec<BigInt>,
    /// Σ_t S_t from the Hecke recursion
    pub s0: BigInt,
    pub omega_used: OmegaNormalization,
    /// max distance of the real DFT outputs from the recognized integers (imaginary parts included)
    pub residual: f64,
    /// L^alg(χ^j) = Σ_t S_t ζ^{−jt}, j = 1..ℓ−1
    pub l_alg: Vec<CyclotomicInt>,
}

impl CosetSums {
    pub fn is_constant(&self) -> bool {
        self.s.windows(2).all(|w| w[0] == w[1])
    }

    pub fn s_vector(&self) -> String {
        let parts: Vec<String> = self.s.iter().map(|v| v.to_string()).collect();
        format!("[{}]", parts.join(" "))
    }

    /// S-vector of the conjugate χ^j: S_t(χ^j) = S_{t/j}(χ).
    pub fn for_power(&self, j: u64) -> Vec<BigInt> {
        let ell = self.ell;
        let jinv = crate::dirichlet::inverse_mod(j % ell, ell);
        (0..ell).map(|t| self.s[((t * jinv) % ell) as usize].clone()).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Decision {
    Vanishes,
    Nonzero,
    Undecided,
}

impl Decision {
    pub fn as_str(self) -> &'static str {
        match self {
            Decision::Vanishes => "vanishes",
            Decision::Nonzero => "nonzero",
            Decision::Undecided => "undecided",
        }
    }

    pub fn parse(s: &str) -> Option<Decision> {
        match s {
            "vanishes" => Some(Decision::Vanishes),
            "nonzero" => Some(Decision::Nonzero),
            "undecided" => Some(Decision::Undecided),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct TwistRecord {
    pub label: String,
    pub character: Character,
    pub l_value: Complex<f64>,
    pub error_bound: f64,
    pub l_alg: Option<CyclotomicInt>,
    pub coset_sums: Option<CosetSums>,
    pub decision: Decision,
    pub digits: u32,
    pub note: String,
    /// integrality or consistency failure surviving the whole ladder
    pub alarm: Option<String>,
}

impl TwistRecord {
    pub const HEADER: [&'static str; 8] = ["label", "f", "character-id", "Re L", "Im L", "err", "S-vector", "decision"];

    pub fn csv_record(&self) -> [String; 8] {
        [
            self.label.clone(),
            self.character.conductor.to_string(),
            self.character.id(),
            format!("{:.12e}", self.l_value.re),
            format!("{:.12e}", self.l_value.im),
            format!("{:.3e}", self.error_bound),
            self.coset_sums.as_ref().map(|c| c.s_vector()).unwrap_or_default(),
            self.decision.as_str().to_string(),
        ]
    }
}

/// Vanishes iff the S-vector is constant; nonzero iff |L| > 10·err; otherwise undecided.
pub fn vanishing_decision(record: &TwistRecord) -> Decision {
    let big = record.l_value.norm() > 10.0 * record.error_bound;
    match &record.coset_sums {
        Some(cs) if cs.is_constant() => {
            if big {
                Decision::Undecided
            } else {
                Decision::Vanishes
            }
        }
        _ if big => Decision::Nonzero,
        _ => Decision::Undecided,
    }
}

/// S_f(f) = L^alg(E,1)·∏_{p | f, p ≠ ℓ}(a_p − δ(p) − 1)·[(a_ℓ−1)(a_ℓ−δ(ℓ)) − δ(ℓ)ℓ if ℓ² | f].
pub fn trivial_coset_sum(curve: &CurveQ, f: u64, ell: u64, lalg_e1: &Rat) -> Result<Rat, LError> {
    Ok(lalg_e1 * Rat::from_integer(BigInt::from(hecke_factor(curve, f, ell, None)?)))
}

/// The integer multiplier of the recursion; `exact` adds the −δ(ℓ)ℓ term at ℓ².
/// `ap_override` replaces a_p values (fault injection).
pub fn hecke_factor_with(
    curve: &CurveQ,
    f: u64,
    ell: u64,
    exact: bool,
    ap_override: Option<(u64, i64)>,
) -> Result<i64, LError> {
    let ap = |p: u64| -> Result<i64, LError> {
        match ap_override {
            Some((q, v)) if q == p => Ok(v),
            _ => Ok(curve.ap(p)?),
        }
    };
    let mut out = 1i64;
    for (p, e) in factor(f).0 {
        let d = curve.delta(p);
        let a = ap(p)?;
        if p == ell && e == 2 {
            let mut m = (a - 1) * (a - d);
            if exact {
                m -= d * ell as i64;
            }
            out *= m;
        } else {
            out *= a - d - 1;
        }
    }
    Ok(out)
}

fn hecke_factor(curve: &CurveQ, f: u64, ell: u64, ap_override: Option<(u64, i64)>) -> Result<i64, LError> {
    hecke_factor_with(curve, f, ell, true, ap_override)
}

struct Level<R> {
    digits: u32,
    bits: u32,
    omega: R,
}

/// Per-curve, per-ℓ engine: period, L^alg(E,1), frozen scaling c, precision ladder.
pub struct TwistEngine<R: Real> {
    pub curve: Arc<CurveQ>,
    pub ell: u64,
    pub ladder: Vec<u32>,
    levels: Vec<OnceLock<Level<R>>>,
    /// 2L(E,1)/Ω as a rational
    pub lalg_e1_raw: Rat,
    pub scale: Rat,
    pub tol: f64,
}

fn ladder_for(digits: u32) -> Vec<u32> {
    vec![digits, digits * 8 / 5, digits * 12 / 5]
}

impl<R: Real> TwistEngine<R> {
    pub fn new(curve: Arc<CurveQ>, ell: u64, digits: u32) -> Result<Self, LError> {
        let ladder = ladder_for(digits);
        let levels = ladder.iter().map(|_| OnceLock::new()).collect();
        let mut eng = TwistEngine {
            curve,
            ell,
            ladder,
            levels,
            lalg_e1_raw: Rat::zero(),
            scale: Rat::one(),
            tol: DEFAULT_TOL,
        };
        eng.lalg_e1_raw = eng.compute_lalg_e1()?;
        eng.scale = eng.calibrate()?;
        Ok(eng)
    }

    fn level(&self, i: usize) -> &Level<R> {
        self.levels[i].get_or_init(|| {
            let digits = self.ladder[i];
            let bits = digits_to_bits(digits);
            Level { digits, bits, omega: real_period::<R>(&self.curve, bits) }
        })
    }

    pub fn omega(&self) -> f64 {
        self.level(0).omega.to_f64()
    }

    pub fn normalization(&self) -> OmegaNormalization {
        OmegaNormalization { omega: self.omega(), scale: self.scale.clone() }
    }

    fn target(digits: u32) -> f64 {
        10f64.powi(-(digits as i32) / 2)
    }

    fn compute_lalg_e1(&self) -> Result<Rat, LError> {
        let lv = self.level(0);
        let l = central_value::<R>(&self.curve, &Character::trivial(self.ell), Self::target(lv.digits), lv.bits)?;
        let x = l.value.re * R::from_i64(lv.bits, 2) / lv.omega.clone();
        recognize_rational(&x, 10_000, 1e-12).map_err(|e| LError::Recognition(format!("L^alg(E,1): {e}")))
    }

    /// Exact S_f(f) in units of c·Ω.
    pub fn exact_s0(&self, f: u64) -> Result<BigInt, LError> {
        let s = trivial_coset_sum(&self.curve, f, self.ell, &self.lalg_e1_raw)? / &self.scale;
        if !s.is_integer() {
            return Err(LError::Recognition(format!("S_f(f) = {} is not integral in units of c·Ω", fmt_rat(&s))));
        }
        Ok(s.to_integer())
    }

    /// Raw (c = 1) real DFT outputs and their imaginary leftovers.
    fn raw_coset_values(&self, series: &OrbitSeries<R>, s0_raw: &Rat, omega: &R) -> (Vec<R>, Vec<f64>, f64) {
        let bits = series.bits;
        let ell = self.ell;
        let two_f = R::from_i64(bits, 2 * series.f as i64);
        let mut lalg: Vec<Complex<R>> = Vec::new();
        for j in 1..ell {
            let l = series.value(j, self.curve.root_number);
            let tau = series.tau(j);
            let scale = Complex::new(two_f.clone() / omega.clone(), R::zero_prec(bits));
            lalg.push(l.value * scale / tau);
        }
        let s0 = R::from_ratio(bits, s0_raw.numer(), s0_raw.denom());
        let mut re = Vec::new();
        let mut im = Vec::new();
        for t in 0..ell {
            let mut acc = Complex::new(s0.clone(), R::zero_prec(bits));
            for j in 1..ell {
                acc = acc + lalg[(j - 1) as usize].clone() * zeta::<R>(ell, (j * t) % ell, bits);
            }
            let ell_r = R::from_i64(bits, ell as i64);
            re.push(acc.re / ell_r.clone());
            im.push((acc.im / ell_r).to_f64().abs());
        }
        let err_alg = 2.0 * (series.f as f64).sqrt() / omega.to_f64() * series.err;
        (re, im, err_alg)
    }

    fn calibrate(&self) -> Result<Rat, LError> {
        let lv = self.level(0);
        let mut values = vec![self.lalg_e1_raw.clone()];
        let mut x = 7;
        let mut orbits = Vec::new();
        while orbits.len() < CALIBRATION_ORBITS {
            x *= 2;
            orbits = enumerate(self.ell, x, true)
                .into_iter()
                .filter(|c| c.conductor.gcd(&self.curve.conductor) == 1)
                .take(CALIBRATION_ORBITS)
                .collect();
        }
        for chi in &orbits {
            let series = orbit_series::<R>(&self.curve, chi, Self::target(lv.digits), lv.bits, 1.0)?;
            let s0_raw = trivial_coset_sum(&self.curve, chi.conductor, self.ell, &self.lalg_e1_raw)?;
            let (re, _, _) = self.raw_coset_values(&series, &s0_raw, &lv.omega);
            for v in re {
                let r = recognize_rational(&v, 1000, 1e-8)
                    .map_err(|e| LError::Calibration(format!("orbit {chi}: {e}")))?;
                values.push(r);
            }
        }
        Ok(rational_gcd(&values).unwrap_or_else(Rat::one))
    }

    /// Coset sums of the orbit of χ at ladder rung i.
    pub fn algebraic_part_at(&self, chi: &Character, i: usize) -> Result<(CosetSums, OrbitSeries<R>), LError> {
        let lv = self.level(i);
        let rep = chi.canonical();
        let series = orbit_series::<R>(&self.curve, &rep, Self::target(lv.digits), lv.bits, 1.0)?;
        let s0 = self.exact_s0(rep.conductor)?;
        let s0_raw = Rat::from_integer(s0.clone()) * &self.scale;
        let (re, im, err_alg) = self.raw_coset_values(&series, &s0_raw, &lv.omega);
        let c = R::from_ratio(lv.bits, self.scale.numer(), self.scale.denom());
        let err = err_alg / self.scale.to_f64().unwrap();
        let mut s = Vec::new();
        let mut residual: f64 = 0.0;
        for (t, v) in re.into_iter().enumerate() {
            let (m, r) = recognize_integer(&(v / c.clone()), err.min(0.2), self.tol).map_err(|e| {
                LError::Recognition(format!("orbit {rep} S_{t} at {} digits: {e}", lv.digits))
            })?;
            residual = residual.max(r).max(im[t] / self.scale.to_f64().unwrap());
            s.push(m);
        }
        if residual > self.tol {
            return Err(LError::Recognition(format!("orbit {rep}: imaginary residual {residual:e}")));
        }
        let total: BigInt = s.iter().sum();
        if total != s0 {
            return Err(LError::Dft(format!("Σ S_t = {total} but S_f(f) = {s0}")));
        }
        let l_alg = (1..self.ell).map(|j| CyclotomicInt::from_coset_sums(&s, j)).collect();
        let cs = CosetSums {
            ell: self.ell,
            conductor: rep.conductor,
            s,
            s0,
            omega_used: self.normalization(),
            residual,
            l_alg,
        };
        self.check_reconstruction(&cs, &series, &lv.omega, lv.bits)?;
        Ok((cs, series))
    }

    // Σ_t S_t ζ^{−jt}·c·Ω·τ/(2f) must reproduce each numeric L(χ^j).
    fn check_reconstruction(&self, cs: &CosetSums, series: &OrbitSeries<R>, omega: &R, bits: u32) -> Result<(), LError> {
        let c = R::from_ratio(bits, self.scale.numer(), self.scale.denom());
        for j in 1..self.ell {
            let exact = cs.l_alg[(j - 1) as usize].to_complex::<R>(bits);
            let back = exact * series.tau(j)
                * Complex::new(c.clone() * omega.clone() / R::from_i64(bits, 2 * cs.conductor as i64), R::zero_prec(bits));
            let numeric = series.value(j, self.curve.root_number).value;
            let diff = (back - numeric).norm_sqr().to_f64().sqrt();
            let allowed = series.err * 10.0
                + self.tol * self.scale.to_f64().unwrap() * omega.to_f64() / (cs.conductor as f64).sqrt() * self.ell as f64;
            if diff > allowed {
                return Err(LError::Dft(format!("conjugate {j}: |Δ| = {diff:e} > {allowed:e}")));
            }
        }
        Ok(())
    }

    pub fn algebraic_part(&self, chi: &Character) -> Result<CosetSums, LError> {
        self.algebraic_part_at(chi, 0).map(|r| r.0)
    }

    /// Record for χ itself, escalating precision along the ladder when undecided.
    pub fn twist_record(&self, chi: &Character) -> TwistRecord {
        let mut note = String::new();
        let mut alarm = None;
        let mut last: Option<TwistRecord> = None;
        for i in 0..self.ladder.len() {
            let digits = self.ladder[i];
            match self.algebraic_part_at(chi, i) {
                Ok((cs, series)) => {
                    let j = chi.orbit_index();
                    let lv = series.value(j, self.curve.root_number);
                    let mut rec = TwistRecord {
                        label: self.curve.label.clone(),
                        character: chi.clone(),
                        l_value: Complex::new(lv.value.re.to_f64(), lv.value.im.to_f64()),
                        error_bound: lv.err,
                        l_alg: Some(cs.l_alg[(j - 1) as usize].clone()),
                        coset_sums: Some(cs),
                        decision: Decision::Undecided,
                        digits,
                        note: note.clone(),
                        alarm: None,
                    };
                    rec.decision = vanishing_decision(&rec);
                    if rec.decision != Decision::Undecided {
                        return rec;
                    }
                    alarm = None;
                    note = format!("undecided at {digits} digits");
                    if rec.coset_sums.as_ref().is_some_and(|c| c.is_constant()) {
                        note = format!("constant S-vector with |L| > 10·err at {digits} digits");
                        alarm = Some(note.clone());
                    }
                    rec.note = note.clone();
                    last = Some(rec);
                }
                Err(LError::Recognition(m)) | Err(LError::Dft(m)) => {
                    note = m;
                    alarm = Some(note.clone());
                }
                Err(e) => {
                    note = e.to_string();
                    break;
                }
            }
        }
        last.map(|mut r| {
            r.note = note.clone();
            r.alarm = alarm.clone();
            r
        })
        .unwrap_or_else(|| TwistRecord {
            label: self.curve.label.clone(),
            character: chi.clone(),
            l_value: Complex::new(f64::NAN, f64::NAN),
            error_bound: f64::NAN,
            l_alg: None,
            coset_sums: None,
            decision: Decision::Undecided,
            digits: *self.ladder.last().unwrap(),
            note,
            alarm,
        })
    }

    /// L^alg(E,1) in units of c·Ω.
    pub fn lalg_e1(&self) -> Rat {
        &self.lalg_e1_raw / &self.scale
    }
}

/// Both sides of the congruence for (χ, ψ) in Z/ℓ, with all intermediate integers.
#[derive(Clone, Debug)]
pub struct CongruenceReport {
    pub chi: Character,
    pub psi: Character,
    pub s_product: Vec<BigInt>,
    pub s_chi: Vec<BigInt>,
    pub factor: i64,
    pub lhs: u64,
    pub rhs: u64,
    pub residual: f64,
    pub pass: bool,
}

impl CongruenceReport {
    pub fn diagnostic(&self) -> String {
        format!(
            "chi={} psi={} S(chi*psi)={:?} S(chi)={:?} factor={} lhs={} rhs={} residual={:e}",
            self.chi, self.psi, self.s_product, self.s_chi, self.factor, self.lhs, self.rhs, self.residual
        )
    }
}

fn reduce_mod(x: &BigInt, ell: u64) -> u64 {
    x.mod_floor(&BigInt::from(ell)).to_u64().unwrap()
}

/// L^alg(χψ) ≡ factor(ψ)·L^alg(χ) (mod 𝔩).
pub fn congruence_check<R: Real>(
    engine: &TwistEngine<R>,
    chi: &Character,
    psi: &Character,
    ap_override: Option<(u64, i64)>,
) -> Result<CongruenceReport, LError> {
    congruence_with(engine, &|c: &Character| engine.algebraic_part(c), chi, psi, ap_override)
}

/// As `congruence_check`, with coset sums supplied by the caller (for example from a cache).
pub fn congruence_with<R: Real>(
    engine: &TwistEngine<R>,
    sums: &dyn Fn(&Character) -> Result<CosetSums, LError>,
    chi: &Character,
    psi: &Character,
    ap_override: Option<(u64, i64)>,
) -> Result<CongruenceReport, LError> {
    let ell = engine.ell;
    let prod = chi.mul(psi).map_err(|e| LError::Character(e.to_string()))?;
    let cs_prod = sums(&prod.canonical())?;
    let s_product = cs_prod.for_power(prod.orbit_index());
    let lhs = CyclotomicInt::from_coset_sums(&s_product, 1).reduce_mod_lambda();
    let (s_chi, rhs_alg, residual) = if chi.is_trivial() {
        let l = engine.lalg_e1();
        if !l.is_integer() {
            return Err(LError::Recognition(format!("L^alg(E,1) = {} not integral", fmt_rat(&l))));
        }
        (vec![l.to_integer()], reduce_mod(&l.to_integer(), ell), cs_prod.residual)
    } else {
        let cs = sums(&chi.canonical())?;
        let s = cs.for_power(chi.orbit_index());
        let r = CyclotomicInt::from_coset_sums(&s, 1).reduce_mod_lambda();
        (s, r, cs.residual.max(cs_prod.residual))
    };
    let factor = hecke_factor(&engine.curve, psi.conductor, ell, ap_override)?;
    let rhs = (factor.rem_euclid(ell as i64) as u64 * rhs_alg) % ell;
    Ok(CongruenceReport {
        chi: chi.clone(),
        psi: psi.clone(),
        s_product,
        s_chi,
        factor,
        lhs,
        rhs,
        residual,
        pass: lhs == rhs,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum NonvanishingSet {
    Primes { primes: Vec<u64>, density: f64, candidates: usize },
    HypothesisFailure { lalg_e1: Rat },
}

/// Primes p ≤ bound, p ≡ 1 (mod ℓ), p ∤ N, a_p ≢ 2 (mod ℓ), provided L^alg(E,1) ≢ 0 (mod ℓ).
pub fn nonvanishing_prime_set<R: Real>(engine: &TwistEngine<R>, bound: u64) -> Result<NonvanishingSet, LError> {
    let ell = engine.ell;
    let l = engine.lalg_e1();
    let l_mod = if l.is_integer() {
        reduce_mod(&l.to_integer(), ell)
    } else {
        // a denominator prime to ℓ still gives a residue; one divisible by ℓ cannot
        let d = l.denom().mod_floor(&BigInt::from(ell));
        if d.is_zero() {
            0
        } else {
            1
        }
    };
    if l.is_zero() || l_mod == 0 {
        return Ok(NonvanishingSet::HypothesisFailure { lalg_e1: l });
    }
    let curve = &engine.curve;
    let mut primes = Vec::new();
    let mut candidates = 0;
    for p in crate::numcore::factor::sieve(bound) {
        if p % ell != 1 || curve.conductor % p == 0 {
            continue;
        }
        candidates += 1;
        let a = curve.ap(p)?;
        if (a - 2).rem_euclid(ell as i64) != 0 {
            primes.push(p);
        }
    }
    let density = if candidates == 0 { 0.0 } else { primes.len() as f64 / candidates as f64 };
    Ok(NonvanishingSet::Primes { primes, density, candidates })
}
