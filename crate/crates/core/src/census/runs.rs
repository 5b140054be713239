use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use rayon::prelude::*;

use crate::cubicfield::CubicField;
use crate::dirichlet::{characters_of_order, enumerate, Character};
use crate::kummer::e37b::{field_for, pairs};
use crate::kummer::families::{describe, family_fiber_points, marked_fiber_point};
use crate::kummer::{census_37b, torsion_family, Census37b, CubicClass, FamilyKind, FamilyOutcome};
use crate::lvalue::{congruence_with, CongruenceReport, CosetSums, Decision, LError, TwistEngine, TwistRecord};
use crate::numcore::real::Real;
use crate::numcore::ring::{fmt_rat, Rat};

#[derive(Clone, Debug)]
pub struct CongruenceSweep {
    pub label: String,
    pub ell: u64,
    pub bound: u64,
    pub reports: Vec<CongruenceReport>,
    /// pairs whose coset sums could not be computed
    pub errors: Vec<(String, String, String)>,
}

impl CongruenceSweep {
    pub fn passed(&self) -> usize {
        self.reports.iter().filter(|r| r.pass).count()
    }

    pub fn all_pass(&self) -> bool {
        self.errors.is_empty() && self.reports.iter().all(|r| r.pass)
    }
}

impl fmt::Display for CongruenceSweep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# congruence {} ell={} bound={}", self.label, self.ell, self.bound)?;
        writeln!(f, "pairs: {}  pass: {}  fail: {}  errors: {}", self.reports.len() + self.errors.len(), self.passed(), self.reports.len() - self.passed(), self.errors.len())?;
        // pass/fail matrix by (f_chi, f_psi)
        let mut cells: BTreeMap<(u64, u64), (usize, usize)> = BTreeMap::new();
        for r in &self.reports {
            let c = cells.entry((r.chi.conductor, r.psi.conductor)).or_default();
            c.0 += r.pass as usize;
            c.1 += 1;
        }
        writeln!(f, "f_chi,f_psi,pass,total")?;
        for ((a, b), (p, t)) in &cells {
            writeln!(f, "{a},{b},{p},{t}")?;
        }
        for r in self.reports.iter().filter(|r| !r.pass) {
            writeln!(f, "FAIL {}", r.diagnostic())?;
        }
        for (c, p, e) in &self.errors {
            writeln!(f, "ERROR chi={c} psi={p}: {e}")?;
        }
        Ok(())
    }
}

/// Admissible (χ, ψ) with coprime conductors prime to N and f_χ f_ψ ≤ bound. χ runs over the
/// trivial character and one representative per orbit, ψ over all nontrivial characters.
pub fn congruence_pairs(ell: u64, n: u64, bound: u64) -> Vec<(Character, Character)> {
    let ok = |c: &Character| c.conductor.gcd(&n) == 1;
    let mut chis = vec![Character::trivial(ell)];
    chis.extend(enumerate(ell, bound, true).into_iter().filter(ok));
    let psis: Vec<Character> = enumerate(ell, bound, false).into_iter().filter(ok).collect();
    let mut out = Vec::new();
    for chi in &chis {
        for psi in &psis {
            if chi.conductor * psi.conductor <= bound && chi.conductor.gcd(&psi.conductor) == 1 {
                out.push((chi.clone(), psi.clone()));
            }
        }
    }
    out
}

pub fn run_congruence_sweep<R: Real>(
    engine: &TwistEngine<R>,
    bound: u64,
    ap_override: Option<(u64, i64)>,
) -> CongruenceSweep {
    let pairs = congruence_pairs(engine.ell, engine.curve.conductor, bound);
    let mut needed: BTreeSet<String> = BTreeSet::new();
    let mut reps: Vec<Character> = Vec::new();
    for (chi, psi) in &pairs {
        for c in [chi.clone(), chi.mul(psi).expect("coprime conductors")] {
            if !c.is_trivial() {
                let c = c.canonical();
                if needed.insert(c.id()) {
                    reps.push(c);
                }
            }
        }
    }
    let cache: BTreeMap<String, Result<CosetSums, String>> = reps
        .par_iter()
        .map(|c| (c.id(), engine.algebraic_part(c).map_err(|e| e.to_string())))
        .collect();
    let lookup = |c: &Character| -> Result<CosetSums, LError> {
        match cache.get(&c.id()) {
            Some(Ok(s)) => Ok(s.clone()),
            Some(Err(e)) => Err(LError::Recognition(e.clone())),
            None => engine.algebraic_part(c),
        }
    };
    let mut reports = Vec::new();
    let mut errors = Vec::new();
    for (chi, psi) in &pairs {
        match congruence_with(engine, &lookup, chi, psi, ap_override) {
            Ok(r) => reports.push(r),
            Err(e) => errors.push((chi.id(), psi.id(), e.to_string())),
        }
    }
    CongruenceSweep { label: engine.curve.label.clone(), ell: engine.ell, bound, reports, errors }
}

/// One constructed field checked against the L-value computation.
#[derive(Clone, Debug)]
pub struct FieldSample {
    pub a: i64,
    pub b: i64,
    pub conductor: u64,
    pub character: Option<Character>,
    pub record: Option<TwistRecord>,
    pub problem: Option<String>,
}

impl FieldSample {
    pub fn vanishes(&self) -> bool {
        self.problem.is_none() && self.record.as_ref().is_some_and(|r| r.decision == Decision::Vanishes)
    }
}

#[derive(Clone, Debug)]
pub struct E37bReport {
    pub census: Census37b,
    pub samples: Vec<FieldSample>,
}

impl E37bReport {
    pub fn alarms(&self) -> Vec<String> {
        self.samples
            .iter()
            .filter(|s| !s.vanishes())
            .map(|s| {
                let why = s.problem.clone().unwrap_or_else(|| {
                    s.record.as_ref().map_or("no record".into(), |r| format!("decision {}", r.decision.as_str()))
                });
                format!("(a,b)=({},{}) conductor {}: {}", s.a, s.b, s.conductor, why)
            })
            .collect()
    }
}

impl fmt::Display for E37bReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.census;
        writeln!(f, "# e37b X={} H={}", c.x, c.height_bound)?;
        let sqf = c.rows.iter().filter(|r| r.squarefree).count();
        writeln!(f, "pairs: {}  squarefree: {}  distinct conductors <= X: {}", c.rows.len(), sqf, c.conductors.len())?;
        writeln!(f, "cutoff,distinct_conductors")?;
        for (x, n) in &c.ladder {
            writeln!(f, "{x},{n}")?;
        }
        if let Some(s) = c.slope {
            writeln!(f, "log-log slope: {s:.3}")?;
        }
        writeln!(f, "sample,a,b,conductor,character,decision")?;
        for (i, s) in self.samples.iter().enumerate() {
            writeln!(
                f,
                "{},{},{},{},\"{}\",{}",
                i,
                s.a,
                s.b,
                s.conductor,
                s.character.as_ref().map(|c| c.id()).unwrap_or_default(),
                s.record.as_ref().map_or("-", |r| r.decision.as_str())
            )?;
        }
        let alarms = self.alarms();
        writeln!(f, "alarms: {}", alarms.len())?;
        for a in alarms {
            writeln!(f, "  {a}")?;
        }
        Ok(())
    }
}

pub const SAMPLE_CONDUCTOR_MAX: u64 = 2000;

fn check_field<R: Real>(engine: &TwistEngine<R>, a: i64, b: i64, conductor: u64) -> FieldSample {
    let mut s = FieldSample { a, b, conductor, character: None, record: None, problem: None };
    let field: CubicField = match field_for(a, b) {
        Some(k) => k,
        None => {
            s.problem = Some("field construction failed".into());
            return s;
        }
    };
    match field.matching_character() {
        Ok((chi, _)) => {
            let chi = chi.canonical();
            let rec = engine.twist_record(&chi);
            if let Some(al) = &rec.alarm {
                s.problem = Some(al.clone());
            }
            s.character = Some(chi);
            s.record = Some(rec);
        }
        Err(e) => s.problem = Some(e.to_string()),
    }
    s
}

/// The 37B construction: census of fields up to X, and for up to `samples` distinct fields with
/// conductor ≤ 2000 and prime to 37, the matched twist must vanish. Samples are drawn from all
/// coprime pairs of height ≤ H in (b, a) order, squarefree or not.
pub fn run_e37b<R: Real>(engine: &TwistEngine<R>, x: u64, height_bound: u64, samples: usize) -> E37bReport {
    let census = census_37b(x, height_bound);
    let n = engine.curve.conductor;
    let mut small: Vec<(i64, i64, u64, Character)> = pairs(height_bound)
        .into_par_iter()
        .filter_map(|(a, b)| {
            let k = field_for(a, b)?;
            let c = k.conductor_u64()?;
            if c > SAMPLE_CONDUCTOR_MAX || c.gcd(&n) != 1 {
                return None;
            }
            let chi = k.matching_character().ok()?.0.canonical();
            Some((a, b, c, chi))
        })
        .collect();
    small.sort_by_key(|r| (r.1, r.0));
    let mut seen = BTreeSet::new();
    let picks: Vec<(i64, i64, u64)> =
        small.into_iter().filter(|r| seen.insert(r.3.id())).map(|r| (r.0, r.1, r.2)).take(samples).collect();
    let samples = picks.par_iter().map(|&(a, b, c)| check_field(engine, a, b, c)).collect();
    E37bReport { census, samples }
}

#[derive(Clone, Debug)]
pub struct FamilyReport {
    pub kind: FamilyKind,
    pub lambda: Rat,
    pub outcome: FamilyOutcome,
    /// (u, class, cubic) on the special fiber
    pub fiber_points: Vec<(Rat, CubicClass, String)>,
    pub problem: Option<String>,
}

impl FamilyReport {
    pub fn verified(&self) -> bool {
        match &self.outcome {
            FamilyOutcome::Fiber(f) => f.on_curve && f.nontorsion,
            FamilyOutcome::Special(s) => s.on_curve && s.nonsingular_point && s.not_two_torsion,
            FamilyOutcome::Excluded(_) => true,
        }
    }
}

pub fn run_family(kind: FamilyKind, lambdas: &[Rat], height_bound: u64) -> Vec<FamilyReport> {
    lambdas
        .par_iter()
        .map(|l| {
            let outcome = torsion_family(kind, l);
            let mut rep = FamilyReport { kind, lambda: l.clone(), outcome, fiber_points: Vec::new(), problem: None };
            if matches!(rep.outcome, FamilyOutcome::Fiber(_)) {
                match family_fiber_points(kind, l, height_bound) {
                    Ok(pts) => {
                        rep.fiber_points = pts
                            .into_iter()
                            .map(|p| (p.u, p.class, fmt_poly(&p.cubic)))
                            .collect()
                    }
                    Err(e) => rep.problem = Some(e.to_string()),
                }
            }
            rep
        })
        .collect()
}

pub fn family_summary(reports: &[FamilyReport]) -> String {
    let mut s = String::new();
    for r in reports {
        s.push_str(&describe(&r.outcome));
        if let FamilyOutcome::Fiber(_) = r.outcome {
            let (u0, d0) = marked_fiber_point(r.kind, &r.lambda);
            let cyclic = r.fiber_points.iter().filter(|p| p.1 == CubicClass::CyclicCubic).count();
            s.push_str(&format!(
                " marked=({},{}) fiber_points={} cyclic={}",
                fmt_rat(&u0),
                fmt_rat(&d0),
                r.fiber_points.len(),
                cyclic
            ));
        }
        if let Some(p) = &r.problem {
            s.push_str(&format!(" problem={p}"));
        }
        s.push('\n');
    }
    s
}

/// Every order-ℓ orbit of conductor exactly f, by canonical representative.
pub fn orbits_of_conductor(f: u64, ell: u64) -> Vec<Character> {
    characters_of_order(f, ell).into_iter().filter(|c| c.comps[0].exp == 1).collect()
}

fn fmt_poly(p: &crate::numcore::PolyQ) -> String {
    let c: Vec<String> = p.coeffs().iter().map(fmt_rat).collect();
    format!("[{}]", c.join(" "))
}
