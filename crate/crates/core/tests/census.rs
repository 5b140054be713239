use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use cubtwist::census::*;
use cubtwist::elliptic::curves;
use cubtwist::kummer::{FamilyKind, FamilyOutcome};
use cubtwist::lvalue::Decision;
use cubtwist::numcore::ring::{rat, ratio};
use cubtwist::TwistEngineMp;

fn engine() -> &'static TwistEngineMp {
    static E: OnceLock<TwistEngineMp> = OnceLock::new();
    E.get_or_init(|| TwistEngineMp::new(Arc::new(curves::e37b()), 3, 50).unwrap())
}

fn opts(x: u64, workers: usize) -> CensusOptions<'static> {
    CensusOptions { x, workers, out: None, resume: false, limit: None }
}

const GOOD: &str = r#"
label = "37b"
a_invariants = [0, 1, 1, -3, 1]
conductor = 37
root_number = 1
"#;

#[test]
fn config_parsing() {
    let c = CurveConfig::parse(GOOD).unwrap();
    assert_eq!(c.precision_digits, 50);
    let curve = c.curve().unwrap();
    assert_eq!(curve.conductor, 37);
    assert_eq!(curve.ap(7).unwrap(), curves::e37b().ap(7).unwrap());

    let fractions = GOOD.replace("[0, 1, 1, -3, 1]", r#"[0, "2/2", 1, -3, "1"]"#);
    assert_eq!(CurveConfig::parse(&fractions).unwrap().invariants().unwrap(), c.invariants().unwrap());

    let extra = format!("{GOOD}\nrank = 0\n");
    assert!(matches!(CurveConfig::parse(&extra), Err(ConfigError::Toml(_))));
    assert!(matches!(CurveConfig::parse(&GOOD.replace("root_number = 1", "root_number = 0")), Err(ConfigError::RootNumber(0))));
    assert!(matches!(CurveConfig::parse(&GOOD.replace("conductor = 37", "conductor = 0")), Err(ConfigError::Conductor)));
    assert!(CurveConfig::parse(&GOOD.replace("[0, 1, 1, -3, 1]", "[0, 1, 1, -3]")).is_err());
    assert!(CurveConfig::parse(&GOOD.replace("[0, 1, 1, -3, 1]", "[0, 0, 0, 0, 0]")).unwrap().curve().is_err());

    let round = CurveConfig::from_curve(&curves::e11a1(), 40);
    assert_eq!(round.curve().unwrap().inv, curves::e11a1().inv);
}

#[test]
fn wrong_root_number_is_caught() {
    for c in [curves::e37b(), curves::e11a1(), curves::e37a()] {
        validate_root_number(&c, 30).unwrap();
        let bad = c.clone().with_arithmetic(c.conductor, -c.root_number);
        assert!(matches!(validate_root_number(&bad, 30), Err(ConfigError::RootNumberCheck(..))), "{}", c.label);
    }
}

#[test]
fn smallest_census() {
    let (s, rows) = run_census(engine(), &opts(7, 1)).unwrap();
    assert_eq!(s.orbits, 1);
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].conductor, 7);
    assert_eq!(rows[0].decision, Decision::Vanishes);
    let (s, _) = run_census(engine(), &opts(6, 1)).unwrap();
    assert_eq!(s.orbits, 0);
}

fn census_500() -> &'static (CensusSummary, Vec<CensusRow>) {
    static C: OnceLock<(CensusSummary, Vec<CensusRow>)> = OnceLock::new();
    C.get_or_init(|| run_census(engine(), &opts(500, 4)).unwrap())
}

#[test]
fn census_500_counts() {
    let (s, rows) = census_500();
    assert_eq!(s.orbits, rows.len());
    assert_eq!(s.vanishes + s.nonzero + s.undecided, s.orbits);
    assert!(s.undecided_rate() < 0.05);
    assert!(s.alarms.is_empty(), "{:?}", s.alarms);
    assert!(rows.iter().all(|r| r.conductor % 37 != 0 && r.conductor <= 500));
    assert!(rows.windows(2).all(|w| w[0].sort_key() < w[1].sort_key()));
    for w in s.ladder.windows(2) {
        assert!(w[0].x < w[1].x);
        assert!(w[0].orbits <= w[1].orbits && w[0].vanishes <= w[1].vanishes && w[0].nonzero <= w[1].nonzero);
    }
    assert_eq!(s.ladder.last().unwrap().orbits, s.orbits);
}

#[test]
fn counts_are_monotone_in_x() {
    let (big, rows) = census_500();
    let (small, _) = run_census(engine(), &opts(120, 2)).unwrap();
    assert!(small.orbits <= big.orbits && small.vanishes <= big.vanishes);
    assert_eq!(small.orbits, rows.iter().filter(|r| r.conductor <= 120).count());
}

#[test]
fn output_independent_of_workers() {
    let dir = tempfile::tempdir().unwrap();
    let mut files = Vec::new();
    for w in [1, 3] {
        let out = dir.path().join(format!("c{w}.csv"));
        let o = CensusOptions { x: 200, workers: w, out: Some(&out), resume: false, limit: None };
        run_census(engine(), &o).unwrap();
        files.push(std::fs::read(&out).unwrap());
    }
    assert_eq!(files[0], files[1]);
    let text = String::from_utf8(files[0].clone()).unwrap();
    assert_eq!(text.lines().next().unwrap(), cubtwist::lvalue::TwistRecord::HEADER.join(","));
}

#[test]
fn resume_after_interruption() {
    let dir = tempfile::tempdir().unwrap();
    let full = dir.path().join("full.csv");
    run_census(engine(), &CensusOptions { x: 150, workers: 2, out: Some(&full), resume: false, limit: None }).unwrap();

    let part = dir.path().join("part.csv");
    run_census(engine(), &CensusOptions { x: 150, workers: 2, out: Some(&part), resume: false, limit: Some(5) }).unwrap();
    // a torn trailing line, as from a kill mid-write
    let log = log_path(&part);
    let mut text = std::fs::read_to_string(&log).unwrap();
    let done = text.lines().count();
    assert!(done <= 5);
    text.push_str("43,\"(43; 43");
    std::fs::write(&log, text).unwrap();

    let (s, _) = run_census(engine(), &CensusOptions { x: 150, workers: 2, out: Some(&part), resume: true, limit: None }).unwrap();
    assert_eq!(std::fs::read(&full).unwrap(), std::fs::read(&part).unwrap());
    let again = report(&part, 3).unwrap();
    assert_eq!(again.orbits, s.orbits);
    assert_eq!(again.vanishes, s.vanishes);
}

#[test]
fn summary_from_rows() {
    let (s, rows) = census_500();
    let t = summarize(&s.label, 3, 500, s.skipped_gcd, rows);
    assert_eq!(t.vanishes, s.vanishes);
    assert_eq!(t.ladder.iter().map(|c| c.x).collect::<Vec<_>>(), vec![7, 31, 125, 500]);
    let shown = s.to_string();
    assert!(shown.contains("vanishes:") && shown.contains("alarms: 0"));
}

#[test]
fn constructed_fields_vanish_in_census() {
    let rep = run_e37b(engine(), 2000, 30, 10);
    assert_eq!(rep.samples.len(), 10);
    assert!(rep.alarms().is_empty());
    let (_, rows) = run_census(engine(), &opts(2000, 0)).unwrap();
    let by_id: BTreeMap<&str, Decision> = rows.iter().map(|r| (r.id(), r.decision)).collect();
    for smp in &rep.samples {
        assert!(smp.vanishes(), "({}, {}) conductor {}", smp.a, smp.b, smp.conductor);
        let chi = smp.character.as_ref().unwrap();
        let d = by_id.get(chi.id().as_str()).or_else(|| by_id.get(chi.pow(2).id().as_str()));
        assert_eq!(d, Some(&Decision::Vanishes), "{chi}");
    }
    let all = rep.census.conductors.iter().filter(|&&c| c <= 2000 && c % 37 != 0);
    for &f in all {
        let orbits: Vec<_> = rows.iter().filter(|r| r.conductor == f).collect();
        assert!(!orbits.is_empty(), "conductor {f}");
        assert!(orbits.iter().any(|r| r.decision == Decision::Vanishes), "conductor {f}");
    }
}

#[test]
fn congruence_pair_semantics() {
    assert!(congruence_pairs(3, 37, 6).is_empty());
    let pairs = congruence_pairs(3, 37, 100);
    assert!(!pairs.is_empty());
    for (chi, psi) in &pairs {
        assert!(!psi.is_trivial());
        assert_eq!(num_integer::gcd(chi.conductor.max(1), psi.conductor), 1);
        assert!(chi.conductor.max(1) * psi.conductor <= 100);
        assert!(chi.conductor % 37 != 0 && psi.conductor % 37 != 0);
    }
    let sweep = run_congruence_sweep(engine(), 100, None);
    assert!(sweep.all_pass() && sweep.errors.is_empty());
    assert_eq!(sweep.passed(), pairs.len());
    let bad = run_congruence_sweep(engine(), 100, Some((7, 0)));
    assert!(!bad.all_pass());
}

#[test]
fn family_runs() {
    let reps = run_family(FamilyKind::SixTorsion, &[rat(0), ratio(-1, 2), rat(2)], 6);
    assert!(matches!(reps[0].outcome, FamilyOutcome::Excluded(_)));
    assert!(reps[0].fiber_points.is_empty());
    assert!(reps[1].verified() && reps[2].verified());
    let reps = run_family(FamilyKind::FourTwo, &[rat(3)], 6);
    assert!(reps[0].verified());
    assert!(!family_summary(&reps).is_empty());
}
