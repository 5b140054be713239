use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use cubtwist::census::{
    family_summary, report, run_census, run_congruence_sweep, run_e37b, run_family, validate_root_number,
    CensusOptions, CurveConfig,
};
use cubtwist::dirichlet::Character;
use cubtwist::elliptic::curves;
use cubtwist::kummer::{delta_poly, fiber_search, CensusRow37b, FamilyKind};
use cubtwist::lvalue::{nonvanishing_prime_set, NonvanishingSet, TwistRecord};
use cubtwist::numcore::ring::{fmt_rat, parse_rat};
use cubtwist::{CurveQ, Rat, TwistEngineMp};

#[derive(Parser)]
#[command(name = "cubtwist", version, about = "Vanishing of odd-order twisted L-values and cubic-field constructions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Common {
    /// curve config (TOML), or one of the built-in labels 37A, 37B, 11A
    #[arg(long, default_value = "37B")]
    curve: String,
    #[arg(long, default_value_t = 3)]
    ell: u64,
    /// working precision in decimal digits; overrides the config
    #[arg(long)]
    precision: Option<u32>,
    #[arg(long, default_value_t = 0)]
    threads: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// L(E,1,χ) and its algebraic part for one orbit
    TwistValue {
        #[command(flatten)]
        common: Common,
        /// character id, e.g. "(7; 7:1)"
        #[arg(long)]
        character: String,
    },
    /// decide vanishing for every orbit with conductor ≤ X
    Census {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        max_conductor: u64,
        #[arg(long)]
        resume: bool,
        /// stop after this many new orbits
        #[arg(long, hide = true)]
        limit: Option<usize>,
    },
    /// check the Hecke congruence on all admissible pairs with f_χ f_ψ ≤ X
    Congruence {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 200)]
        max_conductor: u64,
        /// replace a_p by a wrong value, "p:a"
        #[arg(long, hide = true)]
        corrupt_ap: Option<String>,
    },
    /// primes p ≤ X on which every twist is nonzero
    NonvanishingSet {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 300)]
        max_conductor: u64,
    },
    /// rational points of bounded height on a fiber of the discriminant surface
    KummerFiber {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        t0: String,
        #[arg(long, default_value_t = 20)]
        height_bound: u64,
    },
    /// cyclic cubic fields from the 37B parametrization
    E37b {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 100_000)]
        max_conductor: u64,
        #[arg(long, default_value_t = 30)]
        height_bound: u64,
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
    /// curves with torsion Z/6 or Z/4×Z/2 and their extra points
    Family {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        kind: String,
        /// comma-separated rationals
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
        lambda: Vec<String>,
        #[arg(long, default_value_t = 10)]
        height_bound: u64,
    },
    /// summary block for a finished census CSV
    Report {
        path: PathBuf,
        #[arg(long, default_value_t = 3)]
        ell: u64,
    },
}

enum Failure {
    Config(String),
    Alarm(String),
}

type Outcome = Result<(), Failure>;

fn config_err(e: impl std::fmt::Display) -> Failure {
    Failure::Config(e.to_string())
}

fn load_curve(arg: &str) -> Result<(CurveQ, Option<u32>), Failure> {
    let path = Path::new(arg);
    if !path.exists() {
        let c = match arg.to_ascii_uppercase().as_str() {
            "37B" => curves::e37b(),
            "37A" => curves::e37a(),
            "11A" | "11A1" => curves::e11a1(),
            _ => return Err(Failure::Config(format!("no such curve file {arg}"))),
        };
        return Ok((c, None));
    }
    let cfg = CurveConfig::load(path).map_err(config_err)?;
    let digits = cfg.precision_digits;
    Ok((cfg.curve().map_err(config_err)?, Some(digits)))
}

fn setup(common: &Common) -> Result<(CurveQ, u32), Failure> {
    if common.threads > 0 {
        // a second call in-process is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(common.threads).build_global();
    }
    if common.ell < 3 || common.ell % 2 == 0 || !cubtwist::numcore::factor::is_prime(common.ell) {
        return Err(Failure::Config(format!("--ell must be an odd prime, got {}", common.ell)));
    }
    let (curve, cfg_digits) = load_curve(&common.curve)?;
    let digits = common.precision.or(cfg_digits).unwrap_or(50);
    if digits < 15 {
        return Err(Failure::Config("--precision must be at least 15".into()));
    }
    Ok((curve, digits))
}

fn engine(curve: CurveQ, ell: u64, digits: u32) -> Result<TwistEngineMp, Failure> {
    validate_root_number(&curve, digits).map_err(config_err)?;
    TwistEngineMp::new(Arc::new(curve), ell, digits).map_err(|e| Failure::Alarm(e.to_string()))
}

fn sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match out {
        Some(p) => Box::new(File::create(p).map_err(|e| config_err(format!("{}: {e}", p.display())))?),
        None => Box::new(io::stdout()),
    })
}

fn alarms(list: Vec<String>) -> Outcome {
    if list.is_empty() {
        Ok(())
    } else {
        Err(Failure::Alarm(list.join("; ")))
    }
}

fn parse_rats(items: &[String]) -> Result<Vec<Rat>, Failure> {
    items
        .iter()
        .map(|s| parse_rat(s.trim()).ok_or_else(|| Failure::Config(format!("not a rational: {s}"))))
        .collect()
}

fn run(cmd: Cmd) -> Outcome {
    match cmd {
        Cmd::TwistValue { common, character } => {
            let (curve, digits) = setup(&common)?;
            let chi = Character::parse(&character, common.ell).map_err(config_err)?;
            let eng = engine(curve, common.ell, digits)?;
            let rec = eng.twist_record(&chi);
            let mut w = csv::Writer::from_writer(sink(&common.out)?);
            w.write_record(TwistRecord::HEADER).and_then(|_| w.write_record(rec.csv_record())).map_err(config_err)?;
            w.flush().map_err(config_err)?;
            drop(w);
            println!("# {} {} digits={} decision={}", rec.label, rec.character, rec.digits, rec.decision.as_str());
            if !rec.note.is_empty() {
                println!("note: {}", rec.note);
            }
            alarms(rec.alarm.into_iter().collect())
        }
        Cmd::Census { common, max_conductor, resume, limit } => {
            let (curve, digits) = setup(&common)?;
            let eng = engine(curve, common.ell, digits)?;
            let opts = CensusOptions {
                x: max_conductor,
                workers: if common.threads == 0 { rayon::current_num_threads() } else { common.threads },
                out: common.out.as_deref(),
                resume,
                limit,
            };
            let (summary, rows) = run_census(&eng, &opts).map_err(config_err)?;
            if common.out.is_none() {
                cubtwist::census::sweep::write_csv_to(io::stdout(), &rows).map_err(config_err)?;
            }
            print!("{summary}");
            alarms(summary.alarms)
        }
        Cmd::Congruence { common, max_conductor, corrupt_ap } => {
            let (curve, digits) = setup(&common)?;
            let ap_override = match corrupt_ap {
                None => None,
                Some(s) => {
                    let (p, a) = s.split_once(':').ok_or_else(|| Failure::Config("--corrupt-ap p:a".into()))?;
                    Some((p.parse().map_err(config_err)?, a.parse().map_err(config_err)?))
                }
            };
            let eng = engine(curve, common.ell, digits)?;
            let sweep = run_congruence_sweep(&eng, max_conductor, ap_override);
            let mut w = sink(&common.out)?;
            write!(w, "{sweep}").map_err(config_err)?;
            if common.out.is_some() {
                println!("pairs: {}  pass: {}", sweep.reports.len() + sweep.errors.len(), sweep.passed());
            }
            if sweep.all_pass() {
                Ok(())
            } else {
                Err(Failure::Alarm("congruence failures".into()))
            }
        }
        Cmd::NonvanishingSet { common, max_conductor } => {
            let (curve, digits) = setup(&common)?;
            let eng = engine(curve, common.ell, digits)?;
            match nonvanishing_prime_set(&eng, max_conductor).map_err(|e| Failure::Alarm(e.to_string()))? {
                NonvanishingSet::Primes { primes, density, candidates } => {
                    let list: Vec<String> = primes.iter().map(|p| p.to_string()).collect();
                    println!("L^alg(E,1) = {}", fmt_rat(&eng.lalg_e1()));
                    println!("primes: {}", list.join(" "));
                    println!("density: {}/{} = {density:.3}", primes.len(), candidates);
                }
                NonvanishingSet::HypothesisFailure { lalg_e1 } => {
                    println!("hypothesis fails: L^alg(E,1) = {} vanishes mod {}", fmt_rat(&lalg_e1), common.ell);
                }
            }
            Ok(())
        }
        Cmd::KummerFiber { common, t0, height_bound } => {
            let (curve, _) = setup(&common)?;
            let t0 = parse_rat(&t0).ok_or_else(|| Failure::Config(format!("not a rational: {t0}")))?;
            let s = delta_poly(&curve.a_invariants()).map_err(config_err)?;
            let pts = fiber_search(&s, &t0, height_bound);
            let mut w = csv::Writer::from_writer(sink(&common.out)?);
            w.write_record(["t0", "u", "delta", "class", "cubic", "degenerate-fiber"]).map_err(config_err)?;
            for p in &pts {
                let cubic: Vec<String> = p.cubic.coeffs().iter().map(fmt_rat).collect();
                w.write_record([
                    fmt_rat(&p.t0),
                    fmt_rat(&p.u),
                    fmt_rat(&p.delta),
                    p.class.as_str().to_string(),
                    format!("[{}]", cubic.join(" ")),
                    (p.degenerate_fiber as u8).to_string(),
                ])
                .map_err(config_err)?;
            }
            w.flush().map_err(config_err)?;
            drop(w);
            println!("# fiber t0={} points: {}", fmt_rat(&t0), pts.len());
            Ok(())
        }
        Cmd::E37b { common, max_conductor, height_bound, samples } => {
            let (_, digits) = setup(&common)?;
            let eng = engine(curves::e37b(), 3, digits)?;
            let rep = run_e37b(&eng, max_conductor, height_bound, samples);
            let mut w = csv::Writer::from_writer(sink(&common.out)?);
            w.write_record(CensusRow37b::HEADER).map_err(config_err)?;
            for r in &rep.census.rows {
                w.write_record(r.record()).map_err(config_err)?;
            }
            w.flush().map_err(config_err)?;
            drop(w);
            print!("{rep}");
            alarms(rep.alarms())
        }
        Cmd::Family { common, kind, lambda, height_bound } => {
            let kind = FamilyKind::parse(&kind).ok_or_else(|| Failure::Config(format!("unknown family {kind}")))?;
            if lambda.is_empty() {
                return Err(Failure::Config("--lambda needs at least one value".into()));
            }
            let ls = parse_rats(&lambda)?;
            let reps = run_family(kind, &ls, height_bound);
            let text = family_summary(&reps);
            sink(&common.out)?.write_all(text.as_bytes()).map_err(config_err)?;
            if common.out.is_some() {
                print!("{text}");
            }
            alarms(
                reps.iter()
                    .filter(|r| !r.verified())
                    .map(|r| format!("lambda={} not verified", fmt_rat(&r.lambda)))
                    .collect(),
            )
        }
        Cmd::Report { path, ell } => {
            let s = report(&path, ell).map_err(config_err)?;
            print!("{s}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Alarm(m)) => {
            eprintln!("ALARM: {m}");
            ExitCode::from(2)
        }
    }
}
