use std::collections::BTreeMap;
use std::fmt;
use std::fs::{File, OpenOptions};
use std::io::{Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};
use std::sync::mpsc;
use std::time::Instant;

use num_integer::Integer;
use rayon::prelude::*;

use super::CensusError;
use crate::dirichlet::{enumerate, Character};
use crate::lvalue::{Decision, TwistEngine, TwistRecord};
use crate::numcore::real::Real;

/// One orbit of the census, as written to the log and the sorted CSV.
#[derive(Clone, Debug, PartialEq)]
pub struct CensusRow {
    pub fields: [String; 8],
    pub conductor: u64,
    pub exponents: Vec<u64>,
    pub decision: Decision,
    pub alarm: String,
    pub seconds: f64,
}

impl CensusRow {
    pub fn from_record(rec: &TwistRecord, seconds: f64) -> CensusRow {
        CensusRow {
            fields: rec.csv_record(),
            conductor: rec.character.conductor,
            exponents: rec.character.exponents(),
            decision: rec.decision,
            alarm: rec.alarm.clone().unwrap_or_default(),
            seconds,
        }
    }

    pub fn id(&self) -> &str {
        &self.fields[2]
    }

    fn log_record(&self) -> Vec<String> {
        let mut v = self.fields.to_vec();
        v.push(self.alarm.clone());
        v.push(format!("{:.3}", self.seconds));
        v
    }

    fn from_log(rec: &csv::StringRecord, ell: u64) -> Option<CensusRow> {
        if rec.len() != 10 {
            return None;
        }
        let fields: [String; 8] = std::array::from_fn(|i| rec[i].to_string());
        let chi = Character::parse(&fields[2], ell).ok()?;
        Some(CensusRow {
            conductor: chi.conductor,
            exponents: chi.exponents(),
            decision: Decision::parse(&fields[7])?,
            alarm: rec[8].to_string(),
            seconds: rec[9].parse().ok()?,
            fields,
        })
    }

    pub fn sort_key(&self) -> (u64, Vec<u64>) {
        (self.conductor, self.exponents.clone())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CutoffCount {
    pub x: u64,
    pub orbits: usize,
    pub vanishes: usize,
    pub nonzero: usize,
    pub undecided: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CensusSummary {
    pub label: String,
    pub ell: u64,
    pub x: u64,
    pub orbits: usize,
    pub skipped_gcd: usize,
    pub vanishes: usize,
    pub nonzero: usize,
    pub undecided: usize,
    pub alarms: Vec<String>,
    pub ladder: Vec<CutoffCount>,
    pub slope: Option<f64>,
}

impl CensusSummary {
    pub fn undecided_rate(&self) -> f64 {
        self.undecided as f64 / self.orbits.max(1) as f64
    }
}

impl fmt::Display for CensusSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# census {} ell={} X={}", self.label, self.ell, self.x)?;
        writeln!(f, "orbits: {}  skipped (gcd with N): {}", self.orbits, self.skipped_gcd)?;
        writeln!(f, "vanishes: {}  nonzero: {}  undecided: {}", self.vanishes, self.nonzero, self.undecided)?;
        writeln!(f, "cutoff,orbits,vanishes,nonzero,undecided")?;
        for c in &self.ladder {
            writeln!(f, "{},{},{},{},{}", c.x, c.orbits, c.vanishes, c.nonzero, c.undecided)?;
        }
        if let Some(s) = self.slope {
            writeln!(f, "log-log slope of vanishing count: {s:.3}")?;
        }
        writeln!(f, "alarms: {}", self.alarms.len())?;
        for a in &self.alarms {
            writeln!(f, "  {a}")?;
        }
        Ok(())
    }
}

pub fn geometric_cutoffs(x: u64) -> Vec<u64> {
    let mut v = Vec::new();
    let mut c = x;
    while c >= 7 && v.len() < 6 {
        v.push(c);
        c /= 4;
    }
    v.reverse();
    v
}

pub fn summarize(label: &str, ell: u64, x: u64, skipped_gcd: usize, rows: &[CensusRow]) -> CensusSummary {
    let count = |d: Decision, cut: u64| rows.iter().filter(|r| r.conductor <= cut && r.decision == d).count();
    let ladder: Vec<CutoffCount> = geometric_cutoffs(x)
        .into_iter()
        .map(|c| CutoffCount {
            x: c,
            orbits: rows.iter().filter(|r| r.conductor <= c).count(),
            vanishes: count(Decision::Vanishes, c),
            nonzero: count(Decision::Nonzero, c),
            undecided: count(Decision::Undecided, c),
        })
        .collect();
    let pts: Vec<(u64, usize)> = ladder.iter().map(|c| (c.x, c.vanishes)).collect();
    CensusSummary {
        label: label.to_string(),
        ell,
        x,
        orbits: rows.len(),
        skipped_gcd,
        vanishes: count(Decision::Vanishes, x),
        nonzero: count(Decision::Nonzero, x),
        undecided: count(Decision::Undecided, x),
        alarms: rows.iter().filter(|r| !r.alarm.is_empty()).map(|r| format!("{}: {}", r.id(), r.alarm)).collect(),
        ladder,
        slope: crate::kummer::e37b::loglog_slope(&pts),
    }
}

pub fn log_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".log");
    PathBuf::from(s)
}

fn read_log(path: &Path, ell: u64) -> Result<BTreeMap<String, CensusRow>, CensusError> {
    let mut done = BTreeMap::new();
    if !path.exists() {
        return Ok(done);
    }
    let mut rdr = csv::ReaderBuilder::new().has_headers(false).flexible(true).from_path(path)?;
    for rec in rdr.records() {
        // a torn final line from an interrupted run is skipped
        let Ok(rec) = rec else { continue };
        if let Some(row) = CensusRow::from_log(&rec, ell) {
            done.insert(row.id().to_string(), row);
        }
    }
    Ok(done)
}

fn open_log(path: &Path, resume: bool) -> Result<File, CensusError> {
    let mut f = OpenOptions::new().create(true).read(true).append(resume).write(true).truncate(!resume).open(path)?;
    if resume {
        let len = f.metadata()?.len();
        if len > 0 {
            let mut last = [0u8];
            f.seek(SeekFrom::Start(len - 1))?;
            f.read_exact(&mut last)?;
            if last[0] != b'\n' {
                f.write_all(b"\n")?;
            }
        }
    }
    Ok(f)
}

pub struct CensusOptions<'a> {
    pub x: u64,
    pub workers: usize,
    pub out: Option<&'a Path>,
    pub resume: bool,
    /// stop after this many new orbits (simulated interruption)
    pub limit: Option<usize>,
}

/// Census of order-ℓ orbits with conductor ≤ X coprime to N. Rows are appended to `<out>.log`
/// as they finish; the sorted CSV is written to `out` at the end.
pub fn run_census<R: Real>(engine: &TwistEngine<R>, opts: &CensusOptions) -> Result<(CensusSummary, Vec<CensusRow>), CensusError> {
    let curve = &engine.curve;
    let ell = engine.ell;
    let all = enumerate(ell, opts.x, true);
    let (orbits, skipped): (Vec<Character>, Vec<Character>) =
        all.into_iter().partition(|c| c.conductor.gcd(&curve.conductor) == 1);
    let log = opts.out.map(log_path);
    let mut done = match (&log, opts.resume) {
        (Some(p), true) => read_log(p, ell)?,
        _ => BTreeMap::new(),
    };
    done.retain(|_, r| r.conductor <= opts.x);
    let mut todo: Vec<Character> = orbits.iter().filter(|c| !done.contains_key(&c.id())).cloned().collect();
    if let Some(n) = opts.limit {
        todo.truncate(n);
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(opts.workers.max(1)).build()?;
    let (tx, rx) = mpsc::channel::<CensusRow>();
    let writer = {
        let log = log.clone();
        let resume = opts.resume;
        std::thread::spawn(move || -> Result<Vec<CensusRow>, CensusError> {
            let mut w = match &log {
                Some(p) => Some(csv::WriterBuilder::new().has_headers(false).from_writer(open_log(p, resume)?)),
                None => None,
            };
            let mut rows = Vec::new();
            for row in rx {
                if let Some(w) = w.as_mut() {
                    w.write_record(row.log_record())?;
                    w.flush()?;
                }
                rows.push(row);
            }
            Ok(rows)
        })
    };
    pool.install(|| {
        todo.par_iter().for_each_with(tx, |tx, chi| {
            let start = Instant::now();
            let rec = engine.twist_record(chi);
            let _ = tx.send(CensusRow::from_record(&rec, start.elapsed().as_secs_f64()));
        })
    });
    let fresh = writer.join().expect("log writer panicked")?;
    for r in fresh {
        done.insert(r.id().to_string(), r);
    }
    let mut rows: Vec<CensusRow> = done.into_values().collect();
    rows.sort_by_key(|r| r.sort_key());
    if let Some(out) = opts.out {
        write_csv(out, &rows)?;
    }
    let summary = summarize(&curve.label, ell, opts.x, skipped.len(), &rows);
    Ok((summary, rows))
}

pub fn write_csv(out: &Path, rows: &[CensusRow]) -> Result<(), CensusError> {
    let mut w = csv::Writer::from_path(out)?;
    w.write_record(TwistRecord::HEADER)?;
    for r in rows {
        w.write_record(&r.fields)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_csv_to<W: Write>(out: W, rows: &[CensusRow]) -> Result<(), CensusError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(TwistRecord::HEADER)?;
    for r in rows {
        w.write_record(&r.fields)?;
    }
    w.flush()?;
    Ok(())
}

/// Summary block recomputed from a finished census CSV.
pub fn report(path: &Path, ell: u64) -> Result<CensusSummary, CensusError> {
    let mut rdr = csv::Reader::from_path(path)?;
    let mut rows = Vec::new();
    let mut label = String::new();
    for rec in rdr.records() {
        let rec = rec?;
        if rec.len() != 8 {
            return Err(CensusError::Format(format!("expected 8 columns, got {}", rec.len())));
        }
        let fields: [String; 8] = std::array::from_fn(|i| rec[i].to_string());
        let chi = Character::parse(&fields[2], ell).map_err(|e| CensusError::Format(e.to_string()))?;
        let decision = Decision::parse(&fields[7]).ok_or_else(|| CensusError::Format(fields[7].clone()))?;
        label = fields[0].clone();
        rows.push(CensusRow {
            conductor: chi.conductor,
            exponents: chi.exponents(),
            decision,
            alarm: String::new(),
            seconds: 0.0,
            fields,
        });
    }
    let x = rows.iter().map(|r| r.conductor).max().unwrap_or(0);
    Ok(summarize(&label, ell, x, 0, &rows))
}
