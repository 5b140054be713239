//! Orchestration: curve configs, the vanishing census, congruence sweeps, the 37B construction
//! and the torsion families, with persistence and summary reports.

pub mod config;
pub mod runs;
pub mod sweep;

use thiserror::Error;

pub use config::{root_number_discrepancy, validate_root_number, ConfigError, CurveConfig};
pub use runs::{
    congruence_pairs, family_summary, run_congruence_sweep, run_e37b, run_family, CongruenceSweep, E37bReport,
    FamilyReport, FieldSample,
};
pub use sweep::{log_path, report, run_census, summarize, write_csv, CensusOptions, CensusRow, CensusSummary};

#[derive(Debug, Error)]
pub enum CensusError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
    #[error("malformed census file: {0}")]
    Format(String),
}
