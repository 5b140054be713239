use std::path::Path;

use num_traits::Zero;
use serde::Deserialize;
use thiserror::Error;

use crate::dirichlet::Character;
use crate::elliptic::CurveQ;
use crate::lvalue::central_value_t;
use crate::numcore::real::{digits_to_bits, MpReal, Real};
use crate::numcore::ring::{parse_rat, Rat};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {0}: {1}")]
    Io(String, String),
    #[error("invalid config: {0}")]
    Toml(String),
    #[error("a_invariants: {0}")]
    Invariants(String),
    #[error("root_number must be +1 or -1, got {0}")]
    RootNumber(i64),
    #[error("conductor must be positive")]
    Conductor,
    #[error("singular model")]
    Singular,
    #[error("root number {0} fails the parameter-independence test (|L(t=1) − L(t=1.3)| = {1:e})")]
    RootNumberCheck(i8, f64),
    #[error("{0}")]
    Other(String),
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum RatEntry {
    Int(i64),
    Text(String),
}

fn default_precision() -> u32 {
    50
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CurveConfig {
    pub label: String,
    pub a_invariants: Vec<RatEntry>,
    pub conductor: u64,
    pub root_number: i64,
    #[serde(default = "default_precision")]
    pub precision_digits: u32,
}

impl CurveConfig {
    pub fn parse(text: &str) -> Result<CurveConfig, ConfigError> {
        let cfg: CurveConfig = toml::from_str(text).map_err(|e| ConfigError::Toml(e.to_string()))?;
        cfg.invariants()?;
        if cfg.conductor == 0 {
            return Err(ConfigError::Conductor);
        }
        if cfg.root_number != 1 && cfg.root_number != -1 {
            return Err(ConfigError::RootNumber(cfg.root_number));
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<CurveConfig, ConfigError> {
        let text =
            std::fs::read_to_string(path).map_err(|e| ConfigError::Io(path.display().to_string(), e.to_string()))?;
        Self::parse(&text)
    }

    pub fn invariants(&self) -> Result<[Rat; 5], ConfigError> {
        if self.a_invariants.len() != 5 {
            return Err(ConfigError::Invariants(format!("expected 5 entries, got {}", self.a_invariants.len())));
        }
        let v: Vec<Rat> = self
            .a_invariants
            .iter()
            .map(|e| match e {
                RatEntry::Int(n) => Ok(Rat::from_integer((*n).into())),
                RatEntry::Text(s) => parse_rat(s).ok_or_else(|| ConfigError::Invariants(format!("cannot parse {s:?}"))),
            })
            .collect::<Result<_, _>>()?;
        Ok([v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone(), v[4].clone()])
    }

    pub fn curve(&self) -> Result<CurveQ, ConfigError> {
        let a = self.invariants()?;
        let c = CurveQ::from_ainvariants(&self.label, a).map_err(|_| ConfigError::Singular)?;
        if c.inv.disc.is_zero() {
            return Err(ConfigError::Singular);
        }
        Ok(c.with_arithmetic(self.conductor, self.root_number as i8))
    }

    pub fn from_curve(c: &CurveQ, precision_digits: u32) -> CurveConfig {
        CurveConfig {
            label: c.label.clone(),
            a_invariants: c.a_invariants().iter().map(|x| RatEntry::Text(crate::numcore::ring::fmt_rat(x))).collect(),
            conductor: c.conductor,
            root_number: c.root_number as i64,
            precision_digits,
        }
    }
}

/// L(E,1) at splitting parameters t = 1 and t = 1.3 agree iff the root number is right.
pub fn root_number_discrepancy(curve: &CurveQ, digits: u32) -> Result<(f64, f64), ConfigError> {
    let bits = digits_to_bits(digits);
    let target = 10f64.powi(-(digits as i32) / 2);
    let chi = Character::trivial(3);
    let a = central_value_t::<MpReal>(curve, &chi, target, bits, 1.0).map_err(|e| ConfigError::Other(e.to_string()))?;
    let b = central_value_t::<MpReal>(curve, &chi, target, bits, 1.3).map_err(|e| ConfigError::Other(e.to_string()))?;
    let d = (a.value - b.value).norm_sqr().to_f64().sqrt();
    Ok((d, a.err + b.err))
}

pub fn validate_root_number(curve: &CurveQ, digits: u32) -> Result<(), ConfigError> {
    let (d, bound) = root_number_discrepancy(curve, digits)?;
    if d > 10.0 * bound + 1e-12 {
        return Err(ConfigError::RootNumberCheck(curve.root_number, d));
    }
    Ok(())
}
