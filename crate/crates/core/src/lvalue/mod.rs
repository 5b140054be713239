//! Central values of twisted L-series, their exact algebraic parts via coset sums,
//! the Hecke congruences, and the non-vanishing prime sets.

pub mod algebraic;
pub mod series;

pub use algebraic::{
    congruence_check, congruence_with, hecke_factor_with, nonvanishing_prime_set, trivial_coset_sum, vanishing_decision,
    CongruenceReport, CosetSums, Decision, NonvanishingSet, OmegaNormalization, TwistEngine, TwistRecord,
};
pub use series::{central_value, central_value_t, orbit_series, terms_needed, LError, LValue, OrbitSeries};

use crate::numcore::real::MpReal;

pub type MpTwistEngine = TwistEngine<MpReal>;
