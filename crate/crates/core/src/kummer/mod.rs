//! The discriminant surface δ² = Δ(u,t) of an elliptic curve, its Jacobian fibration,
//! the torsion families, the three-torsion conic and the 37B parametrization.

pub mod conic;
pub mod e37b;
pub mod families;
pub mod genus3;
pub mod surface;

pub use conic::{conic_norm_test, ConicParam, ConicResult};
pub use e37b::{census_37b, e37b_param, Census37b, CensusRow37b, E37bParam};
pub use families::{torsion_family, FamilyFiber, FamilyKind, FamilyOutcome};
pub use genus3::{genus3_curve, Genus3Curve};
pub use surface::{
    bad_locus, delta_poly, extract_cubic, fiber_search, gamma1, integral_cubic, jacobian_curve, printed_quartic,
    CubicClass, FiberPoint, Jacobian, KummerError, SurfaceModel,
};
