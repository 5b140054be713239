//! Twists of elliptic curves over Q by Dirichlet characters of odd prime order:
//! central L-values and their algebraic parts, the Hecke congruences between them,
//! and the Kummer-surface construction of cyclic cubic fields with rank growth.

pub mod census;
pub mod cubicfield;
pub mod dirichlet;
pub mod elliptic;
pub mod kummer;
pub mod lvalue;
pub mod numcore;

pub use elliptic::{CurveQ, KElem, PointK, PointQ};
pub use numcore::{BiPolyQ, CyclotomicInt, MpReal, PolyQ, Rat};

pub type TwistEngineMp = lvalue::TwistEngine<MpReal>;
pub type TwistEngineF64 = lvalue::TwistEngine<f64>;
pub type LValueMp = lvalue::LValue<MpReal>;
pub type LValueF64 = lvalue::LValue<f64>;
