//! Exact arithmetic: integers, rationals, polynomials, resultants, cyclotomic integers,
//! plus the real scalar abstraction used by the numerical modules.

pub mod cyclotomic;
pub mod factor;
pub mod poly;
pub mod quadratic;
pub mod real;
pub mod recognize;
pub mod resultant;
pub mod ring;
pub mod roots;

pub use cyclotomic::{cyclo_mul, reduce_mod_lambda, Cyclotomic, CyclotomicInt, MismatchedEll};
pub use factor::{factor, factor_big, is_prime, is_squarefree, Factorization};
pub use poly::{BiPolyQ, Poly, PolyQ};
pub use quadratic::{QSqrtM3, QuadExt};
pub use real::{digits_to_bits, MpReal, Real};
pub use recognize::{recognize_integer, recognize_rational, rational_gcd, RecognitionError};
pub use resultant::{det, discriminant, discriminant_monic, poly_discriminant, resultant, DiscriminantError};
pub use ring::{fmt_rat, parse_rat, rat, rat_sqrt, ratio, Field, Rat, Ring};
