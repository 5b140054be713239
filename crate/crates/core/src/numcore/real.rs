use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{Num, One, Zero};
use rug::float::Round;
use rug::ops::Pow;
use rug::Float;

/// Real scalar used by the numerical code: hardware floats or MPFR floats.
///
/// Constructors take a precision in bits; hardware floats ignore it.
pub trait Real:
    Clone
    + fmt::Debug
    + Send
    + Sync
    + PartialOrd
    + Num
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
    fn from_f64(bits: u32, x: f64) -> Self;
    fn from_i64(bits: u32, n: i64) -> Self;
    fn from_bigint(bits: u32, n: &BigInt) -> Self;
    fn zero_prec(bits: u32) -> Self {
        Self::from_i64(bits, 0)
    }
    fn from_ratio(bits: u32, num: &BigInt, den: &BigInt) -> Self {
        Self::from_bigint(bits, num) / Self::from_bigint(bits, den)
    }
    fn pi(bits: u32) -> Self;
    /// Unit roundoff at this precision.
    fn epsilon(bits: u32) -> f64;
    fn sqrt(&self) -> Self;
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn cos(&self) -> Self;
    fn sin(&self) -> Self;
    fn acos(&self) -> Self;
    fn cbrt(&self) -> Self;
    fn abs(&self) -> Self;
    fn to_f64(&self) -> f64;
    /// Nearest integer, ties away from zero.
    fn round_to_bigint(&self) -> BigInt;
    /// self·num/den without an intermediate allocation where possible.
    fn mul_ratio(&self, num: i64, den: u64) -> Self;
}

macro_rules! impl_real_hw {
    ($t:ty) => {
        impl Real for $t {
            fn from_f64(_: u32, x: f64) -> Self {
                x as $t
            }
            fn from_i64(_: u32, n: i64) -> Self {
                n as $t
            }
            fn from_bigint(_: u32, n: &BigInt) -> Self {
                num_traits::ToPrimitive::to_f64(n).unwrap_or(f64::NAN) as $t
            }
            fn pi(_: u32) -> Self {
                std::f64::consts::PI as $t
            }
            fn epsilon(_: u32) -> f64 {
                <$t>::EPSILON as f64
            }
            fn sqrt(&self) -> Self {
                <$t>::sqrt(*self)
            }
            fn exp(&self) -> Self {
                <$t>::exp(*self)
            }
            fn ln(&self) -> Self {
                <$t>::ln(*self)
            }
            fn cos(&self) -> Self {
                <$t>::cos(*self)
            }
            fn sin(&self) -> Self {
                <$t>::sin(*self)
            }
            fn acos(&self) -> Self {
                <$t>::acos(*self)
            }
            fn cbrt(&self) -> Self {
                <$t>::cbrt(*self)
            }
            fn abs(&self) -> Self {
                <$t>::abs(*self)
            }
            fn to_f64(&self) -> f64 {
                *self as f64
            }
            fn round_to_bigint(&self) -> BigInt {
                num_traits::FromPrimitive::from_f64((*self as f64).round()).unwrap_or_default()
            }
            fn mul_ratio(&self, num: i64, den: u64) -> Self {
                *self * (num as $t) / (den as $t)
            }
        }
    };
}

impl_real_hw!(f32);
impl_real_hw!(f64);

/// MPFR float. Binary operations return the larger of the operand precisions;
/// compound assignment raises the left operand's precision when needed.
#[derive(Clone, PartialEq, PartialOrd)]
pub struct MpReal(pub Float);

/// Precision for values built without an explicit one (`Zero`, `One`, parsing).
pub const DEFAULT_BITS: u32 = 64;

pub fn digits_to_bits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 32
}

impl MpReal {
    pub fn new(bits: u32, x: f64) -> Self {
        MpReal(Float::with_val(bits, x))
    }

    pub fn prec(&self) -> u32 {
        self.0.prec()
    }

    fn raise(&mut self, bits: u32) {
        if self.0.prec() < bits {
            self.0.set_prec_round(bits, Round::Nearest);
        }
    }
}

impl fmt::Debug for MpReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.to_string_radix(10, Some(30)))
    }
}

impl fmt::Display for MpReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = (self.0.prec() as f64 / std::f64::consts::LOG2_10) as usize;
        write!(f, "{}", self.0.to_string_radix(10, Some(digits.max(2))))
    }
}

macro_rules! mp_binop {
    ($tr:ident, $m:ident, $atr:ident, $am:ident) => {
        impl $tr for MpReal {
            type Output = MpReal;
            fn $m(mut self, rhs: MpReal) -> MpReal {
                self.raise(rhs.0.prec());
                self.0.$am(&rhs.0);
                self
            }
        }
        impl<'a> $atr<&'a MpReal> for MpReal {
            fn $am(&mut self, rhs: &'a MpReal) {
                self.raise(rhs.0.prec());
                self.0.$am(&rhs.0);
            }
        }
        impl $atr<MpReal> for MpReal {
            fn $am(&mut self, rhs: MpReal) {
                self.raise(rhs.0.prec());
                self.0.$am(&rhs.0);
            }
        }
    };
}

mp_binop!(Add, add, AddAssign, add_assign);
mp_binop!(Sub, sub, SubAssign, sub_assign);
mp_binop!(Mul, mul, MulAssign, mul_assign);
mp_binop!(Div, div, DivAssign, div_assign);

impl Rem for MpReal {
    type Output = MpReal;
    fn rem(mut self, rhs: MpReal) -> MpReal {
        self.raise(rhs.0.prec());
        self.0 %= &rhs.0;
        self
    }
}

impl Neg for MpReal {
    type Output = MpReal;
    fn neg(self) -> MpReal {
        MpReal(-self.0)
    }
}

impl Zero for MpReal {
    fn zero() -> Self {
        MpReal(Float::new(DEFAULT_BITS))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for MpReal {
    fn one() -> Self {
        MpReal(Float::with_val(DEFAULT_BITS, 1))
    }
}

impl Num for MpReal {
    type FromStrRadixErr = rug::float::ParseFloatError;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        let parsed = Float::parse_radix(s, radix as i32)?;
        Ok(MpReal(Float::with_val(DEFAULT_BITS, parsed)))
    }
}

impl Real for MpReal {
    fn from_f64(bits: u32, x: f64) -> Self {
        MpReal(Float::with_val(bits, x))
    }
    fn from_i64(bits: u32, n: i64) -> Self {
        MpReal(Float::with_val(bits, n))
    }
    fn from_bigint(bits: u32, n: &BigInt) -> Self {
        let z: rug::Integer = n.to_string().parse().expect("decimal integer");
        MpReal(Float::with_val(bits, z))
    }
    fn from_ratio(bits: u32, num: &BigInt, den: &BigInt) -> Self {
        let n: rug::Integer = num.to_string().parse().expect("decimal integer");
        let d: rug::Integer = den.to_string().parse().expect("decimal integer");
        let mut x = Float::with_val(bits, n);
        x /= Float::with_val(bits, d);
        MpReal(x)
    }
    fn pi(bits: u32) -> Self {
        MpReal(Float::with_val(bits, rug::float::Constant::Pi))
    }
    fn epsilon(bits: u32) -> f64 {
        2f64.powi(-(bits as i32))
    }
    fn sqrt(&self) -> Self {
        MpReal(self.0.clone().sqrt())
    }
    fn exp(&self) -> Self {
        MpReal(self.0.clone().exp())
    }
    fn ln(&self) -> Self {
        MpReal(self.0.clone().ln())
    }
    fn cos(&self) -> Self {
        MpReal(self.0.clone().cos())
    }
    fn sin(&self) -> Self {
        MpReal(self.0.clone().sin())
    }
    fn acos(&self) -> Self {
        MpReal(self.0.clone().acos())
    }
    fn cbrt(&self) -> Self {
        MpReal(self.0.clone().cbrt())
    }
    fn abs(&self) -> Self {
        MpReal(self.0.clone().abs())
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }
    fn round_to_bigint(&self) -> BigInt {
        match self.0.to_integer_round(Round::Nearest) {
            Some((z, _)) => z.to_string().parse().unwrap(),
            None => BigInt::zero(),
        }
    }
    fn mul_ratio(&self, num: i64, den: u64) -> Self {
        let mut x = self.0.clone();
        x *= num;
        x /= den;
        MpReal(x)
    }
}

impl MpReal {
    pub fn powi(&self, e: i32) -> Self {
        MpReal(self.0.clone().pow(e))
    }

    pub fn partial_cmp_f64(&self, x: f64) -> Option<Ordering> {
        self.0.partial_cmp(&x)
    }
}
