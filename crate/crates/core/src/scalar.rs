//! Scalar abstractions.
//!
//! The series code (Chebyshev recurrences, `Y` polynomials, terminating
//! hypergeometric sums, the analytic pmf) only needs ring arithmetic and
//! exact integer embedding, so it is written against [`Scalar`] and runs
//! unchanged on `f32`, `f64` and [`BigRational`]. Anything that needs
//! transcendental functions (quadrature, simulation, estimation) is
//! written against [`Real`].

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, FloatConst, FromPrimitive, Num, Signed, ToPrimitive};

/// Exact-ring scalar: everything the series evaluators need.
pub trait Scalar: Clone + Debug + PartialOrd + Num + Signed + FromPrimitive {
    /// Embeds an arbitrary-precision integer. Exact for rationals, correctly
    /// rounded (up to one ulp) for floats.
    fn from_bigint(n: &BigInt) -> Self;

    /// Returns `Some(n)` when the value is exactly the integer `n`.
    fn to_exact_i64(&self) -> Option<i64>;

    fn from_i64_lossless(n: i64) -> Self {
        Self::from_i64(n).expect("i64 always embeds")
    }

    /// `n / 2` without going through a float literal.
    fn half_of(n: i64) -> Self {
        Self::from_i64_lossless(n) / Self::from_i64_lossless(2)
    }

    fn powu(&self, exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

/// Floating-point scalar used by the numerical paths.
pub trait Real:
    Scalar + Float + FloatConst + Copy + Display + Sum + Send + Sync + 'static
{
    fn from_f64_lossy(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("finite f64 embeds")
    }

    fn from_usize_lossy(n: usize) -> Self {
        <Self as FromPrimitive>::from_usize(n).expect("usize embeds")
    }

    /// Machine epsilon as an `f64`, for tolerance bookkeeping.
    fn epsilon_f64() -> f64 {
        <Self as Float>::epsilon().to_f64().unwrap_or(f64::EPSILON)
    }
}

fn float_exact_i64<T: Float>(x: T) -> Option<i64> {
    if x.fract() != T::zero() {
        return None;
    }
    x.to_i64()
}

/// Scales a big integer by `2^exp` into an `f64`, keeping the top 64 bits.
pub(crate) fn bigint_ldexp(n: &BigInt, exp: i64) -> f64 {
    let bits = n.bits() as i64;
    if bits == 0 {
        return 0.0;
    }
    let shift = (bits - 64).max(0);
    let top = (n >> (shift as usize)).to_f64().unwrap_or(f64::NAN);
    ldexp(top, exp + shift)
}

/// `x * 2^exp` for exponents far outside the `powi` range.
pub(crate) fn ldexp(mut x: f64, mut exp: i64) -> f64 {
    while exp > 1000 {
        x *= 2f64.powi(1000);
        exp -= 1000;
        if x.is_infinite() {
            return x;
        }
    }
    while exp < -1000 {
        x *= 2f64.powi(-1000);
        exp += 1000;
        if x == 0.0 {
            return x;
        }
    }
    x * 2f64.powi(exp as i32)
}

impl Scalar for f64 {
    fn from_bigint(n: &BigInt) -> Self {
        bigint_ldexp(n, 0)
    }
    fn to_exact_i64(&self) -> Option<i64> {
        float_exact_i64(*self)
    }
}

impl Scalar for f32 {
    fn from_bigint(n: &BigInt) -> Self {
        bigint_ldexp(n, 0) as f32
    }
    fn to_exact_i64(&self) -> Option<i64> {
        float_exact_i64(*self)
    }
}

impl Real for f64 {}
impl Real for f32 {}

impl Scalar for BigRational {
    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
    fn to_exact_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.to_integer().to_i64()
        } else {
            None
        }
    }
}

/// Exact rational image of a finite float.
pub fn exact_rational(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

/// Nearest `f64` to an exact rational.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    let num = q.numer();
    let den = q.denom();
    if num.bits() == 0 {
        return 0.0;
    }
    // scale so the integer quotient carries 64 significant bits
    let shift = den.bits() as i64 - num.bits() as i64 + 64;
    let scaled = if shift >= 0 {
        (num << (shift as usize)) / den
    } else {
        num / (den << ((-shift) as usize))
    };
    bigint_ldexp(&scaled, -shift)
}
