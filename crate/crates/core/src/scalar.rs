//! Scalar abstractions.
//!
//! Counting code is generic over a commutative [`Ring`] of integers and the
//! linear algebra / interpolation code is generic over an exact ordered
//! [`Field`]. The crate root fixes both to arbitrary precision.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{AddAssign, MulAssign, SubAssign};

use num::bigint::BigInt;
use num::rational::Ratio;
use num::{BigRational, Integer, Signed, ToPrimitive, Zero};
use num_traits::Num;

/// Integers used to accumulate multiplicities.
///
/// Fixed-width implementations panic on overflow in debug builds; use
/// [`BigInt`] when magnitudes are not known in advance.
pub trait Ring:
    Clone
    + Debug
    + Display
    + PartialEq
    + Send
    + Sync
    + Num
    + Signed
    + AddAssign
    + SubAssign
    + MulAssign
    + Sum
    + 'static
{
    fn from_i64(v: i64) -> Self;
    fn to_bigint(&self) -> BigInt;
}

impl Ring for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Ring for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Ring for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

/// Exact ordered field.
pub trait Field:
    Clone + Debug + Display + PartialEq + PartialOrd + Send + Sync + Num + Signed + 'static
{
    fn from_i64(v: i64) -> Self;
    fn from_bigint(v: &BigInt) -> Self;
    /// `Some` when the value is an integer.
    fn to_bigint(&self) -> Option<BigInt>;
}

impl Field for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }
    fn to_bigint(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.to_integer())
    }
}

macro_rules! impl_field_fixed {
    ($int:ty) => {
        impl Field for Ratio<$int> {
            fn from_i64(v: i64) -> Self {
                Ratio::from_integer(v as $int)
            }
            fn from_bigint(v: &BigInt) -> Self {
                Ratio::from_integer(v.to_i128().expect("value out of range") as $int)
            }
            fn to_bigint(&self) -> Option<BigInt> {
                self.is_integer().then(|| BigInt::from(self.to_integer()))
            }
        }
    };
}

impl_field_fixed!(i64);
impl_field_fixed!(i128);

/// `n!` as a ring element.
pub fn factorial<Z: Ring>(n: u64) -> Z {
    let mut acc = Z::one();
    for k in 2..=n {
        acc *= Z::from_i64(k as i64);
    }
    acc
}

/// Exact quotient; `None` when `den` does not divide `num`.
pub fn exact_div(num: &BigInt, den: &BigInt) -> Option<BigInt> {
    if den.is_zero() {
        return None;
    }
    let (q, r) = num.div_rem(den);
    r.is_zero().then_some(q)
}
