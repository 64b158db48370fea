use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::Rational;

/// An associative unital ring, not necessarily commutative.
///
/// `conj` is the ring's canonical involution: identity on commutative
/// real rings, complex conjugation on [`crate::Gauss`], quaternion
/// conjugation on quaternions.
pub trait Ring:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    fn from_int(n: i64) -> Self;

    fn conj(&self) -> Self {
        self.clone()
    }
}

/// A commutative field with an embedding of ℚ.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;
    fn from_rational(q: &Rational) -> Self;

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|o| self.clone() * o)
    }
}

impl Ring for BigInt {
    fn from_int(n: i64) -> Self {
        BigInt::from(n)
    }
}

impl Ring for i64 {
    fn from_int(n: i64) -> Self {
        n
    }
}

impl Ring for Rational {
    fn from_int(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

pub(crate) fn rational_sign(q: &Rational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}
