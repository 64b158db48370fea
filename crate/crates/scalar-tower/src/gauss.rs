use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::traits::{Field, Ring};
use crate::Rational;

/// re + im·i over a real base field `T`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Gauss<T> {
    pub re: T,
    pub im: T,
}

impl<T: Field> Gauss<T> {
    pub fn new(re: T, im: T) -> Self {
        Gauss { re, im }
    }

    pub fn real(re: T) -> Self {
        Gauss { re, im: T::zero() }
    }

    pub fn i() -> Self {
        Gauss { re: T::zero(), im: T::one() }
    }

    /// |z|² = re² + im², an element of the base field.
    pub fn norm_sqr(&self) -> T {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }

    pub fn scale(&self, t: &T) -> Self {
        Gauss { re: self.re.clone() * t.clone(), im: self.im.clone() * t.clone() }
    }
}

impl<T: Field> Zero for Gauss<T> {
    fn zero() -> Self {
        Gauss { re: T::zero(), im: T::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl<T: Field> One for Gauss<T> {
    fn one() -> Self {
        Gauss { re: T::one(), im: T::zero() }
    }
}

impl<T: Field> Add for Gauss<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Gauss { re: self.re + o.re, im: self.im + o.im }
    }
}

impl<T: Field> Sub for Gauss<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Gauss { re: self.re - o.re, im: self.im - o.im }
    }
}

impl<T: Field> Neg for Gauss<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Gauss { re: -self.re, im: -self.im }
    }
}

impl<T: Field> Mul for Gauss<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Gauss {
            re: self.re.clone() * o.re.clone() - self.im.clone() * o.im.clone(),
            im: self.re * o.im + self.im * o.re,
        }
    }
}

impl<T: Field> Ring for Gauss<T> {
    fn from_int(n: i64) -> Self {
        Gauss::real(T::from_int(n))
    }

    fn conj(&self) -> Self {
        Gauss { re: self.re.clone(), im: -self.im.clone() }
    }
}

impl<T: Field> Field for Gauss<T> {
    fn inv(&self) -> Option<Self> {
        let n = self.norm_sqr().inv()?;
        Some(Gauss { re: self.re.clone() * n.clone(), im: -self.im.clone() * n })
    }

    fn from_rational(q: &Rational) -> Self {
        Gauss::real(T::from_rational(q))
    }
}

impl<T: Field + fmt::Display> fmt::Display for Gauss<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "({})*I", self.im)
        } else {
            write!(f, "{} + ({})*I", self.re, self.im)
        }
    }
}
