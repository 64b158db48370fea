use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::traits::{rational_sign, Field, Ring};
use crate::{rational_sqrt, Rational};

/// a + b√2 over a base field `T`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Quad<T> {
    pub a: T,
    pub b: T,
}

impl<T: Field> Quad<T> {
    pub fn new(a: T, b: T) -> Self {
        Quad { a, b }
    }

    pub fn from_base(a: T) -> Self {
        Quad { a, b: T::zero() }
    }

    pub fn sqrt2() -> Self {
        Quad { a: T::zero(), b: T::one() }
    }

    /// The Galois conjugate a − b√2.
    pub fn galois(&self) -> Self {
        Quad { a: self.a.clone(), b: -self.b.clone() }
    }

    /// Field norm a² − 2b².
    pub fn norm(&self) -> T {
        self.a.clone() * self.a.clone() - T::from_int(2) * self.b.clone() * self.b.clone()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }
}

impl Quad<Rational> {
    /// Sign under the real embedding √2 > 0.
    pub fn sign(&self) -> i32 {
        let sa = rational_sign(&self.a);
        let sb = rational_sign(&self.b);
        if sa == 0 {
            return sb;
        }
        if sb == 0 || sa == sb {
            return sa;
        }
        // opposite signs: compare a² with 2b²
        let d = rational_sign(&self.norm());
        if d > 0 {
            sa
        } else {
            sb
        }
    }

    pub fn abs(&self) -> Self {
        if self.sign() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Non-negative square root, when it exists in ℚ(√2).
    pub fn sqrt(&self) -> Option<Self> {
        let s = self.sign();
        if s < 0 {
            return None;
        }
        if s == 0 {
            return Some(Self::zero());
        }
        let mut cands = Vec::new();
        if self.b.is_zero() {
            if let Some(r) = rational_sqrt(&self.a) {
                cands.push(Quad::new(r, Rational::zero()));
            }
            if let Some(r) = rational_sqrt(&(self.a.clone() / Rational::from_int(2))) {
                cands.push(Quad::new(Rational::zero(), r));
            }
        } else if let Some(n) = rational_sqrt(&self.norm()) {
            // c² = (a ± √(a² − 2b²)) / 2, d = b / 2c
            for c2 in [
                (self.a.clone() + n.clone()) / Rational::from_int(2),
                (self.a.clone() - n.clone()) / Rational::from_int(2),
            ] {
                if let Some(c) = rational_sqrt(&c2) {
                    if !c.is_zero() {
                        let d = self.b.clone() / (Rational::from_int(2) * c.clone());
                        cands.push(Quad::new(c, d));
                    }
                }
            }
        }
        cands
            .into_iter()
            .map(|y| y.abs())
            .find(|y| &(y.clone() * y.clone()) == self)
    }
}

impl<T: Field> Zero for Quad<T> {
    fn zero() -> Self {
        Quad { a: T::zero(), b: T::zero() }
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl<T: Field> One for Quad<T> {
    fn one() -> Self {
        Quad { a: T::one(), b: T::zero() }
    }
}

impl<T: Field> Add for Quad<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Quad { a: self.a + o.a, b: self.b + o.b }
    }
}

impl<T: Field> Sub for Quad<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Quad { a: self.a - o.a, b: self.b - o.b }
    }
}

impl<T: Field> Neg for Quad<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Quad { a: -self.a, b: -self.b }
    }
}

impl<T: Field> Mul for Quad<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let two = T::from_int(2);
        Quad {
            a: self.a.clone() * o.a.clone() + two * self.b.clone() * o.b.clone(),
            b: self.a * o.b + self.b * o.a,
        }
    }
}

impl<T: Field> Ring for Quad<T> {
    fn from_int(n: i64) -> Self {
        Quad::from_base(T::from_int(n))
    }
}

impl<T: Field> Field for Quad<T> {
    fn inv(&self) -> Option<Self> {
        let n = self.norm().inv()?;
        let g = self.galois();
        Some(Quad { a: g.a * n.clone(), b: g.b * n })
    }

    fn from_rational(q: &Rational) -> Self {
        Quad::from_base(T::from_rational(q))
    }
}

impl From<Rational> for Quad<Rational> {
    fn from(q: Rational) -> Self {
        Quad::from_base(q)
    }
}

impl<T: Field + fmt::Display> fmt::Display for Quad<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "({})*sqrt2", self.b)
        } else {
            write!(f, "{} + ({})*sqrt2", self.a, self.b)
        }
    }
}
