//! Quaternions over the scalar tower, the Hurwitz order 𝔬 and χ: ℍ → M₂(ℂ).

mod hurwitz;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use scalar_tower::{Field, Gauss, Mat, QuadExt, Rational, Ring};
use serde::{Deserialize, Serialize};

pub use hurwitz::{hurwitz_gram, hurwitz_units, HurwitzElem};

/// w + x·i + y·j + z·k.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Quat<T> {
    pub w: T,
    pub x: T,
    pub y: T,
    pub z: T,
}

pub type RatQuat = Quat<Rational>;
pub type QuadQuat = Quat<QuadExt>;

impl<T: Ring> Quat<T> {
    pub fn new(w: T, x: T, y: T, z: T) -> Self {
        Quat { w, x, y, z }
    }

    pub fn scalar(w: T) -> Self {
        Quat { w, x: T::zero(), y: T::zero(), z: T::zero() }
    }

    pub fn i() -> Self {
        Quat::new(T::zero(), T::one(), T::zero(), T::zero())
    }

    pub fn j() -> Self {
        Quat::new(T::zero(), T::zero(), T::one(), T::zero())
    }

    pub fn k() -> Self {
        Quat::new(T::zero(), T::zero(), T::zero(), T::one())
    }

    pub fn coeffs(&self) -> [T; 4] {
        [self.w.clone(), self.x.clone(), self.y.clone(), self.z.clone()]
    }

    pub fn from_coeffs(c: [T; 4]) -> Self {
        let [w, x, y, z] = c;
        Quat { w, x, y, z }
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Quat<U> {
        Quat { w: f(&self.w), x: f(&self.x), y: f(&self.y), z: f(&self.z) }
    }

    pub fn scale(&self, t: &T) -> Self {
        self.map(|c| c.clone() * t.clone())
    }

    /// Nm(q) = q·q̄ = w² + x² + y² + z².
    pub fn norm(&self) -> T {
        self.w.clone() * self.w.clone()
            + self.x.clone() * self.x.clone()
            + self.y.clone() * self.y.clone()
            + self.z.clone() * self.z.clone()
    }

    /// Reduced trace q + q̄ = 2w.
    pub fn trd(&self) -> T {
        self.w.clone() + self.w.clone()
    }

    pub fn is_scalar(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }
}

impl<T: Field> Quat<T> {
    pub fn inv(&self) -> Option<Self> {
        let n = self.norm().inv()?;
        Some(self.conj().scale(&n))
    }

    /// b(p, q) = ½·Trd(p q̄), the polar form of Nm.
    pub fn dot(&self, other: &Self) -> T {
        self.w.clone() * other.w.clone()
            + self.x.clone() * other.x.clone()
            + self.y.clone() * other.y.clone()
            + self.z.clone() * other.z.clone()
    }
}

impl<T: Ring> Zero for Quat<T> {
    fn zero() -> Self {
        Quat::scalar(T::zero())
    }
    fn is_zero(&self) -> bool {
        self.w.is_zero() && self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }
}

impl<T: Ring> One for Quat<T> {
    fn one() -> Self {
        Quat::scalar(T::one())
    }
}

impl<T: Ring> Add for Quat<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Quat { w: self.w + o.w, x: self.x + o.x, y: self.y + o.y, z: self.z + o.z }
    }
}

impl<T: Ring> Sub for Quat<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Quat { w: self.w - o.w, x: self.x - o.x, y: self.y - o.y, z: self.z - o.z }
    }
}

impl<T: Ring> Neg for Quat<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Quat { w: -self.w, x: -self.x, y: -self.y, z: -self.z }
    }
}

impl<T: Ring> Mul for Quat<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (a1, b1, c1, d1) = (self.w, self.x, self.y, self.z);
        let (a2, b2, c2, d2) = (o.w, o.x, o.y, o.z);
        Quat {
            w: a1.clone() * a2.clone() - b1.clone() * b2.clone() - c1.clone() * c2.clone() - d1.clone() * d2.clone(),
            x: a1.clone() * b2.clone() + b1.clone() * a2.clone() + c1.clone() * d2.clone() - d1.clone() * c2.clone(),
            y: a1.clone() * c2.clone() - b1.clone() * d2.clone() + c1.clone() * a2.clone() + d1.clone() * b2.clone(),
            z: a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        }
    }
}

impl<T: Ring> Ring for Quat<T> {
    fn from_int(n: i64) -> Self {
        Quat::scalar(T::from_int(n))
    }

    fn conj(&self) -> Self {
        Quat { w: self.w.clone(), x: -self.x.clone(), y: -self.y.clone(), z: -self.z.clone() }
    }
}

impl From<Rational> for Quat<Rational> {
    fn from(q: Rational) -> Self {
        Quat::scalar(q)
    }
}

impl From<Quat<Rational>> for Quat<QuadExt> {
    fn from(q: Quat<Rational>) -> Self {
        q.map(|c| QuadExt::from(c.clone()))
    }
}

pub fn quat_mul<T: Ring>(p: &Quat<T>, q: &Quat<T>) -> Quat<T> {
    p.clone() * q.clone()
}

/// χ(w + xi + yj + zk) = [[w + xi, y + zi], [−y + zi, w − xi]].
pub fn chi<T: Field>(q: &Quat<T>) -> Mat<Gauss<T>> {
    let g = |re: &T, im: &T| Gauss::new(re.clone(), im.clone());
    Mat::from_rows(vec![
        vec![g(&q.w, &q.x), g(&q.y, &q.z)],
        vec![g(&-q.y.clone(), &q.z), g(&q.w, &-q.x.clone())],
    ])
}

/// χ applied entrywise to an n×m quaternion matrix Q = A + Bj, giving the
/// 2n×2m complex matrix [[A, B], [−B̄, Ā]].
pub fn chi_matrix<T: Field>(m: &Mat<Quat<T>>) -> Mat<Gauss<T>> {
    let (n, c) = (m.rows(), m.cols());
    Mat::from_fn(2 * n, 2 * c, |r, s| chi(&m[(r % n, s % c)])[(r / n, s / c)].clone())
}

impl<T: Ring + fmt::Display> fmt::Display for Quat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + ({})*i + ({})*j + ({})*k", self.w, self.x, self.y, self.z)
    }
}
