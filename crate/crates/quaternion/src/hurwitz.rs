use std::fmt;

use num_traits::Zero;
use scalar_tower::{rat, Mat, Rational, Ring};
use serde::{Deserialize, Serialize};

use crate::Quat;

/// An element c₁h + c₂i + c₃j + c₄k of 𝔬, h = (1 + i + j + k)/2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HurwitzElem {
    pub coeffs: [i64; 4],
}

impl HurwitzElem {
    pub fn new(coeffs: [i64; 4]) -> Self {
        HurwitzElem { coeffs }
    }

    pub fn h() -> Self {
        HurwitzElem::new([1, 0, 0, 0])
    }

    pub fn basis() -> [Quat<Rational>; 4] {
        let h = rat(1, 2);
        [
            Quat::new(h.clone(), h.clone(), h.clone(), h),
            Quat::i(),
            Quat::j(),
            Quat::k(),
        ]
    }

    pub fn to_quat(&self) -> Quat<Rational> {
        let b = Self::basis();
        let mut q = Quat::zero();
        for (c, e) in self.coeffs.iter().zip(b) {
            q = q + e.scale(&Rational::from_int(*c));
        }
        q
    }

    /// Inverse of [`to_quat`]; `None` unless q ∈ 𝔬.
    pub fn from_quat(q: &Quat<Rational>) -> Option<Self> {
        // q = w + xi + yj + zk = (2w)h + (x − w)i + (y − w)j + (z − w)k
        let c1 = q.w.clone() + q.w.clone();
        let rest = [q.x.clone() - q.w.clone(), q.y.clone() - q.w.clone(), q.z.clone() - q.w.clone()];
        let mut out = [0i64; 4];
        for (slot, v) in out.iter_mut().zip(std::iter::once(c1).chain(rest)) {
            if !v.is_integer() {
                return None;
            }
            *slot = v.to_integer().try_into().ok()?;
        }
        Some(HurwitzElem::new(out))
    }

    pub fn mul(&self, other: &Self) -> Self {
        HurwitzElem::from_quat(&(self.to_quat() * other.to_quat())).expect("𝔬 is closed under multiplication")
    }

    pub fn norm(&self) -> Rational {
        self.to_quat().norm()
    }
}

impl fmt::Display for HurwitzElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.coeffs;
        write!(f, "[{a},{b},{c},{d}]")
    }
}

/// M_𝔬: the Gram matrix of b(p, q) = ½Trd(p q̄) in the basis {h, i, j, k}.
pub fn hurwitz_gram() -> Mat<Rational> {
    let b = HurwitzElem::basis();
    Mat::from_fn(4, 4, |r, s| b[r].dot(&b[s]))
}

/// The 24 units of 𝔬.
pub fn hurwitz_units() -> Vec<Quat<Rational>> {
    let mut out = Vec::new();
    let one = Rational::from_int(1);
    for pos in 0..4 {
        for sign in [1, -1] {
            let mut c = [Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero()];
            c[pos] = one.clone() * Rational::from_int(sign);
            out.push(Quat::from_coeffs(c));
        }
    }
    for mask in 0..16u32 {
        let c = std::array::from_fn(|t| if mask >> t & 1 == 1 { rat(-1, 2) } else { rat(1, 2) });
        out.push(Quat::from_coeffs(c));
    }
    out
}
