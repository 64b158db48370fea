//! Exact arithmetic for the field tower ℚ ⊂ ℚ(√2) ⊂ ℚ(√2, i).
//!
//! Everything here is exact. The generic pieces ([`Ring`], [`Field`], [`Mat`])
//! are parameterized by the scalar; the concrete tower is exposed through the
//! aliases [`Rational`], [`QuadExt`] and [`GaussQuad`].

mod gauss;
pub mod matrix;
mod parse;
mod quad;
mod traits;

pub use gauss::Gauss;
pub use matrix::Mat;
pub use parse::{parse_gauss, parse_quad, parse_rational};
pub use quad::Quad;
pub use traits::{Field, Ring};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

pub type Integer = BigInt;
pub type Rational = BigRational;
/// a + b√2 with rational a, b.
pub type QuadExt = Quad<Rational>;
/// re + im·i with re, im in ℚ(√2).
pub type GaussQuad = Gauss<QuadExt>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("not a square in Q(sqrt2): {0}")]
    NotASquare(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Shorthand for the rational n/d.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for a + b√2 with integer a, b.
pub fn qe(a: i64, b: i64) -> QuadExt {
    Quad::new(rat(a, 1), rat(b, 1))
}

pub fn qe_sign(x: &QuadExt) -> i32 {
    x.sign()
}

pub fn qe_sqrt(x: &QuadExt) -> Result<QuadExt, ScalarError> {
    x.sqrt().ok_or_else(|| ScalarError::NotASquare(x.to_string()))
}

pub fn gq_inv(x: &GaussQuad) -> Result<GaussQuad, ScalarError> {
    x.inv().ok_or(ScalarError::DivisionByZero)
}

/// Exact square root of a non-negative rational, if it is a square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    use num_traits::Signed;
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer(), q.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    if &(&rn * &rn) == n && &(&rd * &rd) == d {
        Some(Rational::new(rn, rd))
    } else {
        None
    }
}
