use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use scalar_tower::Field;

/// An element Σ c_S e_S; only meaningful together with its algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordElem<F> {
    alg: u64,
    coeffs: BTreeMap<u32, F>,
}

impl<F: Field> CliffordElem<F> {
    pub(crate) fn new(alg: u64, coeffs: BTreeMap<u32, F>) -> Self {
        CliffordElem { alg, coeffs }
    }

    pub fn alg_id(&self) -> u64 {
        self.alg
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u32, &F)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, m: u32) -> F {
        self.coeffs.get(&m).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map_terms(|_, x| x.clone() * c.clone())
    }

    pub(crate) fn map_terms(&self, f: impl Fn(u32, &F) -> F) -> Self {
        let coeffs = self.coeffs.iter().map(|(m, c)| (*m, f(*m, c))).filter(|(_, c)| !c.is_zero()).collect();
        CliffordElem { alg: self.alg, coeffs }
    }

    pub fn is_even(&self) -> bool {
        self.coeffs.keys().all(|m| m.count_ones() % 2 == 0)
    }

    pub fn is_odd(&self) -> bool {
        self.coeffs.keys().all(|m| m.count_ones() % 2 == 1)
    }

    /// +1 for even, −1 for odd, `None` if inhomogeneous (zero counts as even).
    pub fn parity(&self) -> Option<i32> {
        if self.is_even() {
            Some(1)
        } else if self.is_odd() {
            Some(-1)
        } else {
            None
        }
    }

    /// Projection onto the even or odd part.
    pub fn part(&self, even: bool) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(m, _)| (m.count_ones() % 2 == 0) == even)
            .map(|(m, c)| (*m, c.clone()))
            .collect();
        CliffordElem { alg: self.alg, coeffs }
    }

    fn combine(mut self, other: Self, sign: bool) -> Self {
        assert_eq!(self.alg, other.alg, "elements belong to different algebras");
        for (m, c) in other.coeffs {
            let c = if sign { -c } else { c };
            let v = match self.coeffs.remove(&m) {
                Some(x) => x + c,
                None => c,
            };
            if !v.is_zero() {
                self.coeffs.insert(m, v);
            }
        }
        self
    }

    pub(crate) fn render(&self) -> String
    where
        F: fmt::Display,
    {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.coeffs.iter().enumerate() {
            let idx: Vec<String> = (0..32).filter(|j| m >> j & 1 == 1).map(|j| (j + 1).to_string()).collect();
            let mono = format!("e{{{}}}", idx.join(","));
            let text = c.to_string();
            let (neg, body) = match text.strip_prefix('-') {
                Some(rest) if !rest.contains([' ', '+']) => (true, rest.to_string()),
                _ => (false, text),
            };
            let body = if body.contains([' ', '+']) { format!("({body})") } else { body };
            if k == 0 {
                out.push_str(&format!("{}{body} * {mono}", if neg { "-" } else { "" }));
            } else {
                out.push_str(&format!(" {} {body} * {mono}", if neg { "-" } else { "+" }));
            }
        }
        out
    }
}

impl<F: Field> Add for CliffordElem<F> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.combine(o, false)
    }
}

impl<F: Field> Sub for CliffordElem<F> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self.combine(o, true)
    }
}

impl<F: Field> Neg for CliffordElem<F> {
    type Output = Self;
    fn neg(self) -> Self {
        self.map_terms(|_, c| -c.clone())
    }
}

impl<F: Field + fmt::Display> fmt::Display for CliffordElem<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}
