use clifford_core::CliffordAlg;
use ks_decomposition::Elem;
use num_traits::Zero;
use scalar_tower::{QuadExt, Rational};

/// a + √2·b with a, b ∈ Cl(V) over ℚ.
#[derive(Clone, Debug, PartialEq)]
pub struct QElem {
    pub a: Elem,
    pub b: Elem,
}

impl QElem {
    pub fn from_rational(a: Elem) -> Self {
        let b = a.scale(&Rational::zero());
        QElem { a, b }
    }

    pub fn scalar(alg: &CliffordAlg<Rational>, c: QuadExt) -> Self {
        QElem { a: alg.scalar(c.a), b: alg.scalar(c.b) }
    }

    pub fn vector(alg: &CliffordAlg<Rational>, v: &[QuadExt]) -> Self {
        let a: Vec<Rational> = v.iter().map(|x| x.a.clone()).collect();
        let b: Vec<Rational> = v.iter().map(|x| x.b.clone()).collect();
        QElem { a: alg.vector(&a), b: alg.vector(&b) }
    }

    pub fn map(&self, f: impl Fn(&Elem) -> Elem) -> Self {
        QElem { a: f(&self.a), b: f(&self.b) }
    }

    pub fn add(&self, o: &Self) -> Self {
        QElem { a: self.a.clone() + o.a.clone(), b: self.b.clone() + o.b.clone() }
    }

    pub fn mul(&self, alg: &CliffordAlg<Rational>, o: &Self) -> Self {
        let m = |x: &Elem, y: &Elem| alg.mul(x, y).expect("same algebra");
        let two = Rational::from_integer(2.into());
        QElem { a: m(&self.a, &o.a) + m(&self.b, &o.b).scale(&two), b: m(&self.a, &o.b) + m(&self.b, &o.a) }
    }

    /// The coefficient of 1 if the element is a scalar.
    pub fn scalar_part(&self) -> Option<QuadExt> {
        let only_scalar = |e: &Elem| e.terms().all(|(m, _)| *m == 0);
        if only_scalar(&self.a) && only_scalar(&self.b) {
            Some(QuadExt::new(self.a.coeff(0), self.b.coeff(0)))
        } else {
            None
        }
    }

    pub fn is_vector(&self) -> bool {
        let deg1 = |e: &Elem| e.terms().all(|(m, _)| m.count_ones() == 1);
        deg1(&self.a) && deg1(&self.b)
    }
}
