//! The Clifford algebra Cl(V) of a free module with a symmetric bilinear form.
//!
//! Basis monomials e_S are indexed by bitmasks S ⊆ {0..n}; e_S is the ordered
//! product of the generators in S. Products are straightened eagerly, so each
//! element has a unique coordinate vector.

mod elem;
mod flca;
mod parse;

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;

use scalar_tower::{Field, Mat, Rational};

pub use elem::CliffordElem;
pub use flca::{extend_by_flca, Hom};
pub use parse::parse_elem;

pub type RatClifford = CliffordAlg<Rational>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliffordError {
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("bilinear form must be a symmetric square matrix")]
    BadForm,
    #[error("generator images violate the Clifford relation for the pair ({0}, {1})")]
    RelationViolation(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
}

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

type Sparse<F> = Vec<(u32, F)>;

pub struct CliffordAlg<F> {
    id: u64,
    n: usize,
    form: Mat<F>,
    /// e_S · e_j for every S and generator j, at index S·n + j.
    gen_right: Vec<Sparse<F>>,
    /// e_S · e_T, filled on first use.
    table: OnceLock<Vec<Sparse<F>>>,
}

impl<F: Field> CliffordAlg<F> {
    pub fn new(form: Mat<F>) -> Result<Self, CliffordError> {
        if !form.is_square() || form.transpose() != form {
            return Err(CliffordError::BadForm);
        }
        let n = form.rows();
        assert!(n <= 16, "too many generators");
        let mut alg = CliffordAlg {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            n,
            form,
            gen_right: Vec::new(),
            table: OnceLock::new(),
        };
        alg.gen_right = alg.build_gen_table();
        Ok(alg)
    }

    fn build_gen_table(&self) -> Vec<Sparse<F>> {
        let n = self.n;
        let mut t: Vec<Option<Sparse<F>>> = vec![None; (1usize << n) * n];
        for s in 0..(1u32 << n) {
            for j in 0..n {
                self.fill_gen(&mut t, s, j);
            }
        }
        t.into_iter().map(|x| x.unwrap()).collect()
    }

    // e_S e_j with S = (s₁ < … < s_k):
    //   s_k < j: e_{S ∪ j}
    //   s_k = j: q(e_j)·e_{S∖s_k}
    //   s_k > j: 2b(s_k, j)·e_{S∖s_k} − (e_{S∖s_k} e_j)·e_{s_k}
    fn fill_gen(&self, t: &mut Vec<Option<Sparse<F>>>, s: u32, j: usize) -> Sparse<F> {
        let idx = s as usize * self.n + j;
        if let Some(v) = &t[idx] {
            return v.clone();
        }
        let out = if s == 0 || (31 - s.leading_zeros()) < j as u32 {
            vec![(s | 1 << j, F::one())]
        } else {
            let top = 31 - s.leading_zeros();
            let prefix = s & !(1 << top);
            if top as usize == j {
                scaled(vec![(prefix, F::one())], &self.form[(j, j)])
            } else {
                let mut acc: BTreeMap<u32, F> = BTreeMap::new();
                let c = self.form[(top as usize, j)].clone() + self.form[(top as usize, j)].clone();
                if !c.is_zero() {
                    push(&mut acc, prefix, c);
                }
                let inner = self.fill_gen(t, prefix, j);
                for (m, a) in inner {
                    // every monomial of e_prefix·e_j has top bit < top, so appending is ordered
                    debug_assert!(m < 1 << top);
                    push(&mut acc, m | 1 << top, -a);
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            }
        };
        t[idx] = Some(out.clone());
        out
    }

    fn mono_table(&self) -> &Vec<Sparse<F>> {
        self.table.get_or_init(|| {
            let d = 1usize << self.n;
            let mut tab: Vec<Sparse<F>> = Vec::with_capacity(d * d);
            for s in 0..d as u32 {
                let row_start = tab.len();
                tab.push(vec![(s, F::one())]);
                for t in 1..d as u32 {
                    let top = 31 - t.leading_zeros();
                    let prev = &tab[row_start + (t & !(1 << top)) as usize];
                    let v = self.right_gen_sparse(prev, top as usize);
                    tab.push(v);
                }
            }
            tab
        })
    }

    fn right_gen_sparse(&self, v: &Sparse<F>, j: usize) -> Sparse<F> {
        let mut acc: BTreeMap<u32, F> = BTreeMap::new();
        for (m, a) in v {
            for (m2, b) in &self.gen_right[*m as usize * self.n + j] {
                push(&mut acc, *m2, a.clone() * b.clone());
            }
        }
        acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn even_dim(&self) -> usize {
        if self.n == 0 {
            1
        } else {
            1 << (self.n - 1)
        }
    }

    pub fn form(&self) -> &Mat<F> {
        &self.form
    }

    /// b(v, w) for coordinate vectors in V.
    pub fn b(&self, v: &[F], w: &[F]) -> F {
        let mut s = F::zero();
        for i in 0..self.n {
            for j in 0..self.n {
                if !v[i].is_zero() && !w[j].is_zero() {
                    s = s + v[i].clone() * self.form[(i, j)].clone() * w[j].clone();
                }
            }
        }
        s
    }

    pub fn q(&self, v: &[F]) -> F {
        self.b(v, v)
    }

    pub fn zero(&self) -> CliffordElem<F> {
        CliffordElem::new(self.id, BTreeMap::new())
    }

    pub fn scalar(&self, c: F) -> CliffordElem<F> {
        self.mono(0).scale(&c)
    }

    pub fn one(&self) -> CliffordElem<F> {
        self.mono(0)
    }

    pub fn mono(&self, s: u32) -> CliffordElem<F> {
        assert!((s as usize) < self.dim());
        CliffordElem::new(self.id, BTreeMap::from([(s, F::one())]))
    }

    pub fn gen(&self, i: usize) -> CliffordElem<F> {
        self.mono(1 << i)
    }

    /// Σ vᵢ eᵢ.
    pub fn vector(&self, v: &[F]) -> CliffordElem<F> {
        let mut m = BTreeMap::new();
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                m.insert(1u32 << i, c.clone());
            }
        }
        CliffordElem::new(self.id, m)
    }

    pub fn from_coords(&self, c: &[F]) -> CliffordElem<F> {
        assert_eq!(c.len(), self.dim());
        let m = c.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i as u32, x.clone())).collect();
        CliffordElem::new(self.id, m)
    }

    pub fn coords(&self, x: &CliffordElem<F>) -> Vec<F> {
        let mut v = vec![F::zero(); self.dim()];
        for (m, c) in x.terms() {
            v[*m as usize] = c.clone();
        }
        v
    }

    /// Masks of the even basis monomials, ascending.
    pub fn even_masks(&self) -> Vec<u32> {
        (0..self.dim() as u32).filter(|m| m.count_ones() % 2 == 0).collect()
    }

    pub fn odd_masks(&self) -> Vec<u32> {
        (0..self.dim() as u32).filter(|m| m.count_ones() % 2 == 1).collect()
    }

    fn check(&self, x: &CliffordElem<F>) -> Result<(), CliffordError> {
        if x.alg_id() == self.id {
            Ok(())
        } else {
            Err(CliffordError::AlgebraMismatch)
        }
    }

    pub fn mul(&self, a: &CliffordElem<F>, b: &CliffordElem<F>) -> Result<CliffordElem<F>, CliffordError> {
        self.check(a)?;
        self.check(b)?;
        let d = self.dim();
        let tab = self.mono_table();
        let mut acc: BTreeMap<u32, F> = BTreeMap::new();
        for (s, x) in a.terms() {
            for (t, y) in b.terms() {
                let xy = x.clone() * y.clone();
                for (m, c) in &tab[*s as usize * d + *t as usize] {
                    push(&mut acc, *m, xy.clone() * c.clone());
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(CliffordElem::new(self.id, acc))
    }

    /// Product of a sequence, left to right.
    pub fn product(&self, xs: &[CliffordElem<F>]) -> Result<CliffordElem<F>, CliffordError> {
        let mut acc = self.one();
        for x in xs {
            acc = self.mul(&acc, x)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, x: &CliffordElem<F>, k: u32) -> Result<CliffordElem<F>, CliffordError> {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, x)?;
        }
        Ok(acc)
    }

    /// The automorphism induced by v ↦ −v.
    pub fn canonical_automorphism(&self, x: &CliffordElem<F>) -> CliffordElem<F> {
        x.map_terms(|m, c| if m.count_ones() % 2 == 1 { -c.clone() } else { c.clone() })
    }

    /// The anti-automorphism reversing generator words.
    pub fn transpose(&self, x: &CliffordElem<F>) -> CliffordElem<F> {
        let mut acc = self.zero();
        for (m, c) in x.terms() {
            let mut word = self.one();
            for j in (0..self.n).rev().filter(|j| m >> j & 1 == 1) {
                word = self.mul(&word, &self.gen(j)).expect("same algebra");
            }
            acc = acc + word.scale(c);
        }
        acc
    }

    /// Matrix of y ↦ y·x on coordinates (column convention: column S is e_S·x).
    pub fn right_mul_matrix(&self, x: &CliffordElem<F>) -> Mat<F> {
        let d = self.dim();
        let mut m = Mat::zeros(d, d);
        for s in 0..d as u32 {
            let p = self.mul(&self.mono(s), x).expect("same algebra");
            for (r, c) in p.terms() {
                m[(*r as usize, s as usize)] = c.clone();
            }
        }
        m
    }

    /// Matrix of y ↦ x·y on coordinates (column convention).
    pub fn left_mul_matrix(&self, x: &CliffordElem<F>) -> Mat<F> {
        let d = self.dim();
        let mut m = Mat::zeros(d, d);
        for s in 0..d as u32 {
            let p = self.mul(x, &self.mono(s)).expect("same algebra");
            for (r, c) in p.terms() {
                m[(*r as usize, s as usize)] = c.clone();
            }
        }
        m
    }

    /// The same algebra with scalars pushed through a field embedding.
    pub fn lift<G: Field>(&self, f: impl Fn(&F) -> G) -> CliffordAlg<G> {
        CliffordAlg::new(self.form.map(&f)).expect("embedding preserves symmetry")
    }

    /// Pushes an element into a lifted copy of this algebra.
    pub fn lift_elem<G: Field>(&self, target: &CliffordAlg<G>, x: &CliffordElem<F>, f: impl Fn(&F) -> G) -> CliffordElem<G> {
        assert_eq!(target.n, self.n);
        let m = x.terms().map(|(k, c)| (*k, f(c))).filter(|(_, c)| !c.is_zero()).collect();
        CliffordElem::new(target.id, m)
    }

    /// Renders with 1-based generator indices, e.g. `4 * e{1,2} - 1 * e{}`.
    pub fn render(&self, x: &CliffordElem<F>) -> String
    where
        F: std::fmt::Display,
    {
        x.render()
    }
}

/// Cl(V ⊕ V′) together with the embeddings of Cl(V) and Cl(V′).
pub struct Glued<F> {
    pub alg: CliffordAlg<F>,
    pub left_n: usize,
    pub right_n: usize,
    left_id: u64,
    right_id: u64,
}

impl<F: Field> Glued<F> {
    /// e_S ↦ e_S (factor-A generators come first).
    pub fn embed_left(&self, x: &CliffordElem<F>) -> CliffordElem<F> {
        assert_eq!(x.alg_id(), self.left_id, "element is not from the left factor");
        CliffordElem::new(self.alg.id, x.terms().map(|(m, c)| (*m, c.clone())).collect())
    }

    /// e_S′ ↦ e_{S′ shifted past the left generators}.
    pub fn embed_right(&self, x: &CliffordElem<F>) -> CliffordElem<F> {
        assert_eq!(x.alg_id(), self.right_id, "element is not from the right factor");
        CliffordElem::new(self.alg.id, x.terms().map(|(m, c)| (*m << self.left_n, c.clone())).collect())
    }

    /// Splits a glued mask into (left mask, right mask).
    pub fn split_mask(&self, m: u32) -> (u32, u32) {
        (m & ((1 << self.left_n) - 1), m >> self.left_n)
    }

    pub fn join_mask(&self, a: u32, b: u32) -> u32 {
        a | b << self.left_n
    }
}

pub fn glue<F: Field>(a: &CliffordAlg<F>, b: &CliffordAlg<F>) -> Glued<F> {
    let (na, nb) = (a.n, b.n);
    let mut form = Mat::zeros(na + nb, na + nb);
    for i in 0..na {
        for j in 0..na {
            form[(i, j)] = a.form[(i, j)].clone();
        }
    }
    for i in 0..nb {
        for j in 0..nb {
            form[(na + i, na + j)] = b.form[(i, j)].clone();
        }
    }
    Glued {
        alg: CliffordAlg::new(form).expect("block sum of symmetric forms"),
        left_n: na,
        right_n: nb,
        left_id: a.id,
        right_id: b.id,
    }
}

fn push<F: Field>(acc: &mut BTreeMap<u32, F>, m: u32, c: F) {
    match acc.get_mut(&m) {
        Some(v) => *v = v.clone() + c,
        None => {
            acc.insert(m, c);
        }
    }
}

fn scaled<F: Field>(v: Sparse<F>, c: &F) -> Sparse<F> {
    v.into_iter().map(|(m, x)| (m, x * c.clone())).filter(|(_, x)| !x.is_zero()).collect()
}
