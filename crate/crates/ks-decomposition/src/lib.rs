//! Decomposition of Cl⁺(T) for T = U ⊕ U(2) ⊕ D₄(−1) into the eight
//! sublattices Λᵢ cut out by the pseudo-idempotents εᵢ, and the matrices of
//! the right action of h̃₁..h̃₄ on Λ₁.

use std::sync::Arc;

use clifford_core::{CliffordAlg, CliffordElem};
use lattice::{integer_kernel, named_lattice, IntMat, Named, SubLattice};
use matrix_rep::{even_sparsity_check, phi_d4, phi_t, QuatRep, RepError, SplitRep};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use quaternion::RatQuat;
use scalar_tower::{rat, Mat, Rational};

pub type Elem = CliffordElem<Rational>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KsError {
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("the algebra does not have the expected form")]
    WrongAlgebra,
    #[error("no integral solution for H")]
    NoIntegralSolution,
    #[error("kernel generator {0} is not homogeneous")]
    Inhomogeneous(usize),
    #[error("right action of h~{0} leaves the lattice")]
    NotIntegral(usize),
    #[error("element is outside the rational span of the basis")]
    NotInSpan,
}

/// `elem² = scale·elem`.
#[derive(Clone, Debug, PartialEq)]
pub struct PseudoIdempotent {
    pub elem: Elem,
    pub scale: i64,
}

/// (x index, y index) of ε₁..ε₈, 0-based.
pub const EPS_PAIRS: [(usize, usize); 8] = [(0, 0), (1, 1), (2, 1), (3, 0), (0, 1), (1, 0), (2, 0), (3, 1)];

pub fn r(n: i64) -> Rational {
    rat(n, 1)
}

/// x₁ = f₃f₁f₂f₄, x₂ = 4f₁f₂ − x₁, x₃ = 2f₃f₄ − x₁, x₄ = 8 − x₁ − x₂ − x₃ in Cl(U ⊕ U(2)).
pub fn build_x_idempotents(cl: &CliffordAlg<Rational>) -> Result<[PseudoIdempotent; 4], KsError> {
    let expected = named_lattice(&Named::OrthogonalSum(vec![Named::U, Named::Un(2)])).gram;
    if cl.form() != &expected {
        return Err(KsError::WrongAlgebra);
    }
    let f = |i: usize| cl.gen(i);
    let x1 = cl.product(&[f(2), f(0), f(1), f(3)]).expect("same algebra");
    let f12 = cl.mul(&f(0), &f(1)).expect("same algebra");
    let f34 = cl.mul(&f(2), &f(3)).expect("same algebra");
    let x2 = f12.scale(&r(4)) - x1.clone();
    let x3 = f34.scale(&r(2)) - x1.clone();
    let x4 = cl.scalar(r(8)) - x1.clone() - x2.clone() - x3.clone();
    Ok([x1, x2, x3, x4].map(|elem| PseudoIdempotent { elem, scale: 8 }))
}

/// Solves φ(H) = diag(−2, 2) on Cl⁺(D₄(−1)) and returns (H, [2 − H, 2 + H]).
pub fn build_y_idempotents(rep: &QuatRep) -> Result<(Elem, [PseudoIdempotent; 2]), KsError> {
    let alg = rep.alg();
    if rep.dim() != 2 || alg.n() != 4 {
        return Err(KsError::WrongAlgebra);
    }
    let masks = alg.even_masks();
    let target = Mat::diag(&[RatQuat::from(r(-2)), RatQuat::from(r(2))]);
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for a in 0..2 {
        for b in 0..2 {
            for t in 0..4 {
                rows.push(masks.iter().map(|&m| rep.mono_image(m)[(a, b)].coeffs()[t].clone()).collect::<Vec<_>>());
                rhs.push(target[(a, b)].coeffs()[t].clone());
            }
        }
    }
    let sol = Mat::from_rows(rows).solve_vec(&rhs).ok_or(KsError::NoIntegralSolution)?;
    if sol.iter().any(|c| !c.is_integer()) {
        return Err(KsError::NoIntegralSolution);
    }
    let mut h = alg.zero();
    for (m, c) in masks.iter().zip(&sol) {
        h = h + alg.mono(*m).scale(c);
    }
    if rep.eval(&h)? != target || alg.mul(&h, &h).expect("same algebra") != alg.scalar(r(4)) {
        return Err(KsError::NoIntegralSolution);
    }
    let y1 = alg.scalar(r(2)) - h.clone();
    let y2 = alg.scalar(r(2)) + h.clone();
    Ok((h, [y1, y2].map(|elem| PseudoIdempotent { elem, scale: 4 })))
}

/// Copies x ∈ Cl(V) into Cl(W) with generator i ↦ i + shift.
pub fn shift_into(target: &CliffordAlg<Rational>, x: &Elem, shift: usize) -> Elem {
    let mut out = target.zero();
    for (m, c) in x.terms() {
        out = out + target.mono(m << shift).scale(c);
    }
    out
}

/// Saturated basis of {z : z·(m − p) = 0}, each generator homogeneous.
pub fn kernel_generators(alg: &CliffordAlg<Rational>, p: &PseudoIdempotent) -> Result<Vec<Elem>, KsError> {
    let a = alg.scalar(r(p.scale)) - p.elem.clone();
    let d = alg.dim();
    let mut m = IntMat::zeros(d, d);
    for s in 0..d as u32 {
        let img = alg.mul(&alg.mono(s), &a).expect("same algebra");
        for (t, c) in img.terms() {
            m[(s as usize, *t as usize)] = to_int(c);
        }
    }
    let k = integer_kernel(&m);
    let mut out = Vec::new();
    for (i, v) in k.basis.iter().enumerate() {
        let coords: Vec<Rational> = v.iter().map(|c| Rational::from_integer(c.clone())).collect();
        let e = alg.from_coords(&coords);
        if e.parity().is_none() {
            return Err(KsError::Inhomogeneous(i));
        }
        out.push(e);
    }
    Ok(out)
}

fn to_int(c: &Rational) -> BigInt {
    assert!(c.is_integer(), "non-integral coefficient");
    c.to_integer()
}

/// A rank-16 sublattice of Cl⁺(T) with its product basis L_s·K_w.
#[derive(Clone, Debug)]
pub struct LambdaRe {
    pub index: usize,
    pub basis: Vec<Elem>,
    /// (s, w) of each basis vector.
    pub labels: Vec<(usize, usize)>,
    /// Basis rows in even-monomial coordinates.
    pub coords: IntMat,
}

impl LambdaRe {
    pub fn rank(&self) -> usize {
        self.coords.rank_int()
    }

    pub fn sublattice(&self) -> SubLattice {
        SubLattice { ambient_rank: self.coords.cols(), basis: self.coords.to_rows() }
    }

    /// Rational coordinates of x in the basis.
    pub fn coords_of(&self, x: &Elem, even_masks: &[u32]) -> Result<Vec<Rational>, KsError> {
        let b = self.coords.map(|c| Rational::from_integer(c.clone())).transpose();
        let v: Vec<Rational> = even_masks.iter().map(|&m| x.coeff(m)).collect();
        b.solve_vec(&v).ok_or(KsError::NotInSpan)
    }
}

trait RankInt {
    fn rank_int(&self) -> usize;
}

impl RankInt for IntMat {
    fn rank_int(&self) -> usize {
        self.map(|c| Rational::from_integer(c.clone())).rank()
    }
}

/// The matrices N₁..N₄ of right multiplication by h̃₁..h̃₄ on Λ₁ (column convention).
#[derive(Clone, Debug)]
pub struct RepPhiRe {
    pub h_tilde: Vec<Elem>,
    pub n: Vec<IntMat>,
}

/// Everything built from T up to Φʳᵉ.
pub struct KsDecomposition {
    pub t: Arc<CliffordAlg<Rational>>,
    pub phi: QuatRep,
    pub split: SplitRep,
    pub cl_uu2: CliffordAlg<Rational>,
    pub cl_d4: Arc<CliffordAlg<Rational>>,
    pub x: [PseudoIdempotent; 4],
    pub h: Elem,
    pub y: [PseudoIdempotent; 2],
    pub eps: Vec<PseudoIdempotent>,
    /// L generators for each x_j (in Cl(U ⊕ U(2))).
    pub l: Vec<Vec<Elem>>,
    /// K generators for each y_k (in Cl(D₄(−1))).
    pub k: Vec<Vec<Elem>>,
    pub lambdas: Vec<LambdaRe>,
}

impl KsDecomposition {
    pub fn compute() -> Result<Self, KsError> {
        let phi = phi_t();
        let split = even_sparsity_check(&phi)?;
        let t = phi.alg().clone();
        let cl_uu2 = CliffordAlg::new(named_lattice(&Named::OrthogonalSum(vec![Named::U, Named::Un(2)])).gram)
            .expect("symmetric");
        let d4rep = phi_d4();
        let cl_d4 = d4rep.alg().clone();
        let x = build_x_idempotents(&cl_uu2)?;
        let (h, y) = build_y_idempotents(&d4rep)?;
        let eps = build_epsilons(&t, &x, &y);
        let l = x.iter().map(|p| kernel_generators(&cl_uu2, p)).collect::<Result<Vec<_>, _>>()?;
        let k = y.iter().map(|p| kernel_generators(&cl_d4, p)).collect::<Result<Vec<_>, _>>()?;
        let mut me = KsDecomposition { t, phi, split, cl_uu2, cl_d4, x, h, y, eps, l, k, lambdas: Vec::new() };
        me.lambdas = (0..8).map(|i| me.build_lambda(i)).collect();
        Ok(me)
    }

    pub fn even_masks(&self) -> Vec<u32> {
        self.t.even_masks()
    }

    /// The 16 products L_s·K_w of matching parity, ordered by (s, w).
    pub fn build_lambda(&self, i: usize) -> LambdaRe {
        let (j, kk) = EPS_PAIRS[i];
        let masks = self.t.even_masks();
        let mut basis = Vec::new();
        let mut labels = Vec::new();
        for (s, ls) in self.l[j].iter().enumerate() {
            for (w, kw) in self.k[kk].iter().enumerate() {
                if ls.parity() == kw.parity() {
                    let a = shift_into(&self.t, ls, 0);
                    let b = shift_into(&self.t, kw, 4);
                    basis.push(self.t.mul(&a, &b).expect("same algebra"));
                    labels.push((s, w));
                }
            }
        }
        let coords = IntMat::from_rows(basis.iter().map(|e| masks.iter().map(|&m| to_int(&e.coeff(m))).collect()).collect());
        LambdaRe { index: i, basis, labels, coords }
    }

    /// h̃ = 1, h₍₋₂₎h₁, h₍₋₂₎h₂, h₍₋₂₎h₃ with h₍₋₂₎ = 2h₁ − h₂ − h₃ − h₄.
    pub fn h_tilde(&self) -> Vec<Elem> {
        let t = &self.t;
        let hm2 = t.vector(&[r(0), r(0), r(0), r(0), r(2), r(-1), r(-1), r(-1)]);
        let mut out = vec![t.one()];
        for w in 0..3 {
            out.push(t.mul(&hm2, &t.gen(4 + w)).expect("same algebra"));
        }
        out
    }

    /// Matrix (column convention) of z ↦ z·y on Λ.
    pub fn right_action(&self, lam: &LambdaRe, y: &Elem) -> Result<Mat<Rational>, KsError> {
        self.action(lam, |b| self.t.mul(b, y).expect("same algebra"))
    }

    /// Matrix (column convention) of z ↦ y·z on Λ.
    pub fn left_action(&self, lam: &LambdaRe, y: &Elem) -> Result<Mat<Rational>, KsError> {
        self.action(lam, |b| self.t.mul(y, b).expect("same algebra"))
    }

    fn action(&self, lam: &LambdaRe, f: impl Fn(&Elem) -> Elem) -> Result<Mat<Rational>, KsError> {
        let masks = self.even_masks();
        let cols = lam.basis.iter().map(|b| lam.coords_of(&f(b), &masks)).collect::<Result<Vec<_>, _>>()?;
        Ok(Mat::from_cols(cols))
    }

    pub fn build_phi_re(&self, lam: &LambdaRe) -> Result<RepPhiRe, KsError> {
        let h_tilde = self.h_tilde();
        let mut n = Vec::new();
        for (i, h) in h_tilde.iter().enumerate() {
            let m = self.right_action(lam, h)?;
            if m.entries().any(|c| !c.is_integer()) {
                return Err(KsError::NotIntegral(i + 1));
            }
            n.push(m.map(to_int));
        }
        Ok(RepPhiRe { h_tilde, n })
    }

    /// Upper-left entries of φ(h̃ⱼ); φ(h̃ⱼ) is diagonal.
    pub fn h_tilde_diagonal(&self) -> Vec<RatQuat> {
        self.h_tilde().iter().map(|h| self.phi.eval(h).expect("same algebra")[(0, 0)].clone()).collect()
    }
}

/// εᵢ-multiples 32εᵢ = x_a y_b in the order of [`EPS_PAIRS`].
pub fn build_epsilons(t: &CliffordAlg<Rational>, x: &[PseudoIdempotent; 4], y: &[PseudoIdempotent; 2]) -> Vec<PseudoIdempotent> {
    EPS_PAIRS
        .iter()
        .map(|&(a, b)| {
            let xa = shift_into(t, &x[a].elem, 0);
            let yb = shift_into(t, &y[b].elem, 4);
            PseudoIdempotent { elem: t.mul(&xa, &yb).expect("same algebra"), scale: x[a].scale * y[b].scale }
        })
        .collect()
}

/// Whether every Nᵢ is block diagonal with 4×4 blocks.
pub fn is_block_diagonal(m: &IntMat, block: usize) -> bool {
    m.support().iter().all(|&(i, j)| i / block == j / block)
}

/// Is the ℤ-span of the matrices a saturated sublattice of M_d(ℤ)?
pub fn span_is_primitive(ms: &[IntMat]) -> bool {
    let rows: Vec<Vec<BigInt>> = ms.iter().map(|m| m.entries().cloned().collect()).collect();
    let n = rows[0].len();
    let s = SubLattice { ambient_rank: n, basis: rows };
    s.is_saturated()
}

pub fn is_scalar_matrix(m: &Mat<Rational>) -> bool {
    m.support().iter().all(|&(i, j)| i == j) && (0..m.rows()).all(|i| m[(i, i)] == m[(0, 0)])
}

pub fn int_identity(n: usize) -> IntMat {
    Mat::from_fn(n, n, |i, j| if i == j { BigInt::one() } else { BigInt::zero() })
}
