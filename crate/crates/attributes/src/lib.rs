//! Attributes of the abelian variety attached to Λ₁: the modules ℳᵢ ⊂ ℍ_ℚ,
//! their identification with I₆ or I₁₂, the form M_E and the matrix 𝒯.

use std::collections::BTreeMap;

use clifford_core::CliffordAlg;
use ks_decomposition::{Elem, KsDecomposition, LambdaRe};
use lattice::{shortest_vectors, smith_normal_form, IntMat, SubLattice};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use quaternion::{HurwitzElem, RatQuat};
use scalar_tower::{rat, Mat, Rational, Ring};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AttrError {
    #[error("block {0}: a vector of d*L is outside the span of the N_j e columns")]
    InconsistentSolve(usize),
    #[error("block pair ({0}, {1}): the equations for T disagree")]
    Inconsistent(usize, usize),
    #[error("block {0} matches neither I6 nor I12")]
    Unmatched(usize),
    #[error("T does not have the two-pair block form")]
    NotPaired,
    #[error(transparent)]
    Ks(#[from] ks_decomposition::KsError),
}

/// A rank-4 ℤ-module inside ℍ_ℚ.
#[derive(Clone, Debug, PartialEq)]
pub struct QuatModule {
    pub basis: Vec<RatQuat>,
}

impl QuatModule {
    pub fn new(basis: Vec<RatQuat>) -> Self {
        QuatModule { basis }
    }

    /// Gram matrix of the norm form, Re(a b̄).
    pub fn gram(&self) -> Mat<Rational> {
        let n = self.basis.len();
        Mat::from_fn(n, n, |a, b| self.basis[a].dot(&self.basis[b]))
    }

    pub fn coords(&self, q: &RatQuat) -> Option<Vec<Rational>> {
        let m = Mat::from_cols(self.basis.iter().map(|b| b.coeffs().to_vec()).collect());
        m.solve_vec(&q.coeffs())
    }

    pub fn contains(&self, q: &RatQuat) -> bool {
        self.coords(q).is_some_and(|c| c.iter().all(|x| x.is_integer()))
    }

    pub fn right_mul(&self, h: &RatQuat) -> QuatModule {
        QuatModule::new(self.basis.iter().map(|b| b.clone() * h.clone()).collect())
    }

    pub fn rank(&self) -> usize {
        Mat::from_rows(self.basis.iter().map(|b| b.coeffs().to_vec()).collect()).rank()
    }

    /// All minimal vectors (both signs), sorted by coordinates.
    pub fn minimal_vectors(&self) -> (Rational, Vec<RatQuat>) {
        let l = SubLattice { ambient_rank: 4, basis: (0..4).map(|i| unit_row(i, 4)).collect() };
        let mins = shortest_vectors(&l, &self.gram()).expect("norm form is positive definite");
        let norm = mins[0].norm.clone();
        let mut coords: Vec<Vec<BigInt>> = Vec::new();
        for m in &mins {
            coords.push(m.coords.clone());
            coords.push(m.coords.iter().map(|c| -c).collect());
        }
        coords.sort();
        let vs = coords.iter().map(|c| self.combine(c)).collect();
        (norm, vs)
    }

    pub fn minimal_pair_count(&self) -> usize {
        self.minimal_vectors().1.len() / 2
    }

    fn combine(&self, c: &[BigInt]) -> RatQuat {
        self.basis
            .iter()
            .zip(c)
            .fold(RatQuat::zero(), |acc, (b, x)| acc + b.scale(&Rational::from_integer(x.clone())))
    }
}

fn unit_row(i: usize, n: usize) -> Vec<BigInt> {
    (0..n).map(|j| BigInt::from((i == j) as i64)).collect()
}

fn hurwitz(c: [i64; 4]) -> RatQuat {
    HurwitzElem::new(c).to_quat()
}

/// ⟨h+i, h+j, i+j, k⟩.
pub fn i6() -> QuatModule {
    QuatModule::new(vec![hurwitz([1, 1, 0, 0]), hurwitz([1, 0, 1, 0]), hurwitz([0, 1, 1, 0]), hurwitz([0, 0, 0, 1])])
}

/// The Hurwitz order ⟨h, i, j, k⟩.
pub fn i12() -> QuatModule {
    QuatModule::new(HurwitzElem::basis().to_vec())
}

/// The first h = u⁻¹v (u, v minimal vectors of M, N) with M·h = N.
pub fn module_isomorphic(m: &QuatModule, n: &QuatModule) -> Option<RatQuat> {
    let (nm, us) = m.minimal_vectors();
    let (nn, vs) = n.minimal_vectors();
    if us.len() != vs.len() || nm.is_zero() || nn.is_zero() {
        return None;
    }
    for u in &us {
        let ui = u.inv()?;
        for v in &vs {
            let h = ui.clone() * v.clone();
            let hi = h.inv()?;
            if m.basis.iter().all(|g| n.contains(&(g.clone() * h.clone())))
                && n.basis.iter().all(|g| m.contains(&(g.clone() * hi.clone())))
            {
                return Some(h);
            }
        }
    }
    None
}

/// One block of Λ₁ seen as a module over the order spanned by r₁..r₄.
#[derive(Clone, Debug)]
pub struct ExtractedModule {
    pub block: usize,
    pub divisors: Vec<BigInt>,
    pub module: QuatModule,
}

/// For block b: C = (N_j e_{4b})_j restricted to the block, d its largest
/// elementary divisor; the vector d·e_{4b+k} = Σ c_j N_j e_{4b} becomes Σ c_j r_j.
pub fn extract_modules(n: &[IntMat], r: &[RatQuat]) -> Result<Vec<ExtractedModule>, AttrError> {
    let blocks = n[0].rows() / 4;
    let mut out = Vec::new();
    for b in 0..blocks {
        let base = 4 * b;
        let c = Mat::from_fn(4, 4, |row, j| n[j][(base + row, base)].clone());
        let divisors = smith_normal_form(&c).divisors;
        let d = Rational::from_integer(divisors.last().cloned().unwrap_or_default());
        if d.is_zero() {
            return Err(AttrError::InconsistentSolve(b));
        }
        let cq = c.map(|x| Rational::from_integer(x.clone()));
        let mut gens = Vec::new();
        for k in 0..4 {
            let rhs: Vec<Rational> = (0..4).map(|row| if row == k { d.clone() } else { Rational::zero() }).collect();
            let sol = cq.solve_vec(&rhs).ok_or(AttrError::InconsistentSolve(b))?;
            if sol.iter().any(|x| !x.is_integer()) {
                return Err(AttrError::InconsistentSolve(b));
            }
            gens.push(r.iter().zip(&sol).fold(RatQuat::zero(), |acc, (q, x)| acc + q.scale(x)));
        }
        out.push(ExtractedModule { block: b, divisors, module: QuatModule::new(gens) });
    }
    Ok(out)
}

/// r_j = conj(φ(h̃_j)₁₁): the quaternion by which right multiplication by h̃_j acts.
pub fn r_quaternions(ks: &KsDecomposition) -> Vec<RatQuat> {
    ks.h_tilde_diagonal().iter().map(|q| q.conj()).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModuleName {
    I6,
    I12,
}

impl ModuleName {
    pub fn label(&self) -> &'static str {
        match self {
            ModuleName::I6 => "I6",
            ModuleName::I12 => "I12",
        }
    }
}

/// Matches each module against I₆ then I₁₂ and returns (name, multiplier).
pub fn classify(mods: &[ExtractedModule]) -> Result<Vec<(ModuleName, RatQuat)>, AttrError> {
    mods.iter()
        .map(|m| {
            if let Some(h) = module_isomorphic(&m.module, &i6()) {
                Ok((ModuleName::I6, h))
            } else if let Some(h) = module_isomorphic(&m.module, &i12()) {
                Ok((ModuleName::I12, h))
            } else {
                Err(AttrError::Unmatched(m.block))
            }
        })
        .collect()
}

/// tr(e_S) for the normalized trace: the trace of left multiplication by e_S
/// on Cl⁺, divided by 16.
pub fn trace_table(t: &CliffordAlg<Rational>) -> BTreeMap<u32, Rational> {
    let masks = t.even_masks();
    let mut out = BTreeMap::new();
    for &s in &masks {
        let mut acc = Rational::zero();
        for &m in &masks {
            acc += t.mul(&t.mono(s), &t.mono(m)).expect("same algebra").coeff(m);
        }
        if !acc.is_zero() {
            out.insert(s, acc / rat(16, 1));
        }
    }
    out
}

pub fn trace(tab: &BTreeMap<u32, Rational>, x: &Elem) -> Rational {
    x.terms().filter_map(|(m, c)| tab.get(m).map(|t| t.clone() * c.clone())).fold(Rational::zero(), |a, b| a + b)
}

/// M_E[a][c] = tr(α·b_aᵗ·b_c) on the basis of Λ.
pub fn polarization_form(t: &CliffordAlg<Rational>, tab: &BTreeMap<u32, Rational>, alpha: &Elem, lam: &LambdaRe) -> Mat<Rational> {
    let left: Vec<Elem> = lam.basis.iter().map(|b| t.mul(alpha, &t.transpose(b)).expect("same algebra")).collect();
    let n = lam.basis.len();
    Mat::from_fn(n, n, |a, c| trace(tab, &t.mul(&left[a], &lam.basis[c]).expect("same algebra")))
}

/// Reduced trace 2·Re.
pub fn trd(q: &RatQuat) -> Rational {
    q.trd()
}

/// Solves Trd(S_h · 𝒯_{bi,bj} · S̄_l) = M_E[h][l] entry-wise, with S_{4b+k} = (ℳ_b)_k · h_b.
pub fn solve_t(mods: &[ExtractedModule], mult: &[RatQuat], me: &Mat<Rational>) -> Result<Mat<RatQuat>, AttrError> {
    let s: Vec<RatQuat> = mods
        .iter()
        .zip(mult)
        .flat_map(|(m, h)| m.module.basis.iter().map(move |g| g.clone() * h.clone()))
        .collect();
    let nb = mods.len();
    let mut t = Mat::zeros(nb, nb);
    let units = [RatQuat::from(rat(1, 1)), RatQuat::i(), RatQuat::j(), RatQuat::k()];
    for bi in 0..nb {
        for bj in 0..nb {
            let mut rows = Vec::new();
            let mut rhs = Vec::new();
            for h in 4 * bi..4 * bi + 4 {
                for l in 4 * bj..4 * bj + 4 {
                    rows.push(units.iter().map(|e| trd(&(s[h].clone() * e.clone() * s[l].conj()))).collect::<Vec<_>>());
                    rhs.push(me[(h, l)].clone());
                }
            }
            let sol = Mat::from_rows(rows).solve_vec(&rhs).ok_or(AttrError::Inconsistent(bi, bj))?;
            t[(bi, bj)] = RatQuat::from_coeffs([sol[0].clone(), sol[1].clone(), sol[2].clone(), sol[3].clone()]);
        }
    }
    for h in 0..s.len() {
        for l in 0..s.len() {
            if trd(&(s[h].clone() * t[(h / 4, l / 4)].clone() * s[l].conj())) != me[(h, l)] {
                return Err(AttrError::Inconsistent(h / 4, l / 4));
            }
        }
    }
    Ok(t)
}

/// Reorders blocks so the nonzero entries of 𝒯 sit at (1,2),(2,1),(3,4),(4,3):
/// pairs sorted by their smaller index, each pair kept in ascending order.
pub fn canonical_order(t: &Mat<RatQuat>) -> Result<Vec<usize>, AttrError> {
    let n = t.rows();
    let mut order = Vec::new();
    let mut used = vec![false; n];
    for a in 0..n {
        if used[a] {
            continue;
        }
        let partners: Vec<usize> = (0..n).filter(|&b| !t[(a, b)].is_zero()).collect();
        match partners.as_slice() {
            [b] if *b > a && !used[*b] && (0..n).filter(|&c| !t[(*b, c)].is_zero()).eq([a]) => {
                order.extend([a, *b]);
                used[a] = true;
                used[*b] = true;
            }
            _ => return Err(AttrError::NotPaired),
        }
    }
    Ok(order)
}

pub fn permute(t: &Mat<RatQuat>, order: &[usize]) -> Mat<RatQuat> {
    Mat::from_fn(order.len(), order.len(), |a, b| t[(order[a], order[b])].clone())
}

/// Whether conj-transpose(𝒯) = −𝒯.
pub fn is_skew_hermitian(t: &Mat<RatQuat>) -> bool {
    t.conj_transpose() == t.neg()
}

/// Everything the attributes step produces for Λ₁.
pub struct Attributes {
    pub r: Vec<RatQuat>,
    pub n: Vec<IntMat>,
    pub modules: Vec<ExtractedModule>,
    pub names: Vec<ModuleName>,
    pub multipliers: Vec<RatQuat>,
    pub m_e: Mat<Rational>,
    pub t: Mat<RatQuat>,
    pub order: Vec<usize>,
    pub t_canonical: Mat<RatQuat>,
}

pub fn compute_attributes(ks: &KsDecomposition, alpha: &Elem) -> Result<Attributes, AttrError> {
    let lam = &ks.lambdas[0];
    let phi = ks.build_phi_re(lam)?;
    let r = r_quaternions(ks);
    let modules = extract_modules(&phi.n, &r)?;
    let classes = classify(&modules)?;
    let names = classes.iter().map(|c| c.0).collect();
    let multipliers: Vec<RatQuat> = classes.into_iter().map(|c| c.1).collect();
    let tab = trace_table(&ks.t);
    let m_e = polarization_form(&ks.t, &tab, alpha, lam);
    let t = solve_t(&modules, &multipliers, &m_e)?;
    let order = canonical_order(&t)?;
    let t_canonical = permute(&t, &order);
    Ok(Attributes { r, n: phi.n, modules, names, multipliers, m_e, t, order, t_canonical })
}

/// α = (f₁ + f₂)(f₃ + f₄) in Cl(T).
pub fn default_alpha(t: &CliffordAlg<Rational>) -> Elem {
    let one = rat(1, 1);
    let z = Rational::zero;
    let a = t.vector(&[one.clone(), one.clone(), z(), z(), z(), z(), z(), z()]);
    let b = t.vector(&[z(), z(), one.clone(), one, z(), z(), z(), z()]);
    t.mul(&a, &b).expect("same algebra")
}

/// Largest absolute entry, for reporting.
pub fn max_abs(m: &Mat<Rational>) -> Rational {
    m.entries().map(|x| x.abs()).fold(Rational::zero(), |a, b| if b > a { b } else { a })
}
