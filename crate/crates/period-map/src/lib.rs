//! From a period point ω with coordinates in ℚ(√2) to the period matrix Z.

mod qelem;
mod rank;

use attributes::Attributes;
use ks_decomposition::KsDecomposition;
use num_traits::{One, Zero};
use quaternion::{chi, Quat, RatQuat};
use scalar_tower::{qe_sign, qe_sqrt, rat, Gauss, GaussQuad, Mat, QuadExt, Rational};
use serde::{Deserialize, Serialize};

pub use qelem::QElem;
pub use rank::{rank_check, RankReport};

pub type GMat = Mat<GaussQuad>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PeriodError {
    #[error("e1, e2 are not orthonormal")]
    NotOrthonormal,
    #[error("J does not square to -1")]
    NotComplexStructure,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("no invertible element in the kernel of A - B")]
    NoInvertibleKernelElement,
    #[error("V is singular for every frame")]
    SingularV,
    #[error("T cannot be normalized: {0}")]
    NormalizationImpossible(String),
    #[error("point {0}: Z does not have the sparse form")]
    PatternViolation(String),
    #[error(transparent)]
    Ks(#[from] ks_decomposition::KsError),
}

/// σ = e₁ + i e₂ with e₁, e₂ ∈ T ⊗ ℚ(√2) in the basis f₁..f₄, h₁..h₄.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeriodPoint {
    pub label: String,
    pub e1: Vec<QuadExt>,
    pub e2: Vec<QuadExt>,
}

impl PeriodPoint {
    /// e₁ = (f₁ + t f₂)/√(2t), e₂ = −(f₃ + f₄)/2.
    pub fn family(t: i64) -> Result<Self, PeriodError> {
        let s = qe_sqrt(&QuadExt::from_base(rat(2 * t, 1))).map_err(|_| PeriodError::NotOrthonormal)?;
        let inv = s.inv_q();
        let z = QuadExt::zero;
        let half = QuadExt::from_base(rat(-1, 2));
        Ok(PeriodPoint {
            label: format!("t={t}"),
            e1: vec![inv.clone(), inv * QuadExt::from_base(rat(t, 1)), z(), z(), z(), z(), z(), z()],
            e2: vec![z(), z(), half.clone(), half, z(), z(), z(), z()],
        })
    }

    /// ω = ⟨(f₁+f₂)/√2 − i(f₃+f₄)/2⟩.
    pub fn example_point() -> Self {
        let mut p = Self::family(1).expect("2 is a square in Q(sqrt2)");
        p.label = "omega".into();
        p
    }

    pub fn in_t_prime(&self) -> bool {
        self.e1[4..].iter().chain(&self.e2[4..]).all(|x| x.is_zero())
    }
}

trait InvQ {
    fn inv_q(&self) -> Self;
}

impl InvQ for QuadExt {
    fn inv_q(&self) -> Self {
        scalar_tower::Field::inv(self).expect("nonzero")
    }
}

/// The eigenspace used: ker(J − i) for ω, ker(J + i) for ω̄.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    Omega,
    OmegaBar,
}

impl Branch {
    pub fn sign(self) -> i64 {
        match self {
            Branch::Omega => 1,
            Branch::OmegaBar => -1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Branch::Omega => "omega",
            Branch::OmegaBar => "omega_bar",
        }
    }
}

pub fn gq(re: QuadExt, im: QuadExt) -> GaussQuad {
    Gauss::new(re, im)
}

pub fn gq_real(x: QuadExt) -> GaussQuad {
    Gauss::real(x)
}

fn lift(m: &Mat<Rational>) -> Mat<QuadExt> {
    m.map(|x| QuadExt::from_base(x.clone()))
}

fn lift_g(m: &Mat<QuadExt>) -> GMat {
    m.map(|x| gq_real(x.clone()))
}

/// e₁e₂ split as P + √2·R with P, R rational elements of Cl(T).
pub fn e1e2(ks: &KsDecomposition, p: &PeriodPoint) -> Result<QElem, PeriodError> {
    let t = &ks.t;
    let e1 = QElem::vector(t, &p.e1);
    let e2 = QElem::vector(t, &p.e2);
    let q = |x: &QElem| x.mul(t, x).scalar_part();
    let b12 = e1.mul(t, &e2).add(&e2.mul(t, &e1)).scalar_part();
    let one = QuadExt::one();
    if q(&e1) != Some(one.clone()) || q(&e2) != Some(one) || b12 != Some(QuadExt::zero()) {
        return Err(PeriodError::NotOrthonormal);
    }
    Ok(e1.mul(t, &e2))
}

/// Left multiplication by e₁e₂ on Λ₁ ⊗ ℚ(√2).
pub fn complex_structure(ks: &KsDecomposition, p: &PeriodPoint) -> Result<Mat<QuadExt>, PeriodError> {
    let j = e1e2(ks, p)?;
    let lam = &ks.lambdas[0];
    let a = ks.left_action(lam, &j.a)?;
    let b = ks.left_action(lam, &j.b)?;
    let m = lift(&a).add(&lift(&b).scale(&QuadExt::sqrt2()));
    if m.mul(&m) != Mat::identity(16).neg() {
        return Err(PeriodError::NotComplexStructure);
    }
    Ok(m)
}

/// x·(x⁻)ᵗ = 1 and x⁻·v·x⁻¹ ∈ V ⊗ ℚ(√2) for all generators v.
pub fn spin_check(alg: &clifford_core::CliffordAlg<Rational>, x: &QElem) -> bool {
    let bar = x.map(|e| alg.canonical_automorphism(e));
    let bar_t = bar.map(|e| alg.transpose(e));
    if x.mul(alg, &bar_t) != QElem::scalar(alg, QuadExt::one()) {
        return false;
    }
    // x⁻¹ = (x⁻)ᵗ
    (0..alg.n()).all(|g| {
        let v = QElem::from_rational(alg.gen(g));
        let w = bar.mul(alg, &v).mul(alg, &bar_t);
        w.is_vector()
    })
}

/// Columns: a basis of ker(J − s·i) over ℚ(√2, i).
pub fn eigenbasis(j: &Mat<QuadExt>, branch: Branch) -> GMat {
    let n = j.rows();
    let shift = Mat::identity(n).scale(&gq(QuadExt::zero(), QuadExt::from_base(rat(branch.sign(), 1))));
    let ns = lift_g(j).sub(&shift).nullspace();
    Mat::from_cols(ns)
}

/// Φ(q) = χ(q) ⊗ I₄.
pub fn phi_big(q: &Quat<QuadExt>) -> GMat {
    chi(q).kron(&Mat::identity(4))
}

pub fn quad_quat(q: &RatQuat) -> Quat<QuadExt> {
    Quat::from(q.clone())
}

/// M_i from N_i·Eig = Eig·M_i, and Q with Q·M_i = (χ(r_i) ⊗ I₄)·Q.
pub fn standardize_rep(eig: &GMat, n: &[Mat<Rational>], r: &[RatQuat]) -> Result<(Vec<GMat>, GMat), PeriodError> {
    let ms: Vec<GMat> = n
        .iter()
        .map(|ni| eig.solve(&lift_g(&lift(ni)).mul(eig)).ok_or(PeriodError::NoInvertibleKernelElement))
        .collect::<Result<_, _>>()?;
    let d = eig.cols();
    let half = d / 2;
    // Q has rows (q0 ⊗ e_k, q1 ⊗ e_k); rows 0..half and half..d are paired by χ.
    // Unknowns: one row pair (q0 | q1), each of length d; constraint [q0; q1]·M = χ(r)·[q0; q1].
    let mut rows = Vec::new();
    for (m, rq) in ms.iter().zip(r) {
        let c = chi(&quad_quat(rq));
        for s in 0..2 {
            for b in 0..d {
                let mut row = vec![GaussQuad::zero(); 2 * d];
                for t in 0..d {
                    row[d * s + t] = row[d * s + t].clone() + m[(t, b)].clone();
                }
                for s2 in 0..2 {
                    row[d * s2 + b] = row[d * s2 + b].clone() - c[(s, s2)].clone();
                }
                rows.push(row);
            }
        }
    }
    let ker = Mat::from_rows(rows).nullspace();
    if ker.len() != half {
        return Err(PeriodError::NoInvertibleKernelElement);
    }
    let mut q = Mat::zeros(d, d);
    for (k, v) in ker.iter().enumerate() {
        for t in 0..d {
            q[(k, t)] = v[t].clone();
            q[(half + k, t)] = v[d + t].clone();
        }
    }
    let qi = q.inverse().ok_or(PeriodError::NoInvertibleKernelElement)?;
    for (m, rq) in ms.iter().zip(r) {
        if q.mul(m).mul(&qi) != phi_big(&quad_quat(rq)) {
            return Err(PeriodError::NoInvertibleKernelElement);
        }
    }
    Ok((ms, q))
}

/// x_b = Φ(h_b⁻¹)·Q·μ(e_{4b}) / d_b, where μ takes eigen-coordinates.
pub fn frame_vectors(eig: &GMat, q: &GMat, attrs: &Attributes) -> Vec<Vec<GaussQuad>> {
    let n = eig.rows();
    let basis = eig.hstack(&eig.conj());
    let mut out = Vec::new();
    for (b, m) in attrs.modules.iter().enumerate() {
        let e: Vec<GaussQuad> = (0..n).map(|r| if r == 4 * b { GaussQuad::one() } else { GaussQuad::zero() }).collect();
        let c = basis.solve_vec(&e).expect("eigenvectors and conjugates span");
        let x = q.mul_vec(&c[..eig.cols()]);
        let hinv = attrs.multipliers[b].inv().expect("nonzero multiplier");
        let d = QuadExt::from_base(Rational::from_integer(m.divisors.last().cloned().expect("rank 4")));
        let scale = gq_real(d.inv_q());
        let x = phi_big(&quad_quat(&hinv)).mul_vec(&x);
        out.push(x.into_iter().map(|v| v * scale.clone()).collect());
    }
    out
}

/// [[1, i/2],[j, k/2]] / √|c|, or with columns swapped.
pub fn block_frame(c: &Rational, swap: bool) -> Result<[[Quat<QuadExt>; 2]; 2], PeriodError> {
    let s = qe_sqrt(&QuadExt::from_base(num_traits::Signed::abs(c)))
        .map_err(|_| PeriodError::NormalizationImpossible(format!("|{c}| is not a square in Q(sqrt2)")))?;
    let inv = s.inv_q();
    let q = |w: i64, x: i64, y: i64, z: i64, d: i64| {
        Quat::new(
            QuadExt::from_base(rat(w, d)),
            QuadExt::from_base(rat(x, d)),
            QuadExt::from_base(rat(y, d)),
            QuadExt::from_base(rat(z, d)),
        )
        .scale(&inv)
    };
    let p = [[q(1, 0, 0, 0, 1), q(0, 1, 0, 0, 2)], [q(0, 0, 1, 0, 1), q(0, 0, 0, 1, 2)]];
    Ok(if swap { [[p[0][1].clone(), p[0][0].clone()], [p[1][1].clone(), p[1][0].clone()]] } else { p })
}

/// The pair structure of the canonical 𝒯: [(c₁), (c₂)] with 𝒯 = diag(c₁W, c₂W), W = [[0,1],[−1,0]].
pub fn pair_scalars(t: &Mat<RatQuat>) -> Result<Vec<Rational>, PeriodError> {
    let n = t.rows();
    let mut out = Vec::new();
    for p in 0..n / 2 {
        for a in 0..n {
            for b in 0..n {
                let inside = a / 2 == p && b / 2 == p;
                if a / 2 == p && !inside && !t[(a, b)].is_zero() {
                    return Err(PeriodError::NormalizationImpossible("T is not block diagonal".into()));
                }
            }
        }
        let c = &t[(2 * p, 2 * p + 1)];
        if !c.is_scalar() || c.is_zero() || t[(2 * p + 1, 2 * p)] != -c.clone() || !t[(2 * p, 2 * p)].is_zero() || !t[(2 * p + 1, 2 * p + 1)].is_zero() {
            return Err(PeriodError::NormalizationImpossible("T block is not a real multiple of [[0,1],[-1,0]]".into()));
        }
        out.push(c.w.clone());
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PeriodResult {
    pub z: GMat,
    pub swaps: Vec<bool>,
    pub a: Option<GaussQuad>,
    pub b: Option<GaussQuad>,
    pub antisymmetric: bool,
    pub positive: bool,
}

/// Z = −V⁻¹U from frame vectors ordered as the canonical blocks of 𝒯.
pub fn z_from_frame(xs: &[Vec<GaussQuad>], scalars: &[Rational], swaps: &[bool]) -> Result<Option<GMat>, PeriodError> {
    let nb = xs.len();
    let mut cols = Vec::new();
    for k in 0..nb {
        let p = k / 2;
        let fr = block_frame(&scalars[p], swaps[p])?;
        let mut v = vec![GaussQuad::zero(); xs[0].len()];
        for (local, i) in [2 * p, 2 * p + 1].into_iter().enumerate() {
            let w = phi_big(&fr[k % 2][local]).mul_vec(&xs[i]);
            for (a, b) in v.iter_mut().zip(w) {
                *a = a.clone() + b;
            }
        }
        cols.push(v);
    }
    let u = Mat::from_fn(nb, nb, |r, c| cols[c][r].clone());
    let v = Mat::from_fn(nb, nb, |r, c| cols[c][nb + r].clone());
    Ok(v.inverse().map(|vi| vi.mul(&u).neg()))
}

pub fn is_antisymmetric(z: &GMat) -> bool {
    z.transpose() == z.neg()
}

/// 1 − Z·conj(Z)ᵗ ≻ 0 by the signs of its leading principal minors.
pub fn is_contraction(z: &GMat) -> bool {
    let n = z.rows();
    let h = Mat::identity(n).sub(&z.mul(&z.conj_transpose()));
    positive_definite_hermitian(&h)
}

pub fn positive_definite_hermitian(h: &GMat) -> bool {
    (1..=h.rows()).all(|k| {
        let idx: Vec<usize> = (0..k).collect();
        let d = h.submatrix(&idx, &idx).det();
        d.im.is_zero() && qe_sign(&d.re) > 0
    })
}

pub fn positive_definite_symmetric(s: &Mat<QuadExt>) -> bool {
    (1..=s.rows()).all(|k| {
        let idx: Vec<usize> = (0..k).collect();
        qe_sign(&s.submatrix(&idx, &idx).det()) > 0
    })
}

/// Tries the four per-block frame orientations in order and keeps the first
/// with V invertible and 1 − ZZ̄ᵗ ≻ 0.
pub fn period_matrix(xs: &[Vec<GaussQuad>], t_canonical: &Mat<RatQuat>) -> Result<PeriodResult, PeriodError> {
    let scalars = pair_scalars(t_canonical)?;
    let np = scalars.len();
    let mut any_v = false;
    for code in 0..(1u32 << np) {
        let swaps: Vec<bool> = (0..np).map(|p| code >> (np - 1 - p) & 1 == 1).collect();
        let Some(z) = z_from_frame(xs, &scalars, &swaps)? else { continue };
        any_v = true;
        let antisymmetric = is_antisymmetric(&z);
        let positive = is_contraction(&z);
        if antisymmetric && positive {
            let (a, b) = sparse_entries(&z);
            return Ok(PeriodResult { z, swaps, a, b, antisymmetric, positive });
        }
    }
    if any_v {
        Err(PeriodError::NormalizationImpossible("no frame orientation gives 1 - Z Z* > 0".into()))
    } else {
        Err(PeriodError::SingularV)
    }
}

/// (Z₁₂, Z₃₄) when every other off-pattern entry vanishes.
pub fn sparse_entries(z: &GMat) -> (Option<GaussQuad>, Option<GaussQuad>) {
    let allowed = [(0, 1), (1, 0), (2, 3), (3, 2)];
    let sparse = z.support().iter().all(|e| allowed.contains(e));
    if sparse && z.rows() == 4 {
        (Some(z[(0, 1)].clone()), Some(z[(2, 3)].clone()))
    } else {
        (None, None)
    }
}

/// f(x) = i(1 + x)/(1 − x).
pub fn siegel(x: &GaussQuad) -> Option<GaussQuad> {
    let one = GaussQuad::one();
    let den = scalar_tower::Field::inv(&(one.clone() - x.clone()))?;
    Some(gq(QuadExt::zero(), QuadExt::one()) * (one + x.clone()) * den)
}

/// |x| < 1 exactly.
pub fn in_unit_disk(x: &GaussQuad) -> bool {
    qe_sign(&(QuadExt::one() - x.norm_sqr())) > 0
}

/// E(v, w) = vᵀ M_E w.
pub fn polarization_sign(m_e: &Mat<Rational>, j: &Mat<QuadExt>) -> Option<i64> {
    let s = lift(m_e).mul(j);
    if positive_definite_symmetric(&s) {
        Some(1)
    } else if positive_definite_symmetric(&s.neg()) {
        Some(-1)
    } else {
        None
    }
}

/// The published values a = (8193 − 128√2)/8191, b = (524289 − 1024√2)/524287.
pub fn published_ab() -> (GaussQuad, GaussQuad) {
    (
        gq_real(QuadExt::new(rat(8193, 8191), rat(-128, 8191))),
        gq_real(QuadExt::new(rat(524289, 524287), rat(-1024, 524287))),
    )
}

/// Whether (a, b) equals (ea, eb) up to a simultaneous sign.
pub fn matches_ab(a: &GaussQuad, b: &GaussQuad, ea: &GaussQuad, eb: &GaussQuad) -> bool {
    (a == ea && b == eb) || (a == &-ea.clone() && b == &-eb.clone())
}

pub fn matches_published(a: &GaussQuad, b: &GaussQuad) -> bool {
    let (pa, pb) = published_ab();
    matches_ab(a, b, &pa, &pb)
}

/// All intermediate data of one period computation.
pub struct PeriodRun {
    pub point: PeriodPoint,
    pub branch: Branch,
    pub j: Mat<QuadExt>,
    pub eig: GMat,
    pub ms: Vec<GMat>,
    pub q: GMat,
    pub xs: Vec<Vec<GaussQuad>>,
    pub result: PeriodResult,
    pub f_a: Option<GaussQuad>,
    pub f_b: Option<GaussQuad>,
    pub spin: bool,
    pub j_isometry: bool,
    pub polarization_sign: Option<i64>,
}

/// The branch singled out by the polarization: ω when E(v, Jv) ≻ 0, else ω̄.
pub fn natural_branch(sign: Option<i64>) -> Branch {
    if sign == Some(-1) {
        Branch::OmegaBar
    } else {
        Branch::Omega
    }
}

pub fn run_period(ks: &KsDecomposition, attrs: &Attributes, point: &PeriodPoint, branch: Option<Branch>) -> Result<PeriodRun, PeriodError> {
    let j = complex_structure(ks, point)?;
    let je = e1e2(ks, point)?;
    let spin = spin_check(&ks.t, &je);
    let me = lift(&attrs.m_e);
    let j_isometry = j.transpose().mul(&me).mul(&j) == me;
    let polarization_sign = polarization_sign(&attrs.m_e, &j);
    let branch = branch.unwrap_or_else(|| natural_branch(polarization_sign));
    let eig = eigenbasis(&j, branch);
    let n: Vec<Mat<Rational>> = attrs.n.iter().map(|m| m.map(|x| Rational::from_integer(x.clone()))).collect();
    let (ms, q) = standardize_rep(&eig, &n, &attrs.r)?;
    let xs_nat = frame_vectors(&eig, &q, attrs);
    let xs: Vec<Vec<GaussQuad>> = attrs.order.iter().map(|&o| xs_nat[o].clone()).collect();
    let result = period_matrix(&xs, &attrs.t_canonical)?;
    let f_a = result.a.as_ref().and_then(siegel);
    let f_b = result.b.as_ref().and_then(siegel);
    Ok(PeriodRun { point: point.clone(), branch, j, eig, ms, q, xs, result, f_a, f_b, spin, j_isometry, polarization_sign })
}

/// Runs the family points inside T′ and asserts the Z(a, b) pattern and |a|, |b| < 1.
pub fn rank18_scan(ks: &KsDecomposition, attrs: &Attributes, points: &[PeriodPoint], branch: Option<Branch>) -> Result<Vec<PeriodRun>, PeriodError> {
    let mut out = Vec::new();
    for p in points {
        if !p.in_t_prime() {
            return Err(PeriodError::PatternViolation(format!("{} is not inside T'", p.label)));
        }
        let run = run_period(ks, attrs, p, branch)?;
        let ok = match (&run.result.a, &run.result.b) {
            (Some(a), Some(b)) => in_unit_disk(a) && in_unit_disk(b),
            _ => false,
        };
        if !ok {
            return Err(PeriodError::PatternViolation(p.label.clone()));
        }
        out.push(run);
    }
    Ok(out)
}
