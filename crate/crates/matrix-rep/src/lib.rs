//! Matrix representations of Cl(U(n)), Cl(D₄(−1)) and their graded gluing,
//! ending in φ: Cl(T) → M₈(ℍ_ℚ) and the split Cl⁺(T_ℚ) ≅ M₄(ℍ_ℚ) × M₄(ℍ_ℚ).

use std::sync::Arc;

use clifford_core::{extend_by_flca, CliffordAlg, CliffordElem, CliffordError, Hom};
use lattice::{named_lattice, Named};
use quaternion::{HurwitzElem, RatQuat};
use scalar_tower::{rat, Mat, Rational, Ring};

pub type RatRep = GradedRep<Rational>;
pub type QuatRep = GradedRep<RatQuat>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepError {
    #[error(transparent)]
    Clifford(#[from] CliffordError),
    #[error("generator {0} is not odd for the grading")]
    NotOdd(usize),
    #[error("even monomial {mask:#b} has an entry at {entry:?} outside the block pattern")]
    PatternViolation { mask: u32, entry: (usize, usize) },
    #[error("the even support does not split into two blocks of equal size")]
    NoSplit,
    #[error("element is not even")]
    OddElement,
}

/// A homomorphism Cl(V) → M_d(R) together with a ±1 grading of the rows
/// for which every generator image is odd.
#[derive(Clone)]
pub struct GradedRep<R> {
    alg: Arc<CliffordAlg<Rational>>,
    hom: Hom<Rational, R>,
    grading: Vec<i32>,
}

fn embed<R: From<Rational>>(c: &Rational) -> R {
    R::from(c.clone())
}

impl<R: Ring + From<Rational>> GradedRep<R> {
    pub fn new(alg: Arc<CliffordAlg<Rational>>, gens: Vec<Mat<R>>, grading: Vec<i32>) -> Result<Self, RepError> {
        for (i, g) in gens.iter().enumerate() {
            if g.support().iter().any(|&(r, c)| grading[r] == grading[c]) {
                return Err(RepError::NotOdd(i));
            }
        }
        let hom = extend_by_flca(&alg, gens, embed::<R>)?;
        Ok(GradedRep { alg, hom, grading })
    }

    pub fn alg(&self) -> &Arc<CliffordAlg<Rational>> {
        &self.alg
    }

    pub fn dim(&self) -> usize {
        self.hom.dim()
    }

    pub fn grading(&self) -> &[i32] {
        &self.grading
    }

    pub fn gen_images(&self) -> &[Mat<R>] {
        self.hom.gen_images()
    }

    pub fn mono_image(&self, mask: u32) -> &Mat<R> {
        self.hom.mono_image(mask)
    }

    pub fn eval(&self, x: &CliffordElem<Rational>) -> Result<Mat<R>, RepError> {
        Ok(self.hom.eval(x)?)
    }

    /// Whether m respects the grading (even) or swaps it (odd).
    pub fn is_graded(&self, m: &Mat<R>, even: bool) -> bool {
        m.support().iter().all(|&(r, c)| (self.grading[r] == self.grading[c]) == even)
    }
}

/// φ(f₁) = [[0,1],[0,0]], φ(f₂) = [[0,0],[2n,0]].
pub fn phi_u(n: i64) -> RatRep {
    let alg = Arc::new(CliffordAlg::new(named_lattice(&Named::Un(n)).gram).expect("symmetric"));
    let z = || rat(0, 1);
    let gens = vec![
        Mat::from_rows(vec![vec![z(), rat(1, 1)], vec![z(), z()]]),
        Mat::from_rows(vec![vec![z(), z()], vec![rat(2 * n, 1), z()]]),
    ];
    GradedRep::new(alg, gens, vec![1, -1]).expect("valid U(n) representation")
}

/// h_w ↦ [[0, z],[−2z̄, 0]] with z = h, i, j, k.
pub fn phi_d4() -> QuatRep {
    let alg = Arc::new(CliffordAlg::new(named_lattice(&Named::D4Minus).gram).expect("symmetric"));
    let gens = HurwitzElem::basis()
        .into_iter()
        .map(|z| {
            let m2 = -(z.conj() + z.conj());
            Mat::from_rows(vec![vec![RatQuat::from(rat(0, 1)), z], vec![m2, RatQuat::from(rat(0, 1))]])
        })
        .collect();
    GradedRep::new(alg, gens, vec![1, -1]).expect("valid D4(-1) representation")
}

/// Rep of Cl(V ⊕ V′): v ↦ φ₁(v) ⊗ I and v′ ↦ diag(g₁) ⊗ φ₂(v′), where g₁ is
/// the grading of the left factor. The glued grading is g₁ ⊗ g₂.
pub fn graded_kronecker<R: Ring + From<Rational>>(r1: &RatRep, r2: &GradedRep<R>) -> Result<GradedRep<R>, RepError> {
    let glued = clifford_core::glue(&r1.alg, &r2.alg);
    let lift = |m: &Mat<Rational>| m.map(|c| R::from(c.clone()));
    let id2 = Mat::<R>::identity(r2.dim());
    let eps = lift(&Mat::diag(&r1.grading.iter().map(|&g| rat(g as i64, 1)).collect::<Vec<_>>()));
    let mut gens: Vec<Mat<R>> = r1.gen_images().iter().map(|a| lift(a).kron(&id2)).collect();
    gens.extend(r2.gen_images().iter().map(|b| eps.kron(b)));
    let grading = r1.grading.iter().flat_map(|a| r2.grading.iter().map(move |b| a * b)).collect();
    GradedRep::new(Arc::new(glued.alg), gens, grading)
}

/// φ: Cl(U ⊕ U(2) ⊕ D₄(−1)) → M₈(ℍ_ℚ).
pub fn phi_t() -> QuatRep {
    let uu = graded_kronecker(&phi_u(1), &phi_u(2)).expect("U + U(2)");
    graded_kronecker(&uu, &phi_d4()).expect("T")
}

/// The two 4×4 blocks carried by φ(Cl⁺(T)).
#[derive(Clone)]
pub struct SplitRep {
    pub rep: QuatRep,
    pub plus_rows: Vec<usize>,
    pub minus_rows: Vec<usize>,
}

/// Reads the block structure off the images of the even basis monomials.
pub fn even_sparsity_check(rep: &QuatRep) -> Result<SplitRep, RepError> {
    let d = rep.dim();
    let mut parent: Vec<usize> = (0..d).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    let n = rep.alg.n();
    for i in 0..n {
        for j in i + 1..n {
            for (r, c) in rep.mono_image(1 << i | 1 << j).support() {
                let (a, b) = (find(&mut parent, r), find(&mut parent, c));
                parent[a] = b;
            }
        }
    }
    let root0 = find(&mut parent, 0);
    let plus_rows: Vec<usize> = (0..d).filter(|&r| find(&mut parent, r) == root0).collect();
    let minus_rows: Vec<usize> = (0..d).filter(|&r| find(&mut parent, r) != root0).collect();
    if plus_rows.len() * 2 != d || minus_rows.iter().any(|&r| find(&mut parent, r) != find(&mut parent, minus_rows[0])) {
        return Err(RepError::NoSplit);
    }
    let side: Vec<bool> = (0..d).map(|r| plus_rows.contains(&r)).collect();
    for mask in rep.alg.even_masks() {
        if let Some(&entry) = rep.mono_image(mask).support().iter().find(|&&(r, c)| side[r] != side[c]) {
            return Err(RepError::PatternViolation { mask, entry });
        }
    }
    Ok(SplitRep { rep: rep.clone(), plus_rows, minus_rows })
}

impl SplitRep {
    pub fn split_matrix(&self, m: &Mat<RatQuat>) -> (Mat<RatQuat>, Mat<RatQuat>) {
        (m.submatrix(&self.plus_rows, &self.plus_rows), m.submatrix(&self.minus_rows, &self.minus_rows))
    }

    pub fn split_eval(&self, x: &CliffordElem<Rational>) -> Result<(Mat<RatQuat>, Mat<RatQuat>), RepError> {
        if !x.is_even() {
            return Err(RepError::OddElement);
        }
        Ok(self.split_matrix(&self.rep.eval(x)?))
    }

    /// Rational coordinates of the pair: 2 blocks × 16 entries × 4 quaternion coefficients.
    pub fn split_coords(&self, x: &CliffordElem<Rational>) -> Result<Vec<Rational>, RepError> {
        let (a, b) = self.split_eval(x)?;
        Ok(a.entries().chain(b.entries()).flat_map(|q| q.coeffs()).collect())
    }
}
