use scalar_tower::{Field, Mat, Ring};

use crate::{CliffordAlg, CliffordElem, CliffordError};

/// A ring homomorphism Cl(V) → M_d(R) determined by generator images.
#[derive(Clone, Debug)]
pub struct Hom<F, R> {
    alg_id: u64,
    dim: usize,
    gens: Vec<Mat<R>>,
    monos: Vec<Mat<R>>,
    embed: fn(&F) -> R,
}

/// Checks φ(eᵢ)φ(eⱼ) + φ(eⱼ)φ(eᵢ) = 2b(eᵢ, eⱼ) and extends φ multiplicatively.
pub fn extend_by_flca<F: Field, R: Ring>(
    alg: &CliffordAlg<F>,
    gens: Vec<Mat<R>>,
    embed: fn(&F) -> R,
) -> Result<Hom<F, R>, CliffordError> {
    assert_eq!(gens.len(), alg.n(), "one image per generator");
    let dim = gens.first().map(|g| g.rows()).unwrap_or(1);
    let id = Mat::<R>::identity(dim);
    for i in 0..gens.len() {
        for j in i..gens.len() {
            let lhs = gens[i].mul(&gens[j]).add(&gens[j].mul(&gens[i]));
            let two_b = alg.form()[(i, j)].clone() + alg.form()[(i, j)].clone();
            if lhs != id.scale(&embed(&two_b)) {
                return Err(CliffordError::RelationViolation(i, j));
            }
        }
    }
    let mut monos = Vec::with_capacity(alg.dim());
    monos.push(id);
    for s in 1..alg.dim() as u32 {
        let top = 31 - s.leading_zeros();
        let prev = &monos[(s & !(1 << top)) as usize];
        let m = prev.mul(&gens[top as usize]);
        monos.push(m);
    }
    Ok(Hom { alg_id: alg.id(), dim, gens, monos, embed })
}

impl<F: Field, R: Ring> Hom<F, R> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gen_images(&self) -> &[Mat<R>] {
        &self.gens
    }

    pub fn mono_image(&self, s: u32) -> &Mat<R> {
        &self.monos[s as usize]
    }

    pub fn eval(&self, x: &CliffordElem<F>) -> Result<Mat<R>, CliffordError> {
        if x.alg_id() != self.alg_id {
            return Err(CliffordError::AlgebraMismatch);
        }
        let mut acc = Mat::zeros(self.dim, self.dim);
        for (m, c) in x.terms() {
            acc = acc.add(&self.monos[*m as usize].scale(&(self.embed)(c)));
        }
        Ok(acc)
    }
}
