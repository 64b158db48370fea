use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use scalar_tower::{Field, Mat, Rational};
use serde::{Deserialize, Serialize};

use crate::{LatticeError, SubLattice};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalVector {
    /// Coordinates in the sublattice basis.
    pub coords: Vec<BigInt>,
    /// The vector in ambient coordinates.
    pub vector: Vec<BigInt>,
    pub norm: Rational,
}

/// All minimal vectors of `l` under `form`, one per antipodal pair, sorted
/// lexicographically by sublattice coordinates.
pub fn shortest_vectors(l: &SubLattice, form: &Mat<Rational>) -> Result<Vec<MinimalVector>, LatticeError> {
    let b: Mat<Rational> = l.matrix().map(|x| Rational::from_integer(x.clone()));
    let g = b.mul(form).mul(&b.transpose());
    let n = g.rows();
    let q = cholesky(&g)?;
    // upper bound: the shortest basis vector
    let bound = (0..n).map(|i| g[(i, i)].clone()).min().ok_or(LatticeError::NotPositiveDefinite)?;
    let mut found: Vec<(Vec<BigInt>, Rational)> = Vec::new();
    let mut x = vec![BigInt::zero(); n];
    enumerate(&q, n, &bound, Rational::zero(), &mut x, &mut found);
    let min = found.iter().map(|(_, v)| v.clone()).filter(|v| v.is_positive()).min();
    let Some(min) = min else { return Ok(vec![]) };
    let mut out: Vec<MinimalVector> = found
        .into_iter()
        .filter(|(c, v)| *v == min && c.iter().find(|t| !t.is_zero()).is_some_and(|t| t.is_positive()))
        .map(|(coords, norm)| {
            let vector = (0..l.ambient_rank)
                .map(|j| coords.iter().zip(&l.basis).map(|(c, row)| c * &row[j]).sum())
                .collect();
            MinimalVector { coords, vector, norm }
        })
        .collect();
    out.sort_by(|a, b| a.coords.cmp(&b.coords));
    Ok(out)
}

/// Q with g(x) = Σᵢ q_ii (xᵢ + Σ_{j>i} q_ij x_j)².
fn cholesky(g: &Mat<Rational>) -> Result<Mat<Rational>, LatticeError> {
    let n = g.rows();
    let mut q = g.clone();
    for i in 0..n {
        if !q[(i, i)].is_positive() {
            return Err(LatticeError::NotPositiveDefinite);
        }
        let inv = q[(i, i)].inv().unwrap();
        for j in i + 1..n {
            q[(j, i)] = q[(i, j)].clone();
            q[(i, j)] = q[(i, j)].clone() * inv.clone();
        }
        for k in i + 1..n {
            for l in k..n {
                let v = q[(k, l)].clone() - q[(k, i)].clone() * q[(i, l)].clone();
                q[(k, l)] = v;
            }
        }
    }
    Ok(q)
}

fn enumerate(
    q: &Mat<Rational>,
    i: usize,
    bound: &Rational,
    partial: Rational,
    x: &mut Vec<BigInt>,
    found: &mut Vec<(Vec<BigInt>, Rational)>,
) {
    if i == 0 {
        found.push((x.clone(), partial));
        return;
    }
    let k = i - 1;
    let n = q.rows();
    let mut c = Rational::zero();
    for j in k + 1..n {
        c = c + q[(k, j)].clone() * Rational::from_integer(x[j].clone());
    }
    let room = (bound.clone() - partial.clone()) / q[(k, k)].clone();
    if room.is_negative() {
        return;
    }
    // integer window containing [−c − √room, −c + √room]
    let r = isqrt_floor(&room) + BigInt::one();
    let centre = (-c.clone()).floor().to_integer();
    let lo = &centre - &r;
    let hi = &centre + &r + BigInt::one();
    let mut t = lo;
    while t <= hi {
        let s = Rational::from_integer(t.clone()) + c.clone();
        let term = q[(k, k)].clone() * s.clone() * s;
        let total = partial.clone() + term;
        if &total <= bound {
            x[k] = t.clone();
            enumerate(q, k, bound, total, x, found);
        }
        t += 1;
    }
    x[k] = BigInt::zero();
}

fn isqrt_floor(r: &Rational) -> BigInt {
    let f = r.floor().to_integer();
    if f.is_negative() {
        return BigInt::zero();
    }
    num_integer::Roots::sqrt(&f)
}
