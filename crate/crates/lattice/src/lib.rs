//! Integral lattices with rational Gram matrices.

mod forms;
mod named;
mod short;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use scalar_tower::Mat;
use serde::{Deserialize, Serialize};

pub use forms::{signature, symmetric_diagonalize};
pub use named::{named_lattice, IntLattice, LatticeSpec, Named};
pub use short::{shortest_vectors, MinimalVector};

pub type IntMat = Mat<BigInt>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("form is not positive definite on the lattice")]
    NotPositiveDefinite,
    #[error("unknown lattice name {0:?}")]
    UnknownName(String),
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("bad lattice spec: {0}")]
    BadSpec(String),
}

/// A sublattice of ℤⁿ given by integral row vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubLattice {
    pub ambient_rank: usize,
    pub basis: Vec<Vec<BigInt>>,
}

impl SubLattice {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn matrix(&self) -> IntMat {
        if self.basis.is_empty() {
            return Mat::zeros(0, self.ambient_rank);
        }
        Mat::from_rows(self.basis.clone())
    }

    pub fn is_saturated(&self) -> bool {
        self.basis.is_empty() || smith_normal_form(&self.matrix()).divisors.iter().all(|d| d.is_one())
    }
}

pub struct Snf {
    /// Nonzero elementary divisors d₁ | d₂ | …
    pub divisors: Vec<BigInt>,
    pub u: IntMat,
    pub v: IntMat,
    /// U·A·V.
    pub d: IntMat,
}

fn swap_rows(m: &mut IntMat, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..m.cols() {
        let t = m[(a, j)].clone();
        m[(a, j)] = m[(b, j)].clone();
        m[(b, j)] = t;
    }
}

fn swap_cols(m: &mut IntMat, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..m.rows() {
        let t = m[(i, a)].clone();
        m[(i, a)] = m[(i, b)].clone();
        m[(i, b)] = t;
    }
}

/// row_a ← p·row_a + q·row_b, row_b ← r·row_a + s·row_b (simultaneously).
fn mix_rows(m: &mut IntMat, a: usize, b: usize, [p, q, r, s]: [&BigInt; 4]) {
    for j in 0..m.cols() {
        let (x, y) = (m[(a, j)].clone(), m[(b, j)].clone());
        if x.is_zero() && y.is_zero() {
            continue;
        }
        m[(a, j)] = p * &x + q * &y;
        m[(b, j)] = r * &x + s * &y;
    }
}

fn mix_cols(m: &mut IntMat, a: usize, b: usize, [p, q, r, s]: [&BigInt; 4]) {
    for i in 0..m.rows() {
        let (x, y) = (m[(i, a)].clone(), m[(i, b)].clone());
        if x.is_zero() && y.is_zero() {
            continue;
        }
        m[(i, a)] = p * &x + q * &y;
        m[(i, b)] = r * &x + s * &y;
    }
}

/// Unimodular [[p, q], [r, s]] sending (x, y) to (gcd, 0).
fn bezout(x: &BigInt, y: &BigInt) -> [BigInt; 4] {
    if !x.is_zero() && (y % x).is_zero() {
        return [BigInt::one(), BigInt::zero(), -(y / x), BigInt::one()];
    }
    let e = x.extended_gcd(y);
    let g = e.gcd;
    [e.x, e.y, -(y / &g), x / &g]
}

pub fn smith_normal_form(a: &IntMat) -> Snf {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u: IntMat = Mat::identity(m);
    let mut v: IntMat = Mat::identity(n);
    let mut t = 0;
    while t < m.min(n) {
        // pivot: smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !d[(i, j)].is_zero() && best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        swap_rows(&mut d, t, pi);
        swap_rows(&mut u, t, pi);
        swap_cols(&mut d, t, pj);
        swap_cols(&mut v, t, pj);
        loop {
            let mut changed = false;
            for i in t + 1..m {
                if !d[(i, t)].is_zero() {
                    let [p, q, r, s] = bezout(&d[(t, t)], &d[(i, t)]);
                    mix_rows(&mut d, t, i, [&p, &q, &r, &s]);
                    mix_rows(&mut u, t, i, [&p, &q, &r, &s]);
                    changed = true;
                }
            }
            for j in t + 1..n {
                if !d[(t, j)].is_zero() {
                    let [p, q, r, s] = bezout(&d[(t, t)], &d[(t, j)]);
                    mix_cols(&mut d, t, j, [&p, &q, &r, &s]);
                    mix_cols(&mut v, t, j, [&p, &q, &r, &s]);
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // divisibility: fold any offending entry's row into row t
            let piv = d[(t, t)].clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(&d[(i, j)] % &piv).is_zero()));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    let zero = BigInt::zero();
                    mix_rows(&mut d, t, i, [&one, &one, &zero, &one]);
                    mix_rows(&mut u, t, i, [&one, &one, &zero, &one]);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            for j in 0..n {
                d[(t, j)] = -d[(t, j)].clone();
            }
            for j in 0..m {
                u[(t, j)] = -u[(t, j)].clone();
            }
        }
        t += 1;
    }
    let divisors = (0..m.min(n)).map(|i| d[(i, i)].clone()).filter(|x| !x.is_zero()).collect();
    Snf { divisors, u, v, d }
}

/// Row Hermite normal form: returns (H, U, r) with U·A = H, U unimodular,
/// the first r rows of H nonzero and the rest zero.
pub fn hnf_rows(a: &IntMat) -> (IntMat, IntMat, usize) {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut u: IntMat = Mat::identity(m);
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        for i in r + 1..m {
            if !h[(i, c)].is_zero() {
                if h[(r, c)].is_zero() {
                    swap_rows(&mut h, r, i);
                    swap_rows(&mut u, r, i);
                    continue;
                }
                let [p, q, s, t] = bezout(&h[(r, c)], &h[(i, c)]);
                mix_rows(&mut h, r, i, [&p, &q, &s, &t]);
                mix_rows(&mut u, r, i, [&p, &q, &s, &t]);
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            for j in 0..n {
                h[(r, j)] = -h[(r, j)].clone();
            }
            for j in 0..m {
                u[(r, j)] = -u[(r, j)].clone();
            }
        }
        let piv = h[(r, c)].clone();
        for i in 0..r {
            let f = h[(i, c)].div_floor(&piv);
            if !f.is_zero() {
                let one = BigInt::one();
                let zero = BigInt::zero();
                let nf = -f;
                mix_rows(&mut h, i, r, [&one, &nf, &zero, &one]);
                mix_rows(&mut u, i, r, [&one, &nf, &zero, &one]);
            }
        }
        r += 1;
    }
    (h, u, r)
}

/// The saturated left kernel {v ∈ ℤᵐ : v·A = 0}, in Hermite form.
pub fn integer_kernel(a: &IntMat) -> SubLattice {
    let (_, u, r) = hnf_rows(a);
    let rows: Vec<Vec<BigInt>> = (r..a.rows()).map(|i| u.row(i).to_vec()).collect();
    let basis = if rows.is_empty() {
        rows
    } else {
        let (h, _, k) = hnf_rows(&Mat::from_rows(rows));
        (0..k).map(|i| h.row(i).to_vec()).collect()
    };
    SubLattice { ambient_rank: a.rows(), basis }
}

/// (ℚ-span of the rows) ∩ ℤⁿ, in Hermite form.
pub fn saturate(rows: &[Vec<BigInt>], ambient_rank: usize) -> SubLattice {
    if rows.is_empty() {
        return SubLattice { ambient_rank, basis: vec![] };
    }
    let b = Mat::from_rows(rows.to_vec());
    // right kernel of B as columns, then the left kernel of that
    let k = integer_kernel(&b.transpose());
    if k.basis.is_empty() {
        return SubLattice { ambient_rank, basis: identity_rows(ambient_rank) };
    }
    integer_kernel(&k.matrix().transpose())
}

/// Hermite basis of the ℤ-span of the rows.
pub fn span(rows: &[Vec<BigInt>], ambient_rank: usize) -> SubLattice {
    if rows.is_empty() {
        return SubLattice { ambient_rank, basis: vec![] };
    }
    let (h, _, r) = hnf_rows(&Mat::from_rows(rows.to_vec()));
    SubLattice { ambient_rank, basis: (0..r).map(|i| h.row(i).to_vec()).collect() }
}

fn identity_rows(n: usize) -> Vec<Vec<BigInt>> {
    (0..n).map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect()).collect()
}
