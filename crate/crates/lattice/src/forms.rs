use num_traits::{Signed, Zero};
use scalar_tower::{Field, Mat, Rational, Ring};

/// Diagonal entries of a congruence diagonalization PᵗGP of a symmetric matrix.
pub fn symmetric_diagonalize(g: &Mat<Rational>) -> Vec<Rational> {
    let mut m = g.clone();
    let n = m.rows();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        if m[(k, k)].is_zero() {
            // borrow a nonzero diagonal, or make one from an off-diagonal pair
            if let Some(j) = (k + 1..n).find(|&j| !m[(j, j)].is_zero()) {
                add_to(&mut m, k, j, &Rational::from_int(1));
            } else if let Some(j) = (k + 1..n).find(|&j| !m[(k, j)].is_zero()) {
                add_to(&mut m, k, j, &Rational::from_int(1));
            }
        }
        let p = m[(k, k)].clone();
        if p.is_zero() {
            out.push(p);
            continue;
        }
        let pinv = p.inv().unwrap();
        for j in k + 1..n {
            if !m[(k, j)].is_zero() {
                let f = -(m[(k, j)].clone() * pinv.clone());
                add_to(&mut m, j, k, &f);
            }
        }
        out.push(p);
    }
    out
}

/// e_a ← e_a + f·e_b applied as a congruence.
fn add_to(m: &mut Mat<Rational>, a: usize, b: usize, f: &Rational) {
    let n = m.rows();
    for i in 0..n {
        let v = m[(i, a)].clone() + f.clone() * m[(i, b)].clone();
        m[(i, a)] = v;
    }
    for j in 0..n {
        let v = m[(a, j)].clone() + f.clone() * m[(b, j)].clone();
        m[(a, j)] = v;
    }
}

/// (n₊, n₋, n₀) of a symmetric rational matrix.
pub fn signature(g: &Mat<Rational>) -> (usize, usize, usize) {
    let d = symmetric_diagonalize(g);
    let pos = d.iter().filter(|x| x.is_positive()).count();
    let neg = d.iter().filter(|x| x.is_negative()).count();
    (pos, neg, d.len() - pos - neg)
}
