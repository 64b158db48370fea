use clifford_core::CliffordAlg;
use ks_decomposition::{Elem, KsDecomposition};
use scalar_tower::{Mat, QuadExt, Rational};

use crate::{eigenbasis, Branch, PeriodError, PeriodPoint, QElem};

#[derive(Clone, Debug, PartialEq)]
pub struct RankReport {
    /// (even, odd) ℤ-ranks of Cl^±(T′)·x_i.
    pub z_ranks: Vec<(usize, usize)>,
    /// (even, odd) ranks over ℚ(√2, i) of the J′-eigenspace on the same lattices.
    pub complex_ranks: Vec<(usize, usize)>,
    /// Rank of the four even pieces stacked.
    pub even_total: usize,
}

fn span_rows(alg: &CliffordAlg<Rational>, x: &Elem, even: bool) -> Vec<Vec<Rational>> {
    let masks = if even { alg.even_masks() } else { alg.odd_masks() };
    let rows: Vec<Vec<Rational>> = masks.iter().map(|&m| alg.coords(&alg.mul(&alg.mono(m), x).expect("same algebra"))).collect();
    let (r, piv) = Mat::from_rows(rows).rref();
    (0..piv.len()).map(|i| r.row(i).to_vec()).collect()
}

/// Ranks of Cl^±(T′)·x_i, with J′ = e₁e₂ from a period point inside T′.
pub fn rank_check(ks: &KsDecomposition, p: &PeriodPoint) -> Result<RankReport, PeriodError> {
    if !p.in_t_prime() {
        return Err(PeriodError::PatternViolation(format!("{} is not inside T'", p.label)));
    }
    let alg = &ks.cl_uu2;
    let e1 = QElem::vector(alg, &p.e1[..4]);
    let e2 = QElem::vector(alg, &p.e2[..4]);
    let j = e1.mul(alg, &e2);
    let mut z_ranks = Vec::new();
    let mut complex_ranks = Vec::new();
    let mut even_rows = Vec::new();
    for x in &ks.x {
        let mut zr = [0usize; 2];
        let mut cr = [0usize; 2];
        for (slot, even) in [(0, true), (1, false)] {
            let basis = span_rows(alg, &x.elem, even);
            zr[slot] = basis.len();
            if even {
                even_rows.extend(basis.clone());
            }
            let bmat = Mat::from_rows(basis.clone()).transpose();
            let act = |e: &Elem| -> Mat<Rational> {
                let cols: Vec<Vec<Rational>> = basis
                    .iter()
                    .map(|row| {
                        let y = alg.mul(e, &alg.from_coords(row)).expect("same algebra");
                        bmat.solve_vec(&alg.coords(&y)).expect("left ideal is J-stable")
                    })
                    .collect();
                Mat::from_cols(cols)
            };
            let ja = act(&j.a).map(|c| QuadExt::from_base(c.clone()));
            let jb = act(&j.b).map(|c| QuadExt::from_base(c.clone()));
            let jm = ja.add(&jb.scale(&QuadExt::sqrt2()));
            if jm.mul(&jm) != Mat::identity(basis.len()).neg() {
                return Err(PeriodError::NotComplexStructure);
            }
            cr[slot] = eigenbasis(&jm, Branch::Omega).cols();
        }
        z_ranks.push((zr[0], zr[1]));
        complex_ranks.push((cr[0], cr[1]));
    }
    let even_total = if even_rows.is_empty() { 0 } else { Mat::from_rows(even_rows).rank() };
    Ok(RankReport { z_ranks, complex_ranks, even_total })
}
