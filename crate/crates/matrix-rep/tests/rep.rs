use matrix_rep::{even_sparsity_check, graded_kronecker, phi_d4, phi_t, phi_u, GradedRep, RepError};
use proptest::prelude::*;
use quaternion::RatQuat;
use scalar_tower::{rat, Mat, Rational};

fn r(n: i64) -> Rational {
    rat(n, 1)
}

#[test]
fn u_and_u2_glue_to_m4() {
    let rep = graded_kronecker(&phi_u(1), &phi_u(2)).unwrap();
    assert_eq!(rep.dim(), 4);
    let g = rep.gen_images();
    assert_eq!(g[0].mul(&g[2]), g[2].mul(&g[0]).neg());
    assert!(!g[0].mul(&g[2]).is_zero());
}

#[test]
fn kron_with_trivial_factor() {
    let alg = std::sync::Arc::new(clifford_core::CliffordAlg::new(Mat::<Rational>::zeros(0, 0)).unwrap());
    let one: GradedRep<Rational> = GradedRep::new(alg, vec![], vec![1]).unwrap();
    let u = phi_u(1);
    let glued = graded_kronecker(&one, &u).unwrap();
    assert_eq!(glued.gen_images(), u.gen_images());
    assert_eq!(glued.grading(), u.grading());
}

#[test]
fn t_rep_is_graded_and_splits() {
    let phi = phi_t();
    assert_eq!(phi.dim(), 8);
    assert_eq!(phi.alg().n(), 8);
    let gram = lattice::named_lattice(&lattice::Named::OrthogonalSum(vec![
        lattice::Named::U,
        lattice::Named::Un(2),
        lattice::Named::D4Minus,
    ]))
    .gram;
    assert_eq!(phi.alg().form(), &gram);
    for (i, g) in phi.gen_images().iter().enumerate() {
        assert!(phi.is_graded(g, false), "generator {i}");
        for h in phi.gen_images() {
            assert!(phi.is_graded(&g.mul(h), true));
        }
    }
    let split = even_sparsity_check(&phi).unwrap();
    assert_eq!(split.plus_rows, vec![0, 3, 5, 6]);
    assert_eq!(split.minus_rows, vec![1, 2, 4, 7]);
    let a = phi.alg();
    assert_eq!(phi.eval(&a.one()).unwrap(), Mat::identity(8));
    let (p, m) = split.split_eval(&a.one()).unwrap();
    assert_eq!((p, m), (Mat::identity(4), Mat::identity(4)));
    let f12 = phi.eval(&a.mono(0b11)).unwrap();
    let (p, m) = split.split_matrix(&f12);
    let z = Mat::<RatQuat>::zeros(4, 4);
    let mut back = z.clone().hstack(&z).vstack(&z.hstack(&z));
    for (bi, rows) in [(&p, &split.plus_rows), (&m, &split.minus_rows)] {
        for (a, &ra) in rows.iter().enumerate() {
            for (b, &rb) in rows.iter().enumerate() {
                back[(ra, rb)] = bi[(a, b)].clone();
            }
        }
    }
    assert_eq!(back, f12);
    assert_eq!(split.split_eval(&a.gen(0)).unwrap_err(), RepError::OddElement);
}

#[test]
fn even_part_maps_onto_both_blocks() {
    let split = even_sparsity_check(&phi_t()).unwrap();
    let a = split.rep.alg().clone();
    let rows: Vec<Vec<Rational>> = a.even_masks().iter().map(|&m| split.split_coords(&a.mono(m)).unwrap()).collect();
    assert_eq!(rows.len(), 128);
    assert_eq!(Mat::from_rows(rows).rank(), 128);
}

#[test]
fn d4_images_are_hurwitz_and_violations_are_caught() {
    let d4 = phi_d4();
    for g in d4.gen_images() {
        for q in g.entries() {
            assert!(quaternion::HurwitzElem::from_quat(q).is_some());
        }
    }
    let mut bad = phi_u(1).gen_images().to_vec();
    bad[1] = bad[1].scale(&r(3));
    let err = GradedRep::new(phi_u(1).alg().clone(), bad, vec![1, -1]).err().unwrap();
    assert!(matches!(err, RepError::Clifford(clifford_core::CliffordError::RelationViolation(0, 1))));
}

fn even_elem(a: &clifford_core::CliffordAlg<Rational>, t: &[(u32, i64)]) -> clifford_core::CliffordElem<Rational> {
    let mut x = a.zero();
    for (m, c) in t {
        let m = if m.count_ones() % 2 == 1 { m ^ 1 } else { *m };
        x = x + a.mono(m).scale(&r(*c));
    }
    x
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn split_is_multiplicative(x in prop::collection::vec((0u32..256, -3i64..=3), 1..4), y in prop::collection::vec((0u32..256, -3i64..=3), 1..4)) {
        thread_local!(static SPLIT: matrix_rep::SplitRep = even_sparsity_check(&phi_t()).unwrap());
        SPLIT.with(|s| {
            let a = s.rep.alg();
            let (x, y) = (even_elem(a, &x), even_elem(a, &y));
            let (x1, x2) = s.split_eval(&x).unwrap();
            let (y1, y2) = s.split_eval(&y).unwrap();
            let (p1, p2) = s.split_eval(&a.mul(&x, &y).unwrap()).unwrap();
            assert_eq!(p1, x1.mul(&y1));
            assert_eq!(p2, x2.mul(&y2));
        });
    }
}
