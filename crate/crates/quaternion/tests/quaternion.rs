use num_traits::{One, Zero};
use proptest::prelude::*;
use quaternion::*;
use scalar_tower::{qe, rat, Gauss, GaussQuad, Mat, QuadExt, Rational, Ring};

fn r(n: i64) -> Rational {
    rat(n, 1)
}

#[test]
fn hamilton_relations() {
    let (i, j, k) = (RatQuat::i(), RatQuat::j(), RatQuat::k());
    assert_eq!(quat_mul(&i, &j), k);
    assert_eq!(quat_mul(&j, &k), i);
    assert_eq!(quat_mul(&k, &i), j);
    assert_eq!(quat_mul(&i, &i), -RatQuat::one());
}

#[test]
fn h_squared_is_h_minus_one() {
    let h = HurwitzElem::h().to_quat();
    assert_eq!(quat_mul(&h, &h), Quat::new(rat(-1, 2), rat(1, 2), rat(1, 2), rat(1, 2)));
    assert_eq!(quat_mul(&h, &h), h - RatQuat::one());
}

#[test]
fn norm_via_conjugate() {
    let q = Quat::new(r(1), r(2), r(0), r(0));
    assert_eq!(quat_mul(&q, &q.conj()), RatQuat::scalar(r(5)));
}

#[test]
fn gram_matches_hurwitz_form() {
    let h = rat(1, 2);
    let expected = Mat::from_rows(vec![
        vec![r(1), h.clone(), h.clone(), h.clone()],
        vec![h.clone(), r(1), r(0), r(0)],
        vec![h.clone(), r(0), r(1), r(0)],
        vec![h, r(0), r(0), r(1)],
    ]);
    let g = hurwitz_gram();
    assert_eq!(g, expected);
    assert_eq!(g.det(), rat(1, 4));
    assert_eq!(g[(1, 2)], r(0));
}

#[test]
fn chi_examples() {
    let one: Mat<GaussQuad> = chi(&QuadQuat::one());
    assert_eq!(one, Mat::identity(2));
    let ci = chi(&QuadQuat::i());
    assert_eq!(ci, Mat::diag(&[GaussQuad::i(), -GaussQuad::i()]));
    let cj = chi(&QuadQuat::j());
    assert_eq!(cj, Mat::from_rows(vec![vec![GaussQuad::zero(), GaussQuad::one()], vec![-GaussQuad::one(), GaussQuad::zero()]]));
    assert_eq!(ci.mul(&cj), chi(&QuadQuat::k()));
}

#[test]
fn unit_group_has_twelve_antipodal_pairs() {
    let units = hurwitz_units();
    assert_eq!(units.len(), 24);
    assert!(units.iter().all(|u| u.norm() == r(1) && HurwitzElem::from_quat(u).is_some()));
    let mut pairs: Vec<_> = units.iter().filter(|u| units.contains(&-(*u).clone())).collect();
    pairs.dedup();
    assert_eq!(pairs.len(), 24);
}

#[test]
fn hurwitz_basis_closed() {
    for a in 0..4 {
        for b in 0..4 {
            let mut x = [0; 4];
            let mut y = [0; 4];
            x[a] = 1;
            y[b] = 1;
            let p = HurwitzElem::new(x).to_quat() * HurwitzElem::new(y).to_quat();
            assert!(HurwitzElem::from_quat(&p).is_some(), "{a} {b}");
        }
    }
    assert!(HurwitzElem::from_quat(&Quat::new(rat(1, 2), r(0), r(0), r(0))).is_none());
}

#[test]
fn chi_matrix_block_form() {
    let m = Mat::from_rows(vec![vec![QuadQuat::j(), QuadQuat::i()]]);
    let c = chi_matrix(&m);
    assert_eq!((c.rows(), c.cols()), (2, 4));
    assert_eq!(c[(0, 2)], GaussQuad::one());
    assert_eq!(c[(1, 0)], -GaussQuad::one());
    assert_eq!(c[(0, 1)], GaussQuad::i());
    assert_eq!(c[(1, 3)], -GaussQuad::i());
}

fn quad() -> impl Strategy<Value = QuadExt> {
    (-9i64..9, -9i64..9).prop_map(|(a, b)| qe(a, b))
}

fn q() -> impl Strategy<Value = QuadQuat> {
    (quad(), quad(), quad(), quad()).prop_map(|(w, x, y, z)| Quat::new(w, x, y, z))
}

fn hurwitz() -> impl Strategy<Value = HurwitzElem> {
    prop::array::uniform4(-5i64..5).prop_map(HurwitzElem::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn chi_is_multiplicative(a in q(), b in q()) {
        prop_assert_eq!(chi(&(a.clone() * b.clone())), chi(&a).mul(&chi(&b)));
    }

    #[test]
    fn det_chi_is_norm(a in q()) {
        prop_assert_eq!(chi(&a).det(), Gauss::real(a.norm()));
        prop_assert_eq!(chi(&a.conj()), chi(&a).conj_transpose());
    }

    #[test]
    fn norm_is_multiplicative(a in q(), b in q()) {
        prop_assert_eq!((a.clone() * b.clone()).norm(), a.norm() * b.norm());
    }

    #[test]
    fn hurwitz_closed(a in hurwitz(), b in hurwitz()) {
        let p = a.mul(&b);
        prop_assert_eq!(p.to_quat(), a.to_quat() * b.to_quat());
        prop_assert!(p.norm().is_integer());
    }
}
