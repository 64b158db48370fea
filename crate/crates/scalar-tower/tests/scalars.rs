use num_traits::{One, Zero};
use proptest::prelude::*;
use scalar_tower::*;

fn gq(re: QuadExt, im: QuadExt) -> GaussQuad {
    Gauss::new(re, im)
}

#[test]
fn sign_examples() {
    assert_eq!(qe_sign(&qe(0, 0)), 0);
    assert_eq!(qe_sign(&qe(-1, 1)), 1);
    assert_eq!(qe_sign(&qe(3, -2)), 1);
    assert_eq!(qe_sign(&qe(1, -1)), -1);
    assert_eq!(qe_sign(&qe(-3, 2)), -1);
}

#[test]
fn sqrt_examples() {
    assert_eq!(qe_sqrt(&qe(256, 0)).unwrap(), qe(16, 0));
    assert_eq!(qe_sqrt(&qe(512, 0)).unwrap(), qe(0, 16));
    assert!(matches!(qe_sqrt(&qe(3, 0)), Err(ScalarError::NotASquare(_))));
    // (1 + √2)² = 3 + 2√2
    assert_eq!(qe_sqrt(&qe(3, 2)).unwrap(), qe(1, 1));
    // (√2 − 1)² = 3 − 2√2, the positive root
    assert_eq!(qe_sqrt(&qe(3, -2)).unwrap(), qe(-1, 1));
    assert!(qe_sqrt(&qe(-4, 0)).is_err());
}

#[test]
fn inverse_examples() {
    let one = GaussQuad::one();
    assert_eq!(gq_inv(&one).unwrap(), one);
    assert_eq!(gq_inv(&GaussQuad::i()).unwrap(), -GaussQuad::i());
    let x = GaussQuad::real(qe(1, 1));
    assert_eq!(gq_inv(&x).unwrap(), GaussQuad::real(qe(-1, 1)));
    assert_eq!(gq_inv(&GaussQuad::zero()), Err(ScalarError::DivisionByZero));
}

#[test]
fn text_roundtrip() {
    for s in ["0", "-7/3", "1/2 + (3/4)*sqrt2", "(-1)*sqrt2", "(1/2)*I", "3 + (2)*sqrt2 + ((1)*sqrt2)*I"] {
        let v = parse_gauss(s).unwrap();
        assert_eq!(parse_gauss(&v.to_string()).unwrap(), v, "{s}");
    }
    assert_eq!(parse_quad("(8193-128*sqrt2)/8191").unwrap(), Quad::new(rat(8193, 8191), rat(-128, 8191)));
    assert!(parse_quad("1 + I").is_err());
    assert!(parse_rational("sqrt2").is_err());
    assert!(parse_gauss("1 +").is_err());
}

#[test]
fn matrix_elimination() {
    let a = Mat::from_rows(vec![vec![rat(2, 1), rat(1, 1)], vec![rat(4, 1), rat(3, 1)]]);
    let inv = a.inverse().unwrap();
    assert_eq!(a.mul(&inv), Mat::identity(2));
    assert_eq!(a.det(), rat(2, 1));
    let s = Mat::from_rows(vec![vec![rat(1, 1), rat(2, 1)], vec![rat(2, 1), rat(4, 1)]]);
    assert_eq!(s.rank(), 1);
    let ns = s.nullspace();
    assert_eq!(ns, vec![vec![rat(-2, 1), rat(1, 1)]]);
    assert!(s.inverse().is_none());
    assert!(s.solve_vec(&[rat(1, 1), rat(0, 1)]).is_none());
    assert_eq!(s.solve_vec(&[rat(1, 1), rat(2, 1)]).unwrap(), vec![rat(1, 1), rat(0, 1)]);
}

#[test]
fn kron_shape() {
    let a: Mat<Rational> = Mat::identity(2);
    let b = Mat::from_rows(vec![vec![rat(0, 1), rat(1, 1)], vec![rat(1, 1), rat(0, 1)]]);
    let k = a.kron(&b);
    assert_eq!((k.rows(), k.cols()), (4, 4));
    assert_eq!(k[(2, 3)], rat(1, 1));
    assert_eq!(k[(0, 3)], rat(0, 1));
}

fn small_rat() -> impl Strategy<Value = Rational> {
    (-40i64..40, 1i64..12).prop_map(|(n, d)| rat(n, d))
}

fn quad() -> impl Strategy<Value = QuadExt> {
    (small_rat(), small_rat()).prop_map(|(a, b)| Quad::new(a, b))
}

fn gauss() -> impl Strategy<Value = GaussQuad> {
    (quad(), quad()).prop_map(|(r, i)| gq(r, i))
}

proptest! {
    #[test]
    fn quad_field_axioms(x in quad(), y in quad(), z in quad()) {
        prop_assert_eq!((x.clone() * y.clone()) * z.clone(), x.clone() * (y.clone() * z.clone()));
        prop_assert_eq!(x.clone() * (y.clone() + z.clone()), x.clone() * y.clone() + x.clone() * z.clone());
        if !x.is_zero() {
            prop_assert_eq!(x.clone() * x.inv().unwrap(), QuadExt::one());
        }
    }

    #[test]
    fn gauss_field_axioms(x in gauss(), y in gauss(), z in gauss()) {
        prop_assert_eq!((x.clone() * y.clone()) * z.clone(), x.clone() * (y.clone() * z.clone()));
        prop_assert_eq!((x.clone() + y.clone()) * z.clone(), x.clone() * z.clone() + y.clone() * z.clone());
        if !x.is_zero() {
            prop_assert_eq!(x.clone() * gq_inv(&x).unwrap(), GaussQuad::one());
        }
    }

    #[test]
    fn sign_is_multiplicative(x in quad(), y in quad()) {
        prop_assert_eq!(qe_sign(&(x.clone() * y.clone())), qe_sign(&x) * qe_sign(&y));
    }

    #[test]
    fn sign_matches_float(x in quad()) {
        let f = |q: &Rational| q.numer().to_string().parse::<f64>().unwrap() / q.denom().to_string().parse::<f64>().unwrap();
        let v = f(&x.a) + f(&x.b) * 2f64.sqrt();
        if v.abs() > 1e-9 {
            prop_assert_eq!(qe_sign(&x), if v > 0.0 { 1 } else { -1 });
        }
    }

    #[test]
    fn sqrt_of_square(x in quad()) {
        let sq = x.clone() * x.clone();
        prop_assert_eq!(qe_sqrt(&sq).unwrap(), x.abs());
    }

    #[test]
    fn conj_is_involutive_automorphism(x in gauss(), y in gauss()) {
        prop_assert_eq!(x.conj().conj(), x.clone());
        prop_assert_eq!((x.clone() * y.clone()).conj(), x.conj() * y.conj());
        prop_assert_eq!((x.clone() + y.clone()).conj(), x.conj() + y.conj());
    }

    #[test]
    fn display_parses_back(x in gauss()) {
        prop_assert_eq!(parse_gauss(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn solve_recovers_rhs(rows in prop::collection::vec(prop::collection::vec(small_rat(), 3), 3), b in prop::collection::vec(small_rat(), 3)) {
        let a = Mat::from_rows(rows);
        if let Some(x) = a.solve_vec(&b) {
            prop_assert_eq!(a.mul_vec(&x), b);
        } else {
            prop_assert!(a.rank() < 3);
        }
        for v in a.nullspace() {
            prop_assert!(a.mul_vec(&v).iter().all(|t| t.is_zero()));
        }
    }
}
