use std::sync::OnceLock;

use ks_decomposition::*;
use lattice::{smith_normal_form, SubLattice};
use num_bigint::BigInt;
use quaternion::RatQuat;
use scalar_tower::{Mat, Rational};

fn ks() -> &'static KsDecomposition {
    static KS: OnceLock<KsDecomposition> = OnceLock::new();
    KS.get_or_init(|| KsDecomposition::compute().unwrap())
}

fn render(e: &Elem) -> String {
    e.to_string()
}

#[test]
fn x_idempotents() {
    let k = ks();
    let c = &k.cl_uu2;
    for (i, x) in k.x.iter().enumerate() {
        assert_eq!(c.mul(&x.elem, &x.elem).unwrap(), x.elem.scale(&r(8)));
        for (j, y) in k.x.iter().enumerate() {
            if i != j {
                assert!(c.mul(&x.elem, &y.elem).unwrap().is_zero());
            }
        }
    }
    let sum = k.x.iter().fold(c.zero(), |a, x| a + x.elem.clone());
    assert_eq!(sum, c.scalar(r(8)));
    let rep = matrix_rep::graded_kronecker(&matrix_rep::phi_u(1), &matrix_rep::phi_u(2)).unwrap();
    let x1 = shift_into(rep.alg(), &k.x[0].elem, 0);
    let mut e11 = Mat::zeros(4, 4);
    e11[(0, 0)] = r(8);
    assert_eq!(rep.eval(&x1).unwrap(), e11);
}

#[test]
fn y_idempotents() {
    let k = ks();
    let d = &k.cl_d4;
    assert_eq!(render(&k.h), "1 * e{2,3} - 1 * e{2,4} + 1 * e{3,4} + 1 * e{1,2,3,4}");
    let (y1, y2) = (&k.y[0].elem, &k.y[1].elem);
    assert_eq!(d.mul(y1, y1).unwrap(), y1.scale(&r(4)));
    assert!(d.mul(y1, y2).unwrap().is_zero());
    let rep = matrix_rep::phi_d4();
    let yy = shift_into(rep.alg(), y1, 0);
    assert_eq!(rep.eval(&yy).unwrap(), Mat::diag(&[RatQuat::from(r(4)), RatQuat::from(r(0))]));
}

#[test]
fn epsilons_split_to_matrix_units() {
    let k = ks();
    let t = &k.t;
    for (i, e) in k.eps.iter().enumerate() {
        assert_eq!(e.scale, 32);
        assert_eq!(t.mul(&e.elem, &e.elem).unwrap(), e.elem.scale(&r(32)));
        for (j, f) in k.eps.iter().enumerate() {
            if i != j {
                assert!(t.mul(&e.elem, &f.elem).unwrap().is_zero());
            }
        }
        let (a, b) = k.split.split_eval(&e.elem).unwrap();
        let mut unit = Mat::<RatQuat>::zeros(4, 4);
        unit[(i % 4, i % 4)] = RatQuat::from(r(32));
        let zero = Mat::<RatQuat>::zeros(4, 4);
        if i < 4 {
            assert_eq!((a, b), (unit, zero), "eps {}", i + 1);
        } else {
            assert_eq!((a, b), (zero, unit), "eps {}", i + 1);
        }
    }
    let sum = k.eps.iter().fold(t.zero(), |a, e| a + e.elem.clone());
    assert_eq!(sum, t.scalar(r(32)));
}

#[test]
fn kernel_ranks_and_parities() {
    let k = ks();
    let count = |v: &Vec<Elem>| (v.iter().filter(|e| e.is_even()).count(), v.iter().filter(|e| !e.is_even()).count());
    for l in &k.l {
        assert_eq!(count(l), (2, 2));
    }
    for kk in &k.k {
        assert_eq!(count(kk), (4, 4));
    }
    let l1: Vec<String> = k.l[0].iter().map(render).collect();
    assert_eq!(l1, ["1 * e{2,4}", "1 * e{1,2,4}", "1 * e{2,3,4}", "1 * e{1,2,3,4}"]);
    let l4: Vec<String> = k.l[3].iter().map(render).collect();
    assert_eq!(l4[0], "8 * e{} - 4 * e{1,2} - 2 * e{3,4} + 1 * e{1,2,3,4}");
    assert_eq!(render(&k.k[0][0]), "2 * e{} + 1 * e{2,3} + 2 * e{1,4} - 1 * e{2,4} - 1 * e{3,4}");
}

#[test]
fn lambdas_are_saturated_and_complete() {
    let k = ks();
    let mut all = Vec::new();
    for lam in &k.lambdas {
        assert_eq!(lam.basis.len(), 16);
        assert_eq!(lam.rank(), 16);
        assert!(lam.basis.iter().all(|b| b.is_even()));
        assert!(lam.sublattice().is_saturated());
        all.extend(lam.coords.to_rows());
    }
    let stacked = SubLattice { ambient_rank: 128, basis: all };
    assert_eq!(stacked.matrix().map(|c| Rational::from_integer(c.clone())).rank(), 128);
}

#[test]
fn eps_acts_as_identity_on_its_lambda() {
    let k = ks();
    for (i, lam) in k.lambdas.iter().enumerate() {
        let e = k.eps[i].elem.scale(&scalar_tower::rat(1, 32));
        let m = k.right_action(lam, &e).unwrap();
        assert_eq!(m, Mat::identity(16));
        let span = k.right_action(lam, &k.t.scalar(r(1))).unwrap();
        assert_eq!(span, Mat::identity(16));
    }
    let lam = &k.lambdas[0];
    let masks = k.even_masks();
    for m in masks.iter().step_by(7) {
        let z = k.t.mul(&k.t.mono(*m), &k.eps[0].elem).unwrap();
        assert!(lam.coords_of(&z, &masks).is_ok());
    }
}

#[test]
fn phi_re_matrices() {
    let k = ks();
    let phi = k.build_phi_re(&k.lambdas[0]).unwrap();
    assert_eq!(phi.n[0], int_identity(16));
    for n in &phi.n {
        assert!(is_block_diagonal(n, 4));
    }
    assert!(span_is_primitive(&phi.n));
    let q = |m: &lattice::IntMat| m.map(|c| Rational::from_integer(c.clone()));
    // right multiplication is an anti-homomorphism: N(ab) = N(b)N(a)
    for i in 1..4 {
        for j in 1..4 {
            let prod = k.t.mul(&phi.h_tilde[i], &phi.h_tilde[j]).unwrap();
            assert_eq!(k.right_action(&k.lambdas[0], &prod).unwrap(), q(&phi.n[j]).mul(&q(&phi.n[i])));
        }
    }
    for (i, j) in [(2, 3)] {
        let s = q(&phi.n[i]).mul(&q(&phi.n[j])).add(&q(&phi.n[j]).mul(&q(&phi.n[i])));
        assert!(is_scalar_matrix(&s));
    }
    for i in 1..4 {
        let s = q(&phi.n[i]).mul(&q(&phi.n[i]));
        let expect = k.right_action(&k.lambdas[0], &k.t.mul(&phi.h_tilde[i], &phi.h_tilde[i]).unwrap()).unwrap();
        assert_eq!(s, expect);
    }
}

#[test]
fn right_action_preserves_every_lambda() {
    let k = ks();
    for lam in &k.lambdas {
        k.build_phi_re(lam).unwrap();
    }
}

#[test]
fn phi_re_commutes_with_left_action() {
    let k = ks();
    let lam = &k.lambdas[0];
    let phi = k.build_phi_re(lam).unwrap();
    let q = |m: &lattice::IntMat| m.map(|c| Rational::from_integer(c.clone()));
    for m in k.even_masks() {
        let l = k.left_action(lam, &k.t.mono(m)).unwrap();
        for n in &phi.n {
            assert_eq!(l.mul(&q(n)), q(n).mul(&l));
        }
    }
}

#[test]
fn block_divisors() {
    let k = ks();
    let phi = k.build_phi_re(&k.lambdas[0]).unwrap();
    let mut all = Vec::new();
    for b in 0..4 {
        let c = Mat::from_fn(4, 4, |row, j| phi.n[j][(4 * b + row, 4 * b)].clone());
        let d: Vec<BigInt> = smith_normal_form(&c).divisors;
        all.push(d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
    }
    assert_eq!(all, ["1,1,4,4", "1,2,2,2", "1,2,2,2", "1,1,4,4"]);
    let diag: Vec<String> = k.h_tilde_diagonal().iter().map(|q| q.to_string()).collect();
    assert_eq!(diag[0], RatQuat::from(r(1)).to_string());
    assert_eq!(k.h_tilde_diagonal()[1], RatQuat::new(r(-1), r(1), r(1), r(1)));
}
