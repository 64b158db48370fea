use std::sync::OnceLock;

use attributes::*;
use ks_decomposition::KsDecomposition;
use lattice::IntMat;
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use quaternion::{hurwitz_units, RatQuat};
use scalar_tower::{rat, Mat, Rational};

fn ks() -> &'static KsDecomposition {
    static KS: OnceLock<KsDecomposition> = OnceLock::new();
    KS.get_or_init(|| KsDecomposition::compute().unwrap())
}

fn attrs() -> &'static Attributes {
    static A: OnceLock<Attributes> = OnceLock::new();
    A.get_or_init(|| compute_attributes(ks(), &default_alpha(&ks().t)).unwrap())
}

fn q(c: [i64; 4]) -> RatQuat {
    RatQuat::from_coeffs(c.map(|x| rat(x, 1)))
}

#[test]
fn r_quaternions_are_conjugated_diagonal_entries() {
    let r = r_quaternions(ks());
    let h = quaternion::HurwitzElem::h().to_quat();
    assert_eq!(r[0], q([1, 0, 0, 0]));
    assert_eq!(r[1], h.scale(&rat(-2, 1)));
    assert_eq!(r[2], q([0, -2, 0, 0]));
    assert_eq!(r[3], q([0, 0, -2, 0]));
}

#[test]
fn modules_and_their_types() {
    let a = attrs();
    let div: Vec<Vec<i64>> = a.modules.iter().map(|m| m.divisors.iter().map(|d| d.try_into().unwrap()).collect()).collect();
    assert_eq!(div, vec![vec![1, 1, 4, 4], vec![1, 2, 2, 2], vec![1, 2, 2, 2], vec![1, 1, 4, 4]]);
    for m in &a.modules {
        assert_eq!(m.module.rank(), 4);
    }
    let counts: Vec<usize> = a.modules.iter().map(|m| m.module.minimal_pair_count()).collect();
    assert_eq!(counts, vec![6, 12, 12, 6]);
    let names: Vec<&str> = a.names.iter().map(|n| n.label()).collect();
    assert_eq!(names, vec!["I6", "I12", "I12", "I6"]);
    let m = &a.multipliers;
    assert_eq!(m[0], RatQuat::from_coeffs([rat(0, 1), rat(1, 4), rat(-1, 4), rat(0, 1)]));
    assert_eq!(m[1], RatQuat::from(rat(1, 2)));
    for (e, (name, h)) in a.modules.iter().zip(a.names.iter().zip(m)) {
        let target = if *name == ModuleName::I6 { i6() } else { i12() };
        let moved = e.module.right_mul(h);
        assert!(moved.basis.iter().all(|g| target.contains(g)));
        assert!(target.basis.iter().all(|g| moved.contains(g)));
    }
}

#[test]
fn extraction_is_injective() {
    let a = attrs();
    for b in 0..4 {
        let c = Mat::from_fn(4, 4, |row, j| Rational::from_integer(a.n[j][(4 * b + row, 4 * b)].clone()));
        assert_ne!(c.det(), rat(0, 1));
    }
}

#[test]
fn reference_modules() {
    assert_eq!(i6().minimal_pair_count(), 6);
    assert_eq!(i12().minimal_pair_count(), 12);
    let h = module_isomorphic(&i6(), &i6()).unwrap();
    assert!(hurwitz_units().contains(&h));
    assert_eq!(module_isomorphic(&i6(), &i12()), None);
    assert_eq!(module_isomorphic(&i12(), &i6()), None);
    // the literal ⟨h+i, h+j, i−j, k⟩ is degenerate: i−j = (h+i) − (h+j)
    let printed = QuatModule::new(vec![
        i6().basis[0].clone(),
        i6().basis[1].clone(),
        q([0, 1, -1, 0]),
        q([0, 0, 0, 1]),
    ]);
    assert_eq!(printed.rank(), 3);
}

#[test]
fn polarization_form_shape() {
    let me = &attrs().m_e;
    assert_eq!(me.transpose(), me.neg());
    for h in 0..16 {
        assert_eq!(me[(h, h)], rat(0, 1));
        for l in 0..16 {
            if !me[(h, l)].is_integer() {
                panic!("non-integral entry");
            }
            let (bh, bl) = (h / 4, l / 4);
            if [(0, 3), (3, 0), (1, 2), (2, 1)].contains(&(bh, bl)) {
                continue;
            }
            assert_eq!(me[(h, l)], rat(0, 1), "({h}, {l})");
        }
    }
    let reordered = Mat::from_fn(16, 16, |h, l| {
        let o = &attrs().order;
        me[(4 * o[h / 4] + h % 4, 4 * o[l / 4] + l % 4)].clone()
    });
    for h in 0..16 {
        for l in 0..16 {
            let pair = [(0, 1), (1, 0), (2, 3), (3, 2)].contains(&(h / 4, l / 4));
            if !pair {
                assert_eq!(reordered[(h, l)], rat(0, 1));
            }
        }
    }
}

#[test]
fn t_matches_the_example() {
    let a = attrs();
    let expect = Mat::from_rows(vec![
        vec![0, 256, 0, 0],
        vec![-256, 0, 0, 0],
        vec![0, 0, 0, -512],
        vec![0, 0, 512, 0],
    ])
    .map(|&x: &i64| RatQuat::from(rat(x, 1)));
    assert_eq!(a.order, vec![0, 3, 1, 2]);
    assert_eq!(a.t_canonical, expect);
    assert!(is_skew_hermitian(&a.t));
    let swapped = permute(&a.t_canonical, &[2, 3, 0, 1]);
    let mut values: Vec<String> = swapped.entries().filter(|x| !x.is_zero()).map(|x| x.to_string()).collect();
    values.sort();
    let mut orig: Vec<String> = a.t_canonical.entries().filter(|x| !x.is_zero()).map(|x| x.to_string()).collect();
    orig.sort();
    assert_eq!(values, orig);
}

#[test]
fn trace_normalization() {
    let t = &ks().t;
    let tab = trace_table(t);
    assert_eq!(trace(&tab, &t.one()), rat(8, 1));
    let phi = &ks().phi;
    for m in t.even_masks() {
        let img = phi.mono_image(m);
        let re = (0..8).fold(rat(0, 1), |acc, i| acc + img[(i, i)].coeffs()[0].clone());
        assert_eq!(tab.get(&m).cloned().unwrap_or(rat(0, 1)), re, "monomial {m:#b}");
    }
}

#[test]
fn wrong_multiplier_is_inconsistent() {
    let a = attrs();
    let mut m = a.multipliers.clone();
    m[1] = m[1].clone() * q([0, 1, 0, 0]);
    let solved = solve_t(&a.modules, &m, &a.m_e);
    match solved {
        Err(AttrError::Inconsistent(..)) => {}
        Ok(t) => assert_ne!(permute(&t, &a.order), a.t_canonical),
        Err(e) => panic!("{e}"),
    }
}

fn elementary(n: usize, i: usize, j: usize, c: i64) -> Mat<Rational> {
    let mut m = Mat::identity(n);
    m[(i, j)] = rat(c, 1);
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn block_basis_change_preserves_module_class(ops in prop::collection::vec((0usize..4, 0usize..4, 0usize..4, -2i64..=2), 1..6)) {
        let a = attrs();
        let mut p: Mat<Rational> = Mat::identity(16);
        for (b, i, j, c) in ops {
            if i != j {
                p = p.mul(&elementary(16, 4 * b + i, 4 * b + j, c));
            }
        }
        let pi = p.inverse().unwrap();
        let n2: Vec<IntMat> = a
            .n
            .iter()
            .map(|n| pi.mul(&n.map(|x| Rational::from_integer(x.clone()))).mul(&p).map(|x| -> BigInt { x.to_integer() }))
            .collect();
        let mods = extract_modules(&n2, &a.r).unwrap();
        for (m, orig) in mods.iter().zip(&a.modules) {
            prop_assert!(module_isomorphic(&m.module, &orig.module).is_some());
        }
    }
}
