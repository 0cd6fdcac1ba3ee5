use std::sync::Arc;

use invcode_core::corpus;
use invcode_core::forms::{CompactForm, LinkingForm};
use invcode_core::modules::Presentation;
use invcode_core::ring::{parse_int_matrix, Coefficient, IntPoly, Monomial};
use invcode_core::torus::DEFAULT_CAP;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;

fn fixtures() -> Vec<LinkingForm> {
    let p = |t: &str, d| Presentation::new(parse_int_matrix(t, d).unwrap()).unwrap();
    vec![
        corpus::hyperbolic(0, 2, 1),
        corpus::hyperbolic(0, 4, 1),
        corpus::hyperbolic(1, 3, 1),
        corpus::hyperbolic(2, 2, 2),
        LinkingForm::standard(&p("[[2, 1 + x1], [0, 2]]", 1), -1).unwrap(),
        LinkingForm::standard(&p("[[2, 1 + x1], [0, 2]]", 1), 1).unwrap(),
        LinkingForm::standard(&p("[[3, x1 + x2], [0, 2]]", 2), 1).unwrap(),
    ]
}

fn small_poly(dim: usize, seed: &[i64]) -> IntPoly {
    let terms = seed.chunks(2).enumerate().map(|(i, c)| {
        let mut e = vec![0i64; dim];
        if dim > 0 {
            e[i % dim] = c[0].signum();
        }
        (Monomial(e), BigInt::from(c[1]))
    });
    IntPoly::from_terms(dim, terms)
}

fn vector(form: &LinkingForm, seed: &[i64]) -> Vec<IntPoly> {
    (0..form.n()).map(|i| small_poly(form.dim(), &seed[4 * i..4 * i + 4])).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn representative_independence(which in 0usize..7, seed in prop::collection::vec(-3i64..=3, 48)) {
        let form = &fixtures()[which];
        let x = vector(form, &seed[0..16]);
        let y = vector(form, &seed[16..32]);
        let v = vector(form, &seed[32..48]);
        let moved: Vec<IntPoly> = x.iter().zip(form.carrier().apply(&v)).map(|(a, b)| a.add(&b)).collect();
        let ex = form.element(x).unwrap();
        let ey = form.element(y.clone()).unwrap();
        let em = form.element(moved).unwrap();
        prop_assert_eq!(form.eval_pairing(&em, &ey).unwrap(), form.eval_pairing(&ex, &ey).unwrap());
        prop_assert_eq!(form.eval_pairing(&ey, &em).unwrap(), form.eval_pairing(&ey, &ex).unwrap());
    }

    #[test]
    fn epsilon_hermitian(which in 0usize..7, seed in prop::collection::vec(-3i64..=3, 32)) {
        let form = &fixtures()[which];
        let x = form.element(vector(form, &seed[0..16])).unwrap();
        let y = form.element(vector(form, &seed[16..32])).unwrap();
        let xy = form.eval_pairing(&x, &y).unwrap();
        let yx = form.eval_pairing(&y, &x).unwrap();
        prop_assert_eq!(xy, yx.involution().scale(&BigInt::from(form.epsilon())));
    }

    #[test]
    fn commutator_is_biadditive(which in 0usize..7, seed in prop::collection::vec(-3i64..=3, 48)) {
        let form = &fixtures()[which];
        let x = form.element(vector(form, &seed[0..16])).unwrap();
        let y = form.element(vector(form, &seed[16..32])).unwrap();
        let z = form.element(vector(form, &seed[32..48])).unwrap();
        let lhs = form.commutator_phase(&x.add(&y).unwrap(), &z).unwrap();
        let rhs = form.commutator_phase(&x, &z).unwrap().add(&form.commutator_phase(&y, &z).unwrap());
        prop_assert_eq!(lhs, rhs);
        let lhs = form.commutator_phase(&z, &x.add(&y).unwrap()).unwrap();
        let rhs = form.commutator_phase(&z, &x).unwrap().add(&form.commutator_phase(&z, &y).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}

fn order_of(cf: &CompactForm, v: &[i64]) -> i64 {
    (1..).find(|&k| cf.lattice().contains(&v.iter().map(|x| x * k).collect::<Vec<_>>())).unwrap()
}

/// Symplectic basis `u_i, v_i` with `b(u_i, v_j) = δ_ij / d_i` and `u`, `v` isotropic, found by search.
fn symplectic_basis(cf: &CompactForm) -> Option<Vec<(Vec<i64>, Vec<i64>)>> {
    let elems: Vec<Vec<i64>> = cf.lattice().box_elements().collect();
    fn rec(cf: &CompactForm, elems: &[Vec<i64>], chosen: &mut Vec<(Vec<i64>, Vec<i64>)>, size: &BigInt) -> bool {
        let covered: BigInt = chosen.iter().map(|(u, _)| BigInt::from(order_of(cf, u)).pow(2)).product();
        if &covered == size {
            return true;
        }
        let fits = |w: &[i64]| chosen.iter().all(|(a, b)| cf.value_mod1(w, a).is_zero() && cf.value_mod1(w, b).is_zero());
        // a largest-order element must appear in some symplectic pair
        let orth: Vec<&Vec<i64>> = elems.iter().filter(|w| fits(w)).collect();
        let Some(top) = orth.iter().map(|w| order_of(cf, w)).max() else { return false };
        let u = (*orth.iter().find(|w| order_of(cf, w) == top).expect("maximum is attained")).clone();
        let target = BigRational::new(BigInt::one(), BigInt::from(top));
        for v in &orth {
            if order_of(cf, v) == top && cf.value_mod1(&u, v).value() == &target {
                chosen.push((u.clone(), (*v).clone()));
                if rec(cf, elems, chosen, size) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    rec(cf, &elems, &mut chosen, &cf.lattice().index()).then_some(chosen)
}

#[test]
fn even_forms_are_hyperbolic() {
    let p = |t: &str| Arc::new(Presentation::new(parse_int_matrix(t, 0).unwrap()).unwrap());
    let mut corpus_forms = vec![
        corpus::hyperbolic(0, 2, 1),
        corpus::hyperbolic(0, 3, 1),
        corpus::hyperbolic(0, 4, 1),
        corpus::hyperbolic(0, 2, 2),
        corpus::hyperbolic(0, 6, 1),
        LinkingForm::standard(&p("[[2, 1], [0, 2]]"), -1).unwrap(),
    ];
    // H^-(Z/2) twisted by a change of basis
    let twisted = LinkingForm::new(
        p("[[2, 0], [0, 2]]"),
        invcode_core::ring::parse_rat_matrix("[[0, 1/2], [-1/2, 0]]", 0).unwrap(),
        -1,
    )
    .unwrap();
    corpus_forms.push(twisted);
    let z4 = corpus::z4_lagrangians();
    let fm = corpus::z4_formation(&z4[1], &z4[6]).unwrap();
    let k = invcode_core::formations::Submodule::new(2, 0, vec![vec![IntPoly::from_i64(0, 2), IntPoly::from_i64(0, 0)]]).unwrap();
    corpus_forms.push(invcode_core::formations::condense(&fm, &k, None).unwrap().formation.form().clone());
    for form in corpus_forms {
        assert!(form.is_even_on_basis());
        let cf = form.compactify(1, DEFAULT_CAP).unwrap();
        assert!(cf.is_nonsingular());
        assert!(cf.lattice().index() <= BigInt::from(64));
        let basis = symplectic_basis(&cf).expect("symplectic basis");
        for (u, v) in &basis {
            assert!(cf.value_mod1(u, u).is_zero() && cf.value_mod1(v, v).is_zero());
        }
        assert!(!basis.is_empty() || cf.lattice().index() == BigInt::from(1));
    }
}
