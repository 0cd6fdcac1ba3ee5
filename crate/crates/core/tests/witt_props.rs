use invcode_core::ring::Coefficient;
use invcode_core::cyclotomic::Cyclotomic;
use invcode_core::witt::{find_lagrangian, gauss_milgram, witt_invariants, FiniteQuadraticForm};
use proptest::prelude::*;

fn atom(i: usize) -> FiniteQuadraticForm {
    let c = |o, n, d| FiniteQuadraticForm::cyclic(o, n, d).unwrap();
    match i {
        0 => FiniteQuadraticForm::semion(),
        1 => FiniteQuadraticForm::semion().negate(),
        2 => c(3, 1, 3),
        3 => c(3, 2, 3),
        4 => c(5, 1, 5),
        5 => c(5, 2, 5),
        6 => c(4, 1, 8),
        7 => c(4, 7, 8),
        8 => FiniteQuadraticForm::hyperbolic(2),
        _ => FiniteQuadraticForm::hyperbolic(3),
    }
}

fn form() -> impl Strategy<Value = FiniteQuadraticForm> {
    prop::collection::vec(0usize..10, 1..4).prop_map(|idx| {
        idx.iter().skip(1).fold(atom(idx[0]), |acc, &i| acc.orthogonal_sum(&atom(i)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn signature_is_additive(a in form(), b in form()) {
        let s = gauss_milgram(&a.orthogonal_sum(&b)).unwrap();
        prop_assert_eq!(s, (gauss_milgram(&a).unwrap() + gauss_milgram(&b).unwrap()) % 8);
    }

    #[test]
    fn gauss_sum_magnitude(a in form()) {
        let g = a.gauss_sum().unwrap();
        prop_assert_eq!(g.mul(&g.conj()), Cyclotomic::integer(g.order(), a.order() as i128));
    }

    #[test]
    fn lagrangian_forces_trivial_signature(a in form()) {
        prop_assume!(a.order() <= 4096);
        if find_lagrangian(&a, 4096).unwrap().is_some() {
            prop_assert_eq!(gauss_milgram(&a).unwrap(), 0);
            prop_assert!(witt_invariants(&a).unwrap().is_trivial());
        }
    }

    #[test]
    fn difference_with_itself_is_metabolic(a in form()) {
        let d = a.orthogonal_sum(&a.negate());
        prop_assert!(witt_invariants(&d).unwrap().is_trivial());
        if d.order() <= 4096 {
            prop_assert!(find_lagrangian(&d, 4096).unwrap().is_some());
        }
    }
}

#[test]
fn order_four_generator_at_three() {
    let q = FiniteQuadraticForm::cyclic(3, 1, 3).unwrap();
    assert!(find_lagrangian(&q, 4096).unwrap().is_none());
    assert!(find_lagrangian(&q.copies(2), 4096).unwrap().is_none());
    assert!(find_lagrangian(&q.copies(4), 4096).unwrap().is_some());
}

#[test]
fn four_semions_have_no_lagrangian_among_the_order_four_subgroups() {
    let q = FiniteQuadraticForm::semion().copies(4);
    assert!(find_lagrangian(&q, 4096).unwrap().is_none());
    // subgroups of (Z/2)^4 are the subsets of the 16 elements closed under addition
    let elems: Vec<Vec<u64>> = (0..16).map(|i| q.element(i)).collect();
    let (mut total, mut order_four, mut isotropic) = (0, 0, 0);
    for mask in 1u32..1 << 16 {
        if mask & 1 == 0 {
            continue;
        }
        let members: Vec<usize> = (0..16).filter(|i| mask >> i & 1 == 1).collect();
        let closed = members.iter().all(|&a| members.iter().all(|&b| mask >> q.index(&q.add(&elems[a], &elems[b])) & 1 == 1));
        if !closed {
            continue;
        }
        total += 1;
        if members.len() == 4 {
            order_four += 1;
            if members.iter().all(|&a| q.value(&elems[a]).is_zero()) {
                isotropic += 1;
            }
        }
    }
    assert_eq!((total, order_four, isotropic), (67, 35, 0));
}
