use invcode_core::ring::{reduce_mod_torus, IntMatrix, IntPoly, Monomial};
use num_bigint::BigInt;
use proptest::prelude::*;

fn poly(dim: usize) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec((prop::collection::vec(-2i64..=2, dim), -4i64..=4), 0..5).prop_map(move |terms| {
        IntPoly::from_terms(dim, terms.into_iter().map(|(e, c)| (Monomial(e), BigInt::from(c))))
    })
}

fn triple() -> impl Strategy<Value = (IntPoly, IntPoly, IntPoly)> {
    (0usize..=3).prop_flat_map(|d| (poly(d), poly(d), poly(d)))
}

fn square(max_n: usize) -> impl Strategy<Value = IntMatrix> {
    (1usize..=max_n, 0usize..=3).prop_flat_map(|(n, d)| {
        prop::collection::vec(poly(d), n * n).prop_map(move |entries| IntMatrix::from_fn(n, n, d, |i, j| entries[i * n + j].clone()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms((a, b, c) in triple()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn involution_is_an_automorphism((a, b, _) in triple()) {
        prop_assert_eq!(a.mul(&b).involution(), a.involution().mul(&b.involution()));
        prop_assert_eq!(a.add(&b).involution(), a.involution().add(&b.involution()));
        prop_assert_eq!(a.involution().involution(), a.clone());
        prop_assert_eq!(a.involution().trace(), a.trace());
    }

    #[test]
    fn adjugate_identity(m in square(3)) {
        let (det, adj) = m.det_adjugate().unwrap();
        let scalar = IntMatrix::identity(m.rows(), m.dim()).scale_poly(&det);
        prop_assert_eq!(m.mul(&adj), scalar.clone());
        prop_assert_eq!(adj.mul(&m), scalar);
    }

    #[test]
    fn torus_reduction_is_a_homomorphism((a, b, _) in triple(), ell in 1i64..=4) {
        let ra = reduce_mod_torus(&a, ell).unwrap();
        let rb = reduce_mod_torus(&b, ell).unwrap();
        prop_assert_eq!(reduce_mod_torus(&a.mul(&b), ell).unwrap(), ra.mul(&rb));
        prop_assert_eq!(reduce_mod_torus(&a.add(&b), ell).unwrap(), ra.add(&rb));
    }
}

#[test]
fn adjugate_for_four_by_four() {
    let m = invcode_core::ring::parse_int_matrix(
        "[[2, x1, 0, 1], [x2^-1, 1 + x3, 3, 0], [0, 1, x1 x2, -1], [1, 0, 2, x3]]",
        3,
    )
    .unwrap();
    let (det, adj) = m.det_adjugate().unwrap();
    assert_eq!(m.mul(&adj), IntMatrix::identity(4, 3).scale_poly(&det));
}
