use std::sync::Arc;

use invcode_core::modules::{dual_pairing, elements_equal, Presentation};
use invcode_core::ring::{IntMatrix, IntPoly, Monomial};
use invcode_core::torus::DEFAULT_CAP;
use num_bigint::BigInt;
use proptest::prelude::*;

fn poly(dim: usize) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec((prop::collection::vec(-1i64..=1, dim), -3i64..=3), 0..4).prop_map(move |terms| {
        IntPoly::from_terms(dim, terms.into_iter().map(|(e, c)| (Monomial(e), BigInt::from(c))))
    })
}

fn unit_times(dim: usize, k: i64) -> impl Strategy<Value = IntPoly> {
    (prop::collection::vec(-1i64..=1, dim), prop::bool::ANY)
        .prop_map(move |(e, neg)| IntPoly::monomial(Monomial(e), BigInt::from(if neg { -k } else { k })))
}

/// `U · T · V` with `T` upper triangular and `U, V` unimodular elementary matrices.
fn presentation() -> impl Strategy<Value = (Presentation, i64)> {
    (0usize..=2, prop::sample::select(vec![2i64, 3, 4, 6]), prop::bool::ANY).prop_flat_map(|(d, k0, two)| {
        let split = if k0 == 4 { (2, 2) } else if k0 == 6 { (2, 3) } else { (1, k0) };
        if two {
            (unit_times(d, split.0), unit_times(d, split.1), poly(d), poly(d), poly(d))
                .prop_map(move |(a, b, c, r, s)| {
                    let t = IntMatrix::from_rows(d, vec![vec![a, c], vec![IntPoly::zero(d), b]]).unwrap();
                    let one = IntPoly::one(d);
                    let zero = IntPoly::zero(d);
                    let u = IntMatrix::from_rows(d, vec![vec![one.clone(), r], vec![zero.clone(), one.clone()]]).unwrap();
                    let v = IntMatrix::from_rows(d, vec![vec![one.clone(), zero], vec![s, one]]).unwrap();
                    (Presentation::new(u.mul(&t).mul(&v)).unwrap(), k0)
                })
                .boxed()
        } else {
            unit_times(d, k0).prop_map(move |a| (Presentation::new(IntMatrix::from_rows(d, vec![vec![a]]).unwrap()).unwrap(), k0)).boxed()
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn counting_law((p, k0) in presentation(), ell in 1i64..=3) {
        prop_assert_eq!(p.k0(), &BigInt::from(k0));
        let order = p.compactify(ell, DEFAULT_CAP).unwrap().lattice.index();
        prop_assert_eq!(order, num_traits::pow(BigInt::from(k0), (ell as usize).pow(p.dim() as u32)));
    }

    #[test]
    fn k0_is_multiplicative((p, a) in presentation(), (q, b) in presentation()) {
        prop_assume!(p.dim() == q.dim());
        let d = p.dim();
        let n = p.n() + q.n();
        let glue = IntPoly::var(d.max(1), 0);
        let glue = if d == 0 { IntPoly::from_i64(0, 5) } else { glue };
        let block = IntMatrix::from_fn(n, n, d, |i, j| {
            if i < p.n() && j < p.n() {
                p.boundary().get(i, j).clone()
            } else if i >= p.n() && j >= p.n() {
                q.boundary().get(i - p.n(), j - p.n()).clone()
            } else if i < p.n() {
                glue.clone()
            } else {
                IntPoly::zero(d)
            }
        });
        let total = Presentation::new(block).unwrap();
        prop_assert_eq!(total.k0(), &BigInt::from(a * b));
    }

    #[test]
    fn pairing_is_additive_and_linear((p, _) in presentation(), seed in prop::collection::vec(-3i64..=3, 12), r in prop::collection::vec(-2i64..=2, 2)) {
        let p = Arc::new(p);
        let d = p.dim();
        let dual = Arc::new(p.s_dual());
        let n = p.n();
        let vec_of = |off: usize| -> Vec<IntPoly> { (0..n).map(|i| IntPoly::from_i64(d, seed[off + i])).collect() };
        let x = p.element(vec_of(0)).unwrap();
        let y = p.element(vec_of(3)).unwrap();
        let f = dual.element(vec_of(6)).unwrap();
        let g = dual.element(vec_of(9)).unwrap();
        let fx = dual_pairing(&f, &x).unwrap();
        prop_assert_eq!(dual_pairing(&f, &x.add(&y).unwrap()).unwrap(), fx.add(&dual_pairing(&f, &y).unwrap()));
        prop_assert_eq!(dual_pairing(&f.add(&g).unwrap(), &x).unwrap(), fx.add(&dual_pairing(&g, &x).unwrap()));
        let mono = IntPoly::monomial(Monomial(r[..d].to_vec()), BigInt::from(1));
        prop_assert_eq!(dual_pairing(&f, &x.scale(&mono)).unwrap(), fx.mul_int(&mono));
    }

    #[test]
    fn equality_matches_the_finite_group(k0 in prop::sample::select(vec![2i64, 3, 4, 6]), off in -6i64..6, a in -8i64..8, b in -8i64..8, c in -8i64..8) {
        // at d = 0 the compactification is the module itself
        let m = IntMatrix::from_i64_rows(&[vec![k0, off], vec![0, 2]], 0);
        let p = Arc::new(Presentation::new(m).unwrap());
        let x = p.element(vec![IntPoly::from_i64(0, a), IntPoly::from_i64(0, b)]).unwrap();
        let y = p.element(vec![IntPoly::from_i64(0, c), IntPoly::from_i64(0, 0)]).unwrap();
        let cm = p.compactify(1, DEFAULT_CAP).unwrap();
        let oracle = cm.normal_form(x.rep()).unwrap() == cm.normal_form(y.rep()).unwrap();
        prop_assert_eq!(elements_equal(&x, &y).unwrap(), oracle);
    }

    #[test]
    fn equality_survives_compactification((p, _) in presentation(), seed in prop::collection::vec(-3i64..=3, 4), ell in 1i64..=2) {
        let p = Arc::new(p);
        let d = p.dim();
        let x: Vec<IntPoly> = (0..p.n()).map(|i| IntPoly::from_i64(d, seed[i])).collect();
        let v: Vec<IntPoly> = (0..p.n()).map(|i| IntPoly::from_i64(d, seed[2 + i])).collect();
        let shifted: Vec<IntPoly> = x.iter().zip(p.apply(&v)).map(|(a, b)| a.add(&b)).collect();
        let ex = p.element(x.clone()).unwrap();
        let ey = p.element(shifted.clone()).unwrap();
        prop_assert!(elements_equal(&ex, &ey).unwrap());
        let cm = p.compactify(ell, DEFAULT_CAP).unwrap();
        prop_assert_eq!(cm.normal_form(&x).unwrap(), cm.normal_form(&shifted).unwrap());
    }
}
