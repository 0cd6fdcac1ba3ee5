use invcode_core::corpus;
use invcode_core::formations::{
    annihilator_finite, condense, invariants, invertibility_check, is_isotropic, CondenseRoute, InvertibilityStatus,
    Submodule, Witness,
};
use invcode_core::ring::IntPoly;
use invcode_core::torus::DEFAULT_CAP;
use invcode_core::Error;
use num_bigint::BigInt;

fn d0(entries: &[&[i64]]) -> Submodule {
    let gens = entries.iter().map(|v| v.iter().map(|&c| IntPoly::from_i64(0, c)).collect()).collect();
    Submodule::new(entries[0].len(), 0, gens).unwrap()
}

#[test]
fn isotropy_examples() {
    let toric = corpus::toric();
    assert!(is_isotropic(toric.form(), toric.f()).unwrap());
    let h = corpus::hyperbolic(0, 2, 1);
    assert!(is_isotropic(&h, &Submodule::coordinate(2, 0, 0..1)).unwrap());
    // X and Z on the same qubit do not commute
    assert!(!is_isotropic(&h, &d0(&[&[1, 0], &[0, 1]])).unwrap());
}

#[test]
fn toric_degeneracy_and_witness() {
    let toric = corpus::toric();
    assert_eq!(toric.defect_order(2, DEFAULT_CAP).unwrap(), BigInt::from(16));
    assert_eq!(toric.degeneracy(2, DEFAULT_CAP).unwrap(), BigInt::from(4));
    assert_eq!(toric.degeneracy(3, DEFAULT_CAP).unwrap(), BigInt::from(4));
    let verdict = invertibility_check(&toric, &[1, 2, 3], DEFAULT_CAP).unwrap();
    match verdict.status {
        InvertibilityStatus::Falsified(Witness::Annihilator { ell, element, .. }) => {
            // ℓ = 1 already leaves two logical qubits
            assert_eq!(ell, 1);
            assert!(element.iter().any(|&c| c != 0));
        }
        other => panic!("unexpected verdict {other:?}"),
    }
    let verdict = invertibility_check(&toric, &[2], DEFAULT_CAP).unwrap();
    assert!(matches!(verdict.status, InvertibilityStatus::Falsified(Witness::Annihilator { ell: 2, .. })));
}

#[test]
fn invertible_corpus() {
    for fm in [corpus::product(1, 2, 1), corpus::dual_product(1, 2, 1), corpus::cluster_like(), corpus::product(2, 3, 1)] {
        for ell in 1..=3 {
            assert_eq!(fm.degeneracy(ell, DEFAULT_CAP).unwrap(), BigInt::from(1));
        }
        let v = invertibility_check(&fm, &[1, 2, 3], DEFAULT_CAP).unwrap();
        assert_eq!(v.status, InvertibilityStatus::PassedFiniteChecks);
    }
    let v = invertibility_check(&corpus::product(0, 2, 1), &[], DEFAULT_CAP).unwrap();
    assert_eq!(v.status, InvertibilityStatus::CertifiedInvertible);
    let v = invertibility_check(&corpus::dual_product(0, 3, 2), &[], DEFAULT_CAP).unwrap();
    assert_eq!(v.status, InvertibilityStatus::CertifiedInvertible);
}

#[test]
fn annihilators() {
    let h = corpus::hyperbolic(0, 2, 1);
    let m = Submodule::coordinate(2, 0, 0..1);
    assert_eq!(annihilator_finite(&h, &m, 1, DEFAULT_CAP).unwrap(), vec![vec![1, 0]]);
    let zero = Submodule::new(2, 0, vec![]).unwrap();
    assert_eq!(annihilator_finite(&h, &zero, 1, DEFAULT_CAP).unwrap().len(), 2);
}

#[test]
fn stacking_multiplies_degeneracy() {
    let toric = corpus::toric();
    let both = toric.stack(&corpus::product(2, 2, 1)).unwrap();
    assert_eq!(both.degeneracy(2, DEFAULT_CAP).unwrap(), BigInt::from(4));
    let twice = toric.stack(&toric).unwrap();
    assert_eq!(twice.degeneracy(2, DEFAULT_CAP).unwrap(), BigInt::from(16));
}

#[test]
fn swap_relation() {
    let a = corpus::dual_product(0, 2, 1);
    let b = a.reversed().unwrap();
    let c = a.swap_compose(&b).unwrap();
    assert_eq!(c.f(), a.m());
    assert!(matches!(a.swap_compose(&a), Err(Error::MiddleLagrangianMismatch)));
}

#[test]
fn condensation_routes() {
    let lags = corpus::z4_lagrangians();
    let doubled = &lags[6];
    let k = d0(&[&[2, 0]]);
    // M = <(0, 1)> meets K trivially
    let fm = corpus::z4_formation(&lags[1], doubled).unwrap();
    let c = condense(&fm, &k, None).unwrap();
    assert_eq!(c.route, CondenseRoute::Transverse);
    assert_eq!(c.formation.form().carrier().k0(), &BigInt::from(4));
    assert_eq!(c.formation.degeneracy(1, DEFAULT_CAP).unwrap(), BigInt::from(1));
    // the condensed form is H^-(Z/2): the two new generators pair to 1/2
    let form = c.formation.form();
    let basis = form.basis();
    let phase = form.commutator_phase(&basis[0], &basis[1]).unwrap();
    assert_eq!(phase.to_string(), "1/2");
    assert!(c.formation.form().nonsingular_check(&[], DEFAULT_CAP).is_ok());

    // K ⊆ M = <(1, 0)> but K^⊥ + F is not everything
    let fm = corpus::z4_formation(&lags[0], doubled).unwrap();
    assert!(matches!(condense(&fm, &k, None), Err(Error::SideConditionFailed(_))));
    let fm = corpus::z4_formation(&lags[0], &lags[2]).unwrap();
    assert!(matches!(condense(&fm, &k, None), Err(Error::NotSublagrangian(_))));

    // K = F collapses everything
    let fm = corpus::z4_formation(&lags[1], &lags[0]).unwrap();
    let c = condense(&fm, &lags[0], None).unwrap();
    assert_eq!(c.formation.form().carrier().k0(), &BigInt::from(1));
    assert_eq!(invariants(&c.formation).unwrap(), invariants(&fm).unwrap());
}

#[test]
fn condensation_inside_m() {
    // K ⊆ F forces F ⊆ K^⊥, so P = K^⊥ + F only holds for K = 0
    let lags = corpus::z4_lagrangians();
    let fm = corpus::z4_formation(&lags[0], &lags[3]).unwrap();
    let k = d0(&[&[2, 0]]);
    assert!(matches!(condense(&fm, &k, Some(CondenseRoute::InsideM)), Err(Error::SideConditionFailed(_))));
    let zero = Submodule::new(2, 0, vec![]).unwrap();
    let c = condense(&fm, &zero, Some(CondenseRoute::InsideM)).unwrap();
    assert_eq!(c.route, CondenseRoute::InsideM);
    assert_eq!(c.formation.form().carrier().k0(), &BigInt::from(16));
    assert_eq!(invariants(&c.formation).unwrap(), invariants(&fm).unwrap());
}

#[test]
fn maslov_relation_on_z4_corpus() {
    let lags = corpus::z4_lagrangians();
    for m in &lags {
        for f in &lags {
            for g in &lags {
                let a = corpus::z4_formation(m, f).unwrap();
                let b = corpus::z4_formation(f, g).unwrap();
                let lhs = a.stack(&b).unwrap();
                let rhs = a.swap_compose(&b).unwrap();
                assert_eq!(invariants(&lhs).unwrap(), invariants(&rhs).unwrap());
            }
        }
    }
}
