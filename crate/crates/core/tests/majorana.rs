use invcode_core::majorana::{
    all_strings, is_majorana_code, kappa, majorana_mul, modified_commutator, modified_commutator_mismatches, parity,
    MajoranaString, OddFormF2,
};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type M = DMatrix<Complex64>;

fn kron(a: &M, b: &M) -> M {
    a.kronecker(b)
}

fn pauli() -> (M, M, M, M) {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let i = M::identity(2, 2);
    let x = M::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]);
    let y = M::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]);
    let z = M::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)]);
    (i, x, y, z)
}

/// Jordan-Wigner Majorana matrices and the grading operator on `2^n` dimensions.
fn jordan_wigner(n: usize) -> (Vec<M>, M) {
    let (i, x, y, z) = pauli();
    let mut chis = Vec::new();
    for k in 0..n {
        for last in [&x, &y] {
            let mut m = M::identity(1, 1);
            for j in 0..n {
                let f = if j < k { &z } else if j == k { last } else { &i };
                m = kron(&m, f);
            }
            chis.push(m);
        }
    }
    let mut p = M::identity(1, 1);
    for _ in 0..n {
        p = kron(&p, &z);
    }
    (chis, p)
}

fn matrix(s: &MajoranaString, chis: &[M]) -> M {
    let dim = chis[0].nrows();
    let mut m = M::identity(dim, dim);
    for (b, chi) in s.bits.iter().zip(chis) {
        if *b == 1 {
            m *= chi;
        }
    }
    m * Complex64::from_polar(1.0, std::f64::consts::PI * s.phase as f64 / 4.0)
}

fn diff(a: &M, b: &M) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

#[test]
fn products_match_matrices() {
    for n in 1..=2 {
        let (chis, _) = jordan_wigner(n);
        for x in all_strings(n) {
            for y in all_strings(n) {
                let a = MajoranaString::new(x.clone(), 1).unwrap();
                let b = MajoranaString::new(y, 2).unwrap();
                let ab = majorana_mul(&a, &b).unwrap();
                assert!(diff(&(matrix(&a, &chis) * matrix(&b, &chis)), &matrix(&ab, &chis)) < 1e-12);
            }
        }
    }
}

#[test]
fn basic_relations() {
    let c1 = MajoranaString::chi(2, 1);
    let c2 = MajoranaString::chi(2, 2);
    assert_eq!(majorana_mul(&c1, &c1).unwrap(), MajoranaString::identity(2));
    let a = majorana_mul(&c1, &c2).unwrap();
    let b = majorana_mul(&c2, &c1).unwrap();
    assert_eq!(a.bits, b.bits);
    assert_eq!((a.phase + 8 - b.phase) % 8, 4);
    let sq = majorana_mul(&a, &a).unwrap();
    assert_eq!(sq, MajoranaString { bits: vec![0; 4], phase: 4 });
}

#[test]
fn associativity() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..500 {
        let n = rng.gen_range(1..5);
        let mut s = || MajoranaString::new((0..2 * n).map(|_| rng.gen_range(0..2)).collect(), rng.gen_range(0..8)).unwrap();
        let (a, b, c) = (s(), s(), s());
        let left = majorana_mul(&majorana_mul(&a, &b).unwrap(), &c).unwrap();
        let right = majorana_mul(&a, &majorana_mul(&b, &c).unwrap()).unwrap();
        assert_eq!(left, right);
    }
}

#[test]
fn kappa_is_the_commutator() {
    for n in 1..=2 {
        let (chis, _) = jordan_wigner(n);
        for x in all_strings(n) {
            for y in all_strings(n) {
                let a = matrix(&MajoranaString::new(x.clone(), 0).unwrap(), &chis);
                let b = matrix(&MajoranaString::new(y.clone(), 0).unwrap(), &chis);
                let sign = if kappa(&x, &y).unwrap().to_string() == "0" { 1.0 } else { -1.0 };
                assert!(diff(&(&a * &b), &(&b * &a * Complex64::new(sign, 0.0))) < 1e-12);
            }
        }
    }
    assert_eq!(kappa(&[1, 0, 0, 0], &[0, 1, 0, 0]).unwrap().to_string(), "1/2");
    assert_eq!(kappa(&[1, 1, 0, 0], &[0, 0, 1, 1]).unwrap().to_string(), "0");
}

#[test]
fn parity_matches_grading() {
    for n in 1..=2 {
        let f = OddFormF2::new(n);
        let (chis, p) = jordan_wigner(n);
        for x in all_strings(n) {
            let m = matrix(&MajoranaString::new(x.clone(), 0).unwrap(), &chis);
            let sign = if parity(&f, &x).unwrap().to_string() == "0" { 1.0 } else { -1.0 };
            assert!(diff(&(&p * &m * &p), &(m * Complex64::new(sign, 0.0))) < 1e-12);
        }
    }
}

#[test]
fn c_is_a_homomorphism() {
    for n in 1..=2 {
        let f = OddFormF2::new(n);
        for x in all_strings(n) {
            for y in all_strings(n) {
                let s: Vec<u8> = x.iter().zip(&y).map(|(a, b)| a ^ b).collect();
                let lhs = f.c(&s).unwrap();
                let rhs = invcode_core::ring::Mod1::new(f.c(&x).unwrap().value() + f.c(&y).unwrap().value());
                assert_eq!(lhs, rhs);
                // ĉ represents c
                assert_eq!(f.b(&f.c_hat(), &x).unwrap(), f.c(&x).unwrap());
            }
        }
    }
}

#[test]
fn modified_commutator_against_kappa() {
    let f = OddFormF2::new(1);
    assert_eq!(modified_commutator(&f, &[1, 0], &[0, 1]).unwrap(), kappa(&[1, 0], &[0, 1]).unwrap());
    // taken literally, y = 0 gives b(x, ĉ) = c(x), which is 1/2 for x = e_2
    assert_eq!(modified_commutator(&f, &[0, 1], &[0, 0]).unwrap().to_string(), "1/2");
    assert_eq!(modified_commutator(&f, &[0, 0], &[1, 1]).unwrap().to_string(), "0");
    assert!(!modified_commutator_mismatches(1).is_empty());
}

#[test]
fn code_verdicts() {
    assert!(is_majorana_code(&[vec![1, 1, 0, 0], vec![0, 0, 1, 1]]).unwrap().is_code);
    let r = is_majorana_code(&[vec![1, 0, 0, 0]]).unwrap();
    assert!(!r.is_code && r.odd_generators == vec![0]);
    let r = is_majorana_code(&[vec![1, 1, 0, 0], vec![0, 1, 1, 0]]).unwrap();
    assert!(!r.is_code && r.anticommuting_pairs == vec![(0, 1)]);
    assert!(is_majorana_code(&[vec![1, 1], vec![1, 1, 0, 0]]).is_err());
}
