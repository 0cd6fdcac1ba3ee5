//! ε-hermitian linking forms stored as rational Gram matrices on representatives.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::intlin::Lattice;
use crate::modules::{CompactModule, ModuleElement, Presentation};
use crate::ring::{IntPoly, LaurentPoly, Mod1, Monomial, RatMatrix, RatPoly, TorsionPoly};

/// `λ̂(x, y) = conj(x)^T G y mod R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkingForm {
    carrier: Arc<Presentation>,
    gram: RatMatrix,
    epsilon: i8,
}

fn check_epsilon(epsilon: i8) -> Result<()> {
    if epsilon == 1 || epsilon == -1 {
        Ok(())
    } else {
        Err(Error::NotHermitian(format!("epsilon must be +1 or -1, got {epsilon}")))
    }
}

/// Whether `b - ε b̄` has the shape `a - ε ā` for some `a ∈ R`.
pub fn in_q_epsilon(b: &RatPoly, epsilon: i8) -> bool {
    let c = if epsilon == 1 { b.sub(&b.involution()) } else { b.add(&b.involution()) };
    let Some(c) = c.to_integer() else { return false };
    // a self-conjugate c equals a + ā exactly when its constant term is even
    epsilon == 1 || c.trace().is_even()
}

impl LinkingForm {
    pub fn new(carrier: Arc<Presentation>, gram: RatMatrix, epsilon: i8) -> Result<Self> {
        check_epsilon(epsilon)?;
        let n = carrier.n();
        if gram.rows() != n || gram.cols() != n {
            return Err(Error::ShapeMismatch(format!("gram is {}x{}, carrier has n = {n}", gram.rows(), gram.cols())));
        }
        if gram.dim() != carrier.dim() {
            return Err(Error::DimensionMismatch { left: carrier.dim(), right: gram.dim() });
        }
        let d = carrier.boundary().to_rational();
        if !gram.mul(&d).is_integral() {
            return Err(Error::IllDefined("gram * boundary is not integral".into()));
        }
        if !d.conj_transpose().mul(&gram).is_integral() {
            return Err(Error::IllDefined("boundary* * gram is not integral".into()));
        }
        let eps = BigRational::from_integer(BigInt::from(epsilon));
        let defect = gram.conj_transpose().sub(&gram.scale_rational(&eps))?;
        if !defect.is_integral() {
            return Err(Error::NotHermitian("gram* - epsilon * gram is not integral".into()));
        }
        Ok(LinkingForm { carrier, gram, epsilon })
    }

    /// `H^ε(M)` on `M ⊕ M^∨`; the first `n` coordinates carry `M`.
    pub fn standard(m: &Presentation, epsilon: i8) -> Result<Self> {
        check_epsilon(epsilon)?;
        let n = m.n();
        let dim = m.dim();
        let carrier = Arc::new(m.direct_sum(&m.s_dual())?);
        let a = m.adjugate().to_rational().map(|e| {
            // adj / det with det = ±x^m k0
            let det = m.det();
            let (c, mono) = det.as_single_term().expect("valid presentation");
            e.shift(&mono.inverse()).scale_rational(&BigRational::new(BigInt::one(), c))
        });
        let a_star = a.conj_transpose().scale_rational(&BigRational::from_integer(BigInt::from(epsilon)));
        let gram = RatMatrix::from_fn(2 * n, 2 * n, dim, |i, j| {
            if i < n && j >= n {
                a_star.get(i, j - n).clone()
            } else if i >= n && j < n {
                a.get(i - n, j).clone()
            } else {
                RatPoly::zero(dim)
            }
        });
        LinkingForm::new(carrier, gram, epsilon)
    }

    pub fn carrier(&self) -> &Arc<Presentation> {
        &self.carrier
    }

    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    pub fn epsilon(&self) -> i8 {
        self.epsilon
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    pub fn n(&self) -> usize {
        self.carrier.n()
    }

    /// `conj(x)^T G y` as an honest rational polynomial (a lift of `λ̂`).
    pub fn lifted_pairing(&self, x: &[IntPoly], y: &[IntPoly]) -> RatPoly {
        let mut acc = RatPoly::zero(self.dim());
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let xb = xi.involution().to_rational();
            for (j, yj) in y.iter().enumerate() {
                let g = self.gram.get(i, j);
                if g.is_zero() || yj.is_zero() {
                    continue;
                }
                acc = acc.add(&xb.mul(g).mul(&yj.to_rational()));
            }
        }
        acc
    }

    fn check_carrier(&self, x: &ModuleElement) -> Result<()> {
        if Arc::ptr_eq(&self.carrier, x.owner()) || **x.owner() == *self.carrier {
            Ok(())
        } else {
            Err(Error::OwnerMismatch)
        }
    }

    pub fn element(&self, rep: Vec<IntPoly>) -> Result<ModuleElement> {
        self.carrier.element(rep)
    }

    /// `λ̂(x, y) ∈ S^{-1}R / R`.
    pub fn eval_pairing(&self, x: &ModuleElement, y: &ModuleElement) -> Result<TorsionPoly> {
        self.check_carrier(x)?;
        self.check_carrier(y)?;
        Ok(self.lifted_pairing(x.rep(), y.rep()).to_torsion())
    }

    /// `tr λ̂(x, y)`; the operators commute up to `e^{2πi·value}`.
    pub fn commutator_phase(&self, x: &ModuleElement, y: &ModuleElement) -> Result<Mod1> {
        Ok(self.eval_pairing(x, y)?.trace())
    }

    /// Evenness tested on the given generators and their pairwise sums.
    pub fn is_even(&self, generators: &[ModuleElement]) -> Result<bool> {
        for g in generators {
            self.check_carrier(g)?;
        }
        for (i, g) in generators.iter().enumerate() {
            if !in_q_epsilon(&self.lifted_pairing(g.rep(), g.rep()), self.epsilon) {
                return Ok(false);
            }
            for h in &generators[i + 1..] {
                let s = g.add(h)?;
                if !in_q_epsilon(&self.lifted_pairing(s.rep(), s.rep()), self.epsilon) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Evenness on the standard generators `e_1, ..., e_n` of the carrier.
    pub fn is_even_on_basis(&self) -> bool {
        let gens = self.basis();
        self.is_even(&gens).expect("own carrier")
    }

    pub fn basis(&self) -> Vec<ModuleElement> {
        let (n, dim) = (self.n(), self.dim());
        (0..n)
            .map(|i| {
                let rep = (0..n).map(|j| if i == j { IntPoly::one(dim) } else { IntPoly::zero(dim) }).collect();
                self.carrier.element(rep).expect("basis vector")
            })
            .collect()
    }

    pub fn orthogonal_sum(&self, other: &LinkingForm) -> Result<LinkingForm> {
        if self.epsilon != other.epsilon {
            return Err(Error::ShapeMismatch("forms have different epsilon".into()));
        }
        let carrier = Arc::new(self.carrier.direct_sum(&other.carrier)?);
        LinkingForm::new(carrier, self.gram.block_diag(&other.gram)?, self.epsilon)
    }

    /// Same form with a Gram matrix satisfying `G* = ε G` exactly.
    ///
    /// Needs an even form when `ε = -1`, since diagonal entries must split as `a + ā`.
    pub fn exact_hermitian_lift(&self) -> Result<LinkingForm> {
        let n = self.n();
        let dim = self.dim();
        let eps = BigRational::from_integer(BigInt::from(self.epsilon));
        // E = G - ε G*, integral by hermiticity; subtract T with T - ε T* = E
        let e = self.gram.sub(&self.gram.conj_transpose().scale_rational(&eps))?;
        let mut t = RatMatrix::zeros(n, n, dim);
        for i in 0..n {
            for j in i + 1..n {
                t.set(i, j, e.get(i, j).clone());
            }
            let eii = e.get(i, i);
            let half = split_self_conjugate(eii, self.epsilon)
                .ok_or_else(|| Error::NotEven(format!("diagonal entry {i} cannot be split")))?;
            t.set(i, i, half);
        }
        let gram = self.gram.sub(&t)?;
        debug_assert!(gram.conj_transpose() == gram.scale_rational(&eps));
        LinkingForm::new(Arc::clone(&self.carrier), gram, self.epsilon)
    }

    /// Induced pairing on the `ℓ`-torus compactification.
    pub fn compactify(&self, ell: i64, cap: usize) -> Result<CompactForm> {
        let module = self.carrier.compactify(ell, cap)?;
        let torus = &module.torus;
        let v = torus.volume();
        let size = module.size();
        let mut den = BigInt::one();
        let mut tables = Vec::with_capacity(self.n() * self.n());
        for i in 0..self.n() {
            for k in 0..self.n() {
                let coeffs = torus.rational_coefficients(self.gram.get(i, k));
                for c in &coeffs {
                    den = den.lcm(c.denom());
                }
                tables.push(coeffs);
            }
        }
        let den_i = den.to_i64().ok_or(Error::Unsupported("denominator exceeds 64 bits".into()))?;
        let mut bint = vec![vec![0i64; size]; size];
        for i in 0..self.n() {
            for k in 0..self.n() {
                let table = &tables[i * self.n() + k];
                for a in 0..v {
                    for b in 0..v {
                        let c = &table[torus.difference(a, b)] * BigRational::from_integer(den.clone());
                        bint[i * v + a][k * v + b] = c
                            .to_integer()
                            .to_i64()
                            .ok_or(Error::Unsupported("pairing entry exceeds 64 bits".into()))?;
                    }
                }
            }
        }
        Ok(CompactForm { module, bint, den: den_i, epsilon: self.epsilon })
    }

    /// Nonsingularity: exact at `d = 0`, finite evidence otherwise.
    pub fn nonsingular_check(&self, ells: &[i64], cap: usize) -> Result<Nonsingularity> {
        if self.dim() == 0 {
            let c = self.compactify(1, cap)?;
            return Ok(if c.is_nonsingular() { Nonsingularity::CertifiedD0 } else { Nonsingularity::FalsifiedAt(1) });
        }
        for &ell in ells {
            if !self.compactify(ell, cap)?.is_nonsingular() {
                return Ok(Nonsingularity::FalsifiedAt(ell));
            }
        }
        Ok(Nonsingularity::PassedFiniteChecks)
    }
}

/// Splits `e` (with `ē = -ε e`) as `t - ε t̄`.
fn split_self_conjugate(e: &RatPoly, epsilon: i8) -> Option<RatPoly> {
    let dim = e.dim();
    let zero = Monomial::one(dim);
    let mut terms = Vec::new();
    for (m, c) in e.terms() {
        if *m == zero {
            if epsilon == 1 {
                // t - t̄ has no constant term
                return None;
            }
            let half = c / BigRational::from_integer(BigInt::from(2));
            if !half.is_integer() {
                return None;
            }
            terms.push((m.clone(), half));
        } else if *m > zero {
            terms.push((m.clone(), c.clone()));
        }
    }
    let t = LaurentPoly::from_terms(dim, terms);
    let eps = BigRational::from_integer(BigInt::from(epsilon));
    let back = t.sub(&t.involution().scale_rational(&eps));
    (back == *e).then_some(t)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Nonsingularity {
    CertifiedD0,
    FalsifiedAt(i64),
    PassedFiniteChecks,
}

/// A form on `P_ℓ = Z^N / L`: `β(u, v) = u^T B v` with `B = bint / den`.
#[derive(Clone, Debug)]
pub struct CompactForm {
    pub module: CompactModule,
    pub bint: Vec<Vec<i64>>,
    pub den: i64,
    pub epsilon: i8,
}

impl CompactForm {
    pub fn size(&self) -> usize {
        self.module.size()
    }

    pub fn lattice(&self) -> &Lattice {
        &self.module.lattice
    }

    /// Exact rational `u^T B v`.
    pub fn value(&self, u: &[i64], v: &[i64]) -> BigRational {
        BigRational::new(self.value_scaled(u, v), BigInt::from(self.den))
    }

    /// `den · u^T B v`.
    pub fn value_scaled(&self, u: &[i64], v: &[i64]) -> BigInt {
        let mut acc = BigInt::zero();
        for (i, &ui) in u.iter().enumerate() {
            if ui == 0 {
                continue;
            }
            let row = &self.bint[i];
            let mut s: i128 = 0;
            for (j, &vj) in v.iter().enumerate() {
                if vj != 0 {
                    s += row[j] as i128 * vj as i128;
                }
            }
            acc += BigInt::from(s) * BigInt::from(ui);
        }
        acc
    }

    pub fn value_mod1(&self, u: &[i64], v: &[i64]) -> Mod1 {
        Mod1::new(self.value(u, v))
    }

    /// `{ x : β(h, x) ∈ Z for all h in gens }`.
    pub fn annihilator(&self, gens: &[Vec<i64>]) -> Lattice {
        let n = self.size();
        let rows: Vec<Vec<i64>> = gens
            .iter()
            .map(|h| {
                (0..n)
                    .map(|j| {
                        let s: i128 = h.iter().enumerate().map(|(i, &hi)| hi as i128 * self.bint[i][j] as i128).sum();
                        s.rem_euclid(self.den as i128) as i64
                    })
                    .collect()
            })
            .collect();
        Lattice::congruence_kernel(n, &rows, self.den)
    }

    /// Radical is exactly `L`.
    pub fn is_nonsingular(&self) -> bool {
        let n = self.size();
        if n == 0 {
            return true;
        }
        let all: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        self.annihilator(&all) == *self.lattice()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{parse_int_matrix, parse_int_poly, parse_rat_matrix};
    use crate::torus::DEFAULT_CAP;

    fn pres(text: &str, dim: usize) -> Arc<Presentation> {
        Arc::new(Presentation::new(parse_int_matrix(text, dim).unwrap()).unwrap())
    }

    #[test]
    fn validation_examples() {
        let p = pres("[[2]]", 0);
        let half = parse_rat_matrix("[[1/2]]", 0).unwrap();
        assert!(LinkingForm::new(p.clone(), half.clone(), 1).is_ok());
        assert!(LinkingForm::new(p.clone(), half, -1).is_ok());
        let third = parse_rat_matrix("[[1/3]]", 0).unwrap();
        assert!(matches!(LinkingForm::new(p.clone(), third, 1), Err(Error::IllDefined(_))));
        assert!(LinkingForm::new(p.clone(), RatMatrix::zeros(1, 1, 0), -1).is_ok());
        let q = pres("[[4]]", 0);
        let g = parse_rat_matrix("[[1/4]]", 0).unwrap();
        assert!(matches!(LinkingForm::new(q, g, -1), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn standard_form_on_z2() {
        let h = LinkingForm::standard(&pres("[[2]]", 0), -1).unwrap();
        assert_eq!(h.gram(), &parse_rat_matrix("[[0, -1/2], [1/2, 0]]", 0).unwrap());
        let b = h.basis();
        assert_eq!(h.eval_pairing(&b[0], &b[1]).unwrap().trace(), Mod1::from_ratio(1, 2));
        assert_eq!(h.commutator_phase(&b[0], &b[1]).unwrap(), Mod1::from_ratio(1, 2));
        assert!(h.is_even_on_basis());
        assert_eq!(h.nonsingular_check(&[], DEFAULT_CAP).unwrap(), Nonsingularity::CertifiedD0);
        let empty = LinkingForm::standard(&Presentation::empty(0), -1).unwrap();
        assert_eq!(empty.n(), 0);
    }

    #[test]
    fn odd_form_on_z4() {
        let p = pres("[[4]]", 0);
        let g = parse_rat_matrix("[[1/2]]", 0).unwrap();
        let f = LinkingForm::new(p, g, -1).unwrap();
        // λ̂(1,1) = 1/2, and 1/2 + 1/2 = 1 is odd
        assert!(!f.is_even_on_basis());
        let zero = LinkingForm::new(pres("[[2]]", 0), RatMatrix::zeros(1, 1, 0), -1).unwrap();
        assert!(zero.is_even_on_basis());
        assert_eq!(zero.nonsingular_check(&[1], DEFAULT_CAP).unwrap(), Nonsingularity::FalsifiedAt(1));
    }

    #[test]
    fn translates_commute() {
        let h = LinkingForm::standard(&pres("[[2]]", 1), -1).unwrap();
        let x = h.element(vec![IntPoly::one(1), IntPoly::zero(1)]).unwrap();
        let far = parse_int_poly("x1^5", 1).unwrap();
        let z = h.element(vec![IntPoly::zero(1), far]).unwrap();
        assert_eq!(h.commutator_phase(&x, &z).unwrap(), Mod1::from_ratio(0, 1));
        let z0 = h.element(vec![IntPoly::zero(1), IntPoly::one(1)]).unwrap();
        assert_eq!(h.commutator_phase(&x, &z0).unwrap(), Mod1::from_ratio(1, 2));
        assert_eq!(h.nonsingular_check(&[1, 2, 3], DEFAULT_CAP).unwrap(), Nonsingularity::PassedFiniteChecks);
    }

    #[test]
    fn lift_is_exactly_antihermitian() {
        let h = LinkingForm::standard(&pres("[[2, 1 + x1], [0, 3]]", 1), -1).unwrap();
        let g = h.exact_hermitian_lift().unwrap();
        assert_eq!(g.gram().conj_transpose(), g.gram().neg());
        let diff = g.gram().sub(h.gram()).unwrap();
        assert!(diff.is_integral());
    }
}
