//! (R,S)-modules presented as cokernels of square matrices.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::intlin::{smith_invariants, Lattice};
use crate::ring::{IntMatrix, IntPoly, Monomial, TorsionPoly};
use crate::torus::{check_cap, Torus, DEFAULT_CAP};

/// `M = coker(∂: R^n → R^n)` with `det ∂ = ±x^m · k0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    boundary: IntMatrix,
    adjugate: IntMatrix,
    k0: BigInt,
    /// `det ∂ = unit_sign · x^unit_mono · k0`.
    unit_sign: BigInt,
    unit_mono: Monomial,
}

impl Presentation {
    pub fn new(boundary: IntMatrix) -> Result<Self> {
        let (det, adjugate) = boundary.det_adjugate()?;
        if det.is_zero() {
            return Err(Error::ZeroDeterminant);
        }
        let (c, m) = det.as_single_term().ok_or_else(|| Error::NonUnitMonomialFactor(det.to_string()))?;
        Ok(Presentation { boundary, adjugate, k0: c.abs(), unit_sign: c.signum(), unit_mono: m })
    }

    /// Presentation of the zero module.
    pub fn empty(dim: usize) -> Self {
        Presentation::new(IntMatrix::zeros(0, 0, dim)).expect("empty presentation")
    }

    /// `coker(k · I_n)`.
    pub fn scalar(dim: usize, n: usize, k: i64) -> Result<Self> {
        Presentation::new(IntMatrix::identity(n, dim).scale_poly(&IntPoly::from_i64(dim, k)))
    }

    pub fn boundary(&self) -> &IntMatrix {
        &self.boundary
    }

    pub fn adjugate(&self) -> &IntMatrix {
        &self.adjugate
    }

    pub fn n(&self) -> usize {
        self.boundary.rows()
    }

    pub fn dim(&self) -> usize {
        self.boundary.dim()
    }

    /// Positive integer representative of the class of `det ∂`.
    pub fn k0(&self) -> &BigInt {
        &self.k0
    }

    pub fn det(&self) -> IntPoly {
        IntPoly::monomial(self.unit_mono.clone(), &self.unit_sign * &self.k0)
    }

    /// The unique `y` with `∂ y = k0 · x`; this is `u^{-1} adj(∂) x` for the unit `u`.
    pub fn scaled_preimage(&self, x: &[IntPoly]) -> Vec<IntPoly> {
        let inv = self.unit_mono.inverse();
        (0..self.n())
            .map(|i| {
                let mut acc = IntPoly::zero(self.dim());
                for (j, xj) in x.iter().enumerate() {
                    acc = acc.add(&self.adjugate.get(i, j).mul(xj));
                }
                acc.shift(&inv).scale(&self.unit_sign)
            })
            .collect()
    }

    /// `v` with `∂ v = x`, if `x` lies in the image.
    pub fn solve(&self, x: &[IntPoly]) -> Option<Vec<IntPoly>> {
        let y = self.scaled_preimage(x);
        y.iter()
            .map(|p| {
                let mut out = Vec::new();
                for (m, c) in p.terms() {
                    let (q, r) = c.div_rem(&self.k0);
                    if !r.is_zero() {
                        return None;
                    }
                    out.push((m.clone(), q));
                }
                Some(IntPoly::from_terms(self.dim(), out))
            })
            .collect()
    }

    pub fn apply(&self, v: &[IntPoly]) -> Vec<IntPoly> {
        (0..self.n())
            .map(|i| {
                let mut acc = IntPoly::zero(self.dim());
                for (j, vj) in v.iter().enumerate() {
                    acc = acc.add(&self.boundary.get(i, j).mul(vj));
                }
                acc
            })
            .collect()
    }

    pub fn element(self: &Arc<Self>, rep: Vec<IntPoly>) -> Result<ModuleElement> {
        if rep.len() != self.n() {
            return Err(Error::ShapeMismatch(format!("element of length {} for n = {}", rep.len(), self.n())));
        }
        if let Some(p) = rep.iter().find(|p| p.dim() != self.dim()) {
            return Err(Error::DimensionMismatch { left: self.dim(), right: p.dim() });
        }
        Ok(ModuleElement { owner: Arc::clone(self), rep })
    }

    /// Conjugate-transpose presentation of `M^∨`.
    pub fn s_dual(&self) -> Presentation {
        Presentation::new(self.boundary.conj_transpose()).expect("dual of a valid presentation is valid")
    }

    pub fn direct_sum(&self, other: &Presentation) -> Result<Presentation> {
        Presentation::new(self.boundary.block_diag(&other.boundary)?)
    }

    /// Finite group `M_ℓ = M ⊗ R_ℓ`, refusing matrices above `cap`.
    pub fn compactify(&self, ell: i64, cap: usize) -> Result<CompactModule> {
        let torus = Torus::new(self.dim(), ell)?;
        let size = self.n().saturating_mul(torus.volume());
        check_cap("compactified matrix", size, cap)?;
        let rel = torus.regular_matrix(self.n(), self.n(), |i, k| self.boundary.get(i, k).clone())?;
        // columns of the regular matrix are the relation vectors
        let gens: Vec<Vec<BigInt>> =
            (0..size).map(|col| (0..size).map(|row| BigInt::from(rel[row][col])).collect()).collect();
        let lattice = if size == 0 { Lattice::scaled_standard(0, 1) } else { Lattice::from_generators(size, &gens)? };
        Ok(CompactModule { torus, n: self.n(), relations: rel, lattice })
    }

    /// `|M_ℓ|`, checked against `k0^(ℓ^d)`.
    pub fn count_elements(&self, ell: i64, cap: usize) -> Result<BigInt> {
        let c = self.compactify(ell, cap)?;
        let order = c.lattice.index();
        let expected = num_traits::pow(self.k0.clone(), c.torus.volume());
        if order != expected {
            return Err(Error::CountMismatch { counted: order.to_string(), expected: expected.to_string() });
        }
        Ok(order)
    }
}

/// Element of `coker ∂` given by a representative vector.
#[derive(Clone, Debug)]
pub struct ModuleElement {
    owner: Arc<Presentation>,
    rep: Vec<IntPoly>,
}

/// Element of `M^∨`, represented in the dual presentation.
pub type DualElement = ModuleElement;

impl ModuleElement {
    pub fn owner(&self) -> &Arc<Presentation> {
        &self.owner
    }

    pub fn rep(&self) -> &[IntPoly] {
        &self.rep
    }

    fn check_owner(&self, other: &ModuleElement) -> Result<()> {
        if Arc::ptr_eq(&self.owner, &other.owner) || self.owner == other.owner {
            Ok(())
        } else {
            Err(Error::OwnerMismatch)
        }
    }

    pub fn add(&self, other: &ModuleElement) -> Result<ModuleElement> {
        self.check_owner(other)?;
        let rep = self.rep.iter().zip(&other.rep).map(|(a, b)| a.add(b)).collect();
        Ok(ModuleElement { owner: Arc::clone(&self.owner), rep })
    }

    pub fn neg(&self) -> ModuleElement {
        ModuleElement { owner: Arc::clone(&self.owner), rep: self.rep.iter().map(IntPoly::neg).collect() }
    }

    /// `r · x`.
    pub fn scale(&self, r: &IntPoly) -> ModuleElement {
        ModuleElement { owner: Arc::clone(&self.owner), rep: self.rep.iter().map(|p| p.mul(r)).collect() }
    }
}

/// Whether `x - y` lies in the image of `∂`.
pub fn elements_equal(x: &ModuleElement, y: &ModuleElement) -> Result<bool> {
    x.check_owner(y)?;
    let diff: Vec<IntPoly> = x.rep.iter().zip(&y.rep).map(|(a, b)| a.sub(b)).collect();
    Ok(x.owner.solve(&diff).is_some())
}

/// `f(x) = Σ conj(f_i) y_i / k0 mod R` where `∂ y = k0 x`.
///
/// The value is `R`-linear in `x` and conjugate-linear in `f`.
pub fn dual_pairing(f: &DualElement, x: &ModuleElement) -> Result<TorsionPoly> {
    if f.owner.boundary != x.owner.boundary.conj_transpose() {
        return Err(Error::OwnerMismatch);
    }
    let p = &x.owner;
    let y = p.scaled_preimage(&x.rep);
    let mut acc = IntPoly::zero(p.dim());
    for (fi, yi) in f.rep.iter().zip(&y) {
        acc = acc.add(&fi.involution().mul(yi));
    }
    let s = BigRational::from_integer(p.k0.clone()).recip();
    Ok(acc.to_rational().scale_rational(&s).to_torsion())
}

/// Compactified module: `Z^N / L` with `N = n ℓ^d` and `L` spanned by the relation columns.
#[derive(Clone, Debug)]
pub struct CompactModule {
    pub torus: Torus,
    pub n: usize,
    /// `N x N` regular matrix of `∂`; its columns span `L`.
    pub relations: Vec<Vec<i64>>,
    pub lattice: Lattice,
}

impl CompactModule {
    pub fn size(&self) -> usize {
        self.n * self.torus.volume()
    }

    pub fn group(&self) -> FiniteGroupPresentation {
        FiniteGroupPresentation::from_relations(self.relations.clone(), self.size())
    }

    pub fn flatten(&self, rep: &[IntPoly]) -> Result<Vec<i64>> {
        self.torus.flatten(rep)
    }

    /// Canonical reduced representative of an element.
    pub fn normal_form(&self, rep: &[IntPoly]) -> Result<Vec<i64>> {
        Ok(self.lattice.reduce(&self.flatten(rep)?))
    }
}

/// Finite abelian group with its relation matrix and Smith data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupPresentation {
    pub relations: Vec<Vec<i64>>,
    pub invariant_factors: Vec<BigInt>,
    pub order: BigInt,
}

impl FiniteGroupPresentation {
    /// Cokernel of the `rows x cols` integer matrix (relations are its columns).
    pub fn from_relations(relations: Vec<Vec<i64>>, cols: usize) -> Self {
        let big: Vec<Vec<BigInt>> = (0..cols)
            .map(|c| relations.iter().map(|r| BigInt::from(r[c])).collect())
            .collect();
        let nrows = relations.len();
        let invariant_factors = if cols == 0 || nrows == 0 {
            vec![BigInt::zero(); nrows]
        } else {
            smith_invariants(&big, nrows)
        };
        let order = if invariant_factors.iter().any(Zero::is_zero) {
            BigInt::zero()
        } else {
            invariant_factors.iter().product()
        };
        FiniteGroupPresentation { relations, invariant_factors, order }
    }

    /// `Z/m_1 ⊕ ... ⊕ Z/m_k`.
    pub fn cyclic(orders: &[i64]) -> Self {
        let k = orders.len();
        let relations =
            (0..k).map(|i| (0..k).map(|j| if i == j { orders[i] } else { 0 }).collect()).collect();
        Self::from_relations(relations, k)
    }

    pub fn is_finite(&self) -> bool {
        !self.order.is_zero()
    }
}

/// `Ext^i_{Z/n}(M, Z/n)` for `i = 1, 2`, each returned as invariant factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtReport {
    pub n: BigInt,
    pub ext: Vec<(usize, Vec<BigInt>)>,
    pub all_vanish: bool,
}

/// Ext over `Z/n` from the 2-periodic resolution `... → Z/n --m--> Z/n --n/m--> Z/n --m--> Z/n → Z/m`.
pub fn ext_charges_d0(g: &FiniteGroupPresentation, n: &BigInt) -> Result<ExtReport> {
    if !g.is_finite() || n.is_zero() || g.invariant_factors.iter().any(|m| !n.is_multiple_of(m)) {
        return Err(Error::NotAnnihilating(n.to_string()));
    }
    let n = n.abs();
    // on Z/n, |ker(×a)| = gcd(a, n) and |im(×a)| = n / gcd(a, n)
    let ker = |a: &BigInt| a.gcd(&n);
    let im = |a: &BigInt| &n / a.gcd(&n);
    let mut ext = Vec::new();
    for i in 1..=2usize {
        let mut factors = Vec::new();
        for m in &g.invariant_factors {
            let other = &n / m;
            // cochain maps alternate ×m, ×(n/m), ×m, ...; degree i sits between map i and map i+1
            let (incoming, outgoing) = if i % 2 == 1 { (m, &other) } else { (&other, m) };
            let order = ker(outgoing) / im(incoming);
            if !order.is_one() {
                factors.push(order);
            }
        }
        factors.sort();
        ext.push((i, factors));
    }
    let all_vanish = ext.iter().all(|(_, f)| f.is_empty());
    Ok(ExtReport { n, ext, all_vanish })
}

/// Default-cap wrapper used by tests and the CLI.
pub fn compactify(p: &Presentation, ell: i64) -> Result<FiniteGroupPresentation> {
    Ok(p.compactify(ell, DEFAULT_CAP)?.group())
}
