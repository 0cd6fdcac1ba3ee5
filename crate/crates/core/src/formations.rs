//! Linking formations `(P, λ; M, F)`: isotropy, annihilators, invertibility and the Witt relations.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::forms::{CompactForm, LinkingForm};
use crate::intlin::{integer_sqrt_exact, smith_invariants, Lattice, ZVec};
use crate::modules::{ext_charges_d0, FiniteGroupPresentation, Presentation};
use crate::ring::{IntMatrix, IntPoly, Monomial, RatMatrix, RatPoly};

/// Square presentations of a submodule and of the quotient by it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmoduleCertificate {
    pub submodule: Presentation,
    pub quotient: Presentation,
}

/// Submodule of the carrier spanned by representative columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Submodule {
    generators: Vec<Vec<IntPoly>>,
    certificate: Option<SubmoduleCertificate>,
}

impl Submodule {
    pub fn new(n: usize, dim: usize, generators: Vec<Vec<IntPoly>>) -> Result<Self> {
        for g in &generators {
            if g.len() != n {
                return Err(Error::ShapeMismatch(format!("generator of length {} in a carrier with n = {n}", g.len())));
            }
            if let Some(p) = g.iter().find(|p| p.dim() != dim) {
                return Err(Error::DimensionMismatch { left: dim, right: p.dim() });
            }
        }
        Ok(Submodule { generators, certificate: None })
    }

    /// Columns of an `n x k` matrix.
    pub fn from_matrix(m: &IntMatrix) -> Self {
        Submodule { generators: (0..m.cols()).map(|j| m.col(j)).collect(), certificate: None }
    }

    /// Span of the unit vectors `e_i` for `i` in `indices`.
    pub fn coordinate(n: usize, dim: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let generators = indices
            .into_iter()
            .map(|i| (0..n).map(|j| if i == j { IntPoly::one(dim) } else { IntPoly::zero(dim) }).collect())
            .collect();
        Submodule { generators, certificate: None }
    }

    pub fn with_certificate(mut self, certificate: SubmoduleCertificate) -> Self {
        self.certificate = Some(certificate);
        self
    }

    pub fn generators(&self) -> &[Vec<IntPoly>] {
        &self.generators
    }

    pub fn certificate(&self) -> Option<&SubmoduleCertificate> {
        self.certificate.as_ref()
    }

    fn padded(&self, before: usize, after: usize, dim: usize) -> Vec<Vec<IntPoly>> {
        self.generators
            .iter()
            .map(|g| {
                let mut v = vec![IntPoly::zero(dim); before];
                v.extend(g.iter().cloned());
                v.extend(std::iter::repeat_n(IntPoly::zero(dim), after));
                v
            })
            .collect()
    }

    fn direct_sum(&self, other: &Submodule, n1: usize, n2: usize, dim: usize) -> Result<Submodule> {
        let mut generators = self.padded(0, n2, dim);
        generators.extend(other.padded(n1, 0, dim));
        let certificate = match (&self.certificate, &other.certificate) {
            (Some(a), Some(b)) => Some(SubmoduleCertificate {
                submodule: a.submodule.direct_sum(&b.submodule)?,
                quotient: a.quotient.direct_sum(&b.quotient)?,
            }),
            _ => None,
        };
        Ok(Submodule { generators, certificate })
    }
}

/// `λ̂` vanishes on all pairs of generators.
pub fn is_isotropic(form: &LinkingForm, s: &Submodule) -> Result<bool> {
    Ok(isotropy_witness(form, s)?.is_none())
}

/// First generator pair `(i, j)` with `λ̂(g_i, g_j) ≠ 0`.
pub fn isotropy_witness(form: &LinkingForm, s: &Submodule) -> Result<Option<(usize, usize)>> {
    check_submodule(form, s)?;
    let gens = s.generators();
    for i in 0..gens.len() {
        for j in i..gens.len() {
            if !form.lifted_pairing(&gens[i], &gens[j]).is_integral() {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

fn check_submodule(form: &LinkingForm, s: &Submodule) -> Result<()> {
    for g in s.generators() {
        if g.len() != form.n() {
            return Err(Error::ShapeMismatch(format!("generator of length {} for n = {}", g.len(), form.n())));
        }
        if let Some(p) = g.iter().find(|p| p.dim() != form.dim()) {
            return Err(Error::DimensionMismatch { left: form.dim(), right: p.dim() });
        }
    }
    Ok(())
}

/// A form compactified on the `ℓ`-torus together with the image of a submodule.
#[derive(Clone, Debug)]
pub struct CompactSubmodule {
    pub form: CompactForm,
    /// Preimage of `S_ℓ` in `Z^N`; contains the relation lattice.
    pub lattice: Lattice,
}

impl CompactSubmodule {
    pub fn new(form: &LinkingForm, s: &Submodule, ell: i64, cap: usize) -> Result<Self> {
        check_submodule(form, s)?;
        let cf = form.compactify(ell, cap)?;
        let lattice = submodule_lattice(&cf, s)?;
        Ok(CompactSubmodule { form: cf, lattice })
    }

    /// Preimage of `S_ℓ^⊥`.
    pub fn annihilator(&self) -> Lattice {
        self.form.annihilator(self.lattice.basis())
    }

    /// `|S_ℓ|`.
    pub fn order(&self) -> BigInt {
        self.form.lattice().index() / self.lattice.index()
    }

    pub fn invariant_factors(&self) -> Vec<BigInt> {
        quotient_invariants(&self.lattice, self.form.lattice())
    }

    /// Invariant factors of `P_ℓ / S_ℓ`.
    pub fn quotient_invariant_factors(&self) -> Vec<BigInt> {
        self.lattice.invariant_factors()
    }
}

fn submodule_lattice(cf: &CompactForm, s: &Submodule) -> Result<Lattice> {
    let torus = &cf.module.torus;
    let mut vectors = Vec::with_capacity(s.generators().len() * torus.volume());
    for g in s.generators() {
        for a in 0..torus.volume() {
            let shift = Monomial(torus.site(a));
            let moved: Vec<IntPoly> = g.iter().map(|p| p.shift(&shift)).collect();
            vectors.push(torus.flatten(&moved)?);
        }
    }
    cf.lattice().extend(&vectors)
}

/// Invariant factors of `outer / inner` for lattices `inner ⊆ outer`.
pub fn quotient_invariants(outer: &Lattice, inner: &Lattice) -> Vec<BigInt> {
    let n = outer.rank();
    let rows: Vec<ZVec> = inner
        .basis()
        .iter()
        .map(|v| {
            outer
                .coordinates(v)
                .expect("inner lattice lies in outer lattice")
                .into_iter()
                .map(BigInt::from)
                .collect()
        })
        .collect();
    if n == 0 {
        return vec![];
    }
    smith_invariants(&rows, n)
}

/// Generators of `S_ℓ^⊥ ⊆ P_ℓ`, as reduced vectors of `Z^N`.
pub fn annihilator_finite(form: &LinkingForm, s: &Submodule, ell: i64, cap: usize) -> Result<Vec<Vec<i64>>> {
    let cs = CompactSubmodule::new(form, s, ell, cap)?;
    let ann = cs.annihilator();
    let rel = cs.form.lattice();
    Ok(ann
        .basis()
        .iter()
        .map(|v| rel.reduce(v))
        .filter(|v| v.iter().any(|&c| c != 0))
        .collect())
}

/// `(P, λ; M, F)` with `M` the local reference lagrangian and `F` the stabilizer module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Formation {
    form: LinkingForm,
    m: Submodule,
    f: Submodule,
}

impl Formation {
    /// Checks that `M` and `F` are isotropic and that `M` passes the lagrangian test.
    pub fn new(form: LinkingForm, m: Submodule, f: Submodule) -> Result<Self> {
        if let Some((i, j)) = isotropy_witness(&form, &m)? {
            return Err(Error::NotLagrangian(format!("M is not isotropic: λ(m_{i}, m_{j}) ≠ 0")));
        }
        if let Some((i, j)) = isotropy_witness(&form, &f)? {
            return Err(Error::NotLagrangian(format!("F is not isotropic: λ(f_{i}, f_{j}) ≠ 0")));
        }
        let fm = Formation { form, m, f };
        // the reference basis must be lagrangian at the smallest torus
        let ell = 1;
        let cs = CompactSubmodule::new(&fm.form, &fm.m, ell, usize::MAX)?;
        if cs.annihilator() != cs.lattice {
            return Err(Error::NotLagrangian(format!("M is not its own annihilator at ℓ = {ell}")));
        }
        Ok(fm)
    }

    pub fn form(&self) -> &LinkingForm {
        &self.form
    }

    pub fn m(&self) -> &Submodule {
        &self.m
    }

    pub fn f(&self) -> &Submodule {
        &self.f
    }

    pub fn dim(&self) -> usize {
        self.form.dim()
    }

    /// `|F_ℓ^⊥ / F_ℓ|`.
    pub fn defect_order(&self, ell: i64, cap: usize) -> Result<BigInt> {
        let cs = CompactSubmodule::new(&self.form, &self.f, ell, cap)?;
        let ann = cs.annihilator();
        if !ann.contains_lattice(&cs.lattice) {
            return Err(Error::NotIsotropic);
        }
        Ok(cs.lattice.index() / ann.index())
    }

    /// `sqrt |F_ℓ^⊥ / F_ℓ|`, the ground-space dimension on the `ℓ`-torus.
    pub fn degeneracy(&self, ell: i64, cap: usize) -> Result<BigInt> {
        let order = self.defect_order(ell, cap)?;
        integer_sqrt_exact(&order).ok_or_else(|| Error::NotPerfectSquare(order.to_string()))
    }

    /// `(P_1 ⊕ P_2, λ_1 ⊕ λ_2; M_1 ⊕ M_2, F_1 ⊕ F_2)`.
    pub fn stack(&self, other: &Formation) -> Result<Formation> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { left: self.dim(), right: other.dim() });
        }
        let form = self.form.orthogonal_sum(&other.form)?;
        let (n1, n2, dim) = (self.form.n(), other.form.n(), self.dim());
        Ok(Formation {
            m: self.m.direct_sum(&other.m, n1, n2, dim)?,
            f: self.f.direct_sum(&other.f, n1, n2, dim)?,
            form,
        })
    }

    /// `(P; M, F)` and `(P; F, G)` give `(P; M, G)`.
    pub fn swap_compose(&self, next: &Formation) -> Result<Formation> {
        if self.form != next.form || self.f.generators != next.m.generators {
            return Err(Error::MiddleLagrangianMismatch);
        }
        Ok(Formation { form: self.form.clone(), m: self.m.clone(), f: next.f.clone() })
    }

    /// `(P; F, M)`.
    pub fn reversed(&self) -> Result<Formation> {
        Formation::new(self.form.clone(), self.f.clone(), self.m.clone())
    }
}

/// Outcome of the invertibility pipeline.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvertibilityStatus {
    CertifiedInvertible,
    Falsified(Witness),
    PassedFiniteChecks,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Two generators of `F` that do not commute.
    NotIsotropic { i: usize, j: usize },
    /// An element of `F_ℓ^⊥` outside `F_ℓ`, as a reduced vector of `Z^{nℓ^d}`.
    Annihilator { ell: i64, element: Vec<i64>, defect_order: BigInt },
    /// A nonvanishing `Ext` group at `d = 0`.
    Ext { of: &'static str, groups: Vec<(usize, Vec<BigInt>)> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvertibilityVerdict {
    pub status: InvertibilityStatus,
    pub evidence: Vec<String>,
}

pub fn invertibility_check(fm: &Formation, ells: &[i64], cap: usize) -> Result<InvertibilityVerdict> {
    let mut evidence = Vec::new();
    let falsified = |w, evidence| Ok(InvertibilityVerdict { status: InvertibilityStatus::Falsified(w), evidence });
    if let Some((i, j)) = isotropy_witness(&fm.form, &fm.f)? {
        evidence.push(format!("F is not isotropic: λ(f_{i}, f_{j}) ≠ 0"));
        return falsified(Witness::NotIsotropic { i, j }, evidence);
    }
    evidence.push("F is isotropic".to_string());
    let ells: Vec<i64> = if fm.dim() == 0 { vec![1] } else { ells.to_vec() };
    for &ell in &ells {
        let cs = CompactSubmodule::new(&fm.form, &fm.f, ell, cap)?;
        let ann = cs.annihilator();
        if ann != cs.lattice {
            let rel = cs.form.lattice();
            let element = ann
                .basis()
                .iter()
                .find(|v| !cs.lattice.contains(v))
                .map(|v| rel.reduce(v))
                .expect("annihilator strictly larger than F");
            let defect_order = cs.lattice.index() / ann.index();
            evidence.push(format!("ℓ = {ell}: |F^⊥/F| = {defect_order}"));
            return falsified(Witness::Annihilator { ell, element, defect_order }, evidence);
        }
        evidence.push(format!("ℓ = {ell}: F^⊥ = F, degeneracy 1"));
        if let Some(cert) = fm.f.certificate() {
            check_certificate(&cs, cert, ell, cap)?;
            evidence.push(format!("ℓ = {ell}: certificate presents F_ℓ and P_ℓ/F_ℓ"));
        }
    }
    if fm.dim() == 0 {
        let cs = CompactSubmodule::new(&fm.form, &fm.f, 1, cap)?;
        let p_factors = cs.form.lattice().invariant_factors();
        let n = p_factors.last().cloned().unwrap_or_else(BigInt::one);
        for (of, factors) in [("F", cs.invariant_factors()), ("P/F", cs.quotient_invariant_factors())] {
            let small: Vec<i64> = factors.iter().map(|f| f.to_i64().expect("small factor")).collect();
            let report = ext_charges_d0(&FiniteGroupPresentation::cyclic(&small), &n)?;
            if !report.all_vanish {
                evidence.push(format!("Ext over Z/{n} of {of} does not vanish"));
                return falsified(Witness::Ext { of, groups: report.ext }, evidence);
            }
            evidence.push(format!("Ext^i over Z/{n} of {of} vanishes for i = 1, 2"));
        }
        return Ok(InvertibilityVerdict { status: InvertibilityStatus::CertifiedInvertible, evidence });
    }
    Ok(InvertibilityVerdict { status: InvertibilityStatus::PassedFiniteChecks, evidence })
}

fn check_certificate(cs: &CompactSubmodule, cert: &SubmoduleCertificate, ell: i64, cap: usize) -> Result<()> {
    let sub = cert.submodule.compactify(ell, cap)?.lattice.invariant_factors();
    let quo = cert.quotient.compactify(ell, cap)?.lattice.invariant_factors();
    if sub != cs.invariant_factors() {
        return Err(Error::InconsistentCertificate(format!("F_ℓ at ℓ = {ell} has invariant factors {:?}", cs.invariant_factors())));
    }
    if quo != cs.quotient_invariant_factors() {
        return Err(Error::InconsistentCertificate(format!(
            "P_ℓ/F_ℓ at ℓ = {ell} has invariant factors {:?}",
            cs.quotient_invariant_factors()
        )));
    }
    Ok(())
}

/// Which side conditions of the sublagrangian reduction were used.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CondenseRoute {
    /// `M ∩ K = 0` and `P = K^⊥ + M`.
    Transverse,
    /// `K ⊆ M` and `P = K^⊥ + F`.
    InsideM,
}

#[derive(Clone, Debug)]
pub struct Condensation {
    pub route: CondenseRoute,
    pub formation: Formation,
    /// Columns are the lifts in `Z^n` of the new generators `e_i` of `K^⊥/K`.
    pub basis: Vec<Vec<i64>>,
}

/// `[K^⊥/K, λ^⊥/λ; M ∩ K^⊥, F/K]` for a sublagrangian `K ⊆ F`, at `d = 0`.
///
/// With `route = None` the transverse conditions are tried first.
pub fn condense(fm: &Formation, k: &Submodule, route: Option<CondenseRoute>) -> Result<Condensation> {
    if fm.dim() != 0 {
        return Err(Error::Unsupported("condensation is implemented at d = 0 only".into()));
    }
    if isotropy_witness(&fm.form, k)?.is_some() {
        return Err(Error::NotSublagrangian("K is not isotropic".into()));
    }
    let kc = CompactSubmodule::new(&fm.form, k, 1, usize::MAX)?;
    let fc = CompactSubmodule::new(&fm.form, &fm.f, 1, usize::MAX)?;
    let mc = CompactSubmodule::new(&fm.form, &fm.m, 1, usize::MAX)?;
    if !fc.lattice.contains_lattice(&kc.lattice) {
        return Err(Error::NotSublagrangian("K is not contained in F".into()));
    }
    let k_perp = kc.annihilator();
    let rel = kc.form.lattice().clone();
    let n = rel.rank();
    let whole = Lattice::scaled_standard(n, 1);
    let transverse = || -> std::result::Result<(), String> {
        if mc.lattice.intersect(&kc.lattice) != rel {
            return Err("M ∩ K ≠ 0".into());
        }
        if k_perp.sum(&mc.lattice) != whole {
            return Err("K^⊥ + M ≠ P".into());
        }
        Ok(())
    };
    let inside_m = || -> std::result::Result<(), String> {
        if !mc.lattice.contains_lattice(&kc.lattice) {
            return Err("K is not contained in M".into());
        }
        if k_perp.sum(&fc.lattice) != whole {
            return Err("K^⊥ + F ≠ P".into());
        }
        Ok(())
    };
    let route = match route {
        Some(CondenseRoute::Transverse) => transverse().map(|_| CondenseRoute::Transverse),
        Some(CondenseRoute::InsideM) => inside_m().map(|_| CondenseRoute::InsideM),
        None => transverse()
            .map(|_| CondenseRoute::Transverse)
            .or_else(|a| inside_m().map(|_| CondenseRoute::InsideM).map_err(|b| format!("{a}; {b}"))),
    }
    .map_err(Error::SideConditionFailed)?;

    // K^⊥ / K ≅ Z^n / R where the columns of B are a basis of K^⊥ and R holds K's coordinates
    let basis: Vec<Vec<i64>> = k_perp.basis().to_vec();
    let coords = |v: &[i64]| k_perp.coordinates(v).expect("vector lies in K^⊥");
    let rcols: Vec<Vec<i64>> = kc.lattice.basis().iter().map(|v| coords(v)).collect();
    let relations: Vec<Vec<i64>> = (0..n).map(|i| rcols.iter().map(|c| c[i]).collect()).collect();
    let carrier = Arc::new(Presentation::new(IntMatrix::from_i64_rows(&relations, 0))?);
    let gram = RatMatrix::from_fn(n, n, 0, |i, j| {
        RatPoly::constant(0, kc.form.value(&basis[i], &basis[j]))
    });
    let form = LinkingForm::new(carrier, gram, fm.form.epsilon())?;
    let image = |lat: &Lattice| -> Result<Submodule> {
        let gens = lat
            .basis()
            .iter()
            .map(|v| coords(v).into_iter().map(|c| IntPoly::from_i64(0, c)).collect())
            .collect();
        Submodule::new(n, 0, gens)
    };
    let m_new = image(&mc.lattice.intersect(&k_perp))?;
    let f_new = image(&fc.lattice)?;
    Ok(Condensation { route, formation: Formation::new(form, m_new, f_new)?, basis })
}

/// Diagnostics that are compatible with the Witt relations at `d = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormationInvariants {
    pub f_lagrangian: bool,
    pub degeneracy: BigInt,
    pub ext_vanish: bool,
}

/// Invariants of a `d = 0` formation.
pub fn invariants(fm: &Formation) -> Result<FormationInvariants> {
    if fm.dim() != 0 {
        return Err(Error::Unsupported("formation invariants are computed at d = 0".into()));
    }
    let verdict = invertibility_check(fm, &[1], usize::MAX)?;
    let degeneracy = fm.degeneracy(1, usize::MAX)?;
    let ext_vanish = !matches!(verdict.status, InvertibilityStatus::Falsified(Witness::Ext { .. }));
    Ok(FormationInvariants { f_lagrangian: degeneracy.is_one(), degeneracy, ext_vanish })
}

impl FormationInvariants {
    /// Invariants of a stack: degeneracies multiply.
    pub fn combine(&self, other: &Self) -> Self {
        let degeneracy = &self.degeneracy * &other.degeneracy;
        FormationInvariants {
            f_lagrangian: degeneracy.is_one(),
            degeneracy,
            ext_vanish: self.ext_vanish && other.ext_vanish,
        }
    }
}

impl Default for FormationInvariants {
    fn default() -> Self {
        FormationInvariants { f_lagrangian: true, degeneracy: BigInt::one(), ext_vanish: true }
    }
}
