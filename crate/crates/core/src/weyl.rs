//! Weyl operators of a compactified even anti-hermitian form and their Schrödinger
//! representation on `l^2(M_ℓ^∨)`.
//!
//! Phases need a rational lift of `λ̂`. We use the exact antisymmetric lift `B` on
//! `Z^N` and the induced representation from `M̃ ⊂ Z^N` with the character
//! `χ(w) = e^{πi Q(w)}`, `Q(Σ c_i w_i) = Σ_{i<j} c_i c_j B(w_i, w_j)` on the Hermite
//! basis `w_i` of `M̃`. Then
//!
//! `ρ(p)|m⟩ = e^{πi [B(p, s(m)) - B(s(m'), w) + Q(w)]} |m'⟩`, `w = s(m) + p - s(m') ∈ M̃`,
//!
//! is an honest representation of `W(p_1)W(p_2) = e^{πi B(p_1,p_2)} W(p_1+p_2)` on `Z^N`.

use std::collections::HashMap;
use std::fmt;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::formations::{CompactSubmodule, Formation, Submodule};
use crate::forms::{CompactForm, LinkingForm};
use crate::intlin::Lattice;
use crate::ring::{IntPoly, Mod1, Monomial};

/// Default cap on the Hilbert-space dimension.
pub const MAX_DIM: usize = 4096;
/// Tolerance for matrix identities.
pub const MATRIX_TOL: f64 = 1e-12;
/// Tolerance for eigenvalue clustering.
pub const EIGEN_TOL: f64 = 1e-10;

/// Exponent `t` of `e^{πi t}`, kept in `[0, 2)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Phase(BigRational);

impl Phase {
    pub fn new(t: BigRational) -> Self {
        let two = BigRational::from_integer(BigInt::from(2));
        let k = (&t / &two).floor();
        Phase(t - k * two)
    }

    pub fn zero() -> Self {
        Phase(BigRational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Phase::new(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn add(&self, other: &Phase) -> Phase {
        Phase::new(&self.0 + &other.0)
    }

    pub fn neg(&self) -> Phase {
        Phase::new(-&self.0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn to_complex(&self) -> Complex64 {
        let t = self.0.to_f64().expect("finite phase");
        Complex64::from_polar(1.0, std::f64::consts::PI * t)
    }
}

impl fmt::Debug for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e^(πi·{})", self.0)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `e^{πi t} W(p)` with `p` reduced modulo the relation lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    pub phase: Phase,
    pub p: Vec<i64>,
}

/// Basis-dependent quadratic refinement `Q` of `B` on a lattice.
#[derive(Clone, Debug)]
struct Refinement {
    lattice: Lattice,
    gram: Vec<Vec<BigInt>>,
}

impl Refinement {
    fn new(form: &CompactForm, lattice: Lattice) -> Self {
        let basis = lattice.basis();
        let gram = basis
            .iter()
            .map(|u| {
                basis
                    .iter()
                    .map(|v| {
                        let b = form.value(u, v);
                        assert!(b.is_integer(), "isotropic lattice");
                        b.to_integer()
                    })
                    .collect()
            })
            .collect();
        Refinement { lattice, gram }
    }

    fn coordinates(&self, w: &[i64]) -> Vec<i64> {
        self.lattice.coordinates(w).expect("vector lies in the lattice")
    }

    fn value(&self, w: &[i64]) -> BigInt {
        let c = self.coordinates(w);
        let mut acc = BigInt::zero();
        for i in 0..c.len() {
            if c[i] == 0 {
                continue;
            }
            for j in i + 1..c.len() {
                if c[j] != 0 {
                    acc += &self.gram[i][j] * BigInt::from(c[i]) * BigInt::from(c[j]);
                }
            }
        }
        acc
    }
}

/// The Weyl group of `(P_ℓ, λ)` together with the lagrangian `M_ℓ` used for the representation.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    form: CompactForm,
    refinement: Refinement,
}

impl WeylGroup {
    pub fn new(form: &LinkingForm, m: &Submodule, ell: i64, cap: usize) -> Result<Self> {
        if form.epsilon() != -1 {
            return Err(Error::Unsupported("Weyl operators need an anti-hermitian form".into()));
        }
        let lifted = form.exact_hermitian_lift()?;
        let cs = CompactSubmodule::new(&lifted, m, ell, cap)?;
        if cs.annihilator() != cs.lattice {
            return Err(Error::NotLagrangian(format!("M is not a lagrangian at ℓ = {ell}")));
        }
        let refinement = Refinement::new(&cs.form, cs.lattice.clone());
        Ok(WeylGroup { form: cs.form, refinement })
    }

    pub fn form(&self) -> &CompactForm {
        &self.form
    }

    /// `Z^N` coordinates.
    pub fn size(&self) -> usize {
        self.form.size()
    }

    pub fn relations(&self) -> &Lattice {
        self.form.lattice()
    }

    /// Preimage `M̃` of the lagrangian.
    pub fn lagrangian(&self) -> &Lattice {
        &self.refinement.lattice
    }

    /// The lift `B(u, v)`.
    pub fn pairing(&self, u: &[i64], v: &[i64]) -> BigRational {
        self.form.value(u, v)
    }

    /// `χ(w) = e^{πi Q(w)}` for `w ∈ M̃`.
    fn chi(&self, w: &[i64]) -> BigRational {
        BigRational::from_integer(self.refinement.value(w))
    }

    /// Flattened vector of a module element on the torus.
    pub fn flatten(&self, rep: &[IntPoly]) -> Result<Vec<i64>> {
        self.form.module.flatten(rep)
    }

    /// Translate of a module element by the site `a`.
    pub fn translate(&self, rep: &[IntPoly], site: usize) -> Result<Vec<i64>> {
        let shift = Monomial(self.form.module.torus.site(site));
        let moved: Vec<IntPoly> = rep.iter().map(|p| p.shift(&shift)).collect();
        self.flatten(&moved)
    }

    /// `W(raw) = e^{πi t} W(reduced)`.
    pub fn canonical(&self, raw: &[i64]) -> (Vec<i64>, Phase) {
        let red = self.relations().reduce(raw);
        let l: Vec<i64> = raw.iter().zip(&red).map(|(a, b)| a - b).collect();
        if l.iter().all(|&c| c == 0) {
            return (red, Phase::zero());
        }
        // W(red) W(l) = e^{πi B(red, l)} W(raw) and W(l) = χ(l)
        let t = self.chi(&l) - self.pairing(&red, &l);
        (red, Phase::new(t))
    }

    pub fn element(&self, phase: Phase, raw: &[i64]) -> WeylElement {
        let (p, carry) = self.canonical(raw);
        WeylElement { phase: phase.add(&carry), p }
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement { phase: Phase::zero(), p: vec![0; self.size()] }
    }

    /// `W(p_1) W(p_2) = e^{πi B(p_1, p_2)} W(p_1 + p_2)`, followed by reduction.
    pub fn mul(&self, a: &WeylElement, b: &WeylElement) -> Result<WeylElement> {
        if a.p.len() != self.size() || b.p.len() != self.size() {
            return Err(Error::DimensionMismatch { left: a.p.len().max(b.p.len()), right: self.size() });
        }
        let raw: Vec<i64> = a.p.iter().zip(&b.p).map(|(x, y)| x + y).collect();
        let phase = a.phase.add(&b.phase).add(&Phase::new(self.pairing(&a.p, &b.p)));
        Ok(self.element(phase, &raw))
    }

    /// `W(p)^* = W(-p)`, up to the phase.
    pub fn inverse(&self, a: &WeylElement) -> WeylElement {
        let raw: Vec<i64> = a.p.iter().map(|x| -x).collect();
        self.element(a.phase.neg(), &raw)
    }

    /// `W(p_1) W(p_2) = e^{2πi c} W(p_2) W(p_1)`; returns `c`.
    pub fn commutator_phase(&self, a: &WeylElement, b: &WeylElement) -> Mod1 {
        Mod1::new(self.pairing(&a.p, &b.p))
    }
}

/// Monomial matrix: column `m` is `e^{πi phase[m]} |target[m]⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOperator {
    pub target: Vec<usize>,
    pub phase: Vec<Phase>,
}

impl MonomialOperator {
    pub fn dimension(&self) -> usize {
        self.target.len()
    }

    pub fn dense(&self) -> DMatrix<Complex64> {
        let n = self.dimension();
        let mut out = DMatrix::zeros(n, n);
        for (m, (&t, ph)) in self.target.iter().zip(&self.phase).enumerate() {
            out[(t, m)] = ph.to_complex();
        }
        out
    }

    /// `self · other`.
    pub fn compose(&self, other: &MonomialOperator) -> MonomialOperator {
        let target = other.target.iter().map(|&t| self.target[t]).collect();
        let phase = other.target.iter().zip(&other.phase).map(|(&t, ph)| ph.add(&self.phase[t])).collect();
        MonomialOperator { target, phase }
    }

    pub fn is_diagonal(&self) -> bool {
        self.target.iter().enumerate().all(|(i, &t)| i == t)
    }

    pub fn scaled(&self, phase: &Phase) -> MonomialOperator {
        MonomialOperator { target: self.target.clone(), phase: self.phase.iter().map(|p| p.add(phase)).collect() }
    }
}

/// Schrödinger representation on `l^2(M_ℓ^∨)`, labels being canonical representatives of `Z^N / M̃`.
#[derive(Clone, Debug)]
pub struct SchrodingerRep {
    group: WeylGroup,
    labels: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    section: Vec<Vec<i64>>,
}

impl SchrodingerRep {
    pub fn new(group: WeylGroup, max_dim: usize) -> Result<Self> {
        let dim = group.lagrangian().index();
        if dim > BigInt::from(max_dim) {
            return Err(Error::ResourceLimit {
                what: "Hilbert-space dimension",
                size: dim.to_u128().unwrap_or(u128::MAX),
                cap: max_dim as u128,
            });
        }
        let labels: Vec<Vec<i64>> = group.lagrangian().box_elements().collect();
        let index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        let section = labels.clone();
        Ok(SchrodingerRep { group, labels, index, section })
    }

    /// Replaces the section `s` by `s + v` with `v(m) ∈ M̃`.
    pub fn with_section_shift(mut self, v: impl Fn(usize) -> Vec<i64>) -> Result<Self> {
        for (m, s) in self.section.iter_mut().enumerate() {
            let shift = v(m);
            if !self.group.lagrangian().contains(&shift) {
                return Err(Error::ShapeMismatch("section shift must lie in M".into()));
            }
            for (a, b) in s.iter_mut().zip(&shift) {
                *a += b;
            }
        }
        Ok(self)
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub fn dimension(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Vec<i64>] {
        &self.labels
    }

    pub fn label_of(&self, v: &[i64]) -> usize {
        self.index[&self.group.lagrangian().reduce(v)]
    }

    /// `ρ(p)` for a raw vector `p ∈ Z^N`.
    pub fn action(&self, p: &[i64]) -> MonomialOperator {
        let g = &self.group;
        let mut target = Vec::with_capacity(self.dimension());
        let mut phase = Vec::with_capacity(self.dimension());
        for s in &self.section {
            let x: Vec<i64> = s.iter().zip(p).map(|(a, b)| a + b).collect();
            let m2 = self.label_of(&x);
            let s2 = &self.section[m2];
            let w: Vec<i64> = x.iter().zip(s2).map(|(a, b)| a - b).collect();
            let t = g.pairing(p, s) - g.pairing(s2, &w) + g.chi(&w);
            target.push(m2);
            phase.push(Phase::new(t));
        }
        MonomialOperator { target, phase }
    }

    pub fn operator(&self, el: &WeylElement) -> MonomialOperator {
        self.action(&el.p).scaled(&el.phase)
    }

    pub fn matrix(&self, el: &WeylElement) -> DMatrix<Complex64> {
        self.operator(el).dense()
    }
}

pub fn max_abs_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn is_unitary(a: &DMatrix<Complex64>, tol: f64) -> bool {
    let n = a.nrows();
    max_abs_diff(&(a * a.adjoint()), &DMatrix::identity(n, n)) <= tol
}

/// Result of checking a separator and its flippers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatorReport {
    pub separators: usize,
    pub flippers: usize,
    pub commuting: bool,
    pub joint_spectrum_distinct: bool,
    pub flip_relations_ok: bool,
}

/// Checks that the separators commute and separate, and that flipper `j` flips only separator `j`.
pub fn verify_lfs(rep: &SchrodingerRep, separators: &[Vec<i64>], flippers: &[Vec<i64>]) -> Result<SeparatorReport> {
    let zs: Vec<DMatrix<Complex64>> = separators.iter().map(|z| rep.action(z).dense()).collect();
    let xs: Vec<DMatrix<Complex64>> = flippers.iter().map(|x| rep.action(x).dense()).collect();
    let tol = EIGEN_TOL;
    let mut commuting = true;
    for i in 0..zs.len() {
        for j in i + 1..zs.len() {
            if max_abs_diff(&(&zs[i] * &zs[j]), &(&zs[j] * &zs[i])) > tol {
                commuting = false;
            }
        }
    }
    let joint_spectrum_distinct = commuting && separates(&zs)?;
    let mut flip_relations_ok = true;
    for (i, (z, zv)) in zs.iter().zip(separators).enumerate() {
        for (j, (x, xv)) in xs.iter().zip(flippers).enumerate() {
            let c = rep.group().pairing(zv, xv);
            let frac = Mod1::new(c.clone());
            if (i == j) == frac.value().is_zero() {
                flip_relations_ok = false;
            }
            let expected = Phase::new(c * BigRational::from_integer(BigInt::from(2))).to_complex();
            if max_abs_diff(&(z * x), &((x * z) * expected)) > tol {
                flip_relations_ok = false;
            }
        }
    }
    Ok(SeparatorReport {
        separators: zs.len(),
        flippers: xs.len(),
        commuting,
        joint_spectrum_distinct,
        flip_relations_ok,
    })
}

/// Whether the joint eigenvalue tuples of commuting unitaries are pairwise distinct.
fn separates(zs: &[DMatrix<Complex64>]) -> Result<bool> {
    let Some(first) = zs.first() else { return Ok(false) };
    let n = first.nrows();
    if n == 1 {
        return Ok(true);
    }
    // a generic hermitian element of the algebra has the joint eigenbasis as its eigenbasis
    let mut h = DMatrix::<Complex64>::zeros(n, n);
    for (k, z) in zs.iter().enumerate() {
        let a = ((k as f64 + 1.0) * 0.618_033_988_749_895).fract() + 0.1;
        let b = ((k as f64 + 1.0) * 0.414_213_562_373_095).fract() + 0.1;
        let herm = z + z.adjoint();
        let anti = (z - z.adjoint()) * Complex64::new(0.0, 1.0);
        h += herm * Complex64::new(a, 0.0) + anti * Complex64::new(b, 0.0);
    }
    let eig = h.symmetric_eigen();
    let mut tuples: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for col in 0..n {
        let v = eig.eigenvectors.column(col).into_owned();
        let mut tuple = Vec::with_capacity(zs.len());
        for z in zs {
            let zv = z * &v;
            let mu = v.adjoint() * &zv;
            let mu = mu[(0, 0)];
            if (zv - &v * mu).norm() > 1e-8 {
                return Err(Error::Numerical("separators are not simultaneously diagonalised".into()));
            }
            tuple.push(mu);
        }
        tuples.push(tuple);
    }
    for i in 0..n {
        for j in i + 1..n {
            if tuples[i].iter().zip(&tuples[j]).all(|(a, b)| (a - b).norm() < 1e-6) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Stabilizer Hamiltonian `-Σ_α Σ_j (S(j e_α) + S(j e_α)^*)` on the `ℓ`-torus.
#[derive(Clone, Debug)]
pub struct StabilizerHamiltonian {
    rep: SchrodingerRep,
    /// Reduced vectors of the terms `j · e_α`.
    pub term_vectors: Vec<Vec<i64>>,
    pub terms: Vec<MonomialOperator>,
    orders: Vec<usize>,
    stabilizer: Refinement,
    /// Linear correction `θ` making the stabilizer phases trivial on the relation lattice.
    theta: Vec<BigRational>,
}

/// Builds the Hamiltonian, checking symbolically that all terms commute.
///
/// The terms are `S(f) = χ_F(f)^{-1} W̃(f)` where `χ_F` is chosen so that `f ↦ S(f)` is a
/// homomorphism on `F̃` that is trivial on the relation lattice; the stabilizer module only
/// fixes the terms up to such phases.
pub fn build_hamiltonian(fm: &Formation, ell: i64, cap: usize, max_dim: usize) -> Result<StabilizerHamiltonian> {
    let group = WeylGroup::new(fm.form(), fm.m(), ell, cap)?;
    let lifted = fm.form().exact_hermitian_lift()?;
    let fc = CompactSubmodule::new(&lifted, fm.f(), ell, cap)?;
    let rep = SchrodingerRep::new(group, max_dim)?;
    let g = rep.group();
    let volume = g.form().module.torus.volume();
    let mut term_vectors = Vec::new();
    for gen in fm.f().generators() {
        for site in 0..volume {
            term_vectors.push(g.relations().reduce(&g.translate(gen, site)?));
        }
    }
    for (i, a) in term_vectors.iter().enumerate() {
        for (j, b) in term_vectors.iter().enumerate().skip(i + 1) {
            if !g.pairing(a, b).is_integer() {
                return Err(Error::NonCommutingTerms(format!(
                    "terms {i} and {j} have commutator phase {}",
                    Mod1::new(g.pairing(a, b))
                )));
            }
        }
    }
    if !fc.annihilator().contains_lattice(&fc.lattice) {
        return Err(Error::NonCommutingTerms("F is not isotropic on the torus".into()));
    }
    let stabilizer = Refinement::new(g.form(), fc.lattice.clone());
    let theta = solve_theta(g, &stabilizer)?;
    let mut ham = StabilizerHamiltonian { rep, term_vectors, terms: vec![], orders: vec![], stabilizer, theta };
    let terms: Vec<MonomialOperator> = ham.term_vectors.iter().map(|f| ham.stabilizer_operator(f)).collect();
    let orders = ham.term_vectors.iter().map(|f| element_order(ham.rep.group().relations(), f)).collect();
    ham.terms = terms;
    ham.orders = orders;
    Ok(ham)
}

/// `θ` with `Q_F(l) + θ·c(l) ≡ Q_M(l) mod 2` on a basis of the relation lattice.
fn solve_theta(g: &WeylGroup, stab: &Refinement) -> Result<Vec<BigRational>> {
    let n = g.size();
    let rows: Vec<Vec<BigRational>> = g
        .relations()
        .basis()
        .iter()
        .map(|l| stab.coordinates(l).into_iter().map(|c| BigRational::from_integer(BigInt::from(c))).collect())
        .collect();
    let rhs: Vec<BigRational> = g
        .relations()
        .basis()
        .iter()
        .map(|l| BigRational::from_integer(g.refinement.value(l) - stab.value(l)))
        .collect();
    solve_rational(rows, rhs, n).ok_or_else(|| Error::Numerical("relation lattice is not of full rank in F".into()))
}

fn solve_rational(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>, n: usize) -> Option<Vec<BigRational>> {
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = BigRational::one() / &a[col][col];
        for k in col..n {
            a[col][k] = &a[col][k] * &inv;
        }
        b[col] = &b[col] * &inv;
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for k in col..n {
                    let v = &a[col][k] * &f;
                    a[r][k] -= v;
                }
                let v = &b[col] * &f;
                b[r] -= v;
            }
        }
    }
    Some(b)
}

fn element_order(rel: &Lattice, f: &[i64]) -> usize {
    let mut r = 1usize;
    loop {
        let v: Vec<i64> = f.iter().map(|x| x * r as i64).collect();
        if rel.contains(&v) {
            return r;
        }
        r += 1;
    }
}

impl StabilizerHamiltonian {
    pub fn rep(&self) -> &SchrodingerRep {
        &self.rep
    }

    pub fn dimension(&self) -> usize {
        self.rep.dimension()
    }

    /// `S(f)` for `f ∈ F̃`.
    pub fn stabilizer_operator(&self, f: &[i64]) -> MonomialOperator {
        let c = self.stabilizer.coordinates(f);
        let mut t = BigRational::from_integer(self.stabilizer.value(f));
        for (ci, th) in c.iter().zip(&self.theta) {
            t += th * BigRational::from_integer(BigInt::from(*ci));
        }
        self.rep.action(f).scaled(&Phase::new(-t))
    }

    pub fn matrix(&self) -> DMatrix<Complex64> {
        let n = self.dimension();
        let mut h = DMatrix::<Complex64>::zeros(n, n);
        for t in &self.terms {
            let d = t.dense();
            h -= &d + d.adjoint();
        }
        h
    }

    /// Dimension of the joint `+1` eigenspace, from the product of the spectral projectors
    /// `(1/r) Σ_{j<r} S^j` of the terms.
    pub fn ground_space_dim(&self) -> usize {
        let n = self.dimension();
        let mut proj = DMatrix::<Complex64>::identity(n, n);
        for (f, &r) in self.term_vectors.iter().zip(&self.orders) {
            let mut p = DMatrix::<Complex64>::zeros(n, n);
            for j in 0..r {
                let v: Vec<i64> = f.iter().map(|x| x * j as i64).collect();
                p += self.stabilizer_operator(&v).dense();
            }
            p /= Complex64::new(r as f64, 0.0);
            proj = proj * p;
        }
        proj.trace().re.round() as usize
    }

    /// Eigenvalues of the Hamiltonian, ascending.
    pub fn spectrum(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self.matrix().symmetric_eigen().eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    /// Lowest eigenvalue, its multiplicity, and an orthonormal basis of its eigenspace.
    pub fn ground_space(&self) -> (f64, Vec<nalgebra::DVector<Complex64>>) {
        let eig = self.matrix().symmetric_eigen();
        let min = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
        let vecs = (0..eig.eigenvalues.len())
            .filter(|&i| (eig.eigenvalues[i] - min).abs() <= EIGEN_TOL * (1.0 + min.abs()) * 10.0)
            .map(|i| eig.eigenvectors.column(i).into_owned())
            .collect();
        (min, vecs)
    }

    /// `-Σ_k 2`: the energy of a frustration-free ground state.
    pub fn frustration_free_energy(&self) -> f64 {
        -2.0 * self.terms.len() as f64
    }
}

/// Multiplicity table of a spectrum, clustering eigenvalues within `tol`.
pub fn multiplicities(spectrum: &[f64], tol: f64) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    for &e in spectrum {
        match out.last_mut() {
            Some((v, k)) if (e - *v).abs() <= tol => *k += 1,
            _ => out.push((e, 1)),
        }
    }
    out
}
