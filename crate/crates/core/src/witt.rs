//! Quadratic forms on finite abelian groups and the Witt group `W^pt`.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::cyclotomic::{factorize, sqrt_integer, Cyclotomic};
use crate::error::{Error, Result};
use crate::ring::Mod1;

/// Cap on `|D|` for Gauss sums.
pub const GAUSS_CAP: u64 = 1 << 20;
/// Default cap on `|D|` for lagrangian searches.
pub const LAGRANGIAN_CAP: u64 = 4096;

/// `q` on `D = ⊕ Z/d_i`, with `q(x) = Σ x_i^2 q_i + Σ_{i<j} x_i x_j b_ij mod 1`.
///
/// Values are stored over a common denominator `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteQuadraticForm {
    orders: Vec<u64>,
    den: u64,
    /// `N q_i mod N`.
    qn: Vec<u64>,
    /// `N b_ij mod N`, symmetric with `b_ii = 2 q_i`.
    bn: Vec<Vec<u64>>,
}

fn to_fraction(m: &Mod1) -> (u64, u64) {
    (m.numer().to_u64().expect("small numerator"), m.denom().to_u64().expect("small denominator"))
}

impl FiniteQuadraticForm {
    /// Builds a form from generator values `q_i` and the off-diagonal `b_ij` (`b[i][i]` is ignored).
    pub fn new(orders: Vec<u64>, q: Vec<Mod1>, b: Vec<Vec<Mod1>>) -> Result<Self> {
        let k = orders.len();
        if q.len() != k || b.len() != k || b.iter().any(|r| r.len() != k) {
            return Err(Error::ShapeMismatch("quadratic form data sizes differ".into()));
        }
        if orders.contains(&0) {
            return Err(Error::InvalidQuadraticForm("cyclic orders must be positive".into()));
        }
        let mut den = 1u64;
        for v in q.iter().chain(b.iter().flatten()) {
            den = den.lcm(&to_fraction(v).1);
        }
        let scale = |m: &Mod1| {
            let (p, d) = to_fraction(m);
            p * (den / d)
        };
        let qn: Vec<u64> = q.iter().map(scale).collect();
        let mut bn = vec![vec![0u64; k]; k];
        for i in 0..k {
            for j in 0..k {
                bn[i][j] = if i == j { (2 * qn[i]) % den } else { scale(&b[i][j]) };
            }
        }
        let form = FiniteQuadraticForm { orders, den, qn, bn };
        form.validate()?;
        Ok(form)
    }

    fn validate(&self) -> Result<()> {
        let k = self.orders.len();
        let n = self.den as u128;
        for i in 0..k {
            for j in 0..k {
                if self.bn[i][j] != self.bn[j][i] {
                    return Err(Error::InvalidQuadraticForm("b is not symmetric".into()));
                }
            }
            let d = self.orders[i] as u128;
            // q(x + d e_i) = q(x) needs d b_ij ∈ Z and d^2 q_i ∈ Z
            if (0..k).any(|j| !(d * self.bn[i][j] as u128).is_multiple_of(n)) {
                return Err(Error::InvalidQuadraticForm(format!("b is not defined on Z/{d}")));
            }
            if !(d * d * self.qn[i] as u128).is_multiple_of(n) {
                return Err(Error::InvalidQuadraticForm(format!("q is not defined on Z/{d}")));
            }
        }
        Ok(())
    }

    /// `q(x) = x^2 · num/den` on `Z/order`.
    pub fn cyclic(order: u64, num: i64, den: i64) -> Result<Self> {
        Self::new(vec![order], vec![Mod1::from_ratio(num, den)], vec![vec![Mod1::from_ratio(0, 1)]])
    }

    /// `q(x) = x^2/4` on `Z/2`.
    pub fn semion() -> Self {
        Self::cyclic(2, 1, 4).expect("semion")
    }

    /// `q(a, b) = ab/n` on `Z/n ⊕ Z/n`.
    pub fn hyperbolic(n: u64) -> Self {
        let zero = Mod1::from_ratio(0, 1);
        let half = Mod1::from_ratio(1, n as i64);
        Self::new(
            vec![n, n],
            vec![zero.clone(), zero.clone()],
            vec![vec![zero.clone(), half.clone()], vec![half, zero]],
        )
        .expect("hyperbolic form")
    }

    /// The form on the trivial group.
    pub fn trivial() -> Self {
        FiniteQuadraticForm { orders: vec![], den: 1, qn: vec![], bn: vec![] }
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn q_generators(&self) -> Vec<Mod1> {
        self.qn.iter().map(|&v| Mod1::from_ratio(v as i64, self.den as i64)).collect()
    }

    pub fn b_matrix(&self) -> Vec<Vec<Mod1>> {
        self.bn
            .iter()
            .map(|r| r.iter().map(|&v| Mod1::from_ratio(v as i64, self.den as i64)).collect())
            .collect()
    }

    fn rescaled(&self, den: u64) -> (Vec<u64>, Vec<Vec<u64>>) {
        let f = den / self.den;
        (self.qn.iter().map(|v| v * f).collect(), self.bn.iter().map(|r| r.iter().map(|v| v * f).collect()).collect())
    }

    pub fn orthogonal_sum(&self, other: &Self) -> Self {
        let den = self.den.lcm(&other.den);
        let (qa, ba) = self.rescaled(den);
        let (qb, bb) = other.rescaled(den);
        let (ka, kb) = (self.rank(), other.rank());
        let mut bn = vec![vec![0u64; ka + kb]; ka + kb];
        for i in 0..ka {
            bn[i][..ka].copy_from_slice(&ba[i]);
        }
        for i in 0..kb {
            bn[ka + i][ka..].copy_from_slice(&bb[i]);
        }
        let mut orders = self.orders.clone();
        orders.extend(&other.orders);
        let mut qn = qa;
        qn.extend(qb);
        FiniteQuadraticForm { orders, den, qn, bn }
    }

    /// `-q`.
    pub fn negate(&self) -> Self {
        let n = self.den;
        FiniteQuadraticForm {
            orders: self.orders.clone(),
            den: n,
            qn: self.qn.iter().map(|v| (n - v) % n).collect(),
            bn: self.bn.iter().map(|r| r.iter().map(|v| (n - v) % n).collect()).collect(),
        }
    }

    /// `q^{⊕k}`.
    pub fn copies(&self, k: usize) -> Self {
        (0..k).fold(Self::trivial(), |acc, _| acc.orthogonal_sum(self))
    }

    /// `N q(x) mod N`.
    pub fn value_scaled(&self, x: &[u64]) -> u64 {
        let n = self.den as u128;
        let mut acc: u128 = 0;
        for i in 0..x.len() {
            if x[i] == 0 {
                continue;
            }
            let xi = x[i] as u128;
            acc = (acc + xi * xi % n * self.qn[i] as u128) % n;
            for j in i + 1..x.len() {
                if x[j] != 0 {
                    acc = (acc + xi * x[j] as u128 % n * self.bn[i][j] as u128) % n;
                }
            }
        }
        acc as u64
    }

    pub fn value(&self, x: &[u64]) -> Mod1 {
        Mod1::from_ratio(self.value_scaled(x) as i64, self.den as i64)
    }

    /// `N b(x, y) mod N`.
    pub fn bilinear_scaled(&self, x: &[u64], y: &[u64]) -> u64 {
        let n = self.den as u128;
        let mut acc: u128 = 0;
        for i in 0..x.len() {
            if x[i] == 0 {
                continue;
            }
            for j in 0..y.len() {
                if y[j] != 0 {
                    acc = (acc + (x[i] as u128 * y[j] as u128) % n * self.bn[i][j] as u128) % n;
                }
            }
        }
        acc as u64
    }

    pub fn bilinear(&self, x: &[u64], y: &[u64]) -> Mod1 {
        Mod1::from_ratio(self.bilinear_scaled(x, y) as i64, self.den as i64)
    }

    pub fn element(&self, mut index: u64) -> Vec<u64> {
        let mut out = vec![0u64; self.rank()];
        for i in (0..self.rank()).rev() {
            out[i] = index % self.orders[i];
            index /= self.orders[i];
        }
        out
    }

    pub fn index(&self, x: &[u64]) -> u64 {
        x.iter().zip(&self.orders).fold(0, |acc, (v, d)| acc * d + v % d)
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter().zip(y).zip(&self.orders).map(|((a, b), d)| (a + b) % d).collect()
    }

    pub fn multiple(&self, x: &[u64], k: u64) -> Vec<u64> {
        x.iter().zip(&self.orders).map(|(a, d)| ((*a as u128 * k as u128) % *d as u128) as u64).collect()
    }

    /// Nondegeneracy of `b`, by enumeration.
    pub fn is_nondegenerate(&self) -> bool {
        let gens: Vec<Vec<u64>> = (0..self.rank())
            .map(|i| (0..self.rank()).map(|j| u64::from(i == j)).collect())
            .collect();
        (1..self.order()).all(|ix| {
            let x = self.element(ix);
            gens.iter().any(|g| self.bilinear_scaled(&x, g) != 0)
        })
    }

    /// Gauss sum over the listed elements.
    fn gauss_sum_over(&self, elements: impl Iterator<Item = Vec<u64>>) -> Cyclotomic {
        let mut counts = vec![0i128; self.den as usize];
        for x in elements {
            counts[self.value_scaled(&x) as usize] += 1;
        }
        Cyclotomic::from_counts(counts)
    }

    pub fn gauss_sum(&self) -> Result<Cyclotomic> {
        let order = self.order();
        if order > GAUSS_CAP {
            return Err(Error::ResourceLimit { what: "group order", size: order as u128, cap: GAUSS_CAP as u128 });
        }
        Ok(self.gauss_sum_over((0..order).map(|i| self.element(i))))
    }

    /// Elements of the `p`-primary part.
    pub fn primary_elements(&self, p: u64) -> Vec<Vec<u64>> {
        let order = self.order();
        let mut cofactor = order;
        while cofactor.is_multiple_of(p) {
            cofactor /= p;
        }
        let mut seen = std::collections::BTreeSet::new();
        for i in 0..order {
            let x = self.multiple(&self.element(i), cofactor);
            seen.insert(self.index(&x));
        }
        seen.into_iter().map(|i| self.element(i)).collect()
    }
}

impl fmt::Display for FiniteQuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let groups: Vec<String> = self.orders.iter().map(|d| format!("Z/{d}")).collect();
        let qs: Vec<String> = self.q_generators().iter().map(ToString::to_string).collect();
        write!(f, "q on {} with q(e_i) = [{}]", if groups.is_empty() { "0".into() } else { groups.join(" + ") }, qs.join(", "))
    }
}

/// `σ mod 8` with `G = sqrt(|elements|) e^{2πi σ/8}`, given the Gauss sum `g`.
fn signature_of(g: &Cyclotomic, size: u64) -> Result<u8> {
    if g.mul(&g.conj()) != Cyclotomic::integer(1, size as i128) {
        return Err(Error::DegenerateForm);
    }
    let s = sqrt_integer(size);
    for sigma in 0..8u8 {
        if *g == s.mul(&Cyclotomic::root(8, sigma as i64)) {
            return Ok(sigma);
        }
    }
    Err(Error::DegenerateForm)
}

/// Gauss–Milgram signature; the magnitude law `|G|^2 = |D|` is checked exactly.
pub fn gauss_milgram(q: &FiniteQuadraticForm) -> Result<u8> {
    signature_of(&q.gauss_sum()?, q.order())
}

/// Isotropic subgroup of order `sqrt|D|`, by exhaustive search.
pub fn find_lagrangian(q: &FiniteQuadraticForm, cap: u64) -> Result<Option<Vec<Vec<u64>>>> {
    let order = q.order();
    let target = order.isqrt();
    if target * target != order {
        return Ok(None);
    }
    if order > cap {
        return Err(Error::ResourceLimit { what: "group order", size: order as u128, cap: cap as u128 });
    }
    let isotropic: Vec<u64> = (1..order).filter(|&i| q.value_scaled(&q.element(i)) == 0).collect();
    let mut members = vec![false; order as usize];
    members[0] = true;
    let mut subgroup = vec![0u64];
    let mut gens = Vec::new();
    let found = search(q, &isotropic, 0, target, &mut members, &mut subgroup, &mut gens);
    Ok(found.then_some(gens))
}

/// Depth-first search over generator sequences `x_1 < x_2 < ...` with each `x_k`
/// the least element of its coset; every subgroup is visited exactly once.
fn search(
    q: &FiniteQuadraticForm,
    isotropic: &[u64],
    start: usize,
    target: u64,
    members: &mut Vec<bool>,
    subgroup: &mut Vec<u64>,
    gens: &mut Vec<Vec<u64>>,
) -> bool {
    if subgroup.len() as u64 == target {
        return true;
    }
    for (pos, &cand) in isotropic.iter().enumerate().skip(start) {
        if members[cand as usize] {
            continue;
        }
        let x = q.element(cand);
        if gens.iter().any(|g| q.bilinear_scaled(&x, g) != 0) {
            continue;
        }
        // the coset x + H must not contain a smaller index
        let coset_min = subgroup.iter().all(|&h| q.index(&q.add(&x, &q.element(h))) >= cand);
        if !coset_min {
            continue;
        }
        // H + <x>
        let mut added = Vec::new();
        let mut mult = x.clone();
        loop {
            let mi = q.index(&mult);
            if members[mi as usize] {
                break;
            }
            for &h in subgroup.iter() {
                let s = q.index(&q.add(&mult, &q.element(h)));
                if !members[s as usize] {
                    members[s as usize] = true;
                    added.push(s);
                }
            }
            mult = q.add(&mult, &x);
        }
        let new_size = subgroup.len() + added.len();
        if (new_size as u64) <= target && target.is_multiple_of(new_size as u64) {
            let old_len = subgroup.len();
            subgroup.extend(&added);
            gens.push(x);
            if search(q, isotropic, pos + 1, target, members, subgroup, gens) {
                return true;
            }
            gens.pop();
            subgroup.truncate(old_len);
        }
        for s in added {
            members[s as usize] = false;
        }
    }
    false
}

/// Invariants of the `p`-primary part.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PrimeInvariants {
    pub component_order: u64,
    /// `v_p(|D_p|) mod 2`.
    pub order_parity: u8,
    pub sigma: u8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittInvariants {
    pub sigma: u8,
    pub group_order: u64,
    pub per_prime: BTreeMap<u64, PrimeInvariants>,
}

impl WittInvariants {
    /// Projection to `⊕_p W^pt_p`: drops the component orders and the trivial primes.
    pub fn class(&self) -> BTreeMap<u64, (u8, u8)> {
        self.per_prime
            .iter()
            .filter(|(_, v)| v.order_parity != 0 || v.sigma != 0)
            .map(|(p, v)| (*p, (v.order_parity, v.sigma)))
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.class().is_empty()
    }
}

pub fn witt_invariants(q: &FiniteQuadraticForm) -> Result<WittInvariants> {
    let sigma = gauss_milgram(q)?;
    let mut per_prime = BTreeMap::new();
    for (p, e) in factorize(q.order()) {
        let elements = q.primary_elements(p);
        let g = q.gauss_sum_over(elements.iter().cloned());
        let size = elements.len() as u64;
        let sigma_p = signature_of(&g, size)?;
        per_prime.insert(p, PrimeInvariants { component_order: size, order_parity: (e % 2) as u8, sigma: sigma_p });
    }
    Ok(WittInvariants { sigma, group_order: q.order(), per_prime })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WittComparison {
    /// A lagrangian of `q1 ⊕ (-q2) ⊕ H^k` was found.
    Equivalent { hyperbolic_summands: usize, lagrangian: Vec<Vec<u64>> },
    Inequivalent { reason: String },
    Undecided { reason: String },
}

/// Compares Witt classes by invariants plus a bounded search for a lagrangian
/// in `q1 ⊕ (-q2) ⊕ H^k`, `k ≤ 2`.
pub fn compare(q1: &FiniteQuadraticForm, q2: &FiniteQuadraticForm, cap: u64) -> Result<WittComparison> {
    let (a, b) = (witt_invariants(q1)?, witt_invariants(q2)?);
    if a.class() != b.class() {
        return Ok(WittComparison::Inequivalent {
            reason: format!("invariants differ: {:?} vs {:?}", a.class(), b.class()),
        });
    }
    let diff = q1.orthogonal_sum(&q2.negate());
    let mut last_err = None;
    for k in 0..=2usize {
        let form = diff.orthogonal_sum(&FiniteQuadraticForm::hyperbolic(2).copies(k));
        match find_lagrangian(&form, cap) {
            Ok(Some(l)) => return Ok(WittComparison::Equivalent { hyperbolic_summands: k, lagrangian: l }),
            Ok(None) => {}
            Err(e @ Error::ResourceLimit { .. }) => {
                last_err = Some(e);
                break;
            }
            Err(e) => return Err(e),
        }
    }
    let reason = match last_err {
        Some(e) => format!("invariants agree; search stopped: {e}"),
        None => "invariants agree but no lagrangian was found".into(),
    };
    Ok(WittComparison::Undecided { reason })
}

/// One cyclic summand of a group description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimaryWitt {
    /// `Z/8 ⊕ Z/2`.
    Two,
    /// `Z/2 ⊕ Z/2`.
    OneModFour,
    /// `Z/4`.
    ThreeModFour,
}

impl PrimaryWitt {
    pub fn for_prime(p: u64) -> Self {
        if p == 2 {
            PrimaryWitt::Two
        } else if p % 4 == 1 {
            PrimaryWitt::OneModFour
        } else {
            PrimaryWitt::ThreeModFour
        }
    }

    pub fn cyclic_orders(&self) -> &'static [u64] {
        match self {
            PrimaryWitt::Two => &[8, 2],
            PrimaryWitt::OneModFour => &[2, 2],
            PrimaryWitt::ThreeModFour => &[4],
        }
    }

    pub fn describe(&self) -> &'static str {
        match self {
            PrimaryWitt::Two => "Z/8 + Z/2 (p = 2)",
            PrimaryWitt::OneModFour => "Z/2 + Z/2 (p = 1 mod 4)",
            PrimaryWitt::ThreeModFour => "Z/4 (p = 3 mod 4)",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EdGroup {
    Zero,
    Z2,
    /// `W^pt = ⊕_p W^pt_p`.
    WittPointed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdEntry {
    pub d: i64,
    pub group: EdGroup,
}

impl EdEntry {
    pub fn label(&self) -> &'static str {
        match self.group {
            EdGroup::Zero => "0",
            EdGroup::Z2 => "Z/2",
            EdGroup::WittPointed => "W^pt",
        }
    }

    pub fn expansion(&self) -> Vec<&'static str> {
        match self.group {
            EdGroup::WittPointed => [PrimaryWitt::Two, PrimaryWitt::OneModFour, PrimaryWitt::ThreeModFour]
                .iter()
                .map(PrimaryWitt::describe)
                .collect(),
            _ => vec![],
        }
    }
}

/// Group of invertible stabilizer codes in spatial dimension `d`, modulo lower-dimensional ones.
pub fn e_d_table(d: i64) -> EdEntry {
    let group = if d > 0 && d.rem_euclid(4) == 3 {
        EdGroup::WittPointed
    } else if d > 0 && d.rem_euclid(4) == 0 {
        EdGroup::Z2
    } else {
        EdGroup::Zero
    };
    EdEntry { d, group }
}

impl FiniteQuadraticForm {
    pub fn denominator(&self) -> u64 {
        self.den
    }

    pub fn is_zero_value(&self, x: &[u64]) -> bool {
        self.value_scaled(x).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signatures_of_basic_forms() {
        assert_eq!(gauss_milgram(&FiniteQuadraticForm::hyperbolic(2)).unwrap(), 0);
        let semion = FiniteQuadraticForm::semion();
        assert_eq!(semion.gauss_sum().unwrap(), Cyclotomic::integer(1, 1).add(&Cyclotomic::root(4, 1)));
        assert_eq!(gauss_milgram(&semion).unwrap(), 1);
        let third = FiniteQuadraticForm::cyclic(3, 1, 3).unwrap();
        let i_sqrt3 = Cyclotomic::root(4, 1).mul(&sqrt_integer(3));
        assert_eq!(third.gauss_sum().unwrap(), i_sqrt3);
        assert_eq!(gauss_milgram(&third).unwrap(), 2);
    }

    #[test]
    fn degenerate_forms_are_rejected() {
        let zero = FiniteQuadraticForm::cyclic(2, 0, 1).unwrap();
        assert!(matches!(gauss_milgram(&zero), Err(Error::DegenerateForm)));
        assert!(!zero.is_nondegenerate());
        assert!(FiniteQuadraticForm::cyclic(2, 1, 3).is_err());
    }

    #[test]
    fn lagrangians() {
        let h = FiniteQuadraticForm::hyperbolic(2);
        let l = find_lagrangian(&h, LAGRANGIAN_CAP).unwrap().unwrap();
        assert_eq!(l, vec![vec![0, 1]]);
        let s4 = FiniteQuadraticForm::semion().copies(4);
        assert!(find_lagrangian(&s4, LAGRANGIAN_CAP).unwrap().is_none());
        assert!(find_lagrangian(&FiniteQuadraticForm::semion(), LAGRANGIAN_CAP).unwrap().is_none());
    }

    #[test]
    fn difference_with_self_is_metabolic() {
        let q = FiniteQuadraticForm::cyclic(3, 1, 3).unwrap().orthogonal_sum(&FiniteQuadraticForm::semion());
        let d = q.orthogonal_sum(&q.negate());
        assert_eq!(gauss_milgram(&d).unwrap(), 0);
        assert!(find_lagrangian(&d, LAGRANGIAN_CAP).unwrap().is_some());
        assert!(witt_invariants(&d).unwrap().is_trivial());
        assert!(witt_invariants(&FiniteQuadraticForm::hyperbolic(3)).unwrap().is_trivial());
    }

    #[test]
    fn comparisons() {
        let s = FiniteQuadraticForm::semion();
        let s5 = s.copies(5);
        // the semion has order 8: five semions match three anti-semions, not three semions
        assert!(matches!(compare(&s5, &s.copies(3), LAGRANGIAN_CAP).unwrap(), WittComparison::Inequivalent { .. }));
        let anti = s.negate().copies(3);
        assert_eq!(witt_invariants(&s5).unwrap().class(), witt_invariants(&anti).unwrap().class());
        assert!(matches!(compare(&s, &s, LAGRANGIAN_CAP).unwrap(), WittComparison::Equivalent { .. }));
        // x^2/8 on Z/4 has σ = 1 like the semion but a different order parity
        let z4 = FiniteQuadraticForm::cyclic(4, 1, 8).unwrap();
        assert_eq!(gauss_milgram(&z4).unwrap(), 1);
        assert!(matches!(compare(&s, &z4, LAGRANGIAN_CAP).unwrap(), WittComparison::Inequivalent { .. }));
    }

    #[test]
    fn table() {
        assert_eq!(e_d_table(3).group, EdGroup::WittPointed);
        assert_eq!(e_d_table(4).group, EdGroup::Z2);
        assert_eq!(e_d_table(2).group, EdGroup::Zero);
        assert_eq!(e_d_table(0).group, EdGroup::Zero);
        assert_eq!(e_d_table(-1).group, EdGroup::Zero);
        assert_eq!(e_d_table(7).expansion().len(), 3);
    }
}
