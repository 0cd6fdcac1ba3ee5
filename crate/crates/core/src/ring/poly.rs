use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::coeff::{Coefficient, DisplayCoefficient, Mod1, RingCoefficient};
use crate::error::{Error, Result};

/// Exponent vector `x_1^{e_1} ... x_d^{e_d}`; ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<i64>);

impl Monomial {
    pub fn one(dim: usize) -> Self {
        Monomial(vec![0; dim])
    }

    pub fn var(dim: usize, index: usize) -> Self {
        let mut e = vec![0; dim];
        e[index] = 1;
        Monomial(e)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|e| -e).collect())
    }
}

/// Sparse Laurent polynomial in `d` variables with coefficients in `C`.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly<C> {
    dim: usize,
    terms: BTreeMap<Monomial, C>,
}

pub type IntPoly = LaurentPoly<BigInt>;
pub type RatPoly = LaurentPoly<BigRational>;
pub type TorsionPoly = LaurentPoly<Mod1>;

impl<C: Coefficient> LaurentPoly<C> {
    pub fn zero(dim: usize) -> Self {
        LaurentPoly { dim, terms: BTreeMap::new() }
    }

    pub fn monomial(mono: Monomial, coeff: C) -> Self {
        let mut p = LaurentPoly::zero(mono.dim());
        if !coeff.is_zero() {
            p.terms.insert(mono, coeff);
        }
        p
    }

    pub fn constant(dim: usize, coeff: C) -> Self {
        Self::monomial(Monomial::one(dim), coeff)
    }

    /// Builds a polynomial from possibly repeated terms, summing collisions.
    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = LaurentPoly::zero(dim);
        for (m, c) in terms {
            assert_eq!(m.dim(), dim, "monomial dimension mismatch");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = existing.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("dimension mismatch")
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        LaurentPoly::from_terms(self.dim, self.terms.iter().map(|(m, c)| (m.clone(), c.scale(k))))
    }

    /// Multiplies by a monomial `x^m`.
    pub fn shift(&self, m: &Monomial) -> Self {
        LaurentPoly {
            dim: self.dim,
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    /// Bar involution: every exponent vector is negated.
    pub fn involution(&self) -> Self {
        LaurentPoly {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, c)| (m.inverse(), c.clone())).collect(),
        }
    }

    /// Constant coefficient.
    pub fn trace(&self) -> C {
        self.coeff(&Monomial::one(self.dim))
    }

    /// Module action of an integer polynomial.
    pub fn mul_int(&self, r: &IntPoly) -> Self {
        assert_eq!(self.dim, r.dim, "dimension mismatch");
        let mut out = LaurentPoly::zero(self.dim);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &r.terms {
                out.add_term(m1.mul(m2), c1.scale(c2));
            }
        }
        out
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> LaurentPoly<D> {
        LaurentPoly::from_terms(self.dim, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    pub fn leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn trailing(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next()
    }

    /// Per-variable minimum and maximum exponents.
    pub fn exponent_box(&self) -> Option<(Vec<i64>, Vec<i64>)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let mut lo = first.0.clone();
        let mut hi = first.0.clone();
        for m in it {
            for (i, &e) in m.0.iter().enumerate() {
                lo[i] = lo[i].min(e);
                hi[i] = hi[i].max(e);
            }
        }
        Some((lo, hi))
    }

    /// Reduces every exponent modulo `ell` into `[0, ell)`, summing collisions.
    pub fn reduce_exponents(&self, ell: i64) -> Self {
        LaurentPoly::from_terms(
            self.dim,
            self.terms.iter().map(|(m, c)| (Monomial(m.0.iter().map(|e| e.rem_euclid(ell)).collect()), c.clone())),
        )
    }
}

impl<C: RingCoefficient> LaurentPoly<C> {
    pub fn one(dim: usize) -> Self {
        Self::constant(dim, C::one())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = LaurentPoly::zero(self.dim);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.mul(c2));
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("dimension mismatch")
    }

    pub fn var(dim: usize, index: usize) -> Self {
        Self::monomial(Monomial::var(dim, index), C::one())
    }
}

impl IntPoly {
    pub fn from_i64(dim: usize, c: i64) -> Self {
        Self::constant(dim, BigInt::from(c))
    }

    pub fn to_rational(&self) -> RatPoly {
        self.map(|c| BigRational::from_integer(c.clone()))
    }

    /// Exact quotient `self / divisor` over `Z[x^±]`, or `None` when the division is not exact.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IntPoly::zero(self.dim));
        }
        let (alo, ahi) = self.exponent_box()?;
        let (blo, bhi) = divisor.exponent_box()?;
        // Newton polytopes add under multiplication, which bounds the quotient's exponents.
        let qlo: Vec<i64> = alo.iter().zip(&blo).map(|(a, b)| a - b).collect();
        let qhi: Vec<i64> = ahi.iter().zip(&bhi).map(|(a, b)| a - b).collect();
        let (lead_m, lead_c) = divisor.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quot = IntPoly::zero(self.dim);
        while let Some((rm, rc)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let (q, r) = rc.div_rem(&lead_c);
            if !Zero::is_zero(&r) {
                return None;
            }
            let qm = rm.div(&lead_m);
            if qm.0.iter().zip(qlo.iter().zip(&qhi)).any(|(e, (lo, hi))| e < lo || e > hi) {
                return None;
            }
            let term = IntPoly::monomial(qm, q);
            rem = rem.sub(&term.mul(divisor));
            quot = quot.add(&term);
        }
        Some(quot)
    }

    /// If the polynomial is `c * x^m`, returns `(c, m)`.
    pub fn as_single_term(&self) -> Option<(BigInt, Monomial)> {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            Some((c.clone(), m.clone()))
        } else {
            None
        }
    }

    /// Evaluates with every variable set to 1 (sum of coefficients).
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }
}

impl RatPoly {
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Integer polynomial when every coefficient is integral.
    pub fn to_integer(&self) -> Option<IntPoly> {
        if !self.is_integral() {
            return None;
        }
        Some(self.map(|c| c.to_integer()))
    }

    pub fn to_torsion(&self) -> TorsionPoly {
        self.map(|c| Mod1::new(c.clone()))
    }

    pub fn scale_rational(&self, r: &BigRational) -> RatPoly {
        RatPoly::from_terms(self.dim, self.terms.iter().map(|(m, c)| (m.clone(), c * r)))
    }

    /// Least common multiple of coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.terms.values().fold(<BigInt as One>::one(), |acc, c| acc.lcm(c.denom()))
    }
}

impl TorsionPoly {
    /// Canonical representative with coefficients in `[0, 1)`, as a rational polynomial.
    pub fn to_rational(&self) -> RatPoly {
        self.map(|c| c.value().clone())
    }
}

fn fmt_monomial(m: &Monomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "x{}", i + 1)?;
        } else {
            write!(f, "x{}^{}", i + 1, e)?;
        }
    }
    Ok(())
}

impl<C: DisplayCoefficient> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let (neg, abs) = c.sign_and_abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !c.is_unit_magnitude() {
                    write!(f, "{abs}*")?;
                }
                fmt_monomial(m, f)?;
            }
        }
        Ok(())
    }
}

impl<C: Coefficient> fmt::Debug for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().map(|(m, c)| (&m.0, c))).finish()
    }
}

/// Element of `R_ell = R / (x_i^ell - 1)`; every exponent lies in `[0, ell)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TorusRingElem<C: Coefficient> {
    base: LaurentPoly<C>,
    ell: i64,
}

impl<C: Coefficient> TorusRingElem<C> {
    pub fn base(&self) -> &LaurentPoly<C> {
        &self.base
    }

    pub fn ell(&self) -> i64 {
        self.ell
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.ell, other.ell);
        TorusRingElem { base: self.base.add(&other.base), ell: self.ell }
    }

    /// Coefficient at the site `x^site`, exponents taken modulo `ell`.
    pub fn coeff_at(&self, site: &[i64]) -> C {
        self.base.coeff(&Monomial(site.iter().map(|e| e.rem_euclid(self.ell)).collect()))
    }
}

impl<C: RingCoefficient> TorusRingElem<C> {
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ell, other.ell);
        TorusRingElem { base: self.base.mul(&other.base).reduce_exponents(self.ell), ell: self.ell }
    }
}

/// Projects `a` into `R_ell`.
pub fn reduce_mod_torus<C: Coefficient>(a: &LaurentPoly<C>, ell: i64) -> Result<TorusRingElem<C>> {
    if ell <= 0 {
        return Err(Error::InvalidTorusLength(ell));
    }
    Ok(TorusRingElem { base: a.reduce_exponents(ell), ell })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(dim: usize, i: usize) -> IntPoly {
        IntPoly::var(dim, i)
    }

    fn c(v: i64) -> IntPoly {
        IntPoly::from_i64(1, v)
    }

    #[test]
    fn difference_of_squares() {
        let a = c(1).add(&x(1, 0));
        let b = c(1).sub(&x(1, 0));
        let expect = c(1).sub(&x(1, 0).mul(&x(1, 0)));
        assert_eq!(a.mul(&b), expect);
        assert_eq!(a.mul(&IntPoly::one(1)), a);
    }

    #[test]
    fn laurent_square_expands() {
        // (x + x^-1)^2 = x^2 + 2 + x^-2, checked against term enumeration
        let xi = x(1, 0).involution();
        let s = x(1, 0).add(&xi);
        let sq = s.mul(&s);
        let mut expect = BTreeMap::new();
        for a in [1i64, -1] {
            for b in [1i64, -1] {
                *expect.entry(a + b).or_insert(0i64) += 1;
            }
        }
        let want = IntPoly::from_terms(1, expect.into_iter().map(|(e, k)| (Monomial(vec![e]), BigInt::from(k))));
        assert_eq!(sq, want);
        assert_eq!(sq.to_string(), "x1^-2 + 2 + x1^2");
    }

    #[test]
    fn involution_and_trace() {
        let a = c(3).add(&x(1, 0).scale(&2.into()));
        assert_eq!(a.involution(), c(3).add(&x(1, 0).involution().scale(&2.into())));
        assert_eq!(a.involution().involution(), a);
        let p = IntPoly::from_i64(2, 3)
            .add(&x(2, 0).scale(&2.into()))
            .sub(&x(2, 0).involution().mul(&x(2, 1)));
        assert_eq!(p.trace(), BigInt::from(3));
        assert_eq!(IntPoly::zero(2).trace(), BigInt::from(0));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        assert!(matches!(c(1).try_add(&IntPoly::one(2)), Err(Error::DimensionMismatch { .. })));
        assert!(c(1).try_mul(&IntPoly::one(2)).is_err());
    }

    #[test]
    fn torus_reduction() {
        let x3 = IntPoly::monomial(Monomial(vec![3]), 1.into());
        assert_eq!(reduce_mod_torus(&x3, 2).unwrap().base(), &x(1, 0));
        let p = c(1).add(&IntPoly::monomial(Monomial(vec![2]), 1.into()));
        assert_eq!(reduce_mod_torus(&p, 2).unwrap().base(), &c(2));
        let q = c(5).add(&x(1, 0).scale(&(-7).into())).add(&x(1, 0).involution());
        assert_eq!(reduce_mod_torus(&q, 1).unwrap().base(), &c(-1));
        assert!(matches!(reduce_mod_torus(&q, 0), Err(Error::InvalidTorusLength(0))));
    }

    #[test]
    fn exact_division() {
        let a = c(1).add(&x(1, 0));
        let b = c(2).sub(&x(1, 0).involution());
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        assert_eq!(prod.div_exact(&a), Some(b));
        assert_eq!(c(1).div_exact(&a), None);
        assert_eq!(c(3).div_exact(&c(2)), None);
    }

    #[test]
    fn mod1_is_canonical() {
        let m = Mod1::from_ratio(-1, 2);
        assert_eq!(m, Mod1::from_ratio(1, 2));
        assert_eq!(Mod1::from_ratio(7, 3).to_string(), "1/3");
        assert_eq!(m.add(&m), Mod1::zero());
    }
}
