//! Majorana strings, their commutation form, and the odd form `n F_2`.
//!
//! `μ(x) = χ_1^{x_1} ⋯ χ_{2n}^{x_{2n}}` with factors in ascending order.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::ring::{Coefficient, Mod1};

/// `e^{2πi phase/8} μ(bits)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MajoranaString {
    pub bits: Vec<u8>,
    pub phase: u8,
}

impl MajoranaString {
    pub fn new(bits: Vec<u8>, phase: u8) -> Result<Self> {
        if bits.len() % 2 != 0 {
            return Err(Error::ShapeMismatch(format!("Majorana string of odd length {}", bits.len())));
        }
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::ShapeMismatch("Majorana exponents are bits".into()));
        }
        Ok(MajoranaString { bits, phase: phase % 8 })
    }

    pub fn identity(n: usize) -> Self {
        MajoranaString { bits: vec![0; 2 * n], phase: 0 }
    }

    /// `χ_i`, 1-based.
    pub fn chi(n: usize, i: usize) -> Self {
        let mut bits = vec![0; 2 * n];
        bits[i - 1] = 1;
        MajoranaString { bits, phase: 0 }
    }

    pub fn modes(&self) -> usize {
        self.bits.len() / 2
    }

    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }
}

fn check_len(a: &[u8], b: &[u8]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch { left: a.len(), right: b.len() });
    }
    Ok(())
}

fn half(k: usize) -> Mod1 {
    Mod1::new(BigRational::new(BigInt::from(k), BigInt::from(2)))
}

/// Product with the factors of `b` moved into ascending order past those of `a`.
pub fn majorana_mul(a: &MajoranaString, b: &MajoranaString) -> Result<MajoranaString> {
    check_len(&a.bits, &b.bits)?;
    // χ_j from b passes every χ_i from a with i > j
    let mut swaps = 0usize;
    let mut later = 0usize;
    for i in (0..a.bits.len()).rev() {
        if b.bits[i] == 1 {
            swaps += later;
        }
        if a.bits[i] == 1 {
            later += 1;
        }
    }
    let sign = if swaps % 2 == 1 { 4 } else { 0 };
    let bits = a.bits.iter().zip(&b.bits).map(|(x, y)| x ^ y).collect();
    Ok(MajoranaString { bits, phase: (a.phase + b.phase + sign) % 8 })
}

/// Commutator form: `x^T K y` with `1/2` off the diagonal.
pub fn kappa(x: &[u8], y: &[u8]) -> Result<Mod1> {
    check_len(x, y)?;
    let wx: usize = x.iter().map(|&b| b as usize).sum();
    let wy: usize = y.iter().map(|&b| b as usize).sum();
    let overlap: usize = x.iter().zip(y).map(|(a, b)| (a & b) as usize).sum();
    Ok(half(wx * wy - overlap))
}

/// `n` copies of the form `(0 1/2; 1/2 1/2)` on `(Z/2)^{2n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddFormF2 {
    n: usize,
}

impl OddFormF2 {
    pub fn new(n: usize) -> Self {
        OddFormF2 { n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `2 b(e_i, e_j)` as an integer matrix.
    pub fn doubled_gram(&self) -> Vec<Vec<u8>> {
        let mut g = vec![vec![0u8; 2 * self.n]; 2 * self.n];
        for k in 0..self.n {
            g[2 * k][2 * k + 1] = 1;
            g[2 * k + 1][2 * k] = 1;
            g[2 * k + 1][2 * k + 1] = 1;
        }
        g
    }

    fn check(&self, x: &[u8]) -> Result<()> {
        if x.len() != 2 * self.n {
            return Err(Error::DimensionMismatch { left: x.len(), right: 2 * self.n });
        }
        Ok(())
    }

    pub fn b(&self, x: &[u8], y: &[u8]) -> Result<Mod1> {
        self.check(x)?;
        self.check(y)?;
        let mut acc = 0usize;
        for k in 0..self.n {
            let (x1, x2, y1, y2) = (x[2 * k], x[2 * k + 1], y[2 * k], y[2 * k + 1]);
            acc += (x1 & y2) as usize + (x2 & y1) as usize + (x2 & y2) as usize;
        }
        Ok(half(acc))
    }

    /// `c(x) = b(x, x)`.
    pub fn c(&self, x: &[u8]) -> Result<Mod1> {
        self.b(x, x)
    }

    /// `e_1 + e_3 + ... + e_{2n-1}`.
    pub fn c_hat(&self) -> Vec<u8> {
        (0..2 * self.n).map(|i| u8::from(i % 2 == 0)).collect()
    }
}

/// `b(x, y - ĉ)`.
pub fn modified_commutator(f: &OddFormF2, x: &[u8], y: &[u8]) -> Result<Mod1> {
    f.check(y)?;
    let shifted: Vec<u8> = y.iter().zip(f.c_hat()).map(|(a, c)| a ^ c).collect();
    f.b(x, &shifted)
}

/// Parity of `μ(x)` under the grading `P`: `(x_1 + ... + x_{2n})/2`.
pub fn parity(f: &OddFormF2, x: &[u8]) -> Result<Mod1> {
    f.check(x)?;
    Ok(half(x.iter().map(|&b| b as usize).sum()))
}

/// Outcome of checking a set of Majorana generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MajoranaCodeReport {
    pub is_code: bool,
    pub odd_generators: Vec<usize>,
    pub anticommuting_pairs: Vec<(usize, usize)>,
}

/// Whether the generators span a commuting subgroup of even elements.
pub fn is_majorana_code(gens: &[Vec<u8>]) -> Result<MajoranaCodeReport> {
    if let Some(first) = gens.first() {
        if first.len() % 2 != 0 {
            return Err(Error::ShapeMismatch(format!("Majorana string of odd length {}", first.len())));
        }
        for g in gens {
            check_len(first, g)?;
        }
    }
    let odd_generators: Vec<usize> =
        gens.iter().enumerate().filter(|(_, g)| g.iter().filter(|&&b| b == 1).count() % 2 == 1).map(|(i, _)| i).collect();
    let mut anticommuting_pairs = Vec::new();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            if !kappa(&gens[i], &gens[j])?.is_zero() {
                anticommuting_pairs.push((i, j));
            }
        }
    }
    Ok(MajoranaCodeReport {
        is_code: odd_generators.is_empty() && anticommuting_pairs.is_empty(),
        odd_generators,
        anticommuting_pairs,
    })
}

/// All `2^{2n}` bit vectors, in binary counting order.
pub fn all_strings(n: usize) -> impl Iterator<Item = Vec<u8>> {
    (0u64..1 << (2 * n)).map(move |k| (0..2 * n).map(|i| ((k >> i) & 1) as u8).collect())
}

/// Pairs where the modified commutator differs from `κ`.
pub fn modified_commutator_mismatches(n: usize) -> Vec<(Vec<u8>, Vec<u8>)> {
    let f = OddFormF2::new(n);
    let mut out = Vec::new();
    for x in all_strings(n) {
        for y in all_strings(n) {
            let lhs = modified_commutator(&f, &x, &y).expect("lengths agree");
            let rhs = kappa(&x, &y).expect("lengths agree");
            if lhs != rhs {
                out.push((x.clone(), y));
            }
        }
    }
    out
}
