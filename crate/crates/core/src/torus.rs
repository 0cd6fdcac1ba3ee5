//! Coordinates on the `ℓ`-torus: the regular representation of `R_ℓ` on `Z^{ℓ^d}`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::ring::{IntPoly, LaurentPoly, Monomial, RatPoly};

/// Default cap on compactified sizes (matrix sizes and group orders).
pub const DEFAULT_CAP: usize = 4096;

/// Sites of `(Z/ℓ)^d` in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Torus {
    dim: usize,
    ell: i64,
    volume: usize,
}

impl Torus {
    pub fn new(dim: usize, ell: i64) -> Result<Self> {
        if ell <= 0 {
            return Err(Error::InvalidTorusLength(ell));
        }
        let volume = (ell as u128)
            .checked_pow(dim as u32)
            .filter(|v| *v <= u32::MAX as u128)
            .ok_or(Error::ResourceLimit { what: "torus volume", size: u128::MAX, cap: u32::MAX as u128 })?;
        Ok(Torus { dim, ell, volume: volume as usize })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ell(&self) -> i64 {
        self.ell
    }

    /// `ℓ^d`.
    pub fn volume(&self) -> usize {
        self.volume
    }

    pub fn site(&self, mut index: usize) -> Vec<i64> {
        let mut out = vec![0i64; self.dim];
        for k in (0..self.dim).rev() {
            out[k] = (index % self.ell as usize) as i64;
            index /= self.ell as usize;
        }
        out
    }

    /// Index of the site `e mod ℓ`.
    pub fn index(&self, e: &[i64]) -> usize {
        e.iter().fold(0usize, |acc, &x| acc * self.ell as usize + x.rem_euclid(self.ell) as usize)
    }

    /// Index of the site `a - b`.
    pub fn difference(&self, a: usize, b: usize) -> usize {
        let (sa, sb) = (self.site(a), self.site(b));
        let diff: Vec<i64> = sa.iter().zip(&sb).map(|(x, y)| x - y).collect();
        self.index(&diff)
    }

    /// Coefficient table of `p` reduced mod `x_i^ℓ - 1`, one entry per site.
    pub fn coefficients(&self, p: &IntPoly) -> Result<Vec<i64>> {
        let mut out = vec![0i64; self.volume];
        for (m, c) in p.terms() {
            let v = c.to_i64().ok_or(Error::Unsupported("coefficient exceeds 64 bits".into()))?;
            let slot = &mut out[self.index(&m.0)];
            *slot = slot.checked_add(v).ok_or(Error::Unsupported("coefficient overflow".into()))?;
        }
        Ok(out)
    }

    pub fn rational_coefficients(&self, p: &RatPoly) -> Vec<num_rational::BigRational> {
        let mut out = vec![num_rational::BigRational::from_integer(BigInt::from(0)); self.volume];
        for (m, c) in p.terms() {
            out[self.index(&m.0)] += c;
        }
        out
    }

    /// Flattens a vector of `n` polynomials into `Z^{n ℓ^d}`; coordinate `(i, a)` sits at `i ℓ^d + a`.
    pub fn flatten(&self, rep: &[IntPoly]) -> Result<Vec<i64>> {
        let mut out = Vec::with_capacity(rep.len() * self.volume);
        for p in rep {
            out.extend(self.coefficients(p)?);
        }
        Ok(out)
    }

    /// Inverse of [`Torus::flatten`] with exponents in `[0, ℓ)`.
    pub fn unflatten(&self, v: &[i64]) -> Vec<IntPoly> {
        v.chunks(self.volume)
            .map(|chunk| {
                LaurentPoly::from_terms(
                    self.dim,
                    chunk.iter().enumerate().map(|(a, &c)| (Monomial(self.site(a)), BigInt::from(c))),
                )
            })
            .collect()
    }

    /// Integer matrix of multiplication by the `n x m` polynomial matrix `entry`
    /// on the flattened coordinates; columns are indexed by `(k, b)`.
    pub fn regular_matrix(&self, rows: usize, cols: usize, entry: impl Fn(usize, usize) -> IntPoly) -> Result<Vec<Vec<i64>>> {
        let v = self.volume;
        let mut out = vec![vec![0i64; cols * v]; rows * v];
        for i in 0..rows {
            for k in 0..cols {
                let coeffs = self.coefficients(&entry(i, k))?;
                for a in 0..v {
                    for b in 0..v {
                        out[i * v + a][k * v + b] = coeffs[self.difference(a, b)];
                    }
                }
            }
        }
        Ok(out)
    }
}

pub(crate) fn check_cap(what: &'static str, size: usize, cap: usize) -> Result<()> {
    if size > cap {
        return Err(Error::ResourceLimit { what, size: size as u128, cap: cap as u128 });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn site_indexing_round_trips() {
        let t = Torus::new(2, 3).unwrap();
        assert_eq!(t.volume(), 9);
        for i in 0..9 {
            assert_eq!(t.index(&t.site(i)), i);
        }
        assert_eq!(t.index(&[-1, 4]), t.index(&[2, 1]));
        assert!(Torus::new(1, 0).is_err());
    }

    #[test]
    fn regular_matrix_of_shift_is_cyclic() {
        let t = Torus::new(1, 3).unwrap();
        let m = t.regular_matrix(1, 1, |_, _| IntPoly::var(1, 0)).unwrap();
        // x * x^b = x^{b+1}
        assert_eq!(m, vec![vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]);
    }
}
