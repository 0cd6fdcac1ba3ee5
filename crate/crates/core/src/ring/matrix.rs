use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::coeff::{Coefficient, DisplayCoefficient, RingCoefficient};
use super::poly::{IntPoly, LaurentPoly, RatPoly};
use crate::error::{Error, Result};

/// Dense matrix of Laurent polynomials, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix<C> {
    rows: usize,
    cols: usize,
    dim: usize,
    entries: Vec<LaurentPoly<C>>,
}

pub type IntMatrix = PolyMatrix<BigInt>;
pub type RatMatrix = PolyMatrix<BigRational>;

impl<C: Coefficient> PolyMatrix<C> {
    pub fn zeros(rows: usize, cols: usize, dim: usize) -> Self {
        PolyMatrix { rows, cols, dim, entries: vec![LaurentPoly::zero(dim); rows * cols] }
    }

    pub fn from_rows(dim: usize, rows: Vec<Vec<LaurentPoly<C>>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::ShapeMismatch("ragged rows".into()));
            }
            for e in row {
                if e.dim() != dim {
                    return Err(Error::DimensionMismatch { left: dim, right: e.dim() });
                }
                entries.push(e);
            }
        }
        Ok(PolyMatrix { rows: nrows, cols: ncols, dim, entries })
    }

    pub fn from_fn(rows: usize, cols: usize, dim: usize, mut f: impl FnMut(usize, usize) -> LaurentPoly<C>) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        PolyMatrix { rows, cols, dim, entries }
    }

    /// Column vector.
    pub fn column(dim: usize, v: Vec<LaurentPoly<C>>) -> Self {
        let n = v.len();
        PolyMatrix { rows: n, cols: 1, dim, entries: v }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly<C> {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentPoly<C>) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[LaurentPoly<C>] {
        &self.entries
    }

    pub fn col(&self, j: usize) -> Vec<LaurentPoly<C>> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<LaurentPoly<C>> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, self.dim, |i, j| self.get(j, i).clone())
    }

    /// Transpose with the involution applied entrywise.
    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, self.dim, |i, j| self.get(j, i).involution())
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&LaurentPoly<C>) -> LaurentPoly<D>) -> PolyMatrix<D> {
        PolyMatrix { rows: self.rows, cols: self.cols, dim: self.dim, entries: self.entries.iter().map(f).collect() }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            dim: self.dim,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn neg(&self) -> Self {
        self.map(|e| e.neg())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Block-diagonal sum `diag(self, other)`.
    pub fn block_diag(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        let (r, c) = (self.rows, self.cols);
        Ok(Self::from_fn(r + other.rows, c + other.cols, self.dim, |i, j| {
            if i < r && j < c {
                self.get(i, j).clone()
            } else if i >= r && j >= c {
                other.get(i - r, j - c).clone()
            } else {
                LaurentPoly::zero(self.dim)
            }
        }))
    }

    /// Columns of `self` followed by the columns of `other`.
    pub fn hconcat(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch("row counts differ".into()));
        }
        let c = self.cols;
        Ok(Self::from_fn(self.rows, c + other.cols, self.dim, |i, j| {
            if j < c {
                self.get(i, j).clone()
            } else {
                other.get(i, j - c).clone()
            }
        }))
    }

    /// Submatrix with the given rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), self.dim, |i, j| self.get(rows[i], cols[j]).clone())
    }
}

impl<C: RingCoefficient> PolyMatrix<C> {
    pub fn identity(n: usize, dim: usize) -> Self {
        Self::from_fn(n, n, dim, |i, j| if i == j { LaurentPoly::one(dim) } else { LaurentPoly::zero(dim) })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(Self::from_fn(self.rows, other.cols, self.dim, |i, j| {
            let mut acc = LaurentPoly::zero(self.dim);
            for k in 0..self.cols {
                acc = acc.add(&self.get(i, k).mul(other.get(k, j)));
            }
            acc
        }))
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("shape mismatch")
    }

    pub fn scale_poly(&self, r: &LaurentPoly<C>) -> Self {
        self.map(|e| e.mul(r))
    }
}

impl IntMatrix {
    pub fn to_rational(&self) -> RatMatrix {
        self.map(|e| e.to_rational())
    }

    pub fn from_i64_rows(rows: &[Vec<i64>], dim: usize) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Self::from_fn(r, c, dim, |i, j| IntPoly::from_i64(dim, rows[i][j]))
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> Result<IntPoly> {
        if !self.is_square() {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(IntPoly::one(self.dim));
        }
        match bareiss(self) {
            Some(d) => Ok(d),
            None => Ok(cofactor_det(self)),
        }
    }

    /// Determinant and adjugate, with `A * adj = adj * A = det * I`.
    pub fn det_adjugate(&self) -> Result<(IntPoly, IntMatrix)> {
        let det = self.det()?;
        let n = self.rows;
        if n == 0 {
            return Ok((det, IntMatrix::zeros(0, 0, self.dim)));
        }
        if n == 1 {
            return Ok((det, IntMatrix::identity(1, self.dim)));
        }
        let mut adj = IntMatrix::zeros(n, n, self.dim);
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
                let minor = self.select(&rows, &cols).det()?;
                adj.set(i, j, if (i + j) % 2 == 0 { minor } else { minor.neg() });
            }
        }
        Ok((det, adj))
    }
}

fn bareiss(a: &IntMatrix) -> Option<IntPoly> {
    let n = a.rows;
    let dim = a.dim;
    let mut m: Vec<Vec<IntPoly>> = (0..n).map(|i| a.row(i)).collect();
    let mut prev = IntPoly::one(dim);
    let mut negate = false;
    for k in 0..n {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&r| !m[r][k].is_zero());
            match swap {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return Some(IntPoly::zero(dim)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.div_exact(&prev)?;
            }
            m[i][k] = IntPoly::zero(dim);
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Some(if negate { d.neg() } else { d })
}

fn cofactor_det(a: &IntMatrix) -> IntPoly {
    let n = a.rows;
    if n == 0 {
        return IntPoly::one(a.dim);
    }
    if n == 1 {
        return a.get(0, 0).clone();
    }
    let mut acc = IntPoly::zero(a.dim);
    let rows: Vec<usize> = (1..n).collect();
    for j in 0..n {
        if a.get(0, j).is_zero() {
            continue;
        }
        let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
        let term = a.get(0, j).mul(&cofactor_det(&a.select(&rows, &cols)));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

impl RatMatrix {
    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(RatPoly::is_integral)
    }

    pub fn to_integer(&self) -> Option<IntMatrix> {
        let entries: Option<Vec<IntPoly>> = self.entries.iter().map(RatPoly::to_integer).collect();
        Some(PolyMatrix { rows: self.rows, cols: self.cols, dim: self.dim, entries: entries? })
    }

    pub fn scale_rational(&self, r: &BigRational) -> RatMatrix {
        self.map(|e| e.scale_rational(r))
    }
}

impl<C: DisplayCoefficient> fmt::Display for PolyMatrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<C: Coefficient> fmt::Debug for PolyMatrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<_> = (0..self.rows).map(|i| self.row(i)).collect();
        f.debug_list().entries(rows).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::poly::Monomial;

    fn p(dim: usize, terms: &[(i64, &[i64])]) -> IntPoly {
        IntPoly::from_terms(dim, terms.iter().map(|(c, e)| (Monomial(e.to_vec()), BigInt::from(*c))))
    }

    #[test]
    fn small_cases() {
        let d = IntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 2]], 1);
        let (det, adj) = d.det_adjugate().unwrap();
        assert_eq!(det, IntPoly::from_i64(1, 4));
        assert_eq!(adj, d);
        let id = IntMatrix::identity(3, 2);
        let (det, adj) = id.det_adjugate().unwrap();
        assert_eq!(det, IntPoly::one(2));
        assert_eq!(adj, id);
    }

    #[test]
    fn two_by_two_cofactors() {
        let x = IntPoly::var(1, 0);
        let a = IntMatrix::from_rows(
            1,
            vec![vec![IntPoly::from_i64(1, 2), x.clone()], vec![IntPoly::zero(1), IntPoly::from_i64(1, 3)]],
        )
        .unwrap();
        let (det, adj) = a.det_adjugate().unwrap();
        assert_eq!(det, IntPoly::from_i64(1, 6));
        let want = IntMatrix::from_rows(
            1,
            vec![vec![IntPoly::from_i64(1, 3), x.neg()], vec![IntPoly::zero(1), IntPoly::from_i64(1, 2)]],
        )
        .unwrap();
        assert_eq!(adj, want);
    }

    #[test]
    fn pivoting_and_singular() {
        let a = IntMatrix::from_i64_rows(&[vec![0, 1], vec![1, 0]], 0);
        assert_eq!(a.det().unwrap(), IntPoly::from_i64(0, -1));
        let s = IntMatrix::from_i64_rows(&[vec![1, 2], vec![2, 4]], 0);
        assert!(s.det().unwrap().is_zero());
        let r = IntMatrix::zeros(2, 3, 0);
        assert!(matches!(r.det(), Err(Error::NonSquare { .. })));
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let a = IntMatrix::from_rows(
            2,
            vec![
                vec![p(2, &[(1, &[1, 0]), (2, &[0, 0])]), p(2, &[(3, &[0, -1])]), p(2, &[(1, &[1, 1])])],
                vec![p(2, &[(-1, &[0, 0])]), p(2, &[(1, &[2, 0]), (1, &[0, 0])]), p(2, &[(5, &[0, 0])])],
                vec![p(2, &[(4, &[-1, 0])]), p(2, &[(0, &[0, 0])]), p(2, &[(2, &[0, 1]), (-1, &[1, 0])])],
            ],
        )
        .unwrap();
        assert_eq!(a.det().unwrap(), cofactor_det(&a));
        let (det, adj) = a.det_adjugate().unwrap();
        let scalar = IntMatrix::identity(3, 2).scale_poly(&det);
        assert_eq!(a.mul(&adj), scalar);
        assert_eq!(adj.mul(&a), scalar);
    }
}
