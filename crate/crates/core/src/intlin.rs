//! Exact integer linear algebra: Hermite and Smith forms, kernels, and
//! full-rank lattices `L ⊆ Z^N` viewed through the finite quotient `Z^N / L`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type ZVec = Vec<BigInt>;

fn to_big(rows: &[Vec<i64>]) -> Vec<ZVec> {
    rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
}

/// Row echelon form with a unimodular transform: returns `(E, U)` with `U * A = E`.
/// Pivots are positive and entries above each pivot are reduced into `[0, pivot)`.
pub fn echelon_with_transform(a: &[ZVec], ncols: usize) -> (Vec<ZVec>, Vec<ZVec>) {
    let m = a.len();
    let mut e: Vec<ZVec> = a.to_vec();
    let mut u: Vec<ZVec> = (0..m)
        .map(|i| (0..m).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut prow = 0;
    for col in 0..ncols {
        if prow == m {
            break;
        }
        // Euclid on the column below prow until a single nonzero remains.
        loop {
            let mut best: Option<usize> = None;
            for r in prow..m {
                if !e[r][col].is_zero() && best.is_none_or(|b| e[r][col].abs() < e[b][col].abs()) {
                    best = Some(r);
                }
            }
            let Some(b) = best else { break };
            e.swap(prow, b);
            u.swap(prow, b);
            let mut done = true;
            for r in prow + 1..m {
                if e[r][col].is_zero() {
                    continue;
                }
                let q = e[r][col].div_floor(&e[prow][col]);
                row_axpy(&mut e, r, prow, &q);
                row_axpy(&mut u, r, prow, &q);
                if !e[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if e[prow][col].is_zero() {
            continue;
        }
        if e[prow][col].is_negative() {
            negate_row(&mut e[prow]);
            negate_row(&mut u[prow]);
        }
        for r in 0..prow {
            let q = e[r][col].div_floor(&e[prow][col]);
            if !q.is_zero() {
                row_axpy(&mut e, r, prow, &q);
                row_axpy(&mut u, r, prow, &q);
            }
        }
        prow += 1;
    }
    (e, u)
}

/// `rows[target] -= q * rows[src]`.
fn row_axpy(rows: &mut [ZVec], target: usize, src: usize, q: &BigInt) {
    let s = rows[src].clone();
    for (t, v) in rows[target].iter_mut().zip(&s) {
        *t -= q * v;
    }
}

fn negate_row(r: &mut ZVec) {
    for v in r.iter_mut() {
        *v = -&*v;
    }
}

/// Basis of `{ y : y^T A = 0 }` for an `m x ncols` matrix `A` given by rows.
pub fn left_kernel(a: &[ZVec], ncols: usize) -> Vec<ZVec> {
    let (e, u) = echelon_with_transform(a, ncols);
    e.iter().zip(u).filter(|(row, _)| row.iter().all(Zero::is_zero)).map(|(_, t)| t).collect()
}

/// Invariant factors of the cokernel of an integer matrix, including 0 for free
/// rank and excluding 1s.
pub fn smith_invariants(a: &[ZVec], ncols: usize) -> Vec<BigInt> {
    let mut m: Vec<ZVec> = a.to_vec();
    let rows = m.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(ncols) {
        // pick the smallest nonzero entry in the remaining block as pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..ncols {
                if !m[i][j].is_zero() && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        let p = m[t][t].clone();
        let mut clean = true;
        for i in t + 1..rows {
            if m[i][t].is_zero() {
                continue;
            }
            let q = m[i][t].div_floor(&p);
            row_axpy(&mut m, i, t, &q);
            if !m[i][t].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..ncols {
            if m[t][j].is_zero() {
                continue;
            }
            let q = m[t][j].div_floor(&p);
            for row in m.iter_mut() {
                let s = row[t].clone();
                row[j] -= &q * s;
            }
            if !m[t][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // enforce divisibility of the rest by the pivot
        let mut bad = None;
        'outer: for i in t + 1..rows {
            for j in t + 1..ncols {
                if !m[i][j].mod_floor(&p).is_zero() {
                    bad = Some(i);
                    break 'outer;
                }
            }
        }
        if let Some(i) = bad {
            let src = m[i].clone();
            for (dst, v) in m[t].iter_mut().zip(&src) {
                *dst += v;
            }
            continue;
        }
        diag.push(p.abs());
        t += 1;
    }
    let mut out: Vec<BigInt> = diag.into_iter().filter(|d| !d.is_one()).collect();
    let free = ncols - t;
    out.extend(std::iter::repeat_n(BigInt::zero(), free));
    out
}

/// Full-rank sublattice of `Z^N`, stored as its upper-triangular row Hermite form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    n: usize,
    hnf: Vec<Vec<i64>>,
}

impl Lattice {
    /// Lattice spanned by the given integer vectors; they must span a full-rank lattice.
    pub fn from_generators(n: usize, gens: &[ZVec]) -> Result<Self> {
        for g in gens {
            if g.len() != n {
                return Err(Error::ShapeMismatch(format!("generator of length {} in Z^{n}", g.len())));
            }
        }
        let (e, _) = echelon_with_transform(gens, n);
        let mut hnf = Vec::with_capacity(n);
        for (i, row) in e.iter().take(n).enumerate() {
            if row[i].is_zero() {
                return Err(Error::Unsupported("lattice is not of full rank".into()));
            }
            let small: Option<Vec<i64>> = row.iter().map(ToPrimitive::to_i64).collect();
            hnf.push(small.ok_or_else(|| Error::Unsupported("lattice entries exceed 64 bits".into()))?);
        }
        if hnf.len() < n {
            return Err(Error::Unsupported("lattice is not of full rank".into()));
        }
        Ok(Lattice { n, hnf })
    }

    pub fn from_i64_generators(n: usize, gens: &[Vec<i64>]) -> Result<Self> {
        Self::from_generators(n, &to_big(gens))
    }

    /// `k * Z^N`.
    pub fn scaled_standard(n: usize, k: i64) -> Self {
        let hnf = (0..n).map(|i| (0..n).map(|j| if i == j { k } else { 0 }).collect()).collect();
        Lattice { n, hnf }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// Rows of the Hermite basis.
    pub fn basis(&self) -> &[Vec<i64>] {
        &self.hnf
    }

    pub fn basis_big(&self) -> Vec<ZVec> {
        to_big(&self.hnf)
    }

    /// Diagonal of the Hermite basis; the canonical box is `Π [0, d_i)`.
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.n).map(|i| self.hnf[i][i]).collect()
    }

    /// `[Z^N : L]`.
    pub fn index(&self) -> BigInt {
        self.diagonal().iter().map(|&d| BigInt::from(d)).product()
    }

    /// Canonical representative of `v + L` inside the box.
    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        let mut out = v.to_vec();
        for i in 0..self.n {
            let d = self.hnf[i][i];
            let q = out[i].div_euclid(d);
            if q != 0 {
                for j in i..self.n {
                    out[j] -= q * self.hnf[i][j];
                }
            }
        }
        out
    }

    /// Coordinates of `v ∈ L` in the Hermite basis, or `None` if `v ∉ L`.
    pub fn coordinates(&self, v: &[i64]) -> Option<Vec<i64>> {
        let mut rest = v.to_vec();
        let mut c = vec![0i64; self.n];
        for i in 0..self.n {
            let d = self.hnf[i][i];
            if rest[i] % d != 0 {
                return None;
            }
            let q = rest[i] / d;
            c[i] = q;
            for j in i..self.n {
                rest[j] -= q * self.hnf[i][j];
            }
        }
        Some(c)
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.hnf.iter().all(|r| self.contains(r))
    }

    /// `L1 + L2`.
    pub fn sum(&self, other: &Lattice) -> Lattice {
        let mut gens = self.basis_big();
        gens.extend(other.basis_big());
        Lattice::from_generators(self.n, &gens).expect("sum of full-rank lattices")
    }

    /// `L + span(extra)`.
    pub fn extend(&self, extra: &[Vec<i64>]) -> Result<Lattice> {
        let mut gens = self.basis_big();
        gens.extend(to_big(extra));
        Lattice::from_generators(self.n, &gens)
    }

    /// `L1 ∩ L2`.
    pub fn intersect(&self, other: &Lattice) -> Lattice {
        let mut stacked = self.basis_big();
        stacked.extend(other.basis_big());
        let ker = left_kernel(&stacked, self.n);
        let a = self.basis_big();
        let gens: Vec<ZVec> = ker
            .iter()
            .map(|y| {
                let mut v = vec![BigInt::zero(); self.n];
                for (k, row) in a.iter().enumerate() {
                    if y[k].is_zero() {
                        continue;
                    }
                    for (vj, rj) in v.iter_mut().zip(row) {
                        *vj += &y[k] * rj;
                    }
                }
                v
            })
            .collect();
        Lattice::from_generators(self.n, &gens).expect("intersection of full-rank lattices")
    }

    /// `{ x : rows · x ≡ 0 mod modulus }`.
    pub fn congruence_kernel(n: usize, rows: &[Vec<i64>], modulus: i64) -> Lattice {
        // solutions (x, z) of R x - modulus z = 0, as a left kernel of the transpose
        let k = rows.len();
        let mut t: Vec<ZVec> = Vec::with_capacity(n + k);
        for j in 0..n {
            t.push(rows.iter().map(|r| BigInt::from(r[j])).collect());
        }
        for i in 0..k {
            t.push((0..k).map(|c| if c == i { BigInt::from(-modulus) } else { BigInt::zero() }).collect());
        }
        let ker = left_kernel(&t, k);
        let mut gens: Vec<ZVec> = ker.into_iter().map(|y| y[..n].to_vec()).collect();
        gens.extend(Lattice::scaled_standard(n, modulus).basis_big());
        Lattice::from_generators(n, &gens).expect("congruence kernel contains modulus * Z^N")
    }

    /// Invariant factors of `Z^N / L` (entries greater than 1, ascending divisibility).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        smith_invariants(&self.basis_big(), self.n)
    }

    /// Iterates over the canonical representatives of `Z^N / L`.
    pub fn box_elements(&self) -> BoxIter {
        BoxIter { diag: self.diagonal(), cur: Some(vec![0; self.n]) }
    }
}

pub struct BoxIter {
    diag: Vec<i64>,
    cur: Option<Vec<i64>>,
}

impl Iterator for BoxIter {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        let out = self.cur.clone()?;
        let mut next = out.clone();
        let mut i = next.len();
        loop {
            if i == 0 {
                self.cur = None;
                break;
            }
            i -= 1;
            next[i] += 1;
            if next[i] < self.diag[i] {
                self.cur = Some(next);
                break;
            }
            next[i] = 0;
        }
        Some(out)
    }
}

pub fn integer_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> ZVec {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn snf_small() {
        let a = vec![big(&[2, 1]), big(&[0, 3])];
        assert_eq!(smith_invariants(&a, 2), vec![BigInt::from(6)]);
        let b = vec![big(&[2, 0, 0]), big(&[0, 2, 0]), big(&[0, 0, 2])];
        assert_eq!(smith_invariants(&b, 3), vec![BigInt::from(2); 3]);
        let c = vec![big(&[2, 4, 4]), big(&[-6, 6, 12]), big(&[10, -4, -16])];
        assert_eq!(smith_invariants(&c, 3), vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    }

    #[test]
    fn lattice_reduction_is_canonical() {
        let l = Lattice::from_i64_generators(2, &[vec![2, 1], vec![0, 3]]).unwrap();
        assert_eq!(l.index(), BigInt::from(6));
        let reps: Vec<_> = l.box_elements().collect();
        assert_eq!(reps.len(), 6);
        for v in [[5i64, -7], [-3, 2], [100, 1]] {
            let r = l.reduce(&v);
            assert!(reps.contains(&r));
            let diff: Vec<i64> = v.iter().zip(&r).map(|(a, b)| a - b).collect();
            assert!(l.contains(&diff));
        }
    }

    #[test]
    fn intersection_and_sum() {
        let a = Lattice::scaled_standard(2, 2);
        let b = Lattice::from_i64_generators(2, &[vec![3, 0], vec![0, 1]]).unwrap();
        assert_eq!(a.intersect(&b), Lattice::from_i64_generators(2, &[vec![6, 0], vec![0, 2]]).unwrap());
        assert_eq!(a.sum(&b), Lattice::from_i64_generators(2, &[vec![1, 0], vec![0, 1]]).unwrap());
    }

    #[test]
    fn congruence_kernel() {
        // x + y ≡ 0 mod 4
        let k = Lattice::congruence_kernel(2, &[vec![1, 1]], 4);
        assert_eq!(k.index(), BigInt::from(4));
        assert!(k.contains(&[1, 3]));
        assert!(!k.contains(&[1, 0]));
    }

    #[test]
    fn left_kernel_annihilates() {
        let a = vec![big(&[1, 2]), big(&[2, 4]), big(&[3, 1])];
        let ker = left_kernel(&a, 2);
        assert_eq!(ker.len(), 1);
        for y in ker {
            for j in 0..2 {
                let s: BigInt = (0..3).map(|i| &y[i] * &a[i][j]).sum();
                assert!(s.is_zero());
            }
        }
    }
}
