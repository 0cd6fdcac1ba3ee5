//! Exact arithmetic in `Z[ζ_n]`, used for Gauss sums.
//!
//! Elements are stored in the group ring `Z[x]/(x^n - 1)`; equality is decided
//! after reduction modulo the cyclotomic polynomial `Φ_n`.

use num_integer::Integer;

#[derive(Clone, Debug)]
pub struct Cyclotomic {
    n: usize,
    coeffs: Vec<i128>,
}

impl Cyclotomic {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1);
        Cyclotomic { n, coeffs: vec![0; n] }
    }

    pub fn integer(n: usize, k: i128) -> Self {
        let mut z = Self::zero(n);
        z.coeffs[0] = k;
        z
    }

    /// `ζ_n^k`.
    pub fn root(n: usize, k: i64) -> Self {
        let mut z = Self::zero(n);
        z.coeffs[k.rem_euclid(n as i64) as usize] = 1;
        z
    }

    /// `Σ counts[k] ζ_n^k`.
    pub fn from_counts(counts: Vec<i128>) -> Self {
        let n = counts.len();
        Cyclotomic { n, coeffs: counts }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Same element viewed in `Z[ζ_m]` for a multiple `m` of `n`.
    pub fn lift(&self, m: usize) -> Self {
        assert!(m.is_multiple_of(self.n), "{m} is not a multiple of {}", self.n);
        let step = m / self.n;
        let mut z = Self::zero(m);
        for (k, &c) in self.coeffs.iter().enumerate() {
            z.coeffs[k * step] += c;
        }
        z
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        let m = self.n.lcm(&other.n);
        (self.lift(m), other.lift(m))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (mut a, b) = self.common(other);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
        a
    }

    pub fn neg(&self) -> Self {
        Cyclotomic { n: self.n, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        let n = a.n;
        let mut out = vec![0i128; n];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                if y != 0 {
                    out[(i + j) % n] += x * y;
                }
            }
        }
        Cyclotomic { n, coeffs: out }
    }

    pub fn scale(&self, k: i128) -> Self {
        Cyclotomic { n: self.n, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        let mut z = Self::zero(self.n);
        for (k, &c) in self.coeffs.iter().enumerate() {
            z.coeffs[(self.n - k) % self.n] += c;
        }
        z
    }

    /// Remainder modulo `Φ_n`, a canonical coordinate vector.
    pub fn reduced(&self) -> Vec<i128> {
        let phi = cyclotomic_polynomial(self.n);
        let deg = phi.len() - 1;
        let mut r = self.coeffs.clone();
        for top in (deg..r.len()).rev() {
            let c = r[top];
            if c == 0 {
                continue;
            }
            // Φ is monic
            for (k, &p) in phi.iter().enumerate() {
                r[top - deg + k] -= c * p;
            }
        }
        r.truncate(deg);
        r
    }

    pub fn approx(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, &c) in self.coeffs.iter().enumerate() {
            let t = std::f64::consts::TAU * k as f64 / self.n as f64;
            re += c as f64 * t.cos();
            im += c as f64 * t.sin();
        }
        (re, im)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.common(other);
        a.reduced() == b.reduced()
    }
}

impl Eq for Cyclotomic {}

/// Integer coefficients of `Φ_n`, constant term first.
pub fn cyclotomic_polynomial(n: usize) -> Vec<i128> {
    // Φ_n = (x^n - 1) / Π_{d | n, d < n} Φ_d
    let mut num = vec![0i128; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = exact_div(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn exact_div(num: &[i128], den: &[i128]) -> Vec<i128> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let qlen = r.len() - dd;
    let mut q = vec![0i128; qlen];
    for k in (0..qlen).rev() {
        let c = r[k + dd] / den[dd];
        q[k] = c;
        for (j, &d) in den.iter().enumerate() {
            r[k + j] -= c * d;
        }
    }
    debug_assert!(r.iter().all(|&c| c == 0));
    q
}

/// Quadratic Gauss sum `Σ_a ζ_p^{a^2}` for an odd prime `p`.
pub fn quadratic_gauss_sum(p: usize) -> Cyclotomic {
    let mut counts = vec![0i128; p];
    for a in 0..p {
        counts[(a * a) % p] += 1;
    }
    Cyclotomic::from_counts(counts)
}

/// `sqrt(p)` as an element of `Z[ζ_{8p}]`.
pub fn sqrt_prime(p: usize) -> Cyclotomic {
    if p == 2 {
        return Cyclotomic::root(8, 1).add(&Cyclotomic::root(8, 7));
    }
    let g = quadratic_gauss_sum(p);
    if p % 4 == 1 {
        g
    } else {
        // g = i sqrt(p)
        g.mul(&Cyclotomic::root(4, 3))
    }
}

pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `sqrt(n)` for a positive integer, as a cyclotomic integer.
pub fn sqrt_integer(n: u64) -> Cyclotomic {
    let mut out = Cyclotomic::integer(1, 1);
    for (p, e) in factorize(n) {
        out = out.scale((p as i128).pow(e / 2));
        if e % 2 == 1 {
            out = out.mul(&sqrt_prime(p as usize));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn square_roots_square_correctly() {
        for n in [2u64, 3, 5, 6, 7, 8, 12, 13, 45] {
            let s = sqrt_integer(n);
            assert_eq!(s.mul(&s), Cyclotomic::integer(1, n as i128), "n = {n}");
            assert!(s.approx().0 > 0.0 && s.approx().1.abs() < 1e-9);
        }
    }

    #[test]
    fn roots_of_unity_relations() {
        let i = Cyclotomic::root(4, 1);
        assert_eq!(i.mul(&i), Cyclotomic::integer(1, -1));
        let z3 = Cyclotomic::root(3, 1);
        let s = Cyclotomic::integer(1, 1).add(&z3).add(&z3.mul(&z3));
        assert_eq!(s, Cyclotomic::zero(1));
        assert_eq!(Cyclotomic::root(8, 2), Cyclotomic::root(4, 1));
    }
}
